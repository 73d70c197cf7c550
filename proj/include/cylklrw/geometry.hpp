#pragma once
#include <vector>

#include "cylklrw/trace.hpp"

namespace ck {

// Canonical happening list for the diagram whose strands run as straight
// geodesics on the cylinder: strand s starts at bottom position s, ends at
// top position target[s], and winds wind[s] times around the cylinder.
// All strands are drawn as straight lines in the universal cover with
// deterministically jittered endpoints; crossings and seam passages are
// read off in exact rational time order.  The result is memoized and
// deterministic.  Dots are not part of the geometry.
std::vector<Hap> canonicalHaps(const std::vector<int>& target,
                               const std::vector<int>& wind, int N);

} // namespace ck
