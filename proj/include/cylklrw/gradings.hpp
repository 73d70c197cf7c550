#pragma once
#include <map>

#include "cylklrw/element.hpp"

namespace ck {

// Scaling degree of one happening, given the strand data of the bottom word:
//   dot +2; same-label black crossing -2; adjacent-label black crossing +1;
//   red-black crossing +1 when labels agree; red-red crossing -min(labels);
//   seam passages 0; all other crossings 0.
int hapDegree(const Word& bottom, const Hap& h);

struct GradingTriple {
  int scaling = 0;                 // total internal degree
  std::map<int, int> winding;      // black label -> net rightward seam passages
  int twist = 0;                   // net rightward seam passages of red strands
};

// Degrees of a homogeneous element.  The scaling degree includes the
// h-degree of coefficients (deg h = 2) and the boundary correction of -1
// for each thick slot meeting either boundary.  Throws Err::Internal if the
// element's terms disagree on any of the three degrees.
GradingTriple elementGradings(const Element& e);

// Degree of a single basis key over a given boundary pair (same boundary
// correction convention, coefficient excluded).
int keyScalingDegree(const Word& bottom, const Word& top, const Key& k);

} // namespace ck
