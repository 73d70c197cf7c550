#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cylklrw/element.hpp"
#include "cylklrw/geometry.hpp"

namespace ck {

struct EngineOptions {
  Mode mode = Mode::Plain;
  int policySeed = 0;            // nonzero: permute choice among applicable steps
  long long stepBudget = 400000; // rewrite steps before giving up (NonTerminating)
  bool checkDegrees = false;     // verify each rewrite preserves the scaling degree
};

// Rewrites diagrams to canonical form: every term becomes dots at the bottom
// of each strand followed by the geodesic crossing/hop pattern of its
// permutation-with-winding.  Rules applied, in order of preference:
//   1. cancel an isolated pair of opposite seam passages of one strand;
//   2. resolve an isolated double crossing of one pair of strands;
//   3. slide the lowest unsettled dot down one step;
//   4. reorder crossings toward the geodesic via triangle moves and
//      seam slides, spawning correction terms where the relations demand.
class Engine {
public:
  explicit Engine(EngineOptions opts = {});

  const EngineOptions& options() const { return opts_; }
  Mode mode() const { return opts_.mode; }
  long long stepsUsed() const { return steps_; }

  // Reduce a raw diagram.  The happenings act on the thin strands of
  // `bottom`; `top` fixes the thickness structure of the top boundary and
  // must match the replayed thin endpoints.
  Element reduce(const Word& bottom, const Word& top, const std::vector<Hap>& haps,
                 const Poly& coeff = Poly(1));

  Element multiply(const Element& A, const Element& B); // A stacked above B
  Element multiply(const std::vector<Element>& factors); // left to right = top to bottom
  Element power(const Element& A, int n);

  // Zero/equality tests faithful for thick boundaries: thick slots are
  // closed off with their junction crossings before comparing.
  bool isZero(const Element& e);
  bool equal(const Element& a, const Element& b);

  // Identity element of a boundary word (vertical strands; each thick slot
  // carries the dot that makes the fused pair idempotent).
  Element idempotent(const Word& w);
  // Identity decorated with `power` extra dots on the given slot (on the
  // left thin strand when the slot is thick).
  Element dotted(const Word& w, int slot, int power = 1);

  Element commutator(const Element& a, const Element& b); // ab - ba
  // (ab - ba)/h, exact; Err::NotDivisible if the commutator is not divisible.
  Element commutatorOverH(const Element& a, const Element& b);
  // Classical limit of the rescaled commutator: {a,b} = (ab-ba)/h at h = 0.
  Element poisson(const Element& a, const Element& b);

  // Step-by-step logging hook (CLI --trace): called with a short
  // description of each rewrite applied.
  std::function<void(const std::string&)> onStep;

private:
  using TermMap = std::map<Key, Poly>;
  struct Pending {
    std::vector<Hap> haps;
    Poly coeff;
  };

  TermMap reduceHaps(const Word& bottom, const std::vector<Hap>& haps, int depth);
  bool findStep(const Word& bottom, const std::vector<Hap>& haps,
                std::vector<Pending>& succ, std::string& what);

  // Individual rule scanners; each returns candidate successor bundles.
  bool tryHopCancel(const Word& bottom, const std::vector<Hap>& haps,
                    std::vector<std::vector<Pending>>& outs, std::vector<std::string>& descs);
  bool tryBigon(const Word& bottom, const std::vector<Hap>& haps,
                std::vector<std::vector<Pending>>& outs, std::vector<std::string>& descs);
  bool tryDotSlide(const Word& bottom, const std::vector<Hap>& haps,
                   std::vector<std::vector<Pending>>& outs, std::vector<std::string>& descs);
  bool tryStraighten(const Word& bottom, const std::vector<Hap>& haps,
                     std::vector<std::vector<Pending>>& outs, std::vector<std::string>& descs);

  int pick(std::size_t n);

  EngineOptions opts_;
  long long steps_ = 0;
  std::map<std::string, TermMap> memo_;
};

// True if a hap list replays without violating adjacency/seam constraints.
bool replays(const Word& bottom, const std::vector<Hap>& haps);

} // namespace ck
