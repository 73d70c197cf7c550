#pragma once
#include <map>
#include <string>
#include <vector>

#include "cylklrw/poly.hpp"
#include "cylklrw/trace.hpp"
#include "cylklrw/word.hpp"

namespace ck {

enum class Mode : unsigned char { Plain, Deformed };

// Basis datum of a reduced diagram: the strand permutation with windings,
// plus dot counts at the very bottom of each strand.  The crossing/hop
// pattern itself is the canonical geodesic for (tgt, wind), so it is not
// stored.
struct Key {
  std::vector<int> tgt;  // strand id -> top thin position
  std::vector<int> wind; // strand id -> net seam passages
  std::vector<int> dots; // strand id -> dots at the bottom

  friend bool operator<(const Key& a, const Key& b) {
    if (a.tgt != b.tgt) return a.tgt < b.tgt;
    if (a.wind != b.wind) return a.wind < b.wind;
    return a.dots < b.dots;
  }
  friend bool operator==(const Key& a, const Key& b) {
    return a.tgt == b.tgt && a.wind == b.wind && a.dots == b.dots;
  }
};

// A finite linear combination of reduced diagrams with fixed boundary
// words.  For thick boundary words the stored terms are the thin contents;
// see Engine for composition and for equality of thick-bounded elements.
class Element {
public:
  Element() = default;
  Element(Mode m, Word bottom, Word top)
      : mode_(m), bottom_(std::move(bottom)), top_(std::move(top)) {}

  Mode mode() const { return mode_; }
  const Word& bottom() const { return bottom_; }
  const Word& top() const { return top_; }
  const std::map<Key, Poly>& terms() const { return terms_; }

  bool isZero() const { return terms_.empty(); }
  int termCount() const { return static_cast<int>(terms_.size()); }

  void add(const Key& k, const Poly& c);
  Element& operator+=(const Element& o); // boundary words must agree
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  Element scaled(const Poly& c) const;
  Element operator-() const { return scaled(Poly(-1)); }

  // Raw term-map comparison.  Faithful for thin boundary words; for thick
  // boundaries use Engine::equal, which compares junction closures.
  friend bool operator==(const Element& a, const Element& b) {
    return a.mode_ == b.mode_ && a.bottom_ == b.bottom_ && a.top_ == b.top_ &&
           a.terms_ == b.terms_;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

  // Drops h and the seam parameters from every coefficient (the classical
  // limit of a deformed element).  Terms that vanish are removed.
  Element specializePlain() const;

  std::string str() const;

private:
  Mode mode_ = Mode::Plain;
  Word bottom_, top_;
  std::map<Key, Poly> terms_;
};

} // namespace ck
