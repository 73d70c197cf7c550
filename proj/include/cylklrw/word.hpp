#pragma once
#include <string>
#include <utility>
#include <vector>

#include "cylklrw/error.hpp"

namespace ck {

enum class Color : unsigned char { Black, Red };

// One symbol of a boundary word as written: a strand crossing the boundary
// circle.  Black strands carry a quiver vertex label and may be thick
// (thickness 2 = two thin strands fused); red strands are always thin.
struct Slot {
  Color color = Color::Black;
  int label = 0;
  int thickness = 1;

  friend bool operator==(const Slot& a, const Slot& b) {
    return a.color == b.color && a.label == b.label && a.thickness == b.thickness;
  }
};

// A thin endpoint after expanding thick slots into consecutive thin strands.
struct Endpoint {
  Color color = Color::Black;
  int label = 0;
  int slot = 0; // index of the originating Slot

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.color == b.color && a.label == b.label;
  }
};

// A boundary word on the circle.  Position 0 sits just right of the seam
// x = 0; positions increase rightward.  The word is stored linearly
// (the seam is a fixed marked point, not forgotten).
class Word {
public:
  Word() = default;
  explicit Word(std::vector<Slot> slots);

  static Word parse(const std::string& text); // throws BadWord
  std::string str() const;

  const std::vector<Slot>& slots() const { return slots_; }
  const std::vector<Endpoint>& thin() const { return thin_; }
  int size() const { return static_cast<int>(thin_.size()); }

  // Thin-position pairs (p, p+1) covered by a thickness-2 slot.
  const std::vector<std::pair<int, int>>& thickPairs() const { return thickPairs_; }
  bool isThickLeft(int thinPos) const;  // thinPos is the left member of a thick pair

  int blackCount() const;
  int redCount() const;
  int maxThickness() const;

  friend bool operator==(const Word& a, const Word& b) { return a.slots_ == b.slots_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b);

  // True if the sequences of thin endpoints agree (colors and labels);
  // thickness structure may differ.
  bool sameThin(const Word& other) const;

private:
  void rebuild();
  std::vector<Slot> slots_;
  std::vector<Endpoint> thin_;
  std::vector<std::pair<int, int>> thickPairs_;
};

// Dimension data for the cylinder algebra attached to Gr(k, n):
// two red strands (labels n-k and k) and black multiplicity v_m at
// vertex m of the A_{n-1} quiver.
struct QuiverData {
  int n = 0;
  int k = 0;
  std::vector<int> v; // v[m-1] = multiplicity of label m, m = 1..n-1

  static QuiverData make(int n, int k);
  // The distinguished boundary word: left red (label n-k), then one black
  // slot per quiver vertex m with thickness v_m, then right red (label k).
  Word thickE() const;
  // Same word with every slot thin (multiplicity v_m written as v_m slots).
  Word thinE() const;
};

} // namespace ck
