#pragma once
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cylklrw/word.hpp"

namespace ck {

enum class HKind : unsigned char { Cross, Hop, Dot };

// One local happening on the cylinder, recorded against strand identities
// (a strand's id is its bottom thin position).
//   Cross: strands a < b exchange adjacent positions away from the seam.
//   Hop:   strand a passes the seam; dir=+1 rightward (position N-1 -> 0),
//          dir=-1 leftward (position 0 -> N-1).
//   Dot:   a dot on strand a.
struct Hap {
  HKind kind = HKind::Dot;
  int a = -1;
  int b = -1;
  int dir = 0;

  static Hap cross(int x, int y) {
    if (x > y) std::swap(x, y);
    return Hap{HKind::Cross, x, y, 0};
  }
  static Hap hop(int s, int d) { return Hap{HKind::Hop, s, -1, d}; }
  static Hap dot(int s) { return Hap{HKind::Dot, s, -1, 0}; }

  bool touches(int s) const { return a == s || b == s; }
  friend bool operator==(const Hap& x, const Hap& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.dir == y.dir;
  }
  friend bool operator<(const Hap& x, const Hap& y) {
    auto k = [](const Hap& h) {
      return std::array<int, 4>{static_cast<int>(h.kind), h.a, h.b, h.dir};
    };
    return k(x) < k(y);
  }
};

// Two happenings commute freely iff they share no strand.
inline bool dependent(const Hap& x, const Hap& y) {
  return x.touches(y.a) || (y.b >= 0 && x.touches(y.b));
}

struct Replay {
  std::vector<int> top;   // strand id -> top thin position
  std::vector<int> wind;  // strand id -> net seam passages (signed)
  std::vector<Endpoint> topThin; // thin endpoints in top position order
};

// Tracks strand positions while scanning a happening list bottom-to-top.
// apply() throws Err::Internal when a happening violates the adjacency or
// seam constraints at its position.
struct PosTracker {
  std::vector<int> pos; // strand id -> position
  std::vector<int> at;  // position -> strand id

  explicit PosTracker(int n);
  int n() const { return static_cast<int>(pos.size()); }
  void apply(const Hap& h);
};

// A diagram skeleton: a bottom word plus a time-ordered happening list.
// Coefficients and dots-as-polynomials live one level up, in Element.
struct Trace {
  Word bottom;
  std::vector<Hap> haps;

  // Validates adjacency/seam constraints and computes top data.
  // Throws Err::Internal on an inconsistent happening list.
  Replay replay() const;

  // Canonical layered reordering of an equivalent happening sequence;
  // equal normal forms <=> the sequences differ only by free commutations.
  std::vector<Hap> foataNormal() const;
  std::string key() const; // bottom word + Foata normal form, for memo maps

  int crossCount() const;
  int hopCount() const;
  int dotCount() const;
};

// Position-coordinate event strings:  "x3; d2; r+; r-"  with xP a crossing
// of the strands at positions (P, P+1), dP a dot at position P, r+ / r- a
// seam passage of the extreme strand.  "x{N-1}" is accepted as shorthand
// for the seam exchange of the two strands flanking the seam and expands
// to a hop-cross-hop composite.
std::vector<Hap> eventsToHaps(const Word& bottom, const std::string& events);
std::string hapsToEvents(const Trace& t);

} // namespace ck
