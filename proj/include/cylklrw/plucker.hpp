#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include "cylklrw/error.hpp"
#include "cylklrw/rat.hpp"

namespace ck {

// Variables of the homogeneous coordinate ring of the Grassmannian of
// planes in four-space, plus two formal weight-2 symbols that appear in
// transition matrices: SymDot is the image of the dot-sum operator carried
// by computed matrices; SymSlot is the free weight-2 off-diagonal entry of
// the triangular reference patterns (its actual value is never needed).
enum PVar : int { E12, E13, E14, E23, E24, E34, SymDot, SymSlot, PVarCount };

const char* pvarName(PVar v);

struct PMono {
  std::array<int, PVarCount> e{};

  friend bool operator<(const PMono& a, const PMono& b);
  friend bool operator==(const PMono& a, const PMono& b) { return a.e == b.e; }
  PMono times(const PMono& o) const;
  int degree() const;
};

// Integer-coefficient polynomial in the six coordinates and the two formal
// symbols, kept reduced modulo the single quadric relation
//   e14*e23 = e13*e24 - e12*e34.
// Reduction rewrites every monomial containing both e14 and e23, so normal
// forms are exactly the polynomials with no such monomial; equality of
// residue classes is equality of normal forms.
class PPoly {
public:
  PPoly() = default;
  explicit PPoly(Rat c);
  static PPoly var(PVar v, int exp = 1);
  static PPoly mono(const PMono& m, const Rat& c);

  const std::map<PMono, Rat>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool has(PVar v) const;
  // True if every monomial has exponent >= 1 on v.
  bool divisibleBy(PVar v) const;
  PPoly dividedBy(PVar v) const; // requires divisibleBy(v)

  friend PPoly operator+(const PPoly& a, const PPoly& b);
  friend PPoly operator-(const PPoly& a, const PPoly& b);
  friend PPoly operator*(const PPoly& a, const PPoly& b);
  PPoly operator-() const;
  PPoly scaled(const Rat& c) const;

  friend bool operator==(const PPoly& a, const PPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PPoly& a, const PPoly& b) { return !(a == b); }

  std::string str() const;

private:
  void addTerm(const PMono& m, const Rat& c);
  void reduce(); // rewrite e14*e23 -> e13*e24 - e12*e34 to fixpoint
  std::map<PMono, Rat> terms_;
};

// A fraction num / (e13^d13 * e24^d24) with reduced numerator.  Only these
// two denominators occur: transition matrices live on the charts where the
// corresponding coordinates are invertible.  Powers of the denominator
// variables dividing the whole numerator are cancelled on construction.
class Frac {
public:
  Frac() = default;
  explicit Frac(Rat c) : num_(PPoly(c)) {}
  Frac(PPoly num, int d13, int d24);
  static Frac var(PVar v);
  // c * e13^a * e24^b * (SymDot if withDot), a and b of either sign.
  static Frac monomial(const Rat& c, int a, int b, bool withDot = false);

  const PPoly& num() const { return num_; }
  int d13() const { return d13_; }
  int d24() const { return d24_; }
  bool isZero() const { return num_.isZero(); }
  bool has(PVar v) const { return num_.has(v); }

  friend Frac operator+(const Frac& a, const Frac& b);
  friend Frac operator-(const Frac& a, const Frac& b);
  friend Frac operator*(const Frac& a, const Frac& b);
  Frac operator-() const;
  Frac scaled(const Rat& c) const;

  friend bool operator==(const Frac& a, const Frac& b);
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }

  std::string str() const;

private:
  void normalize();
  PPoly num_;
  int d13_ = 0, d24_ = 0;
};

// A 1x1 or 2x2 transition matrix over Frac.  Fixed convention throughout:
// the matrix expresses the chart-13 basis in the chart-24 basis as columns,
// so coordinate vectors transform by v24 = gamma * v13 and the reverse
// direction is the matrix inverse.
struct Cocycle2 {
  int n = 1;
  std::array<std::array<Frac, 2>, 2> m{};

  static Cocycle2 scalar(Frac f);
  static Cocycle2 mat(Frac a, Frac b, Frac c, Frac d);

  Cocycle2 mul(const Cocycle2& o) const;
  Cocycle2 transpose() const;
  Frac det() const;
  bool has(PVar v) const;
  bool isIdentity() const;
  std::string str() const;
};

enum class RefBundle { O, L, T, Tperp, H, HL };

std::string refName(RefBundle b, int m = 0);

// Forward direction (chart 24 from chart 13) of the named bundle's
// transition matrix.  m is the line-bundle power (used only for L).
// The two rank-2 tautological patterns T / Tperp differ by which
// off-diagonal carries e12 versus e34; the two triangular extension
// patterns H / HL carry the free weight-2 symbol above the diagonal.
Cocycle2 referenceCocycle(RefBundle b, int m = 0);
// Reverse direction: the inverse matrix of referenceCocycle.
Cocycle2 referenceCocycleBack(RefBundle b, int m = 0);

struct EquivResult {
  enum class Status { Yes, No, Inconclusive };
  Status status = Status::No;
  // Witnesses when status == Yes:  A * b == a * B  with both invertible.
  std::array<std::array<Rat, 2>, 2> A{}, B{};
  bool usedSlot = false;
  Frac slot;   // value substituted for the free weight-2 symbol
  std::string note;
};

// Decides whether constant invertible matrices A, B exist with
//   a = A * b * B^{-1}   (equivalently  A * b = a * B).
// The coefficient system is linear over the rationals after clearing
// denominators and reducing modulo the quadric; a nullspace search plus
// deterministic sampling finds invertible witnesses.  When exactly one
// side carries the free weight-2 symbol, it ranges over nonzero monomials
// SymDot * e13^i * e24^j (constant multiples are absorbed by A, B).
// Status No is definitive (empty solution space); Inconclusive means the
// solution space is nonzero but no invertible constant witness was found.
EquivResult cocyclesEquivalent(const Cocycle2& a, const Cocycle2& b);

struct RefMatch {
  RefBundle bundle = RefBundle::O;
  int m = 0;
  EquivResult eq;
};

// Matches `c` against every reference (O, L^m for 0 < |m| <= 3, T, Tperp,
// H, HL) and returns all equivalences found, plus any Inconclusive
// outcomes in `inconclusive` if the caller provides it.
std::vector<RefMatch> matchReferences(const Cocycle2& c,
                                      std::vector<RefMatch>* inconclusive = nullptr);

} // namespace ck
