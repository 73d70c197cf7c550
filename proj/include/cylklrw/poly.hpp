#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "cylklrw/error.hpp"

namespace ck {

// Coefficient ring Z[h, bL, bR].  h is the quantization parameter (scaling
// degree 2); bL/bR are the shift scalars attached to the left/right red
// strand.  Plain-mode computations stay in the constant part.
//
// Exponent triple order: (h, bL, bR).
struct Mono3 {
  std::array<int, 3> e{0, 0, 0};
  auto operator<=>(const Mono3&) const = default;
};

class Poly {
public:
  Poly() = default;
  Poly(std::int64_t c) { // NOLINT(google-explicit-constructor) scalar embedding
    if (c != 0) terms_[Mono3{}] = c;
  }
  static Poly variable(int which, int power = 1, std::int64_t c = 1);
  static Poly h(int power = 1) { return variable(0, power); }
  static Poly bL() { return variable(1); }
  static Poly bR() { return variable(2); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::int64_t constant_term() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator+(const Poly& o) const { Poly r = *this; r += o; return r; }
  Poly operator-(const Poly& o) const { Poly r = *this; r -= o; return r; }
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }

  // Exact division by h; Err::NotDivisible if any term lacks an h factor.
  Poly div_h() const;
  // Substitute h = 0 (and optionally bL = bR = 0).
  Poly at_h0(bool drop_b = false) const;
  // Substitute bL -> bL + t, bR -> bR + t: the ring depends only on bL - bR,
  // used by an invariance property test.
  Poly shift_b(std::int64_t t) const;

  // Scaling degree: h contributes 2, bL/bR contribute 0.  Returns the common
  // degree if homogeneous, throws Err::Internal otherwise (degree of 0 is 0).
  bool homogeneous_h_degree(int& deg) const;

  std::string str() const; // canonical text, e.g. "3*h^2*bL - 2"
  const std::map<Mono3, std::int64_t>& terms() const { return terms_; }
  std::size_t hash() const;

private:
  // invariant: no zero coefficients stored
  std::map<Mono3, std::int64_t> terms_;
};

Poly operator*(std::int64_t c, const Poly& p);

} // namespace ck
