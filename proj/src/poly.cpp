#include "cylklrw/poly.hpp"

#include <sstream>

namespace ck {

const char* err_name(Err e) {
  switch (e) {
    case Err::Ok: return "Ok";
    case Err::WordMismatch: return "WordMismatch";
    case Err::BadWord: return "BadWord";
    case Err::NonTerminating: return "NonTerminating";
    case Err::NotDivisible: return "NotDivisible";
    case Err::MalformedTableau: return "MalformedTableau";
    case Err::SearchTooLarge: return "SearchTooLarge";
    case Err::Inconclusive: return "Inconclusive";
    case Err::UnsupportedWord: return "UnsupportedWord";
    case Err::IdentityFailed: return "IdentityFailed";
    case Err::NoReferenceMatch: return "NoReferenceMatch";
    case Err::Overflow: return "Overflow";
    case Err::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {
std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(Err::Overflow, "coefficient addition");
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Err::Overflow, "coefficient multiplication");
  return r;
}
} // namespace

Poly Poly::variable(int which, int power, std::int64_t c) {
  Poly p;
  if (c == 0) return p;
  Mono3 m;
  m.e[static_cast<std::size_t>(which)] = power;
  p.terms_[m] = c;
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Mono3{});
}

std::int64_t Poly::constant_term() const {
  auto it = terms_.find(Mono3{});
  return it == terms_.end() ? 0 : it->second;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  *this += -o;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Mono3 m;
      for (int i = 0; i < 3; ++i) m.e[i] = m1.e[i] + m2.e[i];
      auto it = r.terms_.find(m);
      std::int64_t add = checked_mul(c1, c2);
      if (it == r.terms_.end()) {
        if (add != 0) r.terms_[m] = add;
      } else {
        it->second = checked_add(it->second, add);
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Poly Poly::div_h() const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m.e[0] == 0) fail(Err::NotDivisible, "term without h factor: " + str());
    Mono3 m2 = m;
    m2.e[0] -= 1;
    r.terms_[m2] = c;
  }
  return r;
}

Poly Poly::at_h0(bool drop_b) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m.e[0] != 0) continue;
    if (drop_b && (m.e[1] != 0 || m.e[2] != 0)) continue;
    r.terms_[m] = c;
  }
  return r;
}

Poly Poly::shift_b(std::int64_t t) const {
  // bL -> bL + t, bR -> bR + t via binomial expansion.
  Poly out;
  for (const auto& [m, c] : terms_) {
    Poly term = Poly(c) * Poly::variable(0, m.e[0]);
    Poly fL = Poly::bL() + Poly(t);
    Poly fR = Poly::bR() + Poly(t);
    for (int i = 0; i < m.e[1]; ++i) term = term * fL;
    for (int i = 0; i < m.e[2]; ++i) term = term * fR;
    out += term;
  }
  return out;
}

bool Poly::homogeneous_h_degree(int& deg) const {
  bool seen = false;
  for (const auto& [m, c] : terms_) {
    (void)c;
    int d = 2 * m.e[0];
    if (!seen) {
      deg = d;
      seen = true;
    } else if (deg != d) {
      return false;
    }
  }
  if (!seen) deg = 0;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print highest monomials last for stability: map order is fine (lexicographic in (h,bL,bR)).
  for (const auto& [m, c] : terms_) {
    std::int64_t coeff = c;
    if (first) {
      if (coeff < 0) {
        os << "-";
        coeff = -coeff;
      }
    } else {
      os << (coeff < 0 ? " - " : " + ");
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    bool has_var = m.e[0] || m.e[1] || m.e[2];
    if (coeff != 1 || !has_var) os << coeff;
    const char* names[3] = {"h", "bL", "bR"};
    bool printed_coeff = (coeff != 1 || !has_var);
    bool any = false;
    for (int i = 0; i < 3; ++i) {
      if (m.e[i] == 0) continue;
      if (printed_coeff || any) os << "*";
      os << names[i];
      if (m.e[i] > 1) os << "^" << m.e[i];
      any = true;
    }
  }
  return os.str();
}

std::size_t Poly::hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& [m, c] : terms_) {
    for (int i = 0; i < 3; ++i) mix(static_cast<std::size_t>(m.e[i] + 7));
    mix(static_cast<std::size_t>(c));
  }
  return h;
}

Poly operator*(std::int64_t c, const Poly& p) { return Poly(c) * p; }

} // namespace ck
