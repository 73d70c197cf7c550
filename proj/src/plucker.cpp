#include "cylklrw/plucker.hpp"

#include <algorithm>
#include <sstream>

namespace ck {

const char* pvarName(PVar v) {
  switch (v) {
    case E12: return "e12";
    case E13: return "e13";
    case E14: return "e14";
    case E23: return "e23";
    case E24: return "e24";
    case E34: return "e34";
    case SymDot: return "c";
    case SymSlot: return "s";
    default: return "?";
  }
}

// Lex order ranking e14 and e23 highest so that the quadric rewrite
// e14*e23 -> e13*e24 - e12*e34 strictly decreases the leading monomial.
bool operator<(const PMono& a, const PMono& b) {
  static constexpr int prio[PVarCount] = {E14, E23, E12, E13, E24, E34, SymDot, SymSlot};
  for (int p : prio) {
    if (a.e[p] != b.e[p]) return a.e[p] < b.e[p];
  }
  return false;
}

PMono PMono::times(const PMono& o) const {
  PMono r;
  for (int i = 0; i < PVarCount; ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

int PMono::degree() const {
  int d = 0;
  for (int i = 0; i < PVarCount; ++i) d += e[i];
  return d;
}

PPoly::PPoly(Rat c) {
  if (c.sign() != 0) terms_[PMono{}] = c;
}

PPoly PPoly::var(PVar v, int exp) {
  PPoly p;
  PMono m;
  m.e[v] = exp;
  p.terms_[m] = Rat(1);
  return p;
}

PPoly PPoly::mono(const PMono& m, const Rat& c) {
  PPoly p;
  if (c.sign() != 0) p.terms_[m] = c;
  p.reduce();
  return p;
}

bool PPoly::has(PVar v) const {
  for (const auto& [m, c] : terms_)
    if (m.e[v] > 0) return true;
  return false;
}

bool PPoly::divisibleBy(PVar v) const {
  if (terms_.empty()) return false;
  for (const auto& [m, c] : terms_)
    if (m.e[v] == 0) return false;
  return true;
}

PPoly PPoly::dividedBy(PVar v) const {
  if (!divisibleBy(v)) fail(Err::Internal, "polynomial not divisible by variable");
  PPoly r;
  for (const auto& [m, c] : terms_) {
    PMono m2 = m;
    --m2.e[v];
    r.terms_[m2] = c;
  }
  return r;
}

void PPoly::addTerm(const PMono& m, const Rat& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (c.sign() != 0) terms_[m] = c;
    return;
  }
  Rat s = it->second + c;
  if (s.sign() == 0)
    terms_.erase(it);
  else
    it->second = s;
}

void PPoly::reduce() {
  // Rewrite any monomial containing both e14 and e23 using the quadric.
  // Each pass lowers min(e14-exp, e23-exp) on the rewritten monomial and
  // produces monomials without new e14*e23 pairs beyond what remained, so
  // iteration reaches the normal form (no monomial with both variables).
  for (;;) {
    auto hit = terms_.end();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      if (it->first.e[E14] > 0 && it->first.e[E23] > 0) {
        hit = it;
        break;
      }
    }
    if (hit == terms_.end()) return;
    PMono base = hit->first;
    Rat c = hit->second;
    terms_.erase(hit);
    --base.e[E14];
    --base.e[E23];
    PMono m1 = base, m2 = base;
    ++m1.e[E13];
    ++m1.e[E24];
    ++m2.e[E12];
    ++m2.e[E34];
    addTerm(m1, c);
    addTerm(m2, -c);
  }
}

PPoly operator+(const PPoly& a, const PPoly& b) {
  PPoly r = a;
  for (const auto& [m, c] : b.terms_) r.addTerm(m, c);
  r.reduce();
  return r;
}

PPoly operator-(const PPoly& a, const PPoly& b) {
  PPoly r = a;
  for (const auto& [m, c] : b.terms_) r.addTerm(m, -c);
  r.reduce();
  return r;
}

PPoly operator*(const PPoly& a, const PPoly& b) {
  PPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.addTerm(ma.times(mb), ca * cb);
  r.reduce();
  return r;
}

PPoly PPoly::operator-() const {
  PPoly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

PPoly PPoly::scaled(const Rat& c) const {
  PPoly r;
  if (c.sign() == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_[m] = k * c;
  return r;
}

static std::string ratStr(const Rat& c) {
  std::ostringstream os;
  os << c.num();
  if (c.den() != 1) os << "/" << c.den();
  return os.str();
}

std::string PPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print highest monomial first for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rat cc = c;
    if (!first) {
      os << (cc.sign() < 0 ? " - " : " + ");
      if (cc.sign() < 0) cc = -cc;
    }
    first = false;
    bool hasVar = m.degree() > 0;
    if (!hasVar || !(cc == Rat(1))) {
      os << ratStr(cc);
      if (hasVar) os << "*";
    }
    bool dot = false;
    for (int v = 0; v < PVarCount; ++v) {
      if (m.e[v] == 0) continue;
      if (dot) os << "*";
      dot = true;
      os << pvarName(static_cast<PVar>(v));
      if (m.e[v] > 1) os << "^" << m.e[v];
    }
  }
  return os.str();
}

Frac::Frac(PPoly num, int d13, int d24) : num_(std::move(num)), d13_(d13), d24_(d24) {
  if (d13 < 0 || d24 < 0) fail(Err::Internal, "negative denominator exponent");
  normalize();
}

Frac Frac::var(PVar v) { return Frac(PPoly::var(v), 0, 0); }

Frac Frac::monomial(const Rat& c, int a, int b, bool withDot) {
  PMono m;
  if (a > 0) m.e[E13] = a;
  if (b > 0) m.e[E24] = b;
  if (withDot) m.e[SymDot] = 1;
  return Frac(PPoly::mono(m, c), a < 0 ? -a : 0, b < 0 ? -b : 0);
}

void Frac::normalize() {
  if (num_.isZero()) {
    d13_ = d24_ = 0;
    return;
  }
  while (d13_ > 0 && num_.divisibleBy(E13)) {
    num_ = num_.dividedBy(E13);
    --d13_;
  }
  while (d24_ > 0 && num_.divisibleBy(E24)) {
    num_ = num_.dividedBy(E24);
    --d24_;
  }
}

static PPoly padded(const PPoly& p, int up13, int up24) {
  PPoly r = p;
  if (up13 > 0) r = r * PPoly::var(E13, up13);
  if (up24 > 0) r = r * PPoly::var(E24, up24);
  return r;
}

Frac operator+(const Frac& a, const Frac& b) {
  int d13 = std::max(a.d13_, b.d13_), d24 = std::max(a.d24_, b.d24_);
  PPoly num = padded(a.num_, d13 - a.d13_, d24 - a.d24_) +
              padded(b.num_, d13 - b.d13_, d24 - b.d24_);
  return Frac(std::move(num), d13, d24);
}

Frac operator-(const Frac& a, const Frac& b) { return a + (-b); }

Frac operator*(const Frac& a, const Frac& b) {
  return Frac(a.num_ * b.num_, a.d13_ + b.d13_, a.d24_ + b.d24_);
}

Frac Frac::operator-() const {
  Frac r = *this;
  r.num_ = -r.num_;
  return r;
}

Frac Frac::scaled(const Rat& c) const {
  return Frac(num_.scaled(c), d13_, d24_);
}

bool operator==(const Frac& a, const Frac& b) { return (a - b).isZero(); }

std::string Frac::str() const {
  std::string s = num_.str();
  if (d13_ == 0 && d24_ == 0) return s;
  std::ostringstream os;
  bool paren = num_.terms().size() > 1;
  os << (paren ? "(" : "") << s << (paren ? ")" : "") << "/(";
  bool dot = false;
  if (d13_ > 0) {
    os << "e13";
    if (d13_ > 1) os << "^" << d13_;
    dot = true;
  }
  if (d24_ > 0) {
    if (dot) os << "*";
    os << "e24";
    if (d24_ > 1) os << "^" << d24_;
  }
  os << ")";
  return os.str();
}

Cocycle2 Cocycle2::scalar(Frac f) {
  Cocycle2 c;
  c.n = 1;
  c.m[0][0] = std::move(f);
  return c;
}

Cocycle2 Cocycle2::mat(Frac a, Frac b, Frac cc, Frac d) {
  Cocycle2 c;
  c.n = 2;
  c.m[0][0] = std::move(a);
  c.m[0][1] = std::move(b);
  c.m[1][0] = std::move(cc);
  c.m[1][1] = std::move(d);
  return c;
}

Cocycle2 Cocycle2::mul(const Cocycle2& o) const {
  if (n != o.n) fail(Err::Internal, "cocycle size mismatch in product");
  Cocycle2 r;
  r.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Frac s;
      for (int k = 0; k < n; ++k) s = s + m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

Cocycle2 Cocycle2::transpose() const {
  Cocycle2 r = *this;
  if (n == 2) std::swap(r.m[0][1], r.m[1][0]);
  return r;
}

Frac Cocycle2::det() const {
  if (n == 1) return m[0][0];
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

bool Cocycle2::has(PVar v) const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j].has(v)) return true;
  return false;
}

bool Cocycle2::isIdentity() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(m[i][j] == (i == j ? Frac(Rat(1)) : Frac()))) return false;
  return true;
}

std::string Cocycle2::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < n; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < n; ++j) {
      if (j) os << ", ";
      os << m[i][j].str();
    }
  }
  os << "]";
  return os.str();
}

std::string refName(RefBundle b, int m) {
  switch (b) {
    case RefBundle::O: return "O";
    case RefBundle::L: {
      std::ostringstream os;
      os << "L^" << m;
      return os.str();
    }
    case RefBundle::T: return "T";
    case RefBundle::Tperp: return "Tperp";
    case RefBundle::H: return "H";
    case RefBundle::HL: return "H*L";
  }
  return "?";
}

namespace {
Frac over13(PVar v, bool neg = false) {
  Frac f(PPoly::var(v), 1, 0);
  return neg ? -f : f;
}
Frac over24(PVar v, bool neg = false) {
  Frac f(PPoly::var(v), 0, 1);
  return neg ? -f : f;
}
} // namespace

Cocycle2 referenceCocycle(RefBundle b, int mm) {
  switch (b) {
    case RefBundle::O:
      return Cocycle2::scalar(Frac(Rat(1)));
    case RefBundle::L:
      return Cocycle2::scalar(Frac::monomial(Rat(1), mm, -mm));
    case RefBundle::T:
      return Cocycle2::mat(over13(E14), over13(E34), over13(E12), over13(E23, true));
    case RefBundle::Tperp:
      return Cocycle2::mat(over13(E14), over13(E12), over13(E34), over13(E23, true));
    case RefBundle::H:
      return Cocycle2::mat(Frac::monomial(Rat(1), -2, 2), Frac::var(SymSlot), Frac(),
                           Frac(Rat(1)));
    case RefBundle::HL:
      return Cocycle2::mat(Frac::monomial(Rat(1), -1, 1), Frac::var(SymSlot), Frac(),
                           Frac::monomial(Rat(1), 1, -1));
  }
  fail(Err::Internal, "unknown reference bundle");
}

Cocycle2 referenceCocycleBack(RefBundle b, int mm) {
  switch (b) {
    case RefBundle::O:
      return Cocycle2::scalar(Frac(Rat(1)));
    case RefBundle::L:
      return Cocycle2::scalar(Frac::monomial(Rat(1), -mm, mm));
    case RefBundle::T:
      return Cocycle2::mat(over24(E23), over24(E34), over24(E12), over24(E14, true));
    case RefBundle::Tperp:
      return Cocycle2::mat(over24(E23), over24(E12), over24(E34), over24(E14, true));
    case RefBundle::H:
      return Cocycle2::mat(Frac::monomial(Rat(1), 2, -2),
                           -(Frac::var(SymSlot) * Frac::monomial(Rat(1), 2, -2)), Frac(),
                           Frac(Rat(1)));
    case RefBundle::HL:
      return Cocycle2::mat(Frac::monomial(Rat(1), 1, -1), -Frac::var(SymSlot), Frac(),
                           Frac::monomial(Rat(1), -1, 1));
  }
  fail(Err::Internal, "unknown reference bundle");
}

namespace {

// One linear equation over the rationals in the solver unknowns.
using Row = std::vector<Rat>;

// Collects the linear system for A*b - a*B = 0 entry by entry: each matrix
// entry expands into Frac-linear forms in the 2n^2 unknowns; clearing the
// entry's common denominator and reducing modulo the quadric turns every
// surviving monomial into one rational equation.
std::vector<Row> buildSystem(const Cocycle2& a, const Cocycle2& b) {
  int n = a.n;
  int nu = 2 * n * n;
  std::vector<Row> rows;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Frac> coef(nu);
      for (int r = 0; r < n; ++r) {
        coef[i * n + r] = coef[i * n + r] + b.m[r][j];          // A[i][r]
        coef[n * n + r * n + j] = coef[n * n + r * n + j] - a.m[i][r]; // B[r][j]
      }
      int d13 = 0, d24 = 0;
      for (const auto& f : coef) {
        d13 = std::max(d13, f.d13());
        d24 = std::max(d24, f.d24());
      }
      std::map<PMono, Row> byMono;
      for (int u = 0; u < nu; ++u) {
        PPoly p = padded(coef[u].num(), d13 - coef[u].d13(), d24 - coef[u].d24());
        for (const auto& [m, c] : p.terms()) {
          auto& row = byMono[m];
          if (row.empty()) row.assign(nu, Rat(0));
          row[u] = row[u] + c;
        }
      }
      for (auto& [m, row] : byMono) rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Reduced row echelon form over the rationals; returns a nullspace basis.
std::vector<Row> nullspace(std::vector<Row> rows, int nu) {
  std::vector<int> pivotCol;
  int r = 0;
  for (int c = 0; c < nu && r < static_cast<int>(rows.size()); ++c) {
    int sel = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][c].sign() != 0) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(rows[r], rows[sel]);
    Rat inv = Rat(1) / rows[r][c];
    for (int k = c; k < nu; ++k) rows[r][k] = rows[r][k] * inv;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][c].sign() == 0) continue;
      Rat f = rows[i][c];
      for (int k = c; k < nu; ++k) rows[i][k] = rows[i][k] - f * rows[r][k];
    }
    pivotCol.push_back(c);
    ++r;
  }
  std::vector<bool> isPivot(nu, false);
  for (int c : pivotCol) isPivot[c] = true;
  std::vector<Row> basis;
  for (int c = 0; c < nu; ++c) {
    if (isPivot[c]) continue;
    Row v(nu, Rat(0));
    v[c] = Rat(1);
    for (int i = 0; i < static_cast<int>(pivotCol.size()); ++i)
      v[pivotCol[i]] = -rows[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct Mats {
  std::array<std::array<Rat, 2>, 2> A{}, B{};
};

Mats unpack(const Row& x, int n) {
  Mats m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.A[i][j] = x[i * n + j];
      m.B[i][j] = x[n * n + i * n + j];
    }
  return m;
}

Rat detConst(const std::array<std::array<Rat, 2>, 2>& m, int n) {
  if (n == 1) return m[0][0];
  return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

bool verifyWitness(const Cocycle2& a, const Cocycle2& b, const Mats& w) {
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      Frac lhs, rhs;
      for (int r = 0; r < a.n; ++r) {
        lhs = lhs + b.m[r][j].scaled(w.A[i][r]);
        rhs = rhs + a.m[i][r].scaled(w.B[r][j]);
      }
      if (!(lhs == rhs)) return false;
    }
  return true;
}

// The determinant of A (or B) restricted to the solution space is a
// quadratic form in the nullspace coordinates; if it vanishes identically,
// no solution is invertible and the answer is a definitive no.
bool detVanishesOnSpan(const std::vector<Row>& basis, int n, bool second) {
  int off = second ? n * n : 0;
  auto entry = [&](const Row& v, int i, int j) { return v[off + i * n + j]; };
  int dim = static_cast<int>(basis.size());
  for (int d = 0; d < dim; ++d) {
    for (int e = d; e < dim; ++e) {
      Rat q(0);
      if (n == 1) {
        if (d != e) continue;
        q = entry(basis[d], 0, 0);
      } else {
        // Coefficient of x_d * x_e in det(sum_k x_k * M_k), both orders.
        q = entry(basis[d], 0, 0) * entry(basis[e], 1, 1) -
            entry(basis[d], 0, 1) * entry(basis[e], 1, 0);
        if (d != e)
          q = q + entry(basis[e], 0, 0) * entry(basis[d], 1, 1) -
              entry(basis[e], 0, 1) * entry(basis[d], 1, 0);
      }
      if (q.sign() != 0) return false;
    }
  }
  return true;
}

// Solves with any slot symbols treated as ordinary ring variables.
EquivResult solveDirect(const Cocycle2& a, const Cocycle2& b) {
  EquivResult res;
  int n = a.n;
  int nu = 2 * n * n;
  auto basis = nullspace(buildSystem(a, b), nu);
  if (basis.empty()) {
    res.status = EquivResult::Status::No;
    return res;
  }
  if (detVanishesOnSpan(basis, n, false) || detVanishesOnSpan(basis, n, true)) {
    res.status = EquivResult::Status::No;
    res.note = "every solution of the intertwining system is singular";
    return res;
  }
  int dim = static_cast<int>(basis.size());
  auto tryPoint = [&](const Row& x) -> bool {
    Mats w = unpack(x, n);
    if (detConst(w.A, n).sign() == 0 || detConst(w.B, n).sign() == 0) return false;
    if (!verifyWitness(a, b, w)) fail(Err::Internal, "solver witness fails exact check");
    res.status = EquivResult::Status::Yes;
    res.A = w.A;
    res.B = w.B;
    return true;
  };
  if (dim <= 4) {
    // Exhaustive small grid over the nullspace coefficients.
    std::vector<int> idx(dim, -2);
    for (;;) {
      Row x(nu, Rat(0));
      bool allZero = true;
      for (int d = 0; d < dim; ++d) {
        if (idx[d] != 0) allZero = false;
        for (int u = 0; u < nu; ++u) x[u] = x[u] + basis[d][u] * Rat(idx[d]);
      }
      if (!allZero && tryPoint(x)) return res;
      int d = 0;
      while (d < dim && ++idx[d] > 2) idx[d++] = -2;
      if (d == dim) break;
    }
  } else {
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      return static_cast<int>((state >> 33) % 7) - 3;
    };
    for (int trial = 0; trial < 4000; ++trial) {
      Row x(nu, Rat(0));
      bool allZero = true;
      for (int d = 0; d < dim; ++d) {
        int k = next();
        if (k != 0) allZero = false;
        for (int u = 0; u < nu; ++u) x[u] = x[u] + basis[d][u] * Rat(k);
      }
      if (!allZero && tryPoint(x)) return res;
    }
  }
  res.status = EquivResult::Status::Inconclusive;
  std::ostringstream os;
  os << "solution space has dimension " << dim
     << " but sampling found no invertible constant witness";
  res.note = os.str();
  return res;
}

// Substitutes slot := value into every entry of a copy of `c`.
Cocycle2 substSlot(const Cocycle2& c, const Frac& value) {
  Cocycle2 r;
  r.n = c.n;
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      Frac acc;
      for (const auto& [m, coefc] : c.m[i][j].num().terms()) {
        PMono rest = m;
        int pow = rest.e[SymSlot];
        rest.e[SymSlot] = 0;
        Frac t(PPoly::mono(rest, coefc), 0, 0);
        for (int k = 0; k < pow; ++k) t = t * value;
        acc = acc + t;
      }
      // Reapply the original denominator.
      r.m[i][j] = acc * Frac(PPoly(Rat(1)), c.m[i][j].d13(), c.m[i][j].d24());
    }
  return r;
}

} // namespace

EquivResult cocyclesEquivalent(const Cocycle2& a, const Cocycle2& b) {
  if (a.n != b.n) fail(Err::BadWord, "cocycle size mismatch");
  bool sa = a.has(SymSlot), sb = b.has(SymSlot);
  if (sa == sb) return solveDirect(a, b);

  // Exactly one side carries the free weight-2 symbol: let it range over
  // nonzero weight-2 monomials built from the dot symbol; constant factors
  // are absorbed by the basis-change matrices.
  const Cocycle2& slotted = sa ? a : b;
  const Cocycle2& plain = sa ? b : a;
  bool sawInconclusive = false;
  for (int al = -3; al <= 3; ++al) {
    for (int be = -3; be <= 3; ++be) {
      Frac value = Frac::monomial(Rat(1), al, be, true);
      Cocycle2 s = substSlot(slotted, value);
      EquivResult r = sa ? solveDirect(s, plain) : solveDirect(plain, s);
      if (r.status == EquivResult::Status::Yes) {
        r.usedSlot = true;
        r.slot = value;
        return r;
      }
      if (r.status == EquivResult::Status::Inconclusive) sawInconclusive = true;
    }
  }
  EquivResult res;
  if (sawInconclusive) {
    res.status = EquivResult::Status::Inconclusive;
    res.note = "some slot substitutions left an undecided solution space";
  } else {
    res.status = EquivResult::Status::No;
    res.note = "no weight-2 slot value admits constant invertible witnesses";
  }
  return res;
}

std::vector<RefMatch> matchReferences(const Cocycle2& c, std::vector<RefMatch>* inconclusive) {
  std::vector<std::pair<RefBundle, int>> cands;
  cands.push_back({RefBundle::O, 0});
  for (int m = -3; m <= 3; ++m)
    if (m != 0) cands.push_back({RefBundle::L, m});
  cands.push_back({RefBundle::T, 0});
  cands.push_back({RefBundle::Tperp, 0});
  cands.push_back({RefBundle::H, 0});
  cands.push_back({RefBundle::HL, 0});

  std::vector<RefMatch> out;
  for (auto [bundle, m] : cands) {
    Cocycle2 ref = referenceCocycle(bundle, m);
    if (ref.n != c.n) continue;
    EquivResult eq = cocyclesEquivalent(c, ref);
    if (eq.status == EquivResult::Status::Yes)
      out.push_back({bundle, m, std::move(eq)});
    else if (eq.status == EquivResult::Status::Inconclusive && inconclusive)
      inconclusive->push_back({bundle, m, std::move(eq)});
  }
  return out;
}

} // namespace ck
