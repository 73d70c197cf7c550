#include "cylklrw/tableau.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>

#include "cylklrw/error.hpp"

namespace ck {

std::vector<int> diagonalSizes(int k, int n) {
  if (k < 1 || n < 2 || k > n - 1) fail(Err::MalformedTableau, "need 1 <= k <= n-1");
  // Rectangle with rows i = 1..n-k and columns j = 1..k; the label-m
  // diagonal collects the boxes with i + j - 1 = m.
  std::vector<int> v(n - 1, 0);
  for (int i = 1; i <= n - k; ++i)
    for (int j = 1; j <= k; ++j) ++v[i + j - 2];
  return v;
}

int tableauDegree(const ChargeTableau& t, int ell) {
  if (ell < 0) fail(Err::MalformedTableau, "twisting degree must be non-negative");
  const int n = t.n, k = t.k;
  if (static_cast<int>(t.diag.size()) != n - 1)
    fail(Err::MalformedTableau, "wrong number of diagonals");
  int deg = 0;
  for (const auto& d : t.diag)
    for (std::size_t p = 0; p < d.size(); ++p)
      for (std::size_t q = p + 1; q < d.size(); ++q) deg -= 2 * std::abs(d[p] - d[q]);
  for (int m = 0; m + 1 < n - 1; ++m)
    for (int a : t.diag[m])
      for (int b : t.diag[m + 1]) deg += std::abs(a - b);
  // The two red strands sit beside the label-k and label-(n-k) diagonals;
  // the right one carries the twisting-degree shift.
  for (int a : t.diag[k - 1]) deg += std::abs(a);
  for (int a : t.diag[n - k - 1]) deg += std::abs(a - ell);
  return deg - k * ell;
}

bool tableauMonotone(const ChargeTableau& t, int ell) {
  const int n = t.n, k = t.k;
  const int rows = n - k, cols = k;
  // Canonical placement: along each diagonal the sorted entries ascend
  // with the row index.
  std::vector<std::vector<int>> a(rows + 1, std::vector<int>(cols + 1, 0));
  for (int m = 1; m <= n - 1; ++m) {
    std::vector<std::pair<int, int>> boxes; // (i, j), ascending i
    for (int i = 1; i <= rows; ++i) {
      int j = m + 1 - i;
      if (j >= 1 && j <= cols) boxes.emplace_back(i, j);
    }
    if (boxes.size() != t.diag[m - 1].size())
      fail(Err::MalformedTableau, "diagonal size mismatch");
    for (std::size_t q = 0; q < boxes.size(); ++q)
      a[boxes[q].first][boxes[q].second] = t.diag[m - 1][q];
  }
  for (int i = 1; i <= rows; ++i)
    for (int j = 1; j <= cols; ++j) {
      if (a[i][j] < 0 || a[i][j] > ell) return false;
      if (i > 1 && a[i - 1][j] > a[i][j]) return false;
      if (j > 1 && a[i][j] > a[i][j - 1]) return false;
    }
  return true;
}

std::vector<ChargeTableau> enumerateTableaux(int k, int n, int lo, int hi) {
  std::vector<int> sizes = diagonalSizes(k, n);
  std::vector<ChargeTableau> out;
  ChargeTableau cur;
  cur.k = k;
  cur.n = n;
  cur.diag.assign(n - 1, {});

  // Ascending multisets per diagonal, composed across diagonals.
  std::function<void(int)> perDiag = [&](int m) {
    if (m == n - 1) {
      out.push_back(cur);
      return;
    }
    std::vector<int>& d = cur.diag[m];
    std::function<void(int, int)> pick = [&](int idx, int minVal) {
      if (idx == sizes[m]) {
        perDiag(m + 1);
        return;
      }
      for (int v = minVal; v <= hi; ++v) {
        d.push_back(v);
        pick(idx + 1, v);
        d.pop_back();
      }
    };
    pick(0, lo);
  };
  perDiag(0);
  return out;
}

std::vector<ChargeTableau> degreeZeroTableaux(int k, int n, int ell) {
  std::vector<ChargeTableau> out;
  for (const ChargeTableau& t : enumerateTableaux(k, n, 0, ell))
    if (tableauDegree(t, ell) == 0) out.push_back(t);
  return out;
}

long long weylDim(int k, int n, int ell) {
  long long num = 1, den = 1;
  for (int i = 1; i <= n - k; ++i)
    for (int j = 1; j <= k; ++j) {
      num *= ell + i + j - 1;
      den *= i + j - 1;
      long long g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
  if (den != 1) fail(Err::Internal, "dimension product did not reduce to an integer");
  return num;
}

ChargeTableau tableauOfKey(const Word& bottom, const Key& key, int k, int n) {
  ChargeTableau t;
  t.k = k;
  t.n = n;
  t.diag.assign(n - 1, {});
  const auto& thin = bottom.thin();
  for (int s = 0; s < bottom.size(); ++s) {
    if (thin[s].color != Color::Black) continue;
    int m = thin[s].label;
    if (m < 1 || m > n - 1) fail(Err::MalformedTableau, "label outside 1..n-1");
    t.diag[m - 1].push_back(key.wind[s]);
  }
  std::vector<int> sizes = diagonalSizes(k, n);
  for (int m = 0; m < n - 1; ++m) {
    if (static_cast<int>(t.diag[m].size()) != sizes[m])
      fail(Err::MalformedTableau, "word does not match the rectangle's dimension vector");
    std::sort(t.diag[m].begin(), t.diag[m].end());
  }
  return t;
}

} // namespace ck
