#pragma once
#include <vector>

#include "cylklrw/element.hpp"
#include "cylklrw/word.hpp"

namespace ck {

// Winding data of a charge sector for the k-by-(n-k) rectangle: one
// ascending multiset of per-strand winding numbers for each black label
// m = 1..n-1 (the label-m diagonal of the rectangle has as many boxes as
// there are strands with that label).
struct ChargeTableau {
  int k = 0, n = 0;
  std::vector<std::vector<int>> diag; // diag[m-1], ascending

  bool operator==(const ChargeTableau&) const = default;
  bool operator<(const ChargeTableau& o) const { return diag < o.diag; }
};

// Number of boxes on each diagonal (the dimension vector of the rectangle).
std::vector<int> diagonalSizes(int k, int n);

// Scaling degree of the minimal diagram in the charge sector at red
// twisting degree ell: same-diagonal pairs contribute -2|a-b|, pairs on
// adjacent diagonals |a-b|, and each label-k entry a contributes
// |a| + |a - ell| from the two red strands, less a constant k*ell.
int tableauDegree(const ChargeTableau& t, int ell);

// Whether the canonical rectangle filling of the sector (each diagonal
// sorted so entries weakly decrease along rows and weakly increase down
// columns) satisfies those inequalities globally.
bool tableauMonotone(const ChargeTableau& t, int ell);

// All charge sectors with entries in [lo, hi] for every diagonal.
std::vector<ChargeTableau> enumerateTableaux(int k, int n, int lo, int hi);

// Those of the above with entries in [0, ell] and scaling degree zero.
std::vector<ChargeTableau> degreeZeroTableaux(int k, int n, int ell);

// Dimension of the space these sectors should count: the product over the
// rectangle's boxes of (ell + i + j - 1)/(i + j - 1).
long long weylDim(int k, int n, int ell);

// Charge sector of a reduced basis key over the given bottom word: the
// multiset of per-strand windings for each black label.
ChargeTableau tableauOfKey(const Word& bottom, const Key& key, int k, int n);

} // namespace ck
