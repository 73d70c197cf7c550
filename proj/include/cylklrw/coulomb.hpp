#pragma once
#include <string>
#include <vector>

#include "cylklrw/engine.hpp"
#include "cylklrw/word.hpp"

namespace ck {

// Dimension data and distinguished boundary words of the (n,k) theory.
struct CoulombSetup {
  int n = 0, k = 0;
  QuiverData quiver;
  Word thickE; // fused-pair form of the distinguished idempotent word
  Word thinE;  // same word with every pair written out

  static CoulombSetup make(int n, int k); // Err::BadWord for invalid (n,k)
};

// The idempotent on the distinguished word.
Element coulombIdempotent(Engine& E, const CoulombSetup& s);

// Degree-2 dot generator on the label-i slot of the distinguished word.
Element bullet(Engine& E, const CoulombSetup& s, int i);

// The six twist-1 coordinate elements for n=4, k=2 (1 <= i < j <= 4).
// Each is a single canonical diagram: identity matching, no dots, with the
// left red strand and a label-dependent set of black strands winding once.
Element pluckerD(Engine& E, const CoulombSetup& s, int i, int j);

// Strand windings of pluckerD(i,j) indexed by thin bottom position.
std::vector<int> pluckerWind(const CoulombSetup& s, int i, int j);

// Raising/lowering generators: a single label-i strand winds around the
// cylinder (positively for raising, negatively for lowering), scaled by
// a_i = -1 (raising) or b_i = +1 (lowering).
Element chevalley(Engine& E, const CoulombSetup& s, int i, bool raising);

struct Sl2Report {
  bool pass = false;
  bool exactBracket = false;  // [H,X]/h equalities hold before setting h=0
  std::vector<std::string> notes;
};

// For generator index i: H := [E_i,F_i]/h, then check [H,E_i]/h = 2E_i,
// [H,F_i]/h = -2F_i, and [E_i,F_j]/h = 0 for j != i.  Deformed mode.
Sl2Report verifySl2(Engine& E, const CoulombSetup& s, int i);

} // namespace ck
