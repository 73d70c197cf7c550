#include "cylklrw/coulomb.hpp"

#include <algorithm>

#include "cylklrw/error.hpp"

namespace ck {
namespace {

// Thin position of the first strand with the given black label.
int thinPosOfLabel(const Word& w, int label) {
  const auto& t = w.thin();
  for (int p = 0; p < static_cast<int>(t.size()); ++p)
    if (t[p].color == Color::Black && t[p].label == label) return p;
  fail(Err::BadWord, "label not present in word");
}

// Slot index of the first black slot with the given label.
int slotOfLabel(const Word& w, int label) {
  const auto& s = w.slots();
  for (int i = 0; i < static_cast<int>(s.size()); ++i)
    if (s[i].color == Color::Black && s[i].label == label) return i;
  fail(Err::BadWord, "label not present in word");
}

std::vector<int> identityTgt(int N) {
  std::vector<int> t(N);
  for (int i = 0; i < N; ++i) t[i] = i;
  return t;
}

} // namespace

CoulombSetup CoulombSetup::make(int n, int k) {
  if (n < 2 || k < 1 || 2 * k > n)
    fail(Err::BadWord, "need 1 <= k <= n/2");
  if (k > 2)
    fail(Err::BadWord, "black multiplicity above 2 is not supported");
  CoulombSetup s;
  s.n = n;
  s.k = k;
  s.quiver = QuiverData::make(n, k);
  s.thickE = s.quiver.thickE();
  s.thinE = s.quiver.thinE();
  return s;
}

Element coulombIdempotent(Engine& E, const CoulombSetup& s) {
  return E.idempotent(s.thickE);
}

Element bullet(Engine& E, const CoulombSetup& s, int i) {
  if (i < 1 || i > s.n - 1 || s.quiver.v[i - 1] == 0)
    fail(Err::BadWord, "no strand with that label");
  return E.dotted(s.thickE, slotOfLabel(s.thickE, i));
}

std::vector<int> pluckerWind(const CoulombSetup& s, int i, int j) {
  if (s.n != 4 || s.k != 2) fail(Err::BadWord, "coordinate elements need n=4, k=2");
  if (i < 1 || j > 4 || i >= j) fail(Err::BadWord, "need 1 <= i < j <= 4");
  // Net winding per black label (the left red winds once besides, giving
  // twist 1).  Indexed 12, 13, 14, 23, 24, 34.
  static const int table[6][3] = {
      {1, 2, 1}, {1, 1, 1}, {1, 1, 0}, {0, 1, 1}, {0, 1, 0}, {0, 0, 0}};
  int idx = (i == 1 ? j - 2 : i == 2 ? j : 5); // 12,13,14 | 23,24 | 34
  return {table[idx][0], table[idx][1], table[idx][2]};
}

Element pluckerD(Engine& E, const CoulombSetup& s, int i, int j) {
  std::vector<int> lab = pluckerWind(s, i, j);
  // Thin positions: 0 = left red, 1 = black 1, 2/3 = fused pair of 2s,
  // 4 = black 3, 5 = right red.  The left red always winds once.
  Key key;
  key.tgt = identityTgt(6);
  key.wind.assign(6, 0);
  key.dots.assign(6, 0);
  key.wind[0] = 1;
  key.wind[1] = lab[0];
  key.wind[4] = lab[2];
  if (lab[1] == 1) {
    // One member of the fused pair unwraps: the right twin winds once and
    // lands back on the left side of its partner.  No projector dot; the
    // pair is split for the whole journey.
    key.tgt[2] = 3;
    key.tgt[3] = 2;
    key.wind[3] = 1;
  } else {
    // The pair either stays put or travels around intact.  A stationary
    // pair is the projector itself (dot on the left member) times the red
    // winding; an intact traveling pair carries the dot on the right
    // member, the sign convention under which the quadric relation among
    // the six coordinates holds with its standard alternating signs.
    key.wind[2] = lab[1] / 2;
    key.wind[3] = lab[1] / 2;
    key.dots[lab[1] == 0 ? 2 : 3] = 1;
  }
  Element out(E.mode(), s.thickE, s.thickE);
  out.add(key, Poly(1));
  return out;
}

Element chevalley(Engine& E, const CoulombSetup& s, int i, bool raising) {
  if (i < 1 || i > s.n - 1 || s.quiver.v[i - 1] == 0)
    fail(Err::BadWord, "no strand with that label");
  const Word& w = s.thickE;
  int N = w.size();
  int p = thinPosOfLabel(w, i);
  Element out(E.mode(), w, w);
  Key key;
  key.tgt = identityTgt(N);
  key.wind.assign(N, 0);
  key.dots.assign(N, 0);
  if (s.quiver.v[i - 1] == 1) {
    // Thin slot: that strand winds; every fused pair keeps its projector dot.
    key.wind[p] = raising ? 1 : -1;
    for (const auto& pr : w.thickPairs()) key.dots[pr.first] = 1;
  } else {
    // Fused pair: one member unwraps from the pair, winds around and
    // rejoins on the other side; no projector dot on the split pair.
    int l = p, r = p + 1;
    if (raising) {
      key.tgt[r] = l; // right twin winds +1 and lands on the left
      key.tgt[l] = r;
      key.wind[r] = 1;
    } else {
      key.tgt[l] = r; // left twin winds -1 and lands on the right
      key.tgt[r] = l;
      key.wind[l] = -1;
    }
    for (const auto& pr : w.thickPairs())
      if (pr.first != l) key.dots[pr.first] = 1;
  }
  out.add(key, Poly(raising ? -1 : 1));
  return out;
}

Sl2Report verifySl2(Engine& E, const CoulombSetup& s, int i) {
  Sl2Report rep;
  if (E.mode() != Mode::Deformed) fail(Err::BadWord, "sl2 check needs deformed mode");
  Element e = chevalley(E, s, i, true);
  Element f = chevalley(E, s, i, false);
  Element h = E.commutatorOverH(e, f);
  Element he = E.commutatorOverH(h, e);
  Element hf = E.commutatorOverH(h, f);
  bool exactE = E.equal(he, e.scaled(Poly(2)));
  bool exactF = E.equal(hf, f.scaled(Poly(-2)));
  rep.exactBracket = exactE && exactF;
  bool okE = exactE, okF = exactF;
  if (!okE) {
    okE = E.equal(he.specializePlain(), e.scaled(Poly(2)).specializePlain());
    rep.notes.push_back("[H,E]/h = 2E holds only in the classical limit");
  }
  if (!okF) {
    okF = E.equal(hf.specializePlain(), f.scaled(Poly(-2)).specializePlain());
    rep.notes.push_back("[H,F]/h = -2F holds only in the classical limit");
  }
  bool okCross = true;
  for (int j = 1; j <= s.n - 1; ++j) {
    if (j == i || s.quiver.v[j - 1] == 0) continue;
    Element fj = chevalley(E, s, j, false);
    Element c = E.commutator(e, fj);
    if (!E.isZero(c)) {
      okCross = false;
      rep.notes.push_back("[E_" + std::to_string(i) + ", F_" + std::to_string(j) +
                          "] != 0");
    }
  }
  rep.pass = okE && okF && okCross;
  return rep;
}

} // namespace ck
