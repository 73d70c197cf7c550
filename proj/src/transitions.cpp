#include "cylklrw/transitions.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cylklrw/geometry.hpp"
#include "cylklrw/golden.hpp"
#include "cylklrw/gradings.hpp"

namespace ck {

namespace {

// ---------------------------------------------------------------------------
// Crossing counts in the cylinder.
//
// A strand runs from bottom thin position p (of N) to top thin position t
// with net seam winding w.  Lifting to the universal cover, the bottom
// abscissa is (p + 1/2)/N and the top abscissa is (t + 1/2)/N + w.  Two
// strands cross |floor(dTop) - floor(dBottom)| times, where dBottom and
// dTop are the differences of the abscissae (geodesic representatives).
// ---------------------------------------------------------------------------

long floorDiv(long a, long b) {
  long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

int crossingsBetween(int N, int pi, int ti, int wi, int pj, int tj, int wj) {
  long db = floorDiv(pi - pj, N);
  long dt = floorDiv((ti - tj) + static_cast<long>(N) * (wi - wj), N);
  return static_cast<int>(dt > db ? dt - db : db - dt);
}

// ---------------------------------------------------------------------------
// Catalog data.
// ---------------------------------------------------------------------------

const char* kCatalogWords[] = {
    "R2 1 2(2) 3 R2",  // OWord
    "R2 R2 1 2(2) 3",  // LInverse
    "R2 2 1 3 2 R2",   // W2132
    "R2 R2 2 3 1 2",   // W2312
    "R2 2 3 R2 2 1",   // W2321
    "R2 2 1 R2 2 3",   // W2123
};

const char* kCatalogNames[] = {"wO", "wLinv", "w2132", "w2312", "w2321", "w2123"};

int cwIndex(CatalogWord w) { return static_cast<int>(w); }

} // namespace

const char* catalogName(CatalogWord w) { return kCatalogNames[cwIndex(w)]; }

Word catalogWord(CatalogWord w) { return Word::parse(kCatalogWords[cwIndex(w)]); }

int catalogRank(CatalogWord w) {
  return (w == CatalogWord::OWord || w == CatalogWord::LInverse) ? 1 : 2;
}

RefBundle catalogBundle(CatalogWord w) {
  switch (w) {
    case CatalogWord::OWord: return RefBundle::O;
    case CatalogWord::LInverse: return RefBundle::L;
    case CatalogWord::W2132: return RefBundle::HL;
    case CatalogWord::W2312: return RefBundle::H;
    case CatalogWord::W2321: return RefBundle::Tperp;
    case CatalogWord::W2123: return RefBundle::T;
  }
  throw Error(Err::Internal, "catalogBundle: bad enum");
}

int catalogBundlePower(CatalogWord w) {
  return w == CatalogWord::LInverse ? -1 : 0;
}

// ---------------------------------------------------------------------------
// Word classification.
// ---------------------------------------------------------------------------

namespace {

bool isBlack2(const Slot& s) { return s.color == Color::Black && s.label == 2; }

// Checks the (4,2) letter multiset: two thin label-2 reds, one black 1,
// one black 3, black 2s of total thickness two (fused or two thin slots).
void validate42(const Word& w) {
  int reds = 0, b1 = 0, b3 = 0, b2thick = 0, b2slots = 0;
  for (const Slot& s : w.slots()) {
    if (s.color == Color::Red) {
      if (s.label != 2 || s.thickness != 1)
        throw Error(Err::BadWord, "red slots must be thin with label 2");
      ++reds;
      continue;
    }
    if (s.label == 2) {
      if (s.thickness < 1 || s.thickness > 2)
        throw Error(Err::BadWord, "black 2 slots must have thickness 1 or 2");
      b2thick += s.thickness;
      ++b2slots;
    } else if (s.label == 1 && s.thickness == 1) {
      ++b1;
    } else if (s.label == 3 && s.thickness == 1) {
      ++b3;
    } else {
      throw Error(Err::BadWord, "unexpected letter " + w.str());
    }
  }
  if (reds != 2 || b1 != 1 || b3 != 1 || b2thick != 2)
    throw Error(Err::BadWord, "letter multiset does not match the (4,2) theory: " + w.str());
  (void)b2slots;
}

// Canonicalizes a word containing the fused black-2 pair: letters are
// rotated to the front until the fused slot is last (a red crossing the
// seam shifts the class by L^{-1}, tracked in `s`), then the free letters
// are sorted with reds first.  Returns the summand for the accumulated
// shift.
WordSummand thickSummand(std::vector<Slot> letters, int s) {
  auto isThick = [](const Slot& sl) { return sl.color == Color::Black && sl.thickness == 2; };
  int guard = 0;
  while (!isThick(letters.back())) {
    Slot moved = letters.back();
    letters.pop_back();
    if (moved.color == Color::Red) --s;
    letters.insert(letters.begin(), moved);
    if (++guard > 16) throw Error(Err::Internal, "thickSummand: rotation did not terminate");
  }
  // The free letters always sort to [red, red, 1, 3]; the fused family has
  // exactly two members at shift -1 (both reds left of the fused pair after
  // one seam passage) and shift 0.
  if (s == -1) return WordSummand{CatalogWord::OWord, 0, 1};
  if (s == 0) return WordSummand{CatalogWord::LInverse, 0, 1};
  return WordSummand{CatalogWord::OWord, -(s + 1), 1};
}

std::string summandStr(const WordSummand& s) {
  std::string out = catalogName(s.base);
  if (s.lshift != 0) out += "*L^" + std::to_string(s.lshift);
  return out;
}

} // namespace

WordClass classifyWord(const Word& w) {
  validate42(w);
  const std::vector<Slot>& slots = w.slots();
  WordClass out;

  if (w.maxThickness() == 2) {
    out.summands.push_back(thickSummand(slots, 0));
  } else {
    // Thin word: locate the two black-2 walls.
    std::vector<int> walls;
    for (int i = 0; i < static_cast<int>(slots.size()); ++i)
      if (isBlack2(slots[i])) walls.push_back(i);
    const int w1 = walls[0], w2 = walls[1];
    std::vector<Slot> gapIn(slots.begin() + w1 + 1, slots.begin() + w2);
    const int inSize = static_cast<int>(gapIn.size());

    if (inSize == 4 || inSize == 3) {
      // The walls are adjacent, or separated by one letter, only through
      // the seam; no reordering move takes a black 2 across the seam.
      throw Error(Err::UnsupportedWord,
                  "the black-2 pair meets across the seam; no catalog form: " + w.str());
    }

    if (inSize == 0) {
      // Adjacent walls fuse; the module doubles.
      std::vector<Slot> merged(slots.begin(), slots.begin() + w1);
      merged.push_back(Slot{Color::Black, 2, 2});
      merged.insert(merged.end(), slots.begin() + w2 + 1, slots.end());
      WordSummand s = thickSummand(merged, 0);
      out.summands.push_back(s);
      out.summands.push_back(s);
    } else if (inSize == 1) {
      // A single letter between the walls splits off to either side of the
      // fused pair.
      for (int side = 0; side < 2; ++side) {
        std::vector<Slot> word(slots.begin(), slots.begin() + w1);
        if (side == 0) {
          word.push_back(gapIn[0]);
          word.push_back(Slot{Color::Black, 2, 2});
        } else {
          word.push_back(Slot{Color::Black, 2, 2});
          word.push_back(gapIn[0]);
        }
        word.insert(word.end(), slots.begin() + w2 + 1, slots.end());
        out.summands.push_back(thickSummand(word, 0));
      }
    } else { // inSize == 2: both gaps have two letters
      int s = 0;
      std::vector<Slot> gapSeam;
      for (int i = w2 + 1; i < static_cast<int>(slots.size()); ++i) {
        // Pulled to the front across the seam during canonicalization.
        if (slots[i].color == Color::Red) --s;
        gapSeam.push_back(slots[i]);
      }
      for (int i = 0; i < w1; ++i) gapSeam.push_back(slots[i]);

      int seamReds = 0, seamBlackLabel = 0;
      for (const Slot& sl : gapSeam) {
        if (sl.color == Color::Red) ++seamReds;
        else seamBlackLabel += sl.label;
      }
      if (seamReds == 0) {
        throw Error(Err::UnsupportedWord,
                    "both reds are trapped between the black-2 walls: " + w.str());
      }
      if (seamReds == 2) {
        // Both reds in the seam gap; family with two distinguished shifts.
        if (s == -1) out.summands.push_back(WordSummand{CatalogWord::W2132, 0, 2});
        else if (s == 0) out.summands.push_back(WordSummand{CatalogWord::W2312, 0, 2});
        else out.summands.push_back(WordSummand{CatalogWord::W2312, -s, 2});
      } else {
        // One red per gap; the seam-gap black label picks the class.
        CatalogWord base =
            (seamBlackLabel == 1) ? CatalogWord::W2321 : CatalogWord::W2123;
        out.summands.push_back(WordSummand{base, -s, 2});
      }
    }
  }

  for (auto& s : out.summands) s.rank = catalogRank(s.base);
  std::string key;
  for (size_t i = 0; i < out.summands.size(); ++i) {
    if (i) key += " (+) ";
    key += summandStr(out.summands[i]);
  }
  out.canonicalKey = key;
  return out;
}

long wordRank(const Word& w) {
  static const long fact[] = {1, 1, 2, 6, 24, 120, 720, 5040};
  std::map<int, int> total; // black label -> thin multiplicity
  long denom = 1;
  for (const Slot& s : w.slots()) {
    if (s.color != Color::Black) continue;
    total[s.label] += s.thickness;
    if (s.thickness < 0 || s.thickness > 7)
      throw Error(Err::BadWord, "slot thickness out of range");
    denom *= fact[s.thickness];
  }
  long num = 1;
  for (auto& [label, v] : total) {
    (void)label;
    if (v > 7) throw Error(Err::BadWord, "label multiplicity out of range");
    num *= fact[v];
  }
  return num / denom;
}

// ---------------------------------------------------------------------------
// Generators.
// ---------------------------------------------------------------------------

const char* patchName(Patch p) { return p == Patch::D13 ? "d13" : "d24"; }

Element patchD(Engine& E, const CoulombSetup& setup, Patch p) {
  return p == Patch::D13 ? pluckerD(E, setup, 1, 3) : pluckerD(E, setup, 2, 4);
}

namespace {

struct ThinLayout {
  int leftRed = -1, rightRed = -1; // in word (= position) order
  int b2L = -1, b2R = -1;          // thin black 2s in position order
  int b1 = -1, b3 = -1;
  int thickL = -1, thickR = -1;    // fused pair members, if present
};

ThinLayout layoutOf(const Word& w) {
  ThinLayout L;
  const auto& thin = w.thin();
  for (int i = 0; i < static_cast<int>(thin.size()); ++i) {
    const Endpoint& e = thin[i];
    if (e.color == Color::Red) {
      (L.leftRed < 0 ? L.leftRed : L.rightRed) = i;
    } else if (e.label == 1) {
      L.b1 = i;
    } else if (e.label == 3) {
      L.b3 = i;
    } else if (w.isThickLeft(i)) {
      L.thickL = i;
      L.thickR = i + 1;
    } else if (L.thickL < 0 || i != L.thickR) {
      (L.b2L < 0 ? L.b2L : L.b2R) = i;
    }
  }
  return L;
}

// Unique winding in [lo, hi] making the (p,t,w) strand cross the fixed
// strand (pf,tf,wf) zero times.  Throws if none or several exist.
int uniqueAvoidingWind(int N, int p, int t, int pf, int tf, int wf, int lo, int hi,
                       const char* what) {
  int found = 0, wind = 0;
  for (int w = lo; w <= hi; ++w) {
    if (crossingsBetween(N, p, t, w, pf, tf, wf) == 0) {
      ++found;
      wind = w;
    }
  }
  if (found != 1)
    throw Error(Err::Internal, std::string("generator construction: ") + what +
                                   ": expected a unique non-crossing winding, found " +
                                   std::to_string(found));
  return wind;
}

Element keyElement(Engine& E, const Word& bottom, const Word& top,
                   const std::vector<int>& tgt, const std::vector<int>& wind) {
  Key key;
  key.tgt = tgt;
  key.wind = wind;
  key.dots.assign(tgt.size(), 0);
  Element el(E.options().mode, bottom, top);
  el.add(key, Poly(1));
  if (!replays(bottom, canonicalHaps(tgt, wind, static_cast<int>(tgt.size()))))
    throw Error(Err::Internal, "generator construction: diagram does not replay");
  return el;
}

} // namespace

GeneratorDiagram buildGenerator(Engine& E, const CoulombSetup& setup, CatalogWord w,
                                Patch p, int index, int k) {
  if (setup.n != 4 || setup.k != 2)
    throw Error(Err::BadWord, "generators are defined for the (4,2) theory");
  if (catalogRank(w) != 2)
    throw Error(Err::BadWord, "buildGenerator requires a rank-2 catalog word");
  if (index != 1 && index != 2)
    throw Error(Err::BadWord, "generator index must be 1 or 2");
  if (k < 1) throw Error(Err::BadWord, "winding multiplicity must be >= 1");

  const Word bottom = catalogWord(w);
  const Word top = setup.thickE; // thin layout: R 1 [2 2] 3 R
  const int N = 6;
  ThinLayout L = layoutOf(bottom);

  std::vector<int> tgt(N, -1), wind(N, 0);
  tgt[L.leftRed] = 0;
  wind[L.leftRed] = k;
  tgt[L.rightRed] = 5;
  wind[L.rightRed] = 0;

  // Tie each black 2 to a red: straight pairing for the first generator,
  // crossed for the second.
  const int tieL = (index == 1) ? L.leftRed : L.rightRed; // red tied to b2L
  const int tieR = (index == 1) ? L.rightRed : L.leftRed; // red tied to b2R

  // Joint choice of top slots {2,3} for the two black 2s: each must avoid
  // its tied red; between the two admissible layouts, take the one with
  // fewer mutual crossings.
  int bestScore = -1, bestTL = -1, bestWL = 0, bestWR = 0;
  for (int swap = 0; swap < 2; ++swap) {
    const int tL = swap ? 3 : 2, tR = swap ? 2 : 3;
    const int wL = uniqueAvoidingWind(N, L.b2L, tL, tieL, tgt[tieL], wind[tieL],
                                      wind[tieL] - 4, wind[tieL] + 4, "tied black 2");
    const int wR = uniqueAvoidingWind(N, L.b2R, tR, tieR, tgt[tieR], wind[tieR],
                                      wind[tieR] - 4, wind[tieR] + 4, "tied black 2");
    const int mutual = crossingsBetween(N, L.b2L, tL, wL, L.b2R, tR, wR);
    if (bestScore < 0 || mutual < bestScore) {
      bestScore = mutual;
      bestTL = tL;
      bestWL = wL;
      bestWR = wR;
    }
  }
  tgt[L.b2L] = bestTL;
  wind[L.b2L] = bestWL;
  tgt[L.b2R] = 5 - bestTL;
  wind[L.b2R] = bestWR;

  // The thin blacks avoid the black 2 tied to the patch's red.
  const int avoid = (p == Patch::D13) ? ((index == 1) ? L.b2L : L.b2R)
                                      : ((index == 1) ? L.b2R : L.b2L);
  tgt[L.b1] = 1;
  wind[L.b1] = uniqueAvoidingWind(N, L.b1, 1, avoid, tgt[avoid], wind[avoid], -5, 5,
                                  "thin black 1");
  tgt[L.b3] = 4;
  wind[L.b3] = uniqueAvoidingWind(N, L.b3, 4, avoid, tgt[avoid], wind[avoid], -5, 5,
                                  "thin black 3");

  GeneratorDiagram g;
  g.bottom = bottom;
  g.patch = p;
  g.index = index;
  g.twist = k;
  g.element = keyElement(E, bottom, top, tgt, wind);
  if (elementGradings(g.element).twist != k)
    throw Error(Err::Internal, "generator construction: twist mismatch");
  return g;
}

GeneratorDiagram buildLineGenerator(Engine& E, const CoulombSetup& setup,
                                    const Word& bottom, int twist) {
  if (setup.n != 4 || setup.k != 2)
    throw Error(Err::BadWord, "generators are defined for the (4,2) theory");
  validate42(bottom);
  if (bottom.maxThickness() != 2)
    throw Error(Err::BadWord, "buildLineGenerator requires the fused black-2 pair");

  const Word top = setup.thickE;
  const int N = 6;
  ThinLayout L = layoutOf(bottom);

  std::vector<int> tgt(N, -1), wind(N, 0);
  tgt[L.leftRed] = 0;
  wind[L.leftRed] = twist;
  tgt[L.rightRed] = 5;
  wind[L.rightRed] = 0;

  // The fused pair avoids both reds; its members share one winding.
  int found = 0, thickWind = 0;
  for (int w = -5; w <= 5; ++w) {
    bool ok = true;
    for (int m = 0; m < 2 && ok; ++m) {
      const int pos = m ? L.thickR : L.thickL, t = m ? 3 : 2;
      ok = crossingsBetween(N, pos, t, w, L.leftRed, 0, twist) == 0 &&
           crossingsBetween(N, pos, t, w, L.rightRed, 5, 0) == 0;
    }
    if (ok) {
      ++found;
      thickWind = w;
    }
  }
  if (found != 1)
    throw Error(Err::Internal, "generator construction: fused pair winding not unique");
  tgt[L.thickL] = 2;
  wind[L.thickL] = thickWind;
  tgt[L.thickR] = 3;
  wind[L.thickR] = thickWind;

  // Thin blacks avoid both members of the fused pair.
  for (int which = 0; which < 2; ++which) {
    const int pos = which ? L.b3 : L.b1, t = which ? 4 : 1;
    int cnt = 0, wsel = 0;
    for (int w = -5; w <= 5; ++w) {
      if (crossingsBetween(N, pos, t, w, L.thickL, 2, thickWind) == 0 &&
          crossingsBetween(N, pos, t, w, L.thickR, 3, thickWind) == 0) {
        ++cnt;
        wsel = w;
      }
    }
    if (cnt != 1)
      throw Error(Err::Internal, "generator construction: thin black winding not unique");
    tgt[pos] = t;
    wind[pos] = wsel;
  }

  GeneratorDiagram g;
  g.bottom = bottom;
  g.patch = Patch::D13;
  g.index = 1;
  g.twist = twist;
  g.element = keyElement(E, bottom, top, tgt, wind);
  if (elementGradings(g.element).twist != twist)
    throw Error(Err::Internal, "generator construction: twist mismatch");
  return g;
}

// ---------------------------------------------------------------------------
// Golden-record validation.
// ---------------------------------------------------------------------------

namespace {

CatalogWord catalogOfWordString(const std::string& text) {
  Word w = Word::parse(text);
  for (int i = 0; i < 6; ++i) {
    CatalogWord cw = static_cast<CatalogWord>(i);
    if (catalogWord(cw) == w) return cw;
  }
  throw Error(Err::BadWord, "word is not one of the catalog words: " + text);
}

std::string vecStr(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

} // namespace

std::vector<GoldenCheck> validateGoldenGenerators(Engine& E, const CoulombSetup& setup) {
  std::vector<GoldenCheck> out;
  for (const GoldenRecord& rec : loadGolden("generators.klrw")) {
    GoldenCheck chk;
    chk.name = rec.name;
    try {
      const std::vector<int> wantWind = rec.nums("wind");
      const int wantTwist = rec.num("twist");

      if (rec.name == "line.inverse") {
        const std::vector<int> wantTgt = rec.nums("tgt");
        GeneratorDiagram g =
            buildLineGenerator(E, setup, Word::parse(rec.str("word")), wantTwist);
        const Key& key = g.element.terms().begin()->first;
        chk.pass = key.tgt == wantTgt && key.wind == wantWind;
        if (!chk.pass)
          chk.detail = "built tgt=" + vecStr(key.tgt) + " wind=" + vecStr(key.wind);
        out.push_back(chk);
        continue;
      }

      // Names look like w2312.patch13.gen1[.shifted].
      const bool shifted = rec.name.size() > 8 &&
                           rec.name.compare(rec.name.size() - 8, 8, ".shifted") == 0;
      const CatalogWord cw = catalogOfWordString(rec.str("word"));
      const Patch p = rec.name.find(".patch13.") != std::string::npos ? Patch::D13
                                                                      : Patch::D24;
      const int index = rec.name.find(".gen1") != std::string::npos ? 1 : 2;

      if (shifted) {
        // The record transcribes the product of the patch coordinate with
        // the first generator, one twist level up.
        GeneratorDiagram base = buildGenerator(E, setup, cw, p, index, wantTwist - 1);
        Element prod = E.multiply(patchD(E, setup, p), base.element);
        chk.pass = prod.termCount() == 1;
        if (chk.pass) {
          const Key& key = prod.terms().begin()->first;
          chk.pass = key.wind == wantWind &&
                     elementGradings(prod).twist == wantTwist;
          if (!chk.pass) chk.detail = "product wind=" + vecStr(key.wind);
        } else {
          chk.detail = "product has " + std::to_string(prod.termCount()) + " terms";
        }
      } else {
        GeneratorDiagram g = buildGenerator(E, setup, cw, p, index, wantTwist);
        const Key& key = g.element.terms().begin()->first;
        chk.pass = key.wind == wantWind;
        if (!chk.pass) chk.detail = "built wind=" + vecStr(key.wind);
      }
    } catch (const Error& err) {
      chk.pass = false;
      chk.detail = err.what();
    }
    out.push_back(chk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Transition identities and cocycles.
// ---------------------------------------------------------------------------

namespace {

struct TransTerm {
  int j;                                  // generator index on the d24 side
  int sign;                               // +1 or -1
  bool bulletSum;                         // multiply by (dot1 - dot2 + dot3)
  std::vector<std::pair<int, int>> ds;    // coordinate factors d_ab
};

struct TransIdent {
  int i;                                  // generator index on the d13 side
  int d24Pow;                             // left side: d24^pow * gen13_i
  std::vector<TransTerm> rhs;
};

struct TransData {
  std::array<int, 2> k13{}; // twist of gen13_1, gen13_2
  std::array<int, 2> k24{};
  std::vector<TransIdent> idents;
};

const TransData& transData(CatalogWord w) {
  static const std::map<CatalogWord, TransData> tbl = {
      {CatalogWord::W2132,
       {{1, 1},
        {1, 1},
        {{1, 2, {{1, +1, false, {{1, 3}, {1, 3}}}, {2, +1, true, {{2, 4}, {1, 3}}}}},
         {2, 0, {{2, +1, false, {}}}}}}},
      {CatalogWord::W2312,
       {{1, 2},
        {1, 2},
        {{1, 1, {{1, +1, false, {{1, 3}}}, {2, +1, true, {}}}},
         {2, 0, {{2, +1, false, {}}}}}}},
      {CatalogWord::W2321,
       {{1, 1},
        {1, 1},
        {{1, 1, {{1, +1, false, {{2, 3}}}, {2, -1, false, {{1, 2}}}}},
         {2, 1, {{1, +1, false, {{3, 4}}}, {2, +1, false, {{1, 4}}}}}}}},
      {CatalogWord::W2123,
       {{1, 1},
        {1, 1},
        {{1, 1, {{1, +1, false, {{1, 4}}}, {2, +1, false, {{1, 2}}}}},
         {2, 1, {{1, -1, false, {{3, 4}}}, {2, +1, false, {{2, 3}}}}}}}},
  };
  return tbl.at(w);
}

PVar evar(int a, int b) {
  if (a == 1 && b == 2) return E12;
  if (a == 1 && b == 3) return E13;
  if (a == 1 && b == 4) return E14;
  if (a == 2 && b == 3) return E23;
  if (a == 2 && b == 4) return E24;
  if (a == 3 && b == 4) return E34;
  throw Error(Err::Internal, "evar: bad coordinate pair");
}

// dot1 - dot2 + dot3 on the distinguished word: the degree-2 element the
// printed identities abbreviate.
Element bulletC(Engine& E, const CoulombSetup& setup) {
  Element c = bullet(E, setup, 1);
  c -= bullet(E, setup, 2);
  c += bullet(E, setup, 3);
  return c;
}

std::string identDescription(const TransIdent& id) {
  std::ostringstream os;
  if (id.d24Pow == 0) {
    os << "z13_" << id.i;
  } else {
    os << "d24";
    if (id.d24Pow > 1) os << "^" << id.d24Pow;
    os << " * z13_" << id.i;
  }
  os << " = ";
  bool first = true;
  for (const TransTerm& t : id.rhs) {
    if (!first) os << (t.sign > 0 ? " + " : " - ");
    else if (t.sign < 0) os << "-";
    first = false;
    if (t.bulletSum) os << "c * ";
    for (auto [a, b] : t.ds) os << "d" << a << b << " * ";
    os << "z24_" << t.j;
  }
  return os.str();
}

// Divides by a fraction whose numerator is a single monomial in d13, d24
// (all the dets that arise are of this shape).
Frac divideByMonomial(const Frac& x, const Frac& det) {
  if (det.num().terms().size() != 1)
    throw Error(Err::Internal, "cocycle determinant is not a monomial");
  const auto& [mono, coeff] = *det.num().terms().begin();
  for (int v = 0; v < PVarCount; ++v)
    if (mono.e[v] != 0 && v != E13 && v != E24)
      throw Error(Err::Internal, "cocycle determinant is not a chart unit");
  const int a = mono.e[E13] - det.d13(), b = mono.e[E24] - det.d24();
  return x * Frac::monomial(Rat(1) / coeff, -a, -b);
}

Cocycle2 inverseCocycle(const Cocycle2& c) {
  const Frac det = c.det();
  if (c.n == 1) return Cocycle2::scalar(divideByMonomial(Frac(Rat(1)), det));
  Cocycle2 adj = Cocycle2::mat(c.m[1][1], -c.m[0][1], -c.m[1][0], c.m[0][0]);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) adj.m[i][j] = divideByMonomial(adj.m[i][j], det);
  return adj;
}

} // namespace

TransitionReport verifyTransition(Engine& E, const CoulombSetup& setup, CatalogWord w) {
  TransitionReport rep;
  rep.word = w;
  rep.rank = catalogRank(w);

  if (rep.rank == 1) {
    const int t = (w == CatalogWord::OWord) ? 0 : 1;
    GeneratorDiagram g = buildLineGenerator(E, setup, catalogWord(w), t);
    // One generator serves both charts; the identity set degenerates to the
    // statement that it is a single nonzero element (for the un-twisted word,
    // the idempotent itself).
    IdentityCheck c1;
    c1.description = "shared generator is nonzero";
    c1.pass = !E.isZero(g.element);
    rep.identities.push_back(c1);
    if (w == CatalogWord::OWord) {
      IdentityCheck c2;
      c2.description = "shared generator equals the idempotent";
      c2.pass = E.equal(g.element, coulombIdempotent(E, setup));
      rep.identities.push_back(c2);
    }
    // Twist-0 bases: d13^-t g on the first chart, d24^-t g on the second;
    // the first expands in the second with coefficient (d24/d13)^t.
    rep.cocycle = Cocycle2::scalar(Frac::monomial(Rat(1), -t, t));
  } else {
    const TransData& td = transData(w);
    std::array<Element, 2> z13, z24;
    for (int i = 0; i < 2; ++i) {
      z13[i] = buildGenerator(E, setup, w, Patch::D13, i + 1, td.k13[i]).element;
      z24[i] = buildGenerator(E, setup, w, Patch::D24, i + 1, td.k24[i]).element;
    }
    const Element d13 = patchD(E, setup, Patch::D13);
    const Element d24 = patchD(E, setup, Patch::D24);
    const Element c = bulletC(E, setup);

    // Raw transition matrix: row i expands the twist-normalized d13
    // generator i in the twist-normalized d24 generators.
    Frac raw[2][2];

    for (const TransIdent& id : td.idents) {
      Element lhs = z13[id.i - 1];
      for (int q = 0; q < id.d24Pow; ++q) lhs = E.multiply(d24, lhs);

      Element rhs(E.options().mode, lhs.bottom(), lhs.top());
      for (const TransTerm& t : id.rhs) {
        std::vector<Element> factors;
        if (t.bulletSum) factors.push_back(c);
        for (auto [a, b] : t.ds) factors.push_back(pluckerD(E, setup, a, b));
        factors.push_back(z24[t.j - 1]);
        Element prod = factors.size() == 1 ? factors[0] : E.multiply(factors);
        if (t.sign < 0) prod = -prod;
        rhs += prod;

        Frac f = Frac::monomial(Rat(t.sign), -td.k13[id.i - 1],
                                td.k24[t.j - 1] - id.d24Pow, t.bulletSum);
        for (auto [a, b] : t.ds) f = f * Frac::var(evar(a, b));
        raw[id.i - 1][t.j - 1] = raw[id.i - 1][t.j - 1] + f;
      }

      IdentityCheck chk;
      chk.description = identDescription(id);
      chk.pass = E.equal(lhs, rhs);
      rep.identities.push_back(chk);
    }

    rep.cocycle = Cocycle2::mat(raw[0][0], raw[1][0], raw[0][1], raw[1][1]);
  }

  // Chart-unit determinant and two-sided inverse.
  {
    const Frac det = rep.cocycle.det();
    Cocycle2 inv = inverseCocycle(rep.cocycle);
    IdentityCheck chk;
    chk.description = "cocycle is invertible over the charts (det a unit, g*g^-1 = 1)";
    chk.pass = !det.isZero() && rep.cocycle.mul(inv).isIdentity() &&
               inv.mul(rep.cocycle).isIdentity();
    rep.identities.push_back(chk);
  }

  std::vector<RefMatch> inconclusive;
  std::vector<RefMatch> matches = matchReferences(rep.cocycle, &inconclusive);
  rep.matched = matches.size() == 1;
  if (rep.matched) {
    rep.bundle = matches[0].bundle;
    rep.bundlePower = matches[0].m;
    rep.bundleName = refName(rep.bundle, rep.bundlePower);
    rep.expectedBundle =
        rep.bundle == catalogBundle(w) && rep.bundlePower == catalogBundlePower(w);
  } else {
    std::ostringstream os;
    os << "reference matching not unique: " << matches.size() << " matches";
    for (const RefMatch& m : matches) os << " " << refName(m.bundle, m.m);
    if (!inconclusive.empty()) {
      os << "; inconclusive:";
      for (const RefMatch& m : inconclusive) os << " " << refName(m.bundle, m.m);
    }
    rep.notes.push_back(os.str());
  }

  if (w == CatalogWord::W2321 || w == CatalogWord::W2123) {
    // The two rank-2 tautological patterns differ only by which off-diagonal
    // coordinate pair they carry; record that the computed matrix decides
    // between them outright rather than by convention.
    const RefBundle other =
        (w == CatalogWord::W2321) ? RefBundle::T : RefBundle::Tperp;
    EquivResult vsOther = cocyclesEquivalent(rep.cocycle, referenceCocycle(other));
    std::ostringstream os;
    os << "assignment check: computed matrix matches " << refName(catalogBundle(w))
       << " and is " << (vsOther.status == EquivResult::Status::No
                             ? "provably inequivalent to "
                             : "NOT excluded from ")
       << refName(other)
       << "; the two candidates are distinguished mechanically, each matching "
          "exactly one reference";
    rep.notes.push_back(os.str());
  }

  return rep;
}

std::vector<TransitionReport> verifyAllTransitions(Engine& E, const CoulombSetup& setup) {
  std::vector<TransitionReport> out;
  for (int i = 0; i < 6; ++i)
    out.push_back(verifyTransition(E, setup, static_cast<CatalogWord>(i)));
  return out;
}

bool freenessCertificate(Engine& E, const CoulombSetup& setup, CatalogWord w, Patch p,
                         std::string* detail) {
  if (catalogRank(w) != 2) {
    if (detail) *detail = "certificate applies to rank-2 words";
    return false;
  }
  const TransData& td = transData(w);
  const auto& k = (p == Patch::D13) ? td.k13 : td.k24;
  const Element d = patchD(E, setup, p);
  Element g1 = buildGenerator(E, setup, w, p, 1, k[0]).element;
  Element g2 = buildGenerator(E, setup, w, p, 2, k[1]).element;

  const int tmax = std::max(k[0], k[1]);
  for (int T = tmax; T <= tmax + 1; ++T) {
    Element x = g1, y = g2;
    for (int q = k[0]; q < T; ++q) x = E.multiply(d, x);
    for (int q = k[1]; q < T; ++q) y = E.multiply(d, y);
    if (E.isZero(x) || E.isZero(y)) {
      if (detail)
        *detail = "a generator dies at twist " + std::to_string(T) + " on patch " +
                  patchName(p);
      return false;
    }
    // Non-proportionality of the reduced term maps: some pair of basis
    // diagrams has a nonvanishing 2x2 coefficient determinant.
    bool independent = false;
    for (auto itx = x.terms().begin(); itx != x.terms().end() && !independent; ++itx) {
      for (auto ity = y.terms().begin(); ity != y.terms().end() && !independent; ++ity) {
        if (itx->first == ity->first) continue;
        Poly xa = itx->second;
        Poly yb = ity->second;
        auto fx = x.terms().find(ity->first);
        auto fy = y.terms().find(itx->first);
        Poly xb = fx == x.terms().end() ? Poly(0) : fx->second;
        Poly ya = fy == y.terms().end() ? Poly(0) : fy->second;
        if (!(xa * yb - xb * ya).is_zero()) independent = true;
      }
    }
    if (!independent) {
      if (detail)
        *detail = "generators become proportional at twist " + std::to_string(T) +
                  " on patch " + patchName(p);
      return false;
    }
  }
  if (detail)
    *detail = std::string("generators on patch ") + patchName(p) +
              " stay independent at twists " + std::to_string(tmax) + "," +
              std::to_string(tmax + 1);
  return true;
}

// ---------------------------------------------------------------------------
// One-column case.
// ---------------------------------------------------------------------------

namespace {

struct K1Layout {
  int startRed = -1; // label-1 red (leftmost red when n = 2)
  int endRed = -1;
  std::vector<int> black; // black[s-1] = position of the label-s black
};

K1Layout k1Layout(int n, const Word& w) {
  if (n < 2) throw Error(Err::BadWord, "one-column words need n >= 2");
  K1Layout L;
  L.black.assign(n - 1, -1);
  int pos = 0;
  std::vector<int> redPos;
  for (const Slot& s : w.slots()) {
    if (s.thickness != 1)
      throw Error(Err::BadWord, "one-column words are thin");
    if (s.color == Color::Red) {
      if (s.label != 1 && s.label != n - 1)
        throw Error(Err::BadWord, "red labels must be 1 and n-1");
      redPos.push_back(pos);
    } else {
      if (s.label < 1 || s.label > n - 1 || L.black[s.label - 1] != -1)
        throw Error(Err::BadWord, "need exactly one black of each label 1..n-1");
      L.black[s.label - 1] = pos;
    }
    ++pos;
  }
  if (redPos.size() != 2)
    throw Error(Err::BadWord, "need exactly two reds");
  for (int s = 0; s < n - 1; ++s)
    if (L.black[s] == -1)
      throw Error(Err::BadWord, "need exactly one black of each label 1..n-1");
  if (n == 2) {
    L.startRed = std::min(redPos[0], redPos[1]);
    L.endRed = std::max(redPos[0], redPos[1]);
  } else {
    for (int p : redPos) {
      const Slot& s = w.slots()[p];
      if (s.label == 1) L.startRed = p;
      else L.endRed = p;
    }
    if (L.startRed < 0 || L.endRed < 0)
      throw Error(Err::BadWord, "need one red of label 1 and one of label n-1");
    if (L.startRed > L.endRed)
      throw Error(Err::UnsupportedWord,
                  "the label-1 red must precede the label-(n-1) red: " + w.str());
  }
  return L;
}

// Leftward-jump count of the walk startRed -> black 1 -> ... -> black n-1
// -> endRed, plus the per-step prefix counts.
int k1Walk(const K1Layout& L, std::vector<int>* lefts) {
  int a = 0, cur = L.startRed;
  if (lefts) lefts->clear();
  for (size_t s = 0; s < L.black.size(); ++s) {
    if (L.black[s] < cur) ++a;
    cur = L.black[s];
    if (lefts) lefts->push_back(a);
  }
  if (L.endRed < cur) ++a;
  return a;
}

} // namespace

Word k1Ascending(int n) {
  std::ostringstream os;
  os << "R1";
  for (int s = 1; s <= n - 1; ++s) os << " " << s;
  os << " R" << (n - 1);
  return Word::parse(os.str());
}

Word k1Descending(int n) {
  std::ostringstream os;
  os << "R1 R" << (n - 1);
  for (int s = n - 1; s >= 1; --s) os << " " << s;
  return Word::parse(os.str());
}

K1Result k1Classify(int n, const Word& bottom) {
  K1Layout L = k1Layout(n, bottom);
  std::vector<int> lefts;
  K1Result res;
  res.aPrime = k1Walk(L, &lefts);

  // Witness: a diagram to the ascending word in which the start red wraps
  // a' times and each strand follows the walk, one winding lower per
  // leftward jump already taken.  No two strands of adjacent or equal
  // label cross, which pins the twist grading to a'.
  const int N = n + 1;
  std::vector<int> tgt(N, -1), wind(N, 0);
  tgt[L.startRed] = 0;
  wind[L.startRed] = res.aPrime;
  tgt[L.endRed] = n;
  wind[L.endRed] = 0;
  for (int s = 0; s < n - 1; ++s) {
    tgt[L.black[s]] = s + 1;
    wind[L.black[s]] = res.aPrime - lefts[s];
  }

  std::vector<Hap> haps = canonicalHaps(tgt, wind, N);
  if (!replays(bottom, haps))
    throw Error(Err::Internal, "one-column witness does not replay");
  for (const Hap& h : haps) {
    if (hapDegree(bottom, h) > 0)
      throw Error(Err::Internal, "one-column witness has a positive-degree crossing");
  }

  Element el(Mode::Plain, bottom, k1Ascending(n));
  Key key;
  key.tgt = tgt;
  key.wind = wind;
  key.dots.assign(N, 0);
  el.add(key, Poly(1));
  if (elementGradings(el).twist != res.aPrime)
    throw Error(Err::Internal, "one-column witness twist mismatch");
  res.witness = el;
  return res;
}

std::vector<long> k1Census(int n) {
  if (n < 2) throw Error(Err::BadWord, "one-column census needs n >= 2");
  std::vector<long> counts(n, 0);

  // Encode the letter multiset; next_permutation enumerates distinct
  // arrangements (the two reds coincide as letters when n = 2).
  std::vector<int> letters;
  for (int s = 1; s <= n - 1; ++s) letters.push_back(s);
  letters.push_back(100 + 1);
  letters.push_back(100 + (n - 1));
  std::sort(letters.begin(), letters.end());

  do {
    if (letters.front() < 100) continue; // canonical words start with a red
    std::ostringstream os;
    bool valid = true;
    bool seenEnd = false;
    for (size_t i = 0; i < letters.size(); ++i) {
      if (i) os << " ";
      if (letters[i] >= 100) {
        const int label = letters[i] - 100;
        os << "R" << label;
        if (n >= 3) {
          if (label == n - 1) seenEnd = true;
          else if (seenEnd) valid = false; // label-1 red after label-(n-1) red
        }
      } else {
        os << letters[i];
      }
    }
    if (!valid) continue;
    K1Layout L = k1Layout(n, Word::parse(os.str()));
    ++counts[k1Walk(L, nullptr)];
  } while (std::next_permutation(letters.begin(), letters.end()));

  return counts;
}

} // namespace ck
