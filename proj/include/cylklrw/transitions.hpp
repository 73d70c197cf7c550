#pragma once
#include <string>
#include <vector>

#include "cylklrw/coulomb.hpp"
#include "cylklrw/plucker.hpp"

namespace ck {

// ---------------------------------------------------------------------------
// Word catalog for (n,k) = (4,2).
//
// Every valid word reduces, under the invertible reordering moves (swapping
// two adjacent letters that are not both black 2s, and sliding letters across
// the seam), to a direct sum of copies of six distinguished words, possibly
// tensored by a power of the tautological line bundle L picked up whenever a
// red strand slides across the seam.
// ---------------------------------------------------------------------------

enum class CatalogWord {
  OWord,    // R2 1 2(2) 3 R2      rank 1, structure sheaf
  LInverse, // R2 R2 1 2(2) 3      rank 1, L^{-1}
  W2132,    // R2 2 1 3 2 R2       rank 2
  W2312,    // R2 R2 2 3 1 2       rank 2
  W2321,    // R2 2 3 R2 2 1       rank 2
  W2123,    // R2 2 1 R2 2 3       rank 2
};

const char* catalogName(CatalogWord w);
Word catalogWord(CatalogWord w);
int catalogRank(CatalogWord w);
// Frozen expected identification (bundle family and L-power for the scalar
// classes; for HL the power rides in the family tag).
RefBundle catalogBundle(CatalogWord w);
int catalogBundlePower(CatalogWord w);

struct WordSummand {
  CatalogWord base;
  int lshift; // summand is (catalog bundle of base) tensored by L^{lshift}
  int rank;
};

struct WordClass {
  std::vector<WordSummand> summands;
  std::string canonicalKey; // printable canonical form of the input word
};

// Reduce a (4,2) word to its canonical class decomposition.  Throws BadWord
// if the letter multiset is wrong, UnsupportedWord for the configurations the
// reordering moves cannot reach (a seam-locked pattern: the black-2 pair
// adjacent across the seam, a lone letter caught between them across the
// seam, or both reds trapped between the black 2s).
WordClass classifyWord(const Word& w);

// Rank of the associated bundle: prod v_l! / prod (slot thickness)!.
long wordRank(const Word& w);

// ---------------------------------------------------------------------------
// Generator construction on the two coordinate patches.
// ---------------------------------------------------------------------------

enum class Patch { D13, D24 };
const char* patchName(Patch p);
// The coordinate element inverted on the patch.
Element patchD(Engine& E, const CoulombSetup& setup, Patch p);

struct GeneratorDiagram {
  Word bottom;
  Patch patch = Patch::D13;
  int index = 1; // generator number (1 or 2 for rank-2 words, 1 otherwise)
  int twist = 0;
  Element element; // bottom = word, top = Coulomb idempotent word
};

// Rank-2 generator: left red wraps `k` times, each black 2 is tied to a red
// strand (index 1: left-left / right-right, index 2: crossed), the thin
// blacks avoid the black 2 tied to the patch's distinguished red.
GeneratorDiagram buildGenerator(Engine& E, const CoulombSetup& setup,
                                CatalogWord w, Patch p, int index, int k);

// Rank-1 generator for a word whose black 2s are fused: a pure rotation in
// which the first red (in word order) wraps `twist` times and everything
// else follows without meaningful crossings.
GeneratorDiagram buildLineGenerator(Engine& E, const CoulombSetup& setup,
                                    const Word& bottom, int twist);

struct GoldenCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Rebuild every stored generator transcription and compare windings, twist
// and (where recorded) the full matching.  The record flagged as "shifted"
// is checked as the product D13 * (first generator) instead.
std::vector<GoldenCheck> validateGoldenGenerators(Engine& E, const CoulombSetup& setup);

// ---------------------------------------------------------------------------
// Transition verification.
// ---------------------------------------------------------------------------

struct IdentityCheck {
  std::string description;
  bool pass = false;
};

struct TransitionReport {
  CatalogWord word = CatalogWord::OWord;
  int rank = 1;
  std::vector<IdentityCheck> identities;
  Cocycle2 cocycle;      // coordinate change from the D13 basis to the D24 basis
  bool matched = false;  // exactly one reference matched
  RefBundle bundle = RefBundle::O;
  int bundlePower = 0;
  std::string bundleName;
  bool expectedBundle = false; // agrees with catalogBundle
  std::vector<std::string> notes;

  bool allIdentitiesPass() const {
    for (const auto& c : identities)
      if (!c.pass) return false;
    return !identities.empty();
  }
};

// Check the word's denominator-free transition identities as normal-form
// equalities, assemble the induced cocycle in the twist-0 bases, and name
// the bundle by matching against the reference cocycles under constant
// changes of basis.
TransitionReport verifyTransition(Engine& E, const CoulombSetup& setup, CatalogWord w);
std::vector<TransitionReport> verifyAllTransitions(Engine& E, const CoulombSetup& setup);

// For a rank-2 word and patch: the two generators stay linearly independent
// after multiplication by powers of the patch coordinate (checked at three
// consecutive twist levels).  Detail explains any failure.
bool freenessCertificate(Engine& E, const CoulombSetup& setup, CatalogWord w,
                         Patch p, std::string* detail = nullptr);

// ---------------------------------------------------------------------------
// One-column case (k = 1, any n): every summand is a line bundle O(-a') where
// a' counts the leftward jumps of the walk that visits the label-1 red, the
// blacks 1..n-1 in order, then the label-(n-1) red.
// ---------------------------------------------------------------------------

struct K1Result {
  int aPrime = 0;  // bundle is O(-aPrime)
  Element witness; // twist-a' diagram with no positive-degree crossing
};

// Words use one red 1, one red n-1 (two red 1s when n = 2) and one black of
// each label 1..n-1; the reds must appear in label order from the seam.
K1Result k1Classify(int n, const Word& bottom);
Word k1Ascending(int n);  // R1 1 2 ... n-1 R(n-1); exponent 0
Word k1Descending(int n); // R1 R(n-1) n-1 ... 2 1; exponent n-1
// Count of seam-rotation classes realizing each exponent 0..n-1.
std::vector<long> k1Census(int n);

} // namespace ck
