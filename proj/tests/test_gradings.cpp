#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cylklrw/coulomb.hpp"
#include "cylklrw/engine.hpp"
#include "cylklrw/gradings.hpp"

using namespace ck;

namespace {
Engine& plainE() {
  static Engine e{EngineOptions{Mode::Plain, 0, 4000000, false}};
  return e;
}
Engine& defoE() {
  static Engine e{EngineOptions{Mode::Deformed, 0, 4000000, false}};
  return e;
}
} // namespace

TEST_CASE("happening degrees over a mixed word") {
  Word w = Word::parse("R2 1 2 2 3 R2");
  // dots
  CHECK(hapDegree(w, Hap::dot(1)) == 2);
  CHECK(hapDegree(w, Hap::dot(2)) == 2);
  // black-black crossings
  CHECK(hapDegree(w, Hap::cross(2, 3)) == -2); // labels 2,2
  CHECK(hapDegree(w, Hap::cross(1, 2)) == 1);  // labels 1,2
  CHECK(hapDegree(w, Hap::cross(3, 4)) == 1);  // labels 2,3
  CHECK(hapDegree(w, Hap::cross(1, 4)) == 0);  // labels 1,3
  // red-black crossings
  CHECK(hapDegree(w, Hap::cross(0, 2)) == 1); // red 2 vs black 2
  CHECK(hapDegree(w, Hap::cross(0, 1)) == 0); // red 2 vs black 1
  CHECK(hapDegree(w, Hap::cross(4, 5)) == 0); // black 3 vs red 2
  // red-red crossing
  CHECK(hapDegree(w, Hap::cross(0, 5)) == -2); // min(2,2)
  // seam passages
  CHECK(hapDegree(w, Hap::hop(0, +1)) == 0);
  CHECK(hapDegree(w, Hap::hop(3, -1)) == 0);

  Word v = Word::parse("R2 1 2 R1");
  CHECK(hapDegree(v, Hap::cross(0, 3)) == -1); // red 2 vs red 1
}

TEST_CASE("key degree includes dots and boundary corrections") {
  Word thick = Word::parse("R2 1 2(2) 3 R2");
  Word thin = Word::parse("R2 1 2 2 3 R2");

  auto key = [](std::vector<int> tgt, std::vector<int> wind, std::vector<int> dots) {
    Key k;
    k.tgt = std::move(tgt);
    k.wind = std::move(wind);
    k.dots = std::move(dots);
    return k;
  };

  // The projector itself: one dot, one thick slot at each boundary.
  Key e = key({0, 1, 2, 3, 4, 5}, {0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0});
  CHECK(keyScalingDegree(thick, thick, e) == 0);
  // Same content over thin boundaries: no corrections.
  CHECK(keyScalingDegree(thin, thin, e) == 2);
  // Extra dot raises the degree by 2.
  Key b = key({0, 1, 2, 3, 4, 5}, {0, 0, 0, 0, 0, 0}, {0, 1, 1, 0, 0, 0});
  CHECK(keyScalingDegree(thick, thick, b) == 2);
  // Dotless identity over thick boundaries: -2.
  Key z = key({0, 1, 2, 3, 4, 5}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0});
  CHECK(keyScalingDegree(thick, thick, z) == -2);
}

TEST_CASE("all six coordinate keys have scaling degree zero") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  for (int i = 1; i <= 3; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      Element d = pluckerD(E, s, i, j);
      REQUIRE(d.termCount() == 1);
      const Key& k = d.terms().begin()->first;
      CHECK(keyScalingDegree(s.thickE, s.thickE, k) == 0);
    }
}

TEST_CASE("element gradings aggregate winding by label and twist") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element d13 = pluckerD(E, s, 1, 3);
  GradingTriple g = elementGradings(d13);
  CHECK(g.scaling == 0);
  CHECK(g.twist == 1);
  CHECK(g.winding == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}});

  Element d12 = pluckerD(E, s, 1, 2);
  g = elementGradings(d12);
  CHECK(g.winding == std::map<int, int>{{1, 1}, {2, 2}, {3, 1}});
  CHECK(g.twist == 1);

  Element d34 = pluckerD(E, s, 3, 4);
  g = elementGradings(d34);
  CHECK(g.winding.empty()); // zero windings are dropped from the map
  CHECK(g.twist == 1);
}

TEST_CASE("coefficient h carries scaling degree two") {
  Engine& E = defoE();
  Word w = Word::parse("1 2");
  Element id = E.idempotent(w);
  GradingTriple g0 = elementGradings(id);
  CHECK(g0.scaling == 0);
  Element hId = id.scaled(Poly::h());
  GradingTriple g2 = elementGradings(hId);
  CHECK(g2.scaling == 2);
  // h times identity is degree-equal to a single dot.
  Element d = E.dotted(w, 0);
  CHECK(elementGradings(d).scaling == 2);
}

TEST_CASE("inhomogeneous elements are rejected") {
  Engine& E = plainE();
  Word w = Word::parse("1 2");
  Element mixed = E.idempotent(w) + E.dotted(w, 1);
  CHECK_THROWS_AS((void)elementGradings(mixed), Error);
}

TEST_CASE("gradings add under multiplication") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element d13 = pluckerD(E, s, 1, 3);
  Element d24 = pluckerD(E, s, 2, 4);
  Element prod = E.multiply(d13, d24);
  REQUIRE_FALSE(E.isZero(prod));
  GradingTriple a = elementGradings(d13);
  GradingTriple b = elementGradings(d24);
  GradingTriple c = elementGradings(prod);
  CHECK(c.scaling == a.scaling + b.scaling);
  CHECK(c.twist == a.twist + b.twist);
  for (int lab = 1; lab <= 3; ++lab)
    CHECK(c.winding[lab] == a.winding[lab] + b.winding[lab]);

  Element b1 = bullet(E, s, 1);
  Element prod2 = E.multiply(b1, d13);
  REQUIRE_FALSE(E.isZero(prod2));
  GradingTriple g2 = elementGradings(prod2);
  CHECK(g2.scaling == 2);
  CHECK(g2.twist == 1);
}
