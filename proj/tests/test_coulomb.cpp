#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cylklrw/coulomb.hpp"
#include "cylklrw/gradings.hpp"

using namespace ck;

namespace {
Engine& plainE() {
  static Engine e{EngineOptions{Mode::Plain, 0, 4000000, false}};
  return e;
}
} // namespace

TEST_CASE("setup validation") {
  CoulombSetup s = CoulombSetup::make(4, 2);
  CHECK(s.thickE.str() == "R2 1 2(2) 3 R2");
  CHECK(s.thinE.str() == "R2 1 2 2 3 R2");
  CHECK(s.quiver.v == std::vector<int>{1, 2, 1});
  CHECK(CoulombSetup::make(3, 1).thickE.str() == "R2 1 2 R1");
  CHECK_THROWS_AS((void)CoulombSetup::make(4, 3), Error); // k > n/2
  CHECK_THROWS_AS((void)CoulombSetup::make(7, 3), Error); // multiplicity 3
  CHECK_THROWS_AS((void)CoulombSetup::make(2, 0), Error);
}

TEST_CASE("idempotent and bullets") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element e = coulombIdempotent(E, s);
  CHECK_FALSE(E.isZero(e));
  CHECK(E.equal(E.multiply(e, e), e));

  Element b1 = bullet(E, s, 1), b2 = bullet(E, s, 2), b3 = bullet(E, s, 3);
  for (const Element* b : {&b1, &b2, &b3}) {
    CHECK_FALSE(E.isZero(*b));
    GradingTriple g = elementGradings(*b);
    CHECK(g.scaling == 2);
    CHECK(g.twist == 0);
    CHECK(E.equal(E.multiply(e, *b), *b));
    CHECK(E.equal(E.multiply(*b, e), *b));
  }
  CHECK(E.isZero(E.commutator(b1, b2)));
  CHECK(E.isZero(E.commutator(b2, b3)));
  CHECK(E.isZero(E.commutator(b1, b3)));
  CHECK_THROWS_AS((void)bullet(E, s, 4), Error);
}

TEST_CASE("coordinate element gradings") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  struct Row {
    int i, j;
    int w1, w2, w3; // expected winding by label
  };
  const Row rows[] = {{1, 2, 1, 2, 1}, {1, 3, 1, 1, 1}, {1, 4, 1, 1, 0},
                      {2, 3, 0, 1, 1}, {2, 4, 0, 1, 0}, {3, 4, 0, 0, 0}};
  Element e = coulombIdempotent(E, s);
  for (const Row& r : rows) {
    CAPTURE(r.i);
    CAPTURE(r.j);
    Element d = pluckerD(E, s, r.i, r.j);
    CHECK_FALSE(E.isZero(d));
    GradingTriple g = elementGradings(d);
    CHECK(g.scaling == 0);
    CHECK(g.twist == 1);
    CHECK(g.winding[1] == r.w1);
    CHECK(g.winding[2] == r.w2);
    CHECK(g.winding[3] == r.w3);
    CHECK(E.equal(E.multiply(e, d), d));
    CHECK(E.equal(E.multiply(d, e), d));
  }
  // Degenerate variants vanish: a pair member that winds without switching
  // sides of its partner, and an intact pair traveling without the
  // projector dot.
  auto zeroVariant = [&](std::vector<int> tgt, std::vector<int> wind) {
    Element bad(E.mode(), s.thickE, s.thickE);
    Key k;
    k.tgt = std::move(tgt);
    k.wind = std::move(wind);
    k.dots.assign(6, 0);
    bad.add(k, Poly(1));
    CHECK(E.isZero(bad));
  };
  std::vector<int> id{0, 1, 2, 3, 4, 5};
  zeroVariant(id, {1, 1, 0, 1, 1, 0}); // right twin winds in place
  zeroVariant(id, {1, 1, 1, 0, 1, 0}); // left twin winds in place
  zeroVariant(id, {1, 0, 0, 0, 0, 0}); // intact pair, dotless
  zeroVariant(id, {1, 1, 1, 1, 1, 0}); // intact traveling pair, dotless
}

TEST_CASE("coordinate product smoke") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element d13 = pluckerD(E, s, 1, 3);
  Element d24 = pluckerD(E, s, 2, 4);
  Element p = E.multiply(d13, d24);
  CHECK_FALSE(E.isZero(p));
  GradingTriple g = elementGradings(p);
  CHECK(g.scaling == 0);
  CHECK(g.twist == 2);
  CHECK(g.winding[1] == 1);
  CHECK(g.winding[2] == 2);
  CHECK(g.winding[3] == 1);
  // idempotent absorption of a product
  Element e = coulombIdempotent(E, s);
  CHECK(E.equal(E.multiply(e, p), p));
  CHECK(E.equal(E.multiply(p, e), p));
}

TEST_CASE("coordinates commute") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element d13 = pluckerD(E, s, 1, 3);
  Element d24 = pluckerD(E, s, 2, 4);
  Element d12 = pluckerD(E, s, 1, 2);
  Element d34 = pluckerD(E, s, 3, 4);
  CHECK(E.isZero(E.commutator(d13, d24)));
  CHECK(E.isZero(E.commutator(d12, d34)));
  CHECK(E.isZero(E.commutator(d12, d13)));
  CHECK(E.isZero(E.commutator(bullet(E, s, 1), d34)));
  CHECK(E.isZero(E.commutator(bullet(E, s, 2), d13)));
}

TEST_CASE("quadric relation among coordinates") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element p1 = E.multiply(pluckerD(E, s, 1, 2), pluckerD(E, s, 3, 4));
  Element p2 = E.multiply(pluckerD(E, s, 1, 3), pluckerD(E, s, 2, 4));
  Element p3 = E.multiply(pluckerD(E, s, 1, 4), pluckerD(E, s, 2, 3));
  Element rel = p1 - p2 + p3;
  CHECK(E.isZero(rel));
}

TEST_CASE("raising and lowering generator gradings") {
  Engine& E = plainE();
  CoulombSetup s = CoulombSetup::make(4, 2);
  Element e = coulombIdempotent(E, s);
  for (int i = 1; i <= 3; ++i) {
    CAPTURE(i);
    Element ei = chevalley(E, s, i, true);
    Element fi = chevalley(E, s, i, false);
    CHECK_FALSE(E.isZero(ei));
    CHECK_FALSE(E.isZero(fi));
    GradingTriple ge = elementGradings(ei);
    GradingTriple gf = elementGradings(fi);
    CHECK(ge.scaling == 2);
    CHECK(gf.scaling == 2);
    CHECK(ge.twist == 0);
    CHECK(gf.twist == 0);
    CHECK(ge.winding[i] == 1);
    CHECK(gf.winding[i] == -1);
    CHECK(E.equal(E.multiply(e, ei), ei));
    CHECK(E.equal(E.multiply(ei, e), ei));
    CHECK(E.equal(E.multiply(e, fi), fi));
    CHECK(E.equal(E.multiply(fi, e), fi));
  }
}
