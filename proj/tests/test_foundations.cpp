#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cylklrw/poly.hpp"
#include "cylklrw/rat.hpp"
#include "cylklrw/trace.hpp"
#include "cylklrw/word.hpp"

using namespace ck;

TEST_CASE("coefficient ring arithmetic") {
  Poly p = Poly(3) * Poly::h(2) * Poly::bL() - Poly(2);
  CHECK(p.str() == "-2 + 3*h^2*bL");
  CHECK((Poly::h() * Poly::h()) == Poly::h(2));
  CHECK((p - p).is_zero());
  CHECK((Poly(1) + Poly(-1)).is_zero());
  CHECK(Poly(0).is_zero());
  CHECK((Poly(2) * Poly(3)).constant_term() == 6);

  Poly q = Poly::h() * Poly(4) + Poly::h(2);
  CHECK(q.div_h() == Poly(4) + Poly::h());
  CHECK_THROWS_AS((Poly(1) + Poly::h()).div_h(), Error);

  Poly r = Poly::h() * Poly::bL() + Poly(7) + Poly::bR();
  CHECK(r.at_h0(false) == Poly(7) + Poly::bR());
  CHECK(r.at_h0(true) == Poly(7));

  // shifting both seam parameters preserves their difference
  Poly diff = Poly::bL() - Poly::bR();
  CHECK(diff.shift_b(5) == diff);

  int deg = 0;
  CHECK(Poly::h(2).homogeneous_h_degree(deg));
  CHECK(deg == 4);
  CHECK_FALSE((Poly(1) + Poly::h()).homogeneous_h_degree(deg));
}

TEST_CASE("exact rationals") {
  Rat a(1, 3), b(1, 6);
  CHECK(a + b == Rat(1, 2));
  CHECK(a - b == Rat(1, 6));
  CHECK(a * b == Rat(1, 18));
  CHECK(a / b == Rat(2));
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1, 3).sign() == -1);
}

TEST_CASE("word parsing and structure") {
  Word w = Word::parse("R2 1 2(2) 3 R2");
  CHECK(w.str() == "R2 1 2(2) 3 R2");
  CHECK(w.size() == 6);
  CHECK(w.slots().size() == 5);
  CHECK(w.thickPairs().size() == 1);
  CHECK(w.thickPairs()[0] == std::pair<int, int>(2, 3));
  CHECK(w.thin()[0].color == Color::Red);
  CHECK(w.thin()[0].label == 2);
  CHECK(w.thin()[2].label == 2);
  CHECK(w.thin()[3].label == 2);
  CHECK(w.blackCount() == 4);
  CHECK(w.redCount() == 2);
  CHECK(w.maxThickness() == 2);
  CHECK(w.isThickLeft(2));
  CHECK_FALSE(w.isThickLeft(3));

  CHECK(Word::parse("1 2 3") == Word::parse("1  2   3"));
  CHECK_FALSE(Word::parse("1 2") == Word::parse("2 1"));
  CHECK(Word::parse("R2 1 2 2 3 R2").sameThin(w));
  CHECK_FALSE(Word::parse("R2 1 2 2 3 R2") == w);

  CHECK_THROWS_AS(Word::parse(""), Error);
  CHECK_THROWS_AS(Word::parse("x"), Error);
  CHECK_THROWS_AS(Word::parse("R2(2)"), Error);
  CHECK_THROWS_AS(Word::parse("1(3)"), Error); // thickness > 2 unsupported
}

TEST_CASE("dimension data") {
  QuiverData q = QuiverData::make(4, 2);
  CHECK(q.v == std::vector<int>{1, 2, 1});
  CHECK(q.thickE().str() == "R2 1 2(2) 3 R2");
  CHECK(q.thinE().str() == "R2 1 2 2 3 R2");

  QuiverData q72 = QuiverData::make(7, 2);
  CHECK(q72.v == std::vector<int>{1, 2, 2, 2, 2, 1});
  CHECK(q72.thickE().str() == "R5 1 2(2) 3(2) 4(2) 5(2) 6 R2");

  QuiverData q21 = QuiverData::make(2, 1);
  CHECK(q21.v == std::vector<int>{1});
  CHECK(q21.thickE().str() == "R1 1 R1");
}

TEST_CASE("replay of happening lists") {
  Word w = Word::parse("1 2 3");
  // cross positions 0,1 then a full rightward pass of the strand ending at 2
  std::vector<Hap> haps = eventsToHaps(w, "x0; r+");
  REQUIRE(haps.size() == 2);
  CHECK(haps[0] == Hap::cross(0, 1));
  CHECK(haps[1] == Hap::hop(2, +1));
  Replay r = Trace{w, haps}.replay();
  CHECK(r.top == std::vector<int>{2, 1, 0});
  CHECK(r.wind == std::vector<int>{0, 0, 1});
  CHECK(r.topThin[0].label == 3);
  CHECK(r.topThin[1].label == 2);
  CHECK(r.topThin[2].label == 1);

  CHECK(hapsToEvents(Trace{w, haps}) == "x0; r+");

  // the seam-exchange shorthand expands to hop-cross-hop
  std::vector<Hap> ex = eventsToHaps(w, "x2");
  REQUIRE(ex.size() == 3);
  CHECK(ex[0] == Hap::hop(0, -1));
  CHECK(ex[1] == Hap::cross(0, 2));
  CHECK(ex[2] == Hap::hop(2, +1));
  Replay r2 = Trace{w, ex}.replay();
  CHECK(r2.top == std::vector<int>{2, 1, 0});
  CHECK(r2.wind == std::vector<int>{-1, 0, 1});

  CHECK_THROWS_AS(eventsToHaps(w, "x5"), Error);
  CHECK_THROWS_AS(eventsToHaps(w, "bogus"), Error);
  CHECK_THROWS_AS((Trace{w, {Hap::cross(0, 2)}}.replay()), Error);
  CHECK_THROWS_AS((Trace{w, {Hap::hop(0, +1)}}.replay()), Error);
}

TEST_CASE("layered normal form is order-insensitive for disjoint happenings") {
  Word w = Word::parse("1 2 3 1");
  std::vector<Hap> a = {Hap::cross(0, 1), Hap::cross(2, 3)};
  std::vector<Hap> b = {Hap::cross(2, 3), Hap::cross(0, 1)};
  CHECK(Trace{w, a}.foataNormal() == Trace{w, b}.foataNormal());
  CHECK(Trace{w, a}.key() == Trace{w, b}.key());

  // dependent happenings keep their order
  std::vector<Hap> c = {Hap::cross(0, 1), Hap::dot(0)};
  std::vector<Hap> d = {Hap::dot(0), Hap::cross(0, 1)};
  CHECK_FALSE(Trace{w, c}.key() == Trace{w, d}.key());

  CHECK(Trace{w, a}.crossCount() == 2);
  CHECK(Trace{w, c}.dotCount() == 1);
}
