#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cylklrw/geometry.hpp"
#include "cylklrw/trace.hpp"
#include "cylklrw/word.hpp"

using namespace ck;

namespace {
// replay a pure crossing/hop list against N anonymous strands
Replay replayAnon(int N, const std::vector<Hap>& haps) {
  std::string s;
  for (int i = 0; i < N; ++i) s += i ? " 1" : "1";
  return Trace{Word::parse(s), haps}.replay();
}
} // namespace

TEST_CASE("canonical geodesics: frozen small cases") {
  CHECK(canonicalHaps({0, 1}, {0, 0}, 2).empty());
  CHECK(canonicalHaps({1, 0}, {0, 0}, 2) ==
        std::vector<Hap>{Hap::cross(0, 1)});
  CHECK(canonicalHaps({0}, {2}, 1) ==
        std::vector<Hap>{Hap::hop(0, +1), Hap::hop(0, +1)});
  CHECK(canonicalHaps({0}, {-1}, 1) == std::vector<Hap>{Hap::hop(0, -1)});
  // cyclic rotation realized through the seam: one strand hops, no crossings
  CHECK(canonicalHaps({1, 2, 0}, {0, 0, 1}, 3) ==
        std::vector<Hap>{Hap::hop(2, +1)});
  // same permutation realized inside the chart: two crossings instead
  CHECK(canonicalHaps({2, 0, 1}, {0, 0, 0}, 3) ==
        std::vector<Hap>{Hap::cross(0, 1), Hap::cross(0, 2)});
}

TEST_CASE("canonical geodesics replay to the requested boundary data") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    int N = 1 + int(rng() % 6);
    std::vector<int> tgt(N);
    std::iota(tgt.begin(), tgt.end(), 0);
    std::shuffle(tgt.begin(), tgt.end(), rng);
    std::vector<int> wind(N);
    for (int& w : wind) w = int(rng() % 5) - 2;
    std::vector<Hap> haps = canonicalHaps(tgt, wind, N);
    Replay r = replayAnon(N, haps);
    CHECK(r.top == tgt);
    CHECK(r.wind == wind);
    // hop count is exactly the total winding distance
    int hops = 0;
    for (const Hap& h : haps) hops += h.kind == HKind::Hop;
    int expect = 0;
    for (int w : wind) expect += std::abs(w);
    CHECK(hops == expect);
  }
}

TEST_CASE("canonical geodesics are deterministic and memo-stable") {
  std::vector<int> tgt = {3, 1, 0, 2};
  std::vector<int> wind = {1, 0, -1, 0};
  std::vector<Hap> a = canonicalHaps(tgt, wind, 4);
  std::vector<Hap> b = canonicalHaps(tgt, wind, 4);
  CHECK(a == b);
  Replay r = replayAnon(4, a);
  CHECK(r.top == tgt);
  CHECK(r.wind == wind);
}

TEST_CASE("geodesics minimize crossings for pure permutations") {
  // without winding, straight lines cross once per inversion
  std::vector<int> tgt = {2, 1, 0};
  std::vector<Hap> haps = canonicalHaps(tgt, {0, 0, 0}, 3);
  int crosses = 0;
  for (const Hap& h : haps) crosses += h.kind == HKind::Cross;
  CHECK(crosses == 3);

  tgt = {1, 0, 3, 2};
  haps = canonicalHaps(tgt, {0, 0, 0, 0}, 4);
  crosses = 0;
  for (const Hap& h : haps) crosses += h.kind == HKind::Cross;
  CHECK(crosses == 2);
}
