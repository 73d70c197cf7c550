#include "cylklrw/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>

#include "cylklrw/rat.hpp"

namespace ck {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::int64_t kJitterDen = 1 << 20;

// Deterministic jitter in (-1/8, 1/8) with fixed denominator.
Rat jitter(int seed, int tag, int index) {
  std::uint64_t h = splitmix64((std::uint64_t(seed) << 40) ^ (std::uint64_t(tag) << 32) ^
                               std::uint64_t(index + 7));
  std::int64_t num = static_cast<std::int64_t>(h % (kJitterDen / 4)) - kJitterDen / 8;
  if (num == 0) num = 1;
  return Rat(num, kJitterDen);
}

struct Event {
  Rat t;
  Rat x;     // universal-cover coordinate of the event point
  int kind;  // 0 = crossing, 1 = seam passage
  int a = -1, b = -1, dir = 0;
};

// Builds the sorted event list for one jitter seed, or returns false when
// the arrangement is degenerate (ties between entangled events, an event
// on the seam, or an event at a boundary time).
bool buildEvents(const std::vector<int>& target, const std::vector<int>& wind, int N,
                 int seed, std::vector<Event>& out) {
  out.clear();
  std::vector<Rat> A(N), B(N);
  for (int s = 0; s < N; ++s) {
    A[s] = Rat(2 * s + 1, 2) + jitter(seed, 0, s);
    B[s] = Rat(2 * target[s] + 1, 2) + Rat(wind[s]) * Rat(N) + jitter(seed, 1, target[s]);
  }

  int wmin = 0, wmax = 0;
  for (int s = 0; s < N; ++s) {
    wmin = std::min(wmin, wind[s]);
    wmax = std::max(wmax, wind[s]);
  }

  // Crossings: strand s against every cylinder lift of strand u (u > s).
  for (int s = 0; s < N; ++s)
    for (int u = s + 1; u < N; ++u)
      for (int m = wmin - wmax - 2; m <= wmax - wmin + 2; ++m) {
        Rat shift = Rat(m) * Rat(N);
        Rat d0 = (A[u] + shift) - A[s];
        Rat d1 = (B[u] + shift) - B[s];
        if (d0.sign() == 0 || d1.sign() == 0) return false;
        if (d0.sign() == d1.sign()) continue;
        Rat t = d0 / (d0 - d1);
        if (t <= Rat(0) || t >= Rat(1)) return false;
        Event e;
        e.t = t;
        e.x = A[s] + (B[s] - A[s]) * t;
        e.kind = 0;
        e.a = s;
        e.b = u;
        // Crossing exactly on the seam is ambiguous; retry with new jitter.
        if (e.x.den() == 1 && e.x.num() % N == 0) return false;
        out.push_back(e);
      }

  // Seam passages: strand s against every seam lift x = c*N.
  for (int s = 0; s < N; ++s) {
    if (A[s] == B[s]) continue;
    Rat lo = std::min(A[s], B[s]), hi = std::max(A[s], B[s]);
    std::int64_t cmin = lo.floor() / N - 2, cmax = hi.floor() / N + 2;
    for (std::int64_t c = cmin; c <= cmax; ++c) {
      Rat xs = Rat(c) * Rat(N);
      if (!(lo < xs && xs < hi)) continue;
      Rat t = (xs - A[s]) / (B[s] - A[s]);
      if (t <= Rat(0) || t >= Rat(1)) return false;
      Event e;
      e.t = t;
      e.x = xs;
      e.kind = 1;
      e.a = s;
      e.dir = (B[s] > A[s]) ? +1 : -1;
      out.push_back(e);
    }
  }

  std::sort(out.begin(), out.end(), [](const Event& p, const Event& q) {
    if (p.t != q.t) return p.t < q.t;
    if (p.x != q.x) return p.x < q.x;
    return std::tie(p.kind, p.a, p.b, p.dir) < std::tie(q.kind, q.a, q.b, q.dir);
  });

  // Any equal-time pair of events sharing a strand has no canonical order.
  for (size_t i = 0; i + 1 < out.size(); ++i)
    for (size_t j = i + 1; j < out.size() && out[j].t == out[i].t; ++j) {
      auto touches = [](const Event& e, int s) { return e.a == s || e.b == s; };
      if (touches(out[j], out[i].a) || (out[i].b >= 0 && touches(out[j], out[i].b)))
        return false;
    }
  return true;
}

} // namespace

std::vector<Hap> canonicalHaps(const std::vector<int>& target, const std::vector<int>& wind,
                               int N) {
  static std::map<std::tuple<std::vector<int>, std::vector<int>, int>, std::vector<Hap>> memo;
  static std::mutex mu;
  auto keyT = std::make_tuple(target, wind, N);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(keyT);
    if (it != memo.end()) return it->second;
  }

  if (static_cast<int>(target.size()) != N || static_cast<int>(wind.size()) != N)
    fail(Err::Internal, "geometry: size mismatch");
  {
    std::vector<char> seen(N, 0);
    for (int s = 0; s < N; ++s) {
      if (target[s] < 0 || target[s] >= N || seen[target[s]])
        fail(Err::Internal, "geometry: target is not a permutation");
      seen[target[s]] = 1;
    }
  }

  std::vector<Event> events;
  std::vector<Hap> haps;
  bool ok = false;
  for (int seed = 1; seed <= 64 && !ok; ++seed) {
    if (!buildEvents(target, wind, N, seed, events)) continue;
    haps.clear();
    haps.reserve(events.size());
    for (const Event& e : events)
      haps.push_back(e.kind == 0 ? Hap::cross(e.a, e.b) : Hap::hop(e.a, e.dir));
    // Validate against the requested permutation data.
    try {
      std::vector<Slot> slots(N, Slot{Color::Black, 1, 1});
      Trace tr{Word(std::move(slots)), haps};
      Replay r = tr.replay();
      ok = true;
      for (int s = 0; s < N; ++s)
        if (r.top[s] != target[s] || r.wind[s] != wind[s]) ok = false;
    } catch (const Error&) {
      ok = false;
    }
  }
  if (!ok) fail(Err::Internal, "geometry: no clean arrangement found");

  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(std::move(keyT), haps);
  return haps;
}

} // namespace ck
