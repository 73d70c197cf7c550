#include "cylklrw/engine.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <cstdlib>

#include "cylklrw/gradings.hpp"

namespace ck {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Swap two strand ids in every happening of [first, last).
void remapRange(std::vector<Hap>& haps, std::size_t first, std::size_t last, int s, int u) {
  auto sw = [&](int& x) {
    if (x == s)
      x = u;
    else if (x == u)
      x = s;
  };
  for (std::size_t i = first; i < last && i < haps.size(); ++i) {
    sw(haps[i].a);
    if (haps[i].b >= 0) sw(haps[i].b);
    if (haps[i].kind == HKind::Cross && haps[i].a > haps[i].b) std::swap(haps[i].a, haps[i].b);
  }
}

std::vector<Hap> erased(const std::vector<Hap>& haps, std::initializer_list<std::size_t> idx) {
  std::vector<Hap> out;
  out.reserve(haps.size());
  for (std::size_t i = 0; i < haps.size(); ++i)
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) out.push_back(haps[i]);
  return out;
}

int totalDegree(const Word& bottom, const std::vector<Hap>& haps) {
  int d = 0;
  for (const Hap& h : haps) d += hapDegree(bottom, h);
  return d;
}

} // namespace

bool replays(const Word& bottom, const std::vector<Hap>& haps) {
  PosTracker tr(bottom.size());
  try {
    for (const Hap& h : haps) tr.apply(h);
  } catch (const Error&) {
    return false;
  }
  return true;
}

Engine::Engine(EngineOptions opts) : opts_(opts) {}

int Engine::pick(std::size_t n) {
  if (n <= 1 || opts_.policySeed == 0) return 0;
  return static_cast<int>(mix64((std::uint64_t(opts_.policySeed) << 32) ^
                                std::uint64_t(steps_)) %
                          n);
}

// ---------------------------------------------------------------------------
// Rule 1: opposite seam passages of one strand with nothing else touching the
// strand in between cancel freely (the excursion retracts), provided the
// shortened list still replays.
bool Engine::tryHopCancel(const Word& bottom, const std::vector<Hap>& haps,
                          std::vector<std::vector<Pending>>& outs,
                          std::vector<std::string>& descs) {
  const int n = static_cast<int>(haps.size());
  for (int i = 0; i < n; ++i) {
    if (haps[i].kind != HKind::Hop) continue;
    int s = haps[i].a;
    for (int j = i + 1; j < n; ++j) {
      if (!haps[j].touches(s)) continue;
      if (haps[j].kind == HKind::Hop && haps[j].dir == -haps[i].dir) {
        std::vector<Hap> next = erased(haps, {std::size_t(i), std::size_t(j)});
        if (replays(bottom, next)) {
          outs.push_back({Pending{std::move(next), Poly(1)}});
          descs.push_back("cancel seam excursion of strand " + std::to_string(s));
        }
      }
      break; // nearest hap touching s decides; no farther partner is clean
    }
  }
  return !outs.empty();
}

// ---------------------------------------------------------------------------
// Rule 2: isolated double crossing of one pair.
bool Engine::tryBigon(const Word& bottom, const std::vector<Hap>& haps,
                      std::vector<std::vector<Pending>>& outs,
                      std::vector<std::string>& descs) {
  const int n = static_cast<int>(haps.size());
  const auto& thin = bottom.thin();
  for (int i = 0; i < n; ++i) {
    if (haps[i].kind != HKind::Cross) continue;
    int a = haps[i].a, b = haps[i].b;
    int j = -1;
    for (int t = i + 1; t < n; ++t) {
      if (!(haps[t].touches(a) || haps[t].touches(b))) continue;
      if (haps[t].kind == HKind::Cross && haps[t].a == a && haps[t].b == b) j = t;
      break;
    }
    if (j < 0) continue;

    // Positions just before the lower crossing identify left/right.
    PosTracker tr(bottom.size());
    for (int t = 0; t < i; ++t) tr.apply(haps[t]);
    int l = (tr.pos[a] < tr.pos[b]) ? a : b;
    int r = (l == a) ? b : a;
    const Endpoint& L = thin[l];
    const Endpoint& R = thin[r];

    std::vector<Pending> branches;
    std::string what;
    if (L.color == Color::Red && R.color == Color::Red) {
      fail(Err::Internal, "isolated double crossing of two red strands");
    } else if (L.color == Color::Black && R.color == Color::Black) {
      if (L.label == R.label) {
        branches.clear(); // the whole term vanishes
        what = "double crossing, equal labels: term dies";
      } else if (R.label == L.label + 1) {
        std::vector<Hap> d1 = erased(haps, {std::size_t(i), std::size_t(j)});
        std::vector<Hap> d2 = d1;
        d1.insert(d1.begin() + i, Hap::dot(r));
        d2.insert(d2.begin() + i, Hap::dot(l));
        branches.push_back(Pending{std::move(d1), Poly(1)});
        branches.push_back(Pending{std::move(d2), Poly(-1)});
        what = "double crossing, labels i,i+1: dot difference";
      } else if (R.label == L.label - 1) {
        std::vector<Hap> d1 = erased(haps, {std::size_t(i), std::size_t(j)});
        std::vector<Hap> d2 = d1;
        d1.insert(d1.begin() + i, Hap::dot(l));
        d2.insert(d2.begin() + i, Hap::dot(r));
        branches.push_back(Pending{std::move(d1), Poly(1)});
        branches.push_back(Pending{std::move(d2), Poly(-1)});
        what = "double crossing, labels i,i-1: dot difference";
      } else {
        branches.push_back(Pending{erased(haps, {std::size_t(i), std::size_t(j)}), Poly(1)});
        what = "double crossing, distant labels: straighten";
      }
    } else {
      int blackId = (L.color == Color::Black) ? l : r;
      int redId = (blackId == l) ? r : l;
      if (L.label == R.label) {
        std::vector<Hap> d1 = erased(haps, {std::size_t(i), std::size_t(j)});
        std::vector<Hap> plainHaps = d1;
        d1.insert(d1.begin() + i, Hap::dot(blackId));
        branches.push_back(Pending{std::move(d1), Poly(1)});
        if (opts_.mode == Mode::Deformed) {
          // First red in the bottom word carries bL, the second bR.
          int firstRed = -1;
          for (int s = 0; s < bottom.size(); ++s)
            if (thin[s].color == Color::Red) {
              firstRed = s;
              break;
            }
          Poly c = Poly::h(1) * (redId == firstRed ? Poly::bL() : Poly::bR());
          branches.push_back(Pending{std::move(plainHaps), c});
        }
        what = "double crossing around red, equal labels";
      } else {
        branches.push_back(Pending{erased(haps, {std::size_t(i), std::size_t(j)}), Poly(1)});
        what = "double crossing around red, distinct labels: straighten";
      }
    }
    for (const Pending& p : branches)
      if (!replays(bottom, p.haps)) fail(Err::Internal, "bigon successor does not replay");
    outs.push_back(std::move(branches));
    descs.push_back(what);
  }
  return !outs.empty();
}

// ---------------------------------------------------------------------------
// Rule 3: slide a dot one step toward the bottom of its strand.
bool Engine::tryDotSlide(const Word& bottom, const std::vector<Hap>& haps,
                         std::vector<std::vector<Pending>>& outs,
                         std::vector<std::string>& descs) {
  const int n = static_cast<int>(haps.size());
  const auto& thin = bottom.thin();
  for (int i = 0; i < n; ++i) {
    if (haps[i].kind != HKind::Dot) continue;
    int s = haps[i].a;
    int j = -1;
    for (int t = i - 1; t >= 0; --t)
      if (haps[t].touches(s)) {
        j = t;
        break;
      }
    if (j < 0) continue;
    const Hap& g = haps[j];
    if (g.kind == HKind::Dot) continue; // stacked dots are already settled

    std::vector<Pending> branches;
    std::string what;
    // The moved-dot branch is common to every case.
    std::vector<Hap> moved = haps;
    moved.erase(moved.begin() + i);
    moved.insert(moved.begin() + j, Hap::dot(s));

    if (g.kind == HKind::Hop) {
      branches.push_back(Pending{std::move(moved), Poly(1)});
      if (opts_.mode == Mode::Deformed) {
        std::vector<Hap> del = erased(haps, {std::size_t(i)});
        branches.push_back(Pending{std::move(del), Poly(-g.dir) * Poly::h(1)});
      }
      what = "slide dot through seam passage";
    } else {
      int u = (g.a == s) ? g.b : g.a;
      bool bothBlack = thin[s].color == Color::Black && thin[u].color == Color::Black;
      if (bothBlack && thin[s].label == thin[u].label) {
        // Position of the dotted strand just above the crossing fixes the sign.
        PosTracker tr(bottom.size());
        for (int t = 0; t <= j; ++t) tr.apply(haps[t]);
        int sign = (tr.pos[s] < tr.pos[u]) ? +1 : -1;
        std::vector<Hap> corr = haps;
        corr.erase(corr.begin() + i);
        corr.erase(corr.begin() + j);
        remapRange(corr, std::size_t(j), corr.size(), s, u);
        branches.push_back(Pending{std::move(moved), Poly(1)});
        branches.push_back(Pending{std::move(corr), Poly(sign)});
        what = "slide dot through equal-label crossing";
      } else {
        branches.push_back(Pending{std::move(moved), Poly(1)});
        what = "slide dot through crossing";
      }
    }
    for (const Pending& p : branches)
      if (!replays(bottom, p.haps)) fail(Err::Internal, "dot-slide successor does not replay");
    outs.push_back(std::move(branches));
    descs.push_back(what);
  }
  return !outs.empty();
}

// ---------------------------------------------------------------------------
// Rule 4: reorder toward the geodesic.

namespace {

struct Move {
  // Reversal of a three-happening pattern: either a triangle flip (three
  // crossings of three strands) or a seam slide (a crossing plus seam
  // passages of its two strands).  Indices are positions in the hap list.
  std::size_t i1, i2, i3;
  bool triangle = true;
};

// A move reverses its trio in the dependency order while every bystander
// keeps its order relative to each trio member it shares a strand with.
// Returns a replayable linearization of that rewrite, or empty if the
// classification is inconsistent or nothing replays.
std::vector<Hap> realizeMove(const Word& bottom, const std::vector<Hap>& haps, const Move& m,
                             std::size_t* blockStart = nullptr) {
  const std::array<std::size_t, 3> idx = {m.i1, m.i2, m.i3};
  auto inTrio = [&](std::size_t q) { return q == m.i1 || q == m.i2 || q == m.i3; };
  auto sharesStrand = [&](const Hap& x, const Hap& y) {
    return x.touches(y.a) || (y.b >= 0 && x.touches(y.b));
  };
  std::vector<Hap> before, afterFree, windowFree;
  for (std::size_t q = 0; q < haps.size(); ++q) {
    if (inTrio(q)) continue;
    std::size_t lo = haps.size(), hi = 0;
    bool dep = false;
    for (std::size_t t : idx)
      if (sharesStrand(haps[q], haps[t])) {
        dep = true;
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    if (!dep) {
      if (q < m.i1)
        before.push_back(haps[q]);
      else if (q > m.i3)
        afterFree.push_back(haps[q]);
      else
        windowFree.push_back(haps[q]);
    } else if (q < lo) {
      before.push_back(haps[q]);
    } else if (q > hi) {
      afterFree.push_back(haps[q]);
    } else {
      return {}; // bystander interleaved with its strand-mates: not a move
    }
  }
  const std::array<Hap, 3> block = {haps[m.i3], haps[m.i2], haps[m.i1]};
  for (int variant = 0; variant < 2; ++variant) {
    std::vector<Hap> out = before;
    if (variant == 0) out.insert(out.end(), windowFree.begin(), windowFree.end());
    std::size_t start = out.size();
    out.insert(out.end(), block.begin(), block.end());
    if (variant == 1) out.insert(out.end(), windowFree.begin(), windowFree.end());
    out.insert(out.end(), afterFree.begin(), afterFree.end());
    if (replays(bottom, out)) {
      if (blockStart) *blockStart = start;
      return out;
    }
  }
  return {};
}

// Enumerates valid triangle flips and seam slides of a hap list.  The
// adjacency conditions are stated along each strand's own happening
// sequence, so they do not depend on how independent haps interleave.
std::vector<Move> enumerateMoves(const Word& bottom, const std::vector<Hap>& haps) {
  const int n = static_cast<int>(haps.size());
  const int N = bottom.size();
  // strandSeq[s] = indices of happenings touching strand s, in order.
  std::vector<std::vector<int>> strandSeq(N);
  for (int q = 0; q < n; ++q) {
    strandSeq[haps[q].a].push_back(q);
    if (haps[q].b >= 0) strandSeq[haps[q].b].push_back(q);
  }
  auto neighbor = [&](int s, int q, int step) -> int {
    const auto& seq = strandSeq[s];
    auto it = std::lower_bound(seq.begin(), seq.end(), q);
    if (it == seq.end() || *it != q) return -1;
    std::ptrdiff_t at = it - seq.begin() + step;
    if (at < 0 || at >= static_cast<std::ptrdiff_t>(seq.size())) return -1;
    return seq[at];
  };

  std::vector<Move> moves;
  auto addMove = [&](int a, int b, int c, bool triangle) {
    std::array<int, 3> t = {a, b, c};
    std::sort(t.begin(), t.end());
    Move m{std::size_t(t[0]), std::size_t(t[1]), std::size_t(t[2]), triangle};
    if (!realizeMove(bottom, haps, m).empty()) moves.push_back(m);
  };

  for (int p1 = 0; p1 < n; ++p1) {
    if (haps[p1].kind != HKind::Cross) continue;
    const int u = haps[p1].a, v = haps[p1].b;
    const int nextU = neighbor(u, p1, +1), nextV = neighbor(v, p1, +1);
    const int prevU = neighbor(u, p1, -1), prevV = neighbor(v, p1, -1);

    // Triangle flips: this crossing is the earliest of the three.  The
    // second crossing shares one strand; the closing crossing joins the
    // two outer strands and must be adjacent to both along them.
    for (int branch = 0; branch < 2; ++branch) {
      int p2 = branch == 0 ? nextU : nextV;
      if (p2 < 0 || haps[p2].kind != HKind::Cross) continue;
      int shared = branch == 0 ? u : v;
      int outer1 = branch == 0 ? v : u;
      if (haps[p2].touches(outer1)) continue; // same pair again: a bigon, not a flip
      int w = haps[p2].a == shared ? haps[p2].b : haps[p2].a;
      int p3 = neighbor(outer1, p1, +1);
      if (p3 < 0 || p3 <= p2 || haps[p3].kind != HKind::Cross) continue;
      if (!(haps[p3].touches(outer1) && haps[p3].touches(w))) continue;
      if (neighbor(w, p2, +1) != p3) continue;
      addMove(p1, p2, p3, true);
    }

    // Seam slides: the crossing together with seam passages of both its
    // strands, each adjacent to the crossing along its strand.
    auto hopAt = [&](int q) { return q >= 0 && haps[q].kind == HKind::Hop; };
    if (hopAt(nextU) && hopAt(nextV)) addMove(p1, nextU, nextV, false);
    if (hopAt(prevU) && hopAt(prevV)) addMove(p1, prevU, prevV, false);
    if (hopAt(prevU) && hopAt(nextV)) addMove(p1, prevU, nextV, false);
    if (hopAt(nextU) && hopAt(prevV)) addMove(p1, nextU, prevV, false);
  }
  return moves;
}

// Applies a move's main rewrite; appends the correction term (if the labels
// demand one) to `spawned`.
std::vector<Hap> applyMove(const Word& bottom, const std::vector<Hap>& haps, const Move& m,
                           std::vector<std::pair<std::vector<Hap>, Poly>>* spawned) {
  std::size_t blockStart = 0;
  std::vector<Hap> next = realizeMove(bottom, haps, m, &blockStart);
  if (next.empty()) fail(Err::Internal, "selected move has no replayable realization");
  if (!m.triangle) return next;
  if (spawned == nullptr) return next;

  const auto& thin = bottom.thin();
  // Strand roles from positions at the base of the reversed trio.
  PosTracker tr(bottom.size());
  for (std::size_t t = 0; t < blockStart; ++t) tr.apply(next[t]);
  std::vector<int> ids = {haps[m.i1].a, haps[m.i1].b,
                          (haps[m.i2].a == haps[m.i1].a || haps[m.i2].a == haps[m.i1].b)
                              ? haps[m.i2].b
                              : haps[m.i2].a};
  std::sort(ids.begin(), ids.end(), [&](int x, int y) { return tr.pos[x] < tr.pos[y]; });
  int l = ids[0], mid = ids[1], r = ids[2];
  if (tr.pos[mid] != tr.pos[l] + 1 || tr.pos[r] != tr.pos[mid] + 1)
    fail(Err::Internal, "triangle strands not consecutive");

  int delta = 0;
  const Endpoint &L = thin[l], &M = thin[mid], &R = thin[r];
  if (L.color == Color::Black && M.color == Color::Black && R.color == Color::Black) {
    if (L.label == R.label) {
      if (M.label == L.label + 1)
        delta = +1;
      else if (M.label == L.label - 1)
        delta = -1;
    }
  } else if (M.color == Color::Red && L.color == Color::Black && R.color == Color::Black) {
    if (L.label == M.label && R.label == M.label) delta = +1;
  }
  if (delta == 0) return next;

  // The configuration where the middle strand meets the left outer first
  // equals the other order plus delta times the diagram with all three
  // crossings removed (outer strands rerouted straight).
  bool isFirstOrder = haps[m.i1].touches(l) && haps[m.i1].touches(mid);
  std::vector<Hap> strip = next;
  strip.erase(strip.begin() + blockStart, strip.begin() + blockStart + 3);
  remapRange(strip, blockStart, strip.size(), l, r);
  if (!replays(bottom, strip)) fail(Err::Internal, "triangle strip term does not replay");
  spawned->emplace_back(std::move(strip), Poly(isFirstOrder ? delta : -delta));
  return next;
}

// Occurrence-matching inversion count against the geodesic order.
long long orderPotential(const std::vector<Hap>& cur, const std::vector<Hap>& target) {
  auto sig = [](const Hap& h) {
    return std::array<int, 4>{static_cast<int>(h.kind), h.a, h.b, h.dir};
  };
  std::map<std::array<int, 4>, std::vector<int>> tpos; // signature -> indices in target
  for (int i = 0; i < static_cast<int>(target.size()); ++i)
    tpos[sig(target[i])].push_back(i);
  std::map<std::array<int, 4>, std::size_t> used;
  std::vector<int> match(cur.size(), -1);
  long long unmatched = 0;
  for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
    if (cur[i].kind == HKind::Dot) continue; // dots settled below, ignore
    auto& v = tpos[sig(cur[i])];
    std::size_t& u = used[sig(cur[i])];
    if (u < v.size())
      match[i] = v[u++];
    else
      ++unmatched;
  }
  long long inv = 0;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (match[i] < 0) continue;
    for (std::size_t j = i + 1; j < cur.size(); ++j) {
      if (match[j] < 0) continue;
      if (!dependent(cur[i], cur[j])) continue;
      if (match[i] > match[j]) ++inv;
    }
  }
  return inv + 1000 * unmatched;
}

} // namespace

bool Engine::tryStraighten(const Word& bottom, const std::vector<Hap>& haps,
                           std::vector<std::vector<Pending>>& outs,
                           std::vector<std::string>& descs) {
  Trace tr{bottom, haps};
  Replay rep = tr.replay();
  std::vector<Hap> target = canonicalHaps(rep.top, rep.wind, bottom.size());
  const long long phi0 = orderPotential(haps, target);

  auto emit = [&](const Move& m, const char* how) {
    std::vector<std::pair<std::vector<Hap>, Poly>> spawned;
    std::vector<Hap> main = applyMove(bottom, haps, m, &spawned);
    std::vector<Pending> branch;
    branch.push_back(Pending{std::move(main), Poly(1)});
    for (auto& [h, c] : spawned) branch.push_back(Pending{std::move(h), c});
    outs.push_back(std::move(branch));
    descs.push_back(how);
  };

  std::vector<Move> moves = enumerateMoves(bottom, haps);
  for (const Move& m : moves) {
    std::vector<Hap> next = realizeMove(bottom, haps, m);
    if (next.empty()) continue;
    if (orderPotential(next, target) < phi0)
      emit(m, m.triangle ? "triangle flip" : "seam slide");
  }
  if (!outs.empty()) return true;

  // Plateau: bounded search through move sequences for a strictly better
  // state or one that enables a cancellation.
  struct Node {
    std::vector<Hap> haps;
    std::vector<Move> path;
  };
  std::deque<Node> queue;
  std::set<std::string> seen;
  queue.push_back(Node{haps, {}});
  seen.insert(Trace{bottom, haps}.key());
  const std::size_t beam = 1500;
  const std::size_t maxDepth = 6;
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (cur.path.size() >= maxDepth) continue;
    for (const Move& m : enumerateMoves(bottom, cur.haps)) {
      std::vector<Hap> next = realizeMove(bottom, cur.haps, m);
      if (next.empty()) continue;
      std::string key = Trace{bottom, next}.key();
      if (!seen.insert(key).second) continue;
      std::vector<Move> path = cur.path;
      path.push_back(m);

      bool better = orderPotential(next, target) < phi0;
      if (!better) {
        std::vector<std::vector<Pending>> probe;
        std::vector<std::string> pd;
        better = tryHopCancel(bottom, next, probe, pd) || tryBigon(bottom, next, probe, pd);
      }
      if (better) {
        // Commit the whole path on the real term, collecting corrections.
        std::vector<Pending> branch;
        std::vector<Hap> state = haps;
        Poly one(1);
        std::vector<std::pair<std::vector<Hap>, Poly>> spawned;
        for (const Move& mv : path) state = applyMove(bottom, state, mv, &spawned);
        branch.push_back(Pending{std::move(state), Poly(1)});
        for (auto& [h, c] : spawned) branch.push_back(Pending{std::move(h), c});
        outs.push_back(std::move(branch));
        descs.push_back("move sequence toward geodesic");
        return true;
      }
      if (seen.size() < beam) queue.push_back(Node{std::move(next), std::move(path)});
    }
  }
  if (const char* dbg = std::getenv("CYLKLRW_DEBUG_STRAIGHTEN")) {
    (void)dbg;
    std::vector<Move> ms = enumerateMoves(bottom, haps);
    fprintf(stderr, "[straighten] stuck: %s\n  phi0=%lld moves=%zu seen=%zu\n  raw:",
            Trace{bottom, haps}.key().c_str(), phi0, ms.size(), seen.size());
    for (const Hap& h : haps) fprintf(stderr, " k%d(%d,%d,%d)", int(h.kind), h.a, h.b, h.dir);
    fprintf(stderr, "\n");
    for (const Move& m : ms)
      fprintf(stderr, "  move i1=%zu i2=%zu i3=%zu tri=%d\n", m.i1, m.i2, m.i3, int(m.triangle));
    fprintf(stderr, "  target:");
    for (const Hap& h : target)
      fprintf(stderr, " k%d(%d,%d,%d)", int(h.kind), h.a, h.b, h.dir);
    fprintf(stderr, "\n");
  }
  return false;
}

// ---------------------------------------------------------------------------

bool Engine::findStep(const Word& bottom, const std::vector<Hap>& haps,
                      std::vector<Pending>& succ, std::string& what) {
  std::vector<std::vector<Pending>> outs;
  std::vector<std::string> descs;
  if (tryHopCancel(bottom, haps, outs, descs) || tryBigon(bottom, haps, outs, descs) ||
      tryDotSlide(bottom, haps, outs, descs) || tryStraighten(bottom, haps, outs, descs)) {
    int which = pick(outs.size());
    succ = std::move(outs[which]);
    what = descs[which];
    return true;
  }
  return false;
}

Engine::TermMap Engine::reduceHaps(const Word& bottom, const std::vector<Hap>& rawHaps,
                                   int depth) {
  if (depth > 10000) fail(Err::NonTerminating, "rewrite recursion too deep");
  Trace trace{bottom, rawHaps};
  const std::string key = trace.key();
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  // Rewrite rules match local patterns in list order, so work on the Foata
  // normal form (same diagram, canonical interleaving) whenever it replays.
  std::vector<Hap> haps = trace.foataNormal();
  if (!replays(bottom, haps)) haps = rawHaps;

  // Canonical-form test: all dots settled and the rest is the geodesic.
  {
    bool settled = true;
    for (std::size_t i = 0; i < haps.size() && settled; ++i) {
      if (haps[i].kind != HKind::Dot) continue;
      for (std::size_t j = 0; j < i; ++j)
        if (haps[j].touches(haps[i].a) && haps[j].kind != HKind::Dot) {
          settled = false;
          break;
        }
    }
    if (settled) {
      std::vector<Hap> rest;
      std::vector<int> dots(bottom.size(), 0);
      for (const Hap& h : haps)
        if (h.kind == HKind::Dot)
          ++dots[h.a];
        else
          rest.push_back(h);
      Replay rep = Trace{bottom, rest}.replay();
      std::vector<Hap> geo = canonicalHaps(rep.top, rep.wind, bottom.size());
      if (Trace{bottom, rest}.foataNormal() == Trace{bottom, geo}.foataNormal()) {
        TermMap out;
        out.emplace(Key{rep.top, rep.wind, std::move(dots)}, Poly(1));
        memo_.emplace(key, out);
        return out;
      }
    }
  }

  if (++steps_ > opts_.stepBudget)
    fail(Err::NonTerminating, "rewrite step budget exhausted");

  std::vector<Pending> succ;
  std::string what;
  if (!findStep(bottom, haps, succ, what))
    fail(Err::NonTerminating,
         "no applicable rewrite and trace is not geodesic: " + trace.key());
  if (onStep) onStep(what);

  if (opts_.checkDegrees) {
    int d0 = totalDegree(bottom, haps);
    for (const Pending& p : succ) {
      int hd = 0;
      if (!p.coeff.homogeneous_h_degree(hd))
        fail(Err::Internal, "rewrite coefficient not homogeneous");
      if (totalDegree(bottom, p.haps) + hd != d0)
        fail(Err::Internal, "rewrite changed the scaling degree: " + what);
    }
  }

  TermMap out;
  for (const Pending& p : succ) {
    TermMap sub = reduceHaps(bottom, p.haps, depth + 1);
    for (auto& [k, c] : sub) {
      Poly add = c * p.coeff;
      if (add.is_zero()) continue;
      auto it = out.find(k);
      if (it == out.end()) {
        out.emplace(k, add);
      } else {
        it->second += add;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  memo_.emplace(key, out);
  return out;
}

Element Engine::reduce(const Word& bottom, const Word& top, const std::vector<Hap>& haps,
                       const Poly& coeff) {
  if (!replays(bottom, haps)) fail(Err::BadWord, "happening list does not replay");
  Replay rep = Trace{bottom, haps}.replay();
  if (static_cast<int>(rep.topThin.size()) != top.size() ||
      !std::equal(rep.topThin.begin(), rep.topThin.end(), top.thin().begin()))
    fail(Err::WordMismatch, "top word does not match the replayed strand endpoints");
  Element out(opts_.mode, bottom, top);
  if (coeff.is_zero()) return out;
  for (auto& [k, c] : reduceHaps(bottom, haps, 0)) out.add(k, c * coeff);
  return out;
}

Element Engine::multiply(const Element& A, const Element& B) {
  if (A.mode() != B.mode() || A.mode() != opts_.mode)
    fail(Err::Internal, "mode mismatch in product");
  if (!(A.bottom() == B.top()))
    fail(Err::WordMismatch, "product boundary words do not match: " + A.bottom().str() +
                                " vs " + B.top().str());
  const Word& interface = A.bottom();
  const int N = interface.size();
  Element out(opts_.mode, B.bottom(), A.top());
  for (const auto& [kB, cB] : B.terms()) {
    std::vector<int> invB(N);
    for (int s = 0; s < N; ++s) invB[kB.tgt[s]] = s;
    std::vector<Hap> base;
    for (int s = 0; s < N; ++s)
      for (int d = 0; d < kB.dots[s]; ++d) base.push_back(Hap::dot(s));
    for (const Hap& h : canonicalHaps(kB.tgt, kB.wind, N)) base.push_back(h);
    for (auto& [p, q] : interface.thickPairs()) base.push_back(Hap::cross(invB[p], invB[q]));

    // The junction crossings swap each fused pair, so the strand occupying
    // interface position p when the upper content starts is invB[sigma(p)].
    std::vector<int> f(N);
    for (int p = 0; p < N; ++p) f[p] = invB[p];
    for (auto& [p, q] : interface.thickPairs()) {
      f[p] = invB[q];
      f[q] = invB[p];
    }

    for (const auto& [kA, cA] : A.terms()) {
      std::vector<Hap> haps = base;
      for (int p = 0; p < N; ++p)
        for (int d = 0; d < kA.dots[p]; ++d) haps.push_back(Hap::dot(f[p]));
      for (const Hap& h : canonicalHaps(kA.tgt, kA.wind, N)) {
        if (h.kind == HKind::Cross)
          haps.push_back(Hap::cross(f[h.a], f[h.b]));
        else if (h.kind == HKind::Hop)
          haps.push_back(Hap::hop(f[h.a], h.dir));
        else
          haps.push_back(Hap::dot(f[h.a]));
      }
      Poly c = cA * cB;
      if (c.is_zero()) continue;
      for (auto& [k, cc] : reduceHaps(B.bottom(), haps, 0)) out.add(k, cc * c);
    }
  }
  return out;
}

Element Engine::multiply(const std::vector<Element>& factors) {
  if (factors.empty()) fail(Err::Internal, "empty product");
  Element acc = factors.back();
  for (int i = static_cast<int>(factors.size()) - 2; i >= 0; --i)
    acc = multiply(factors[std::size_t(i)], acc);
  return acc;
}

Element Engine::power(const Element& A, int n) {
  if (n < 1) fail(Err::Internal, "power expects n >= 1");
  Element acc = A;
  for (int i = 1; i < n; ++i) acc = multiply(A, acc);
  return acc;
}

bool Engine::isZero(const Element& e) {
  if (e.isZero()) return true;
  const int N = e.bottom().size();
  TermMap closed;
  for (const auto& [k, c] : e.terms()) {
    // Close bottom fused pairs with their junction crossings; the content
    // then acts in the frame where each closed pair is swapped.
    std::vector<int> sig(N);
    for (int s = 0; s < N; ++s) sig[s] = s;
    std::vector<Hap> haps;
    for (auto& [p, q] : e.bottom().thickPairs()) {
      haps.push_back(Hap::cross(p, q));
      sig[p] = q;
      sig[q] = p;
    }
    for (int s = 0; s < N; ++s)
      for (int d = 0; d < k.dots[s]; ++d) haps.push_back(Hap::dot(sig[s]));
    for (const Hap& h : canonicalHaps(k.tgt, k.wind, N)) {
      if (h.kind == HKind::Cross)
        haps.push_back(Hap::cross(sig[h.a], sig[h.b]));
      else if (h.kind == HKind::Hop)
        haps.push_back(Hap::hop(sig[h.a], h.dir));
      else
        haps.push_back(Hap::dot(sig[h.a]));
    }
    // Close top fused pairs against whatever strands arrive there.
    PosTracker tr(N);
    for (const Hap& h : haps) tr.apply(h);
    for (auto& [p, q] : e.top().thickPairs()) haps.push_back(Hap::cross(tr.at[p], tr.at[q]));
    for (auto& [kk, cc] : reduceHaps(e.bottom(), haps, 0)) {
      Poly add = cc * c;
      if (add.is_zero()) continue;
      auto it = closed.find(kk);
      if (it == closed.end()) {
        closed.emplace(kk, add);
      } else {
        it->second += add;
        if (it->second.is_zero()) closed.erase(it);
      }
    }
  }
  return closed.empty();
}

bool Engine::equal(const Element& a, const Element& b) {
  if (a.mode() != b.mode() || !(a.bottom() == b.bottom()) || !(a.top() == b.top()))
    return false;
  if (a.terms() == b.terms()) return true;
  return isZero(a - b);
}

Element Engine::idempotent(const Word& w) {
  const int N = w.size();
  Key k;
  k.tgt.resize(N);
  k.wind.assign(N, 0);
  k.dots.assign(N, 0);
  for (int s = 0; s < N; ++s) k.tgt[s] = s;
  for (auto& [p, q] : w.thickPairs()) k.dots[p] = 1;
  Element out(opts_.mode, w, w);
  out.add(k, Poly(1));
  return out;
}

Element Engine::dotted(const Word& w, int slot, int power) {
  if (slot < 0 || slot >= static_cast<int>(w.slots().size()))
    fail(Err::BadWord, "slot index out of range");
  if (w.slots()[std::size_t(slot)].color == Color::Red)
    fail(Err::BadWord, "red strands carry no dots");
  int base = 0;
  for (int s = 0; s < slot; ++s) base += w.slots()[std::size_t(s)].thickness;
  Element e = idempotent(w);
  Key k = e.terms().begin()->first;
  Element out(opts_.mode, w, w);
  k.dots[base] += power;
  out.add(k, Poly(1));
  return out;
}

Element Engine::commutator(const Element& a, const Element& b) {
  return multiply(a, b) - multiply(b, a);
}

Element Engine::commutatorOverH(const Element& a, const Element& b) {
  Element c = commutator(a, b);
  Element out(c.mode(), c.bottom(), c.top());
  for (auto& [k, p] : c.terms()) out.add(k, p.div_h());
  return out;
}

Element Engine::poisson(const Element& a, const Element& b) {
  Element c = commutatorOverH(a, b);
  Element out(c.mode(), c.bottom(), c.top());
  for (auto& [k, p] : c.terms()) out.add(k, p.at_h0(false));
  return out;
}

} // namespace ck
