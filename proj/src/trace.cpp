#include "cylklrw/trace.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace ck {

PosTracker::PosTracker(int n) : pos(n), at(n) {
  std::iota(pos.begin(), pos.end(), 0);
  std::iota(at.begin(), at.end(), 0);
}

void PosTracker::apply(const Hap& h) {
  const int N = n();
  switch (h.kind) {
    case HKind::Cross: {
      if (h.a < 0 || h.b < 0 || h.a >= N || h.b >= N)
        fail(Err::Internal, "crossing of unknown strand");
      int p = pos[h.a], q = pos[h.b];
      if (p > q) std::swap(p, q);
      if (q != p + 1)
        fail(Err::Internal, "crossing of non-adjacent strands");
      std::swap(pos[h.a], pos[h.b]);
      at[pos[h.a]] = h.a;
      at[pos[h.b]] = h.b;
      break;
    }
    case HKind::Hop: {
      if (h.a < 0 || h.a >= N) fail(Err::Internal, "hop of unknown strand");
      if (h.dir == +1) {
        if (pos[h.a] != N - 1) fail(Err::Internal, "rightward hop not at seam");
        for (int s = 0; s < N; ++s) pos[s] = (pos[s] + 1) % N;
      } else if (h.dir == -1) {
        if (pos[h.a] != 0) fail(Err::Internal, "leftward hop not at seam");
        for (int s = 0; s < N; ++s) pos[s] = (pos[s] + N - 1) % N;
      } else {
        fail(Err::Internal, "hop without direction");
      }
      for (int s = 0; s < N; ++s) at[pos[s]] = s;
      break;
    }
    case HKind::Dot: {
      if (h.a < 0 || h.a >= N) fail(Err::Internal, "dot on unknown strand");
      break;
    }
  }
}

Replay Trace::replay() const {
  PosTracker tr(bottom.size());
  std::vector<int> wind(bottom.size(), 0);
  for (const Hap& h : haps) {
    tr.apply(h);
    if (h.kind == HKind::Hop) wind[h.a] += h.dir;
  }
  Replay r;
  r.top = tr.pos;
  r.wind = std::move(wind);
  r.topThin.resize(bottom.size());
  for (int p = 0; p < bottom.size(); ++p) r.topThin[p] = bottom.thin()[tr.at[p]];
  return r;
}

std::vector<Hap> Trace::foataNormal() const {
  const int n = static_cast<int>(haps.size());
  std::vector<int> layerOf(n, 0);
  int maxLayer = -1;
  for (int i = 0; i < n; ++i) {
    int L = 0;
    for (int j = 0; j < i; ++j)
      if (dependent(haps[j], haps[i])) L = std::max(L, layerOf[j] + 1);
    layerOf[i] = L;
    maxLayer = std::max(maxLayer, L);
  }
  std::vector<std::vector<Hap>> layers(maxLayer + 1);
  for (int i = 0; i < n; ++i) layers[layerOf[i]].push_back(haps[i]);
  std::vector<Hap> out;
  out.reserve(n);
  for (auto& layer : layers) {
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::string Trace::key() const {
  std::ostringstream out;
  out << bottom.str() << '|';
  for (const Hap& h : foataNormal()) {
    switch (h.kind) {
      case HKind::Cross: out << 'C' << h.a << ',' << h.b << ';'; break;
      case HKind::Hop: out << 'H' << h.a << ',' << (h.dir > 0 ? '+' : '-') << ';'; break;
      case HKind::Dot: out << 'D' << h.a << ';'; break;
    }
  }
  return out.str();
}

int Trace::crossCount() const {
  return static_cast<int>(
      std::count_if(haps.begin(), haps.end(), [](const Hap& h) { return h.kind == HKind::Cross; }));
}
int Trace::hopCount() const {
  return static_cast<int>(
      std::count_if(haps.begin(), haps.end(), [](const Hap& h) { return h.kind == HKind::Hop; }));
}
int Trace::dotCount() const {
  return static_cast<int>(
      std::count_if(haps.begin(), haps.end(), [](const Hap& h) { return h.kind == HKind::Dot; }));
}

std::vector<Hap> eventsToHaps(const Word& bottom, const std::string& events) {
  const int N = bottom.size();
  PosTracker tr(N);
  std::vector<Hap> out;
  auto push = [&](const Hap& h) {
    try {
      tr.apply(h);
    } catch (const Error&) {
      fail(Err::BadWord, "event not applicable at its position");
    }
    out.push_back(h);
  };
  std::string tok;
  std::string cleaned = events;
  std::replace(cleaned.begin(), cleaned.end(), ';', ' ');
  std::istringstream cin2(cleaned);
  while (cin2 >> tok) {
    if (tok == "r+") {
      push(Hap::hop(tr.at[N - 1], +1));
    } else if (tok == "r-") {
      push(Hap::hop(tr.at[0], -1));
    } else if (tok.size() >= 2 && (tok[0] == 'x' || tok[0] == 'd')) {
      std::string num = tok.substr(1);
      if (!std::all_of(num.begin(), num.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }))
        fail(Err::BadWord, "bad event token '" + tok + "'");
      int p = std::stoi(num);
      if (p < 0 || p >= N) fail(Err::BadWord, "event position out of range in '" + tok + "'");
      if (tok[0] == 'd') {
        push(Hap::dot(tr.at[p]));
      } else if (p == N - 1 && N >= 2) {
        // Seam exchange of the flanking strands, as hop-cross-hop.
        int b = tr.at[0], a = tr.at[N - 1];
        push(Hap::hop(b, -1));
        push(Hap::cross(a, b));
        push(Hap::hop(a, +1));
      } else {
        if (p + 1 >= N) fail(Err::BadWord, "crossing position out of range in '" + tok + "'");
        push(Hap::cross(tr.at[p], tr.at[p + 1]));
      }
    } else {
      fail(Err::BadWord, "bad event token '" + tok + "'");
    }
  }
  return out;
}

std::string hapsToEvents(const Trace& t) {
  PosTracker tr(t.bottom.size());
  std::ostringstream out;
  bool first = true;
  for (const Hap& h : t.haps) {
    if (!first) out << "; ";
    first = false;
    switch (h.kind) {
      case HKind::Cross: out << 'x' << std::min(tr.pos[h.a], tr.pos[h.b]); break;
      case HKind::Hop: out << (h.dir > 0 ? "r+" : "r-"); break;
      case HKind::Dot: out << 'd' << tr.pos[h.a]; break;
    }
    tr.apply(h);
  }
  return out.str();
}

} // namespace ck
