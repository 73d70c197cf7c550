#include "cylklrw/gradings.hpp"

#include <cstdlib>
#include <iterator>

#include "cylklrw/geometry.hpp"

namespace ck {

int hapDegree(const Word& bottom, const Hap& h) {
  const auto& thin = bottom.thin();
  switch (h.kind) {
    case HKind::Dot:
      return 2;
    case HKind::Hop:
      return 0;
    case HKind::Cross: {
      const Endpoint& A = thin[h.a];
      const Endpoint& B = thin[h.b];
      if (A.color == Color::Black && B.color == Color::Black) {
        if (A.label == B.label) return -2;
        if (std::abs(A.label - B.label) == 1) return 1;
        return 0;
      }
      if (A.color == Color::Red && B.color == Color::Red)
        return -std::min(A.label, B.label);
      // red-black
      return A.label == B.label ? 1 : 0;
    }
  }
  return 0;
}

int keyScalingDegree(const Word& bottom, const Word& top, const Key& k) {
  int deg = 0;
  for (const Hap& h : canonicalHaps(k.tgt, k.wind, bottom.size()))
    deg += hapDegree(bottom, h);
  for (int s = 0; s < bottom.size(); ++s) deg += 2 * k.dots[s];
  deg -= static_cast<int>(bottom.thickPairs().size());
  deg -= static_cast<int>(top.thickPairs().size());
  return deg;
}

GradingTriple elementGradings(const Element& e) {
  GradingTriple g;
  bool first = true;
  for (const auto& [k, c] : e.terms()) {
    int hdeg = 0;
    if (!c.homogeneous_h_degree(hdeg))
      fail(Err::Internal, "coefficient not homogeneous in h: " + c.str());
    GradingTriple cur;
    cur.scaling = keyScalingDegree(e.bottom(), e.top(), k) + hdeg;
    for (int s = 0; s < e.bottom().size(); ++s) {
      const Endpoint& ep = e.bottom().thin()[s];
      if (ep.color == Color::Black)
        cur.winding[ep.label] += k.wind[s];
      else
        cur.twist += k.wind[s];
    }
    for (auto it = cur.winding.begin(); it != cur.winding.end();)
      it = (it->second == 0) ? cur.winding.erase(it) : std::next(it);
    if (first) {
      g = cur;
      first = false;
    } else if (g.scaling != cur.scaling || g.winding != cur.winding || g.twist != cur.twist) {
      fail(Err::Internal, "element is not homogeneous across terms:\n" + e.str());
    }
  }
  return g;
}

} // namespace ck
