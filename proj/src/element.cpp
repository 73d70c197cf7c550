#include "cylklrw/element.hpp"

#include <sstream>

namespace ck {

void Element::add(const Key& k, const Poly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  if (bottom_ != o.bottom_ || top_ != o.top_ || mode_ != o.mode_)
    fail(Err::WordMismatch, "sum of elements with different boundary words");
  for (auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (bottom_ != o.bottom_ || top_ != o.top_ || mode_ != o.mode_)
    fail(Err::WordMismatch, "difference of elements with different boundary words");
  for (auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

Element Element::scaled(const Poly& c) const {
  Element out(mode_, bottom_, top_);
  if (c.is_zero()) return out;
  for (auto& [k, p] : terms_) out.add(k, p * c);
  return out;
}

Element Element::specializePlain() const {
  Element out(Mode::Plain, bottom_, top_);
  for (auto& [k, p] : terms_) out.add(k, p.at_h0(true));
  return out;
}

std::string Element::str() const {
  std::ostringstream out;
  out << bottom_.str() << " -> " << top_.str() << " [" << (mode_ == Mode::Plain ? "plain" : "deformed")
      << "]\n";
  if (terms_.empty()) {
    out << "  0\n";
    return out.str();
  }
  for (auto& [k, c] : terms_) {
    out << "  (" << c.str() << ") * {tgt=";
    for (size_t i = 0; i < k.tgt.size(); ++i) out << (i ? "," : "") << k.tgt[i];
    out << " wind=";
    for (size_t i = 0; i < k.wind.size(); ++i) out << (i ? "," : "") << k.wind[i];
    out << " dots=";
    for (size_t i = 0; i < k.dots.size(); ++i) out << (i ? "," : "") << k.dots[i];
    out << "}\n";
  }
  return out.str();
}

} // namespace ck
