#include "cylklrw/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ck {

Word::Word(std::vector<Slot> slots) : slots_(std::move(slots)) { rebuild(); }

void Word::rebuild() {
  thin_.clear();
  thickPairs_.clear();
  for (int s = 0; s < static_cast<int>(slots_.size()); ++s) {
    const Slot& sl = slots_[s];
    if (sl.thickness < 1) fail(Err::BadWord, "slot thickness must be >= 1");
    if (sl.color == Color::Red && sl.thickness != 1)
      fail(Err::BadWord, "red strands cannot be thick");
    if (sl.label < 1) fail(Err::BadWord, "labels must be positive");
    int base = static_cast<int>(thin_.size());
    for (int t = 0; t < sl.thickness; ++t)
      thin_.push_back(Endpoint{sl.color, sl.label, s});
    if (sl.thickness == 2) thickPairs_.emplace_back(base, base + 1);
    if (sl.thickness > 2) fail(Err::UnsupportedWord, "thickness > 2 not supported");
  }
}

bool Word::isThickLeft(int thinPos) const {
  for (auto& [a, b] : thickPairs_)
    if (a == thinPos) return true;
  return false;
}

int Word::blackCount() const {
  int c = 0;
  for (auto& e : thin_)
    if (e.color == Color::Black) ++c;
  return c;
}

int Word::redCount() const {
  int c = 0;
  for (auto& e : thin_)
    if (e.color == Color::Red) ++c;
  return c;
}

int Word::maxThickness() const {
  int m = 0;
  for (auto& s : slots_) m = std::max(m, s.thickness);
  return m;
}

bool operator<(const Word& a, const Word& b) {
  auto key = [](const Slot& s) {
    return std::tuple<int, int, int>(s.color == Color::Red ? 1 : 0, s.label, s.thickness);
  };
  return std::lexicographical_compare(
      a.slots_.begin(), a.slots_.end(), b.slots_.begin(), b.slots_.end(),
      [&](const Slot& x, const Slot& y) { return key(x) < key(y); });
}

bool Word::sameThin(const Word& other) const {
  return thin_ == other.thin_;
}

Word Word::parse(const std::string& text) {
  std::vector<Slot> slots;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    Slot s;
    size_t i = 0;
    if (tok[0] == 'R' || tok[0] == 'r') {
      s.color = Color::Red;
      i = 1;
    }
    size_t j = i;
    while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
    if (j == i) fail(Err::BadWord, "bad token '" + tok + "'");
    s.label = std::stoi(tok.substr(i, j - i));
    if (j < tok.size()) {
      if (tok[j] != '(' || tok.back() != ')')
        fail(Err::BadWord, "bad token '" + tok + "'");
      std::string th = tok.substr(j + 1, tok.size() - j - 2);
      if (th.empty() || !std::all_of(th.begin(), th.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c));
          }))
        fail(Err::BadWord, "bad thickness in '" + tok + "'");
      s.thickness = std::stoi(th);
      if (s.color == Color::Red) fail(Err::BadWord, "red strands cannot be thick");
    }
    slots.push_back(s);
  }
  if (slots.empty()) fail(Err::BadWord, "empty word");
  return Word(std::move(slots));
}

std::string Word::str() const {
  std::ostringstream out;
  for (size_t s = 0; s < slots_.size(); ++s) {
    if (s) out << ' ';
    if (slots_[s].color == Color::Red) out << 'R';
    out << slots_[s].label;
    if (slots_[s].thickness > 1) out << '(' << slots_[s].thickness << ')';
  }
  return out.str();
}

QuiverData QuiverData::make(int n, int k) {
  if (n < 2 || k < 1 || k >= n) fail(Err::BadWord, "need 1 <= k < n, n >= 2");
  QuiverData q;
  q.n = n;
  q.k = k;
  q.v.assign(n - 1, 0);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= n - k; ++j) {
      int m = i + j - 1;
      if (m >= 1 && m <= n - 1) ++q.v[m - 1];
    }
  return q;
}

Word QuiverData::thickE() const {
  std::vector<Slot> slots;
  slots.push_back(Slot{Color::Red, n - k, 1});
  for (int m = 1; m <= n - 1; ++m)
    if (v[m - 1] > 0) slots.push_back(Slot{Color::Black, m, v[m - 1]});
  slots.push_back(Slot{Color::Red, k, 1});
  return Word(std::move(slots));
}

Word QuiverData::thinE() const {
  std::vector<Slot> slots;
  slots.push_back(Slot{Color::Red, n - k, 1});
  for (int m = 1; m <= n - 1; ++m)
    for (int c = 0; c < v[m - 1]; ++c) slots.push_back(Slot{Color::Black, m, 1});
  slots.push_back(Slot{Color::Red, k, 1});
  return Word(std::move(slots));
}

} // namespace ck
