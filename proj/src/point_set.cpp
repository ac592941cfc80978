#include "capset/point_set.hpp"

#include <algorithm>

namespace capset {

PointSet::PointSet(int dim) : dim_(dim), universe_(Space::get(dim).size()), words_((universe_ + 63) / 64, 0) {}

PointSet::PointSet(int dim, std::initializer_list<PointIndex> pts) : PointSet(dim) {
  for (PointIndex p : pts) {
    space().check(p);
    insert(p);
  }
}

PointSet::PointSet(int dim, const std::vector<PointIndex>& pts) : PointSet(dim) {
  for (PointIndex p : pts) {
    space().check(p);
    insert(p);
  }
}

PointSet PointSet::full(int dim) {
  PointSet s(dim);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (s.universe_ % 64) s.words_.back() = (std::uint64_t{1} << (s.universe_ % 64)) - 1;
  return s;
}

std::size_t PointSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool PointSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<PointIndex> PointSet::to_vector() const {
  std::vector<PointIndex> v;
  v.reserve(size());
  for (PointIndex p : *this) v.push_back(p);
  return v;
}

PointIndex PointSet::first() const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return static_cast<PointIndex>(i * 64 + std::countr_zero(words_[i]));
  return universe_;
}

PointSet& PointSet::operator|=(const PointSet& o) {
  if (o.dim_ != dim_) throw CapsetError("point set dimension mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

PointSet& PointSet::operator&=(const PointSet& o) {
  if (o.dim_ != dim_) throw CapsetError("point set dimension mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

PointSet& PointSet::operator-=(const PointSet& o) {
  if (o.dim_ != dim_) throw CapsetError("point set dimension mismatch");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
  return *this;
}

PointSet PointSet::complement() const { return full(dim_) - *this; }

std::strong_ordering PointSet::operator<=>(const PointSet& o) const {
  if (auto c = dim_ <=> o.dim_; c != 0) return c;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t diff = words_[i] ^ o.words_[i];
    if (diff) {
      std::uint64_t low = diff & (~diff + 1);
      return (words_[i] & low) ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

bool PointSet::is_subset_of(const PointSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

std::string PointSet::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t nd = (universe_ + 3) / 4;
  std::string s(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    unsigned v = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t bit = d * 4 + b;
      if (bit < universe_ && contains(static_cast<PointIndex>(bit))) v |= 1u << b;
    }
    s[nd - 1 - d] = digits[v];
  }
  return s;
}

PointSet PointSet::from_hex(int dim, const std::string& hex) {
  PointSet s(dim);
  std::size_t nd = (s.universe_ + 3) / 4;
  if (hex.size() != nd) throw CapsetError("hex mask has wrong length for dimension " + std::to_string(dim));
  for (std::size_t d = 0; d < nd; ++d) {
    char c = hex[nd - 1 - d];
    unsigned v;
    if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a' + 10);
    else throw CapsetError(std::string("invalid hex digit '") + c + "'");
    for (int b = 0; b < 4; ++b) {
      if (!(v >> b & 1u)) continue;
      std::size_t bit = d * 4 + b;
      if (bit >= s.universe_) throw CapsetError("hex mask sets a bit beyond the point range");
      s.insert(static_cast<PointIndex>(bit));
    }
  }
  return s;
}

}  // namespace capset
