#include "capset/space.hpp"

#include <memory>
#include <mutex>

namespace capset {

const Space& Space::get(int dim) {
  if (dim < 1 || dim > kMaxDim) throw CapsetError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(dim));
  static std::array<std::unique_ptr<Space>, kMaxDim + 1> cache;
  static std::once_flag flags[kMaxDim + 1];
  std::call_once(flags[dim], [dim] { cache[dim].reset(new Space(dim)); });
  return *cache[dim];
}

Space::Space(int dim) : dim_(dim), size_(pow3(dim)) {
  for (int i = 0; i < dim_; ++i) weight_[i] = pow3(dim_ - 1 - i);
  packed_.resize(size_);
  unpacked_.assign(std::size_t{1} << (8 + dim_), 0);
  for (PointIndex p = 0; p < size_; ++p) {
    std::uint32_t pk = 0;
    for (int i = 0; i < dim_; ++i)
      if (auto c = coord(p, i)) pk |= std::uint32_t{1} << (i + (c == 2 ? 8 : 0));
    packed_[p] = pk;
    unpacked_[pk] = p;
  }
  if (dim_ <= 5) {
    third_.resize(static_cast<std::size_t>(size_) * size_);
    for (PointIndex a = 0; a < size_; ++a)
      for (PointIndex b = 0; b < size_; ++b)
        third_[a * size_ + b] = static_cast<std::uint8_t>(unpacked_[packed_neg(packed_add(packed_[a], packed_[b]))]);
  }
}

Coords Space::coords(PointIndex p) const {
  Coords c{};
  for (int i = 0; i < dim_; ++i) c[i] = coord(p, i);
  return c;
}

PointIndex Space::index(std::span<const std::uint8_t> c) const {
  if (static_cast<int>(c.size()) < dim_) throw CapsetError("coordinate vector too short");
  PointIndex p = 0;
  for (int i = 0; i < dim_; ++i) {
    if (c[i] > 2) throw CapsetError("coordinate digit out of range: " + std::to_string(c[i]));
    p = p * 3 + c[i];
  }
  return p;
}

PointIndex Space::scale(PointIndex a, std::uint8_t k) const {
  switch (k % 3) {
    case 0: return 0;
    case 1: return a;
    default: return neg(a);
  }
}

std::string Space::to_string(PointIndex p) const {
  std::string s(dim_, '0');
  for (int i = 0; i < dim_; ++i) s[i] = static_cast<char>('0' + coord(p, i));
  return s;
}

PointIndex third_on_line(const Space& space, PointIndex p, PointIndex q) {
  space.check(p);
  space.check(q);
  if (p == q) throw CapsetError("third_on_line: points coincide");
  return space.third(p, q);
}

}  // namespace capset
