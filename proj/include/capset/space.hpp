#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace capset {

/// Largest ambient dimension supported by the dense representations.
inline constexpr int kMaxDim = 8;

/// Point of AG(n,3) encoded as its base-3 index, coordinate 1 most significant.
using PointIndex = std::uint32_t;

/// Coordinates of a point, one digit in {0,1,2} per entry (only the first n are used).
using Coords = std::array<std::uint8_t, kMaxDim>;

class CapsetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint32_t pow3(int e) {
  std::uint32_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

/// Known maximum cap sizes in AG(n,3) for n = 0..6; zero where unknown.
constexpr int max_cap_size(int n) {
  constexpr int table[] = {1, 2, 4, 9, 20, 45, 112};
  return (n >= 0 && n <= 6) ? table[n] : 0;
}

inline constexpr std::uint8_t f3_add(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a + b) % 3); }
inline constexpr std::uint8_t f3_mul(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>((a * b) % 3); }
inline constexpr std::uint8_t f3_neg(std::uint8_t a) { return static_cast<std::uint8_t>((3 - a) % 3); }

/// Index arithmetic for AG(n,3).  Points also have a bit-sliced packed form (bit i of
/// the low byte: coordinate i is 1; bit i of the high byte: coordinate i is 2) in which
/// vector addition is a handful of logic operations; for n <= 5 the full third-point
/// table is precomputed as well.
class Space {
 public:
  /// Shared instance for a dimension (1 <= dim <= kMaxDim).
  static const Space& get(int dim);

  int dim() const { return dim_; }
  std::uint32_t size() const { return size_; }

  Coords coords(PointIndex p) const;
  PointIndex index(std::span<const std::uint8_t> coords) const;
  PointIndex index(const Coords& c) const { return index(std::span<const std::uint8_t>(c.data(), dim_)); }
  std::uint8_t coord(PointIndex p, int i) const { return static_cast<std::uint8_t>((p / weight_[i]) % 3); }

  std::uint32_t packed(PointIndex p) const { return packed_[p]; }
  PointIndex unpack(std::uint32_t packed) const { return unpacked_[packed]; }

  PointIndex add(PointIndex a, PointIndex b) const { return unpacked_[packed_add(packed_[a], packed_[b])]; }
  PointIndex neg(PointIndex a) const { return unpacked_[packed_neg(packed_[a])]; }
  PointIndex sub(PointIndex a, PointIndex b) const { return add(a, neg(b)); }
  PointIndex scale(PointIndex a, std::uint8_t k) const;

  /// The third point -(a+b) of the line through a and b (a itself when a == b).
  PointIndex third(PointIndex a, PointIndex b) const {
    if (!third_.empty()) return third_[a * size_ + b];
    return unpacked_[packed_neg(packed_add(packed_[a], packed_[b]))];
  }
  bool has_third_table() const { return !third_.empty(); }
  const std::uint8_t* third_table() const { return third_.data(); }

  static std::uint32_t packed_add(std::uint32_t a, std::uint32_t b) {
    const std::uint32_t a1 = a & 0xff, a2 = a >> 8, b1 = b & 0xff, b2 = b >> 8;
    const std::uint32_t r1 = (a1 & ~(b1 | b2)) | (b1 & ~(a1 | a2)) | (a2 & b2);
    const std::uint32_t r2 = (a2 & ~(b1 | b2)) | (b2 & ~(a1 | a2)) | (a1 & b1);
    return r1 | (r2 << 8);
  }
  static std::uint32_t packed_neg(std::uint32_t a) { return ((a & 0xff) << 8) | (a >> 8); }

  std::string to_string(PointIndex p) const;
  void check(PointIndex p) const {
    if (p >= size_) throw CapsetError("point index " + std::to_string(p) + " out of range for dimension " + std::to_string(dim_));
  }

 private:
  explicit Space(int dim);

  int dim_;
  std::uint32_t size_;
  std::array<std::uint32_t, kMaxDim> weight_{};
  std::vector<std::uint32_t> packed_;
  std::vector<PointIndex> unpacked_;
  std::vector<std::uint8_t> third_;
};

/// Checked third point on the line through two distinct points.
PointIndex third_on_line(const Space& space, PointIndex p, PointIndex q);

}  // namespace capset
