#pragma once

#include <random>
#include <string>

#include "capset/f3_matrix.hpp"
#include "capset/point_set.hpp"

namespace capset {

/// x -> L x + t on AG(n,3) with L invertible.
class AffineMap {
 public:
  AffineMap() = default;
  /// Throws if the linear part is singular or shapes disagree.
  AffineMap(F3Matrix linear, PointIndex translation);

  static AffineMap identity(int n);
  static AffineMap translation(int n, PointIndex t);
  /// The point reflection x -> 2c - x.
  static AffineMap point_reflection(int n, PointIndex centre);
  static AffineMap random(int n, std::mt19937_64& rng);

  int dim() const { return linear_.rows(); }
  const F3Matrix& linear() const { return linear_; }
  PointIndex translation() const { return translation_; }

  PointIndex apply(PointIndex p) const;
  PointSet apply(const PointSet& s) const;
  /// Linear part only (for direction vectors).
  PointIndex apply_linear(PointIndex v) const;

  /// (this o other)(x) = this(other(x)).
  AffineMap compose(const AffineMap& other) const;
  AffineMap inverse() const;

  bool operator==(const AffineMap& o) const { return linear_ == o.linear_ && translation_ == o.translation_; }
  auto operator<=>(const AffineMap& o) const {
    if (auto c = linear_ <=> o.linear_; c != 0) return c;
    return translation_ <=> o.translation_;
  }

  std::string to_string() const;

 private:
  void precompute();

  F3Matrix linear_;
  PointIndex translation_ = 0;
  std::array<std::uint32_t, kMaxDim> column_{};      // packed images of unit vectors
  std::array<std::uint32_t, kMaxDim> neg_column_{};
};

}  // namespace capset
