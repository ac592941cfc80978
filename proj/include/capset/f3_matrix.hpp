#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "capset/space.hpp"

namespace capset {

/// Small dense matrix over F3 (at most kMaxDim x kMaxDim).
class F3Matrix {
 public:
  F3Matrix() = default;
  F3Matrix(int rows, int cols);
  F3Matrix(int rows, int cols, const std::vector<std::vector<int>>& entries);

  static F3Matrix identity(int n);
  /// Uniformly random invertible n x n matrix.
  static F3Matrix random_invertible(int n, std::mt19937_64& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::uint8_t operator()(int r, int c) const { return a_[r][c]; }
  void set(int r, int c, int v) { a_[r][c] = static_cast<std::uint8_t>(((v % 3) + 3) % 3); }
  Coords row(int r) const { return a_[r]; }
  void set_row(int r, const Coords& v);

  F3Matrix operator*(const F3Matrix& o) const;
  Coords apply(const Coords& x) const;
  std::uint8_t dot_row(int r, const Coords& x) const;
  F3Matrix transpose() const;
  F3Matrix negated() const;

  int rank() const;
  bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }
  std::optional<F3Matrix> inverse() const;
  /// Determinant in {0,1,2}.
  int determinant() const;

  /// Reduced row echelon form (pivots equal to 1); zero rows removed.
  F3Matrix rref() const;
  std::vector<int> pivot_columns() const;
  /// Basis (as rows) of {x : M x = 0}.
  F3Matrix kernel() const;
  /// Rows completing this full-row-rank matrix's rows to a basis of F3^cols (unit vectors on non-pivot columns).
  F3Matrix complement_rows() const;
  F3Matrix stacked(const F3Matrix& below) const;

  bool operator==(const F3Matrix& o) const;
  auto operator<=>(const F3Matrix& o) const {
    if (rows_ != o.rows_) return rows_ <=> o.rows_;
    if (cols_ != o.cols_) return cols_ <=> o.cols_;
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if (a_[r][c] != o.a_[r][c]) return a_[r][c] <=> o.a_[r][c];
    return std::strong_ordering::equal;
  }

  std::vector<std::vector<int>> to_rows() const;
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::array<Coords, kMaxDim> a_{};
};

/// Pairwise linear independence helper: rank of a list of vectors of length n.
int rank_of(const std::vector<Coords>& vectors, int n);

}  // namespace capset
