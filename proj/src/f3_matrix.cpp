#include "capset/f3_matrix.hpp"

#include <sstream>

namespace capset {
namespace {

void check_shape(int rows, int cols) {
  if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim) throw CapsetError("F3 matrix shape out of range");
}

}  // namespace

F3Matrix::F3Matrix(int rows, int cols) : rows_(rows), cols_(cols) { check_shape(rows, cols); }

F3Matrix::F3Matrix(int rows, int cols, const std::vector<std::vector<int>>& entries) : F3Matrix(rows, cols) {
  if (static_cast<int>(entries.size()) != rows) throw CapsetError("F3 matrix: wrong number of rows");
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(entries[r].size()) != cols) throw CapsetError("F3 matrix: ragged rows");
    for (int c = 0; c < cols; ++c) set(r, c, entries[r][c]);
  }
}

F3Matrix F3Matrix::identity(int n) {
  F3Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.a_[i][i] = 1;
  return m;
}

F3Matrix F3Matrix::random_invertible(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, 2);
  for (;;) {
    F3Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m.a_[r][c] = static_cast<std::uint8_t>(digit(rng));
    if (m.is_invertible()) return m;
  }
}

void F3Matrix::set_row(int r, const Coords& v) {
  for (int c = 0; c < cols_; ++c) a_[r][c] = static_cast<std::uint8_t>(v[c] % 3);
}

F3Matrix F3Matrix::operator*(const F3Matrix& o) const {
  if (cols_ != o.rows_) throw CapsetError("F3 matrix product shape mismatch");
  F3Matrix m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < o.cols_; ++c) {
      int s = 0;
      for (int k = 0; k < cols_; ++k) s += a_[r][k] * o.a_[k][c];
      m.a_[r][c] = static_cast<std::uint8_t>(s % 3);
    }
  return m;
}

Coords F3Matrix::apply(const Coords& x) const {
  Coords y{};
  for (int r = 0; r < rows_; ++r) y[r] = dot_row(r, x);
  return y;
}

std::uint8_t F3Matrix::dot_row(int r, const Coords& x) const {
  int s = 0;
  for (int c = 0; c < cols_; ++c) s += a_[r][c] * x[c];
  return static_cast<std::uint8_t>(s % 3);
}

F3Matrix F3Matrix::transpose() const {
  F3Matrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.a_[c][r] = a_[r][c];
  return m;
}

F3Matrix F3Matrix::negated() const {
  F3Matrix m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m.a_[r][c] = f3_neg(a_[r][c]);
  return m;
}

F3Matrix F3Matrix::rref() const {
  F3Matrix m = *this;
  int lead = 0;
  for (int c = 0; c < cols_ && lead < rows_; ++c) {
    int piv = -1;
    for (int r = lead; r < rows_; ++r)
      if (m.a_[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m.a_[piv], m.a_[lead]);
    if (m.a_[lead][c] == 2)
      for (int k = 0; k < cols_; ++k) m.a_[lead][k] = f3_mul(m.a_[lead][k], 2);
    for (int r = 0; r < rows_; ++r) {
      if (r == lead || !m.a_[r][c]) continue;
      std::uint8_t f = m.a_[r][c];
      for (int k = 0; k < cols_; ++k) m.a_[r][k] = static_cast<std::uint8_t>((m.a_[r][k] + 3 * 3 - f * m.a_[lead][k]) % 3);
    }
    ++lead;
  }
  F3Matrix out(lead, cols_);
  for (int r = 0; r < lead; ++r) out.a_[r] = m.a_[r];
  return out;
}

int F3Matrix::rank() const { return rref().rows(); }

std::vector<int> F3Matrix::pivot_columns() const {
  F3Matrix e = rref();
  std::vector<int> piv;
  for (int r = 0; r < e.rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (e.a_[r][c]) {
        piv.push_back(c);
        break;
      }
  return piv;
}

std::optional<F3Matrix> F3Matrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  int n = rows_;
  F3Matrix m = *this, inv = identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.a_[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(m.a_[piv], m.a_[c]);
    std::swap(inv.a_[piv], inv.a_[c]);
    if (m.a_[c][c] == 2)
      for (int k = 0; k < n; ++k) {
        m.a_[c][k] = f3_mul(m.a_[c][k], 2);
        inv.a_[c][k] = f3_mul(inv.a_[c][k], 2);
      }
    for (int r = 0; r < n; ++r) {
      if (r == c || !m.a_[r][c]) continue;
      std::uint8_t f = m.a_[r][c];
      for (int k = 0; k < n; ++k) {
        m.a_[r][k] = static_cast<std::uint8_t>((m.a_[r][k] + 9 - f * m.a_[c][k]) % 3);
        inv.a_[r][k] = static_cast<std::uint8_t>((inv.a_[r][k] + 9 - f * inv.a_[c][k]) % 3);
      }
    }
  }
  return inv;
}

int F3Matrix::determinant() const {
  if (rows_ != cols_) throw CapsetError("determinant of a non-square matrix");
  int n = rows_, det = 1;
  F3Matrix m = *this;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (m.a_[r][c]) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m.a_[piv], m.a_[c]);
      det = (3 - det) % 3;
    }
    det = det * m.a_[c][c] % 3;
    std::uint8_t inv = m.a_[c][c];  // x^{-1} = x in F3
    for (int r = c + 1; r < n; ++r) {
      if (!m.a_[r][c]) continue;
      std::uint8_t f = f3_mul(m.a_[r][c], inv);
      for (int k = c; k < n; ++k) m.a_[r][k] = static_cast<std::uint8_t>((m.a_[r][k] + 9 - f * m.a_[c][k]) % 3);
    }
  }
  return det;
}

F3Matrix F3Matrix::kernel() const {
  F3Matrix e = rref();
  std::vector<int> piv = e.pivot_columns();
  std::vector<bool> is_piv(cols_, false);
  for (int p : piv) is_piv[p] = true;
  std::vector<Coords> basis;
  for (int f = 0; f < cols_; ++f) {
    if (is_piv[f]) continue;
    Coords v{};
    v[f] = 1;
    for (int r = 0; r < e.rows_; ++r) v[piv[r]] = f3_neg(e.a_[r][f]);
    basis.push_back(v);
  }
  F3Matrix k(static_cast<int>(basis.size()), cols_);
  for (int r = 0; r < k.rows_; ++r) k.a_[r] = basis[r];
  return k;
}

F3Matrix F3Matrix::complement_rows() const {
  std::vector<int> piv = pivot_columns();
  if (static_cast<int>(piv.size()) != rows_) throw CapsetError("complement_rows: rows are linearly dependent");
  std::vector<bool> is_piv(cols_, false);
  for (int p : piv) is_piv[p] = true;
  F3Matrix g(cols_ - rows_, cols_);
  int r = 0;
  for (int c = 0; c < cols_; ++c)
    if (!is_piv[c]) g.a_[r++][c] = 1;
  return g;
}

F3Matrix F3Matrix::stacked(const F3Matrix& below) const {
  if (below.cols_ != cols_) throw CapsetError("stacked: column mismatch");
  F3Matrix m(rows_ + below.rows_, cols_);
  for (int r = 0; r < rows_; ++r) m.a_[r] = a_[r];
  for (int r = 0; r < below.rows_; ++r) m.a_[rows_ + r] = below.a_[r];
  return m;
}

bool F3Matrix::operator==(const F3Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (a_[r][c] != o.a_[r][c]) return false;
  return true;
}

std::vector<std::vector<int>> F3Matrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r][c] = a_[r][c];
  return out;
}

std::string F3Matrix::to_string() const {
  std::ostringstream os;
  for (int r = 0; r < rows_; ++r) {
    if (r) os << ' ';
    for (int c = 0; c < cols_; ++c) os << static_cast<int>(a_[r][c]);
  }
  return os.str();
}

int rank_of(const std::vector<Coords>& vectors, int n) {
  if (vectors.empty()) return 0;
  int r = 0;
  std::vector<Coords> basis;
  for (const Coords& v : vectors) {
    Coords w = v;
    for (const Coords& b : basis) {
      int p = 0;
      while (p < n && !b[p]) ++p;
      if (w[p]) {
        std::uint8_t f = w[p];  // pivots of basis rows are 1
        for (int k = 0; k < n; ++k) w[k] = static_cast<std::uint8_t>((w[k] + 9 - f * b[k]) % 3);
      }
    }
    int p = 0;
    while (p < n && !w[p]) ++p;
    if (p == n) continue;
    if (w[p] == 2)
      for (int k = 0; k < n; ++k) w[k] = f3_mul(w[k], 2);
    basis.push_back(w);
    ++r;
  }
  return r;
}

}  // namespace capset
