#include "capset/affine_map.hpp"

namespace capset {

AffineMap::AffineMap(F3Matrix linear, PointIndex translation) : linear_(std::move(linear)), translation_(translation) {
  if (linear_.rows() != linear_.cols() || linear_.rows() < 1) throw CapsetError("affine map: linear part must be square");
  if (!linear_.is_invertible()) throw CapsetError("affine map: linear part is singular");
  Space::get(dim()).check(translation_);
  precompute();
}

void AffineMap::precompute() {
  const Space& sp = Space::get(dim());
  for (int c = 0; c < dim(); ++c) {
    Coords col{};
    for (int r = 0; r < dim(); ++r) col[r] = linear_(r, c);
    column_[c] = sp.packed(sp.index(col));
    neg_column_[c] = Space::packed_neg(column_[c]);
  }
}

AffineMap AffineMap::identity(int n) { return AffineMap(F3Matrix::identity(n), 0); }

AffineMap AffineMap::translation(int n, PointIndex t) { return AffineMap(F3Matrix::identity(n), t); }

AffineMap AffineMap::point_reflection(int n, PointIndex centre) {
  const Space& sp = Space::get(n);
  return AffineMap(F3Matrix::identity(n).negated(), sp.add(centre, centre));
}

AffineMap AffineMap::random(int n, std::mt19937_64& rng) {
  F3Matrix l = F3Matrix::random_invertible(n, rng);
  std::uniform_int_distribution<PointIndex> pt(0, Space::get(n).size() - 1);
  return AffineMap(l, pt(rng));
}

PointIndex AffineMap::apply_linear(PointIndex v) const {
  const Space& sp = Space::get(dim());
  std::uint32_t acc = 0;
  for (int c = 0; c < dim(); ++c) {
    std::uint8_t d = sp.coord(v, c);
    if (d == 1) acc = Space::packed_add(acc, column_[c]);
    else if (d == 2) acc = Space::packed_add(acc, neg_column_[c]);
  }
  return sp.unpack(acc);
}

PointIndex AffineMap::apply(PointIndex p) const {
  const Space& sp = Space::get(dim());
  return sp.add(apply_linear(p), translation_);
}

PointSet AffineMap::apply(const PointSet& s) const {
  if (s.dim() != dim()) throw CapsetError("affine map applied to a set of another dimension");
  PointSet out(dim());
  for (PointIndex p : s) out.insert(apply(p));
  return out;
}

AffineMap AffineMap::compose(const AffineMap& other) const {
  if (other.dim() != dim()) throw CapsetError("composing affine maps of different dimensions");
  return AffineMap(linear_ * other.linear_, apply(other.translation_));
}

AffineMap AffineMap::inverse() const {
  F3Matrix inv = *linear_.inverse();
  AffineMap lin(inv, 0);
  const Space& sp = Space::get(dim());
  return AffineMap(inv, sp.neg(lin.apply_linear(translation_)));
}

std::string AffineMap::to_string() const {
  return "L=[" + linear_.to_string() + "] t=" + Space::get(dim()).to_string(translation_);
}

}  // namespace capset
