#include "capset/fibration.hpp"

namespace capset {

Fibration::Fibration(F3Matrix functionals, Coords constants) : functionals_(std::move(functionals)), constants_(constants) {
  const int n = functionals_.cols(), c = functionals_.rows();
  if (n < 1 || c < 1 || c > n) throw CapsetError("fibration: need 1 <= codim <= dim");
  if (functionals_.rank() != c) throw CapsetError("fibration: functionals are linearly dependent");
  complement_ = functionals_.complement_rows();
  const Space& sp = Space::get(n);
  labels_.resize(sp.size());
  base_.assign(pow3(c), sp.size());
  for (PointIndex p = 0; p < sp.size(); ++p) {
    Coords x = sp.coords(p);
    int lab = 0;
    for (int r = 0; r < c; ++r) lab = lab * 3 + f3_add(functionals_.dot_row(r, x), constants_[r] % 3);
    labels_[p] = lab;
    if (base_[lab] == sp.size()) base_[lab] = p;
  }
}

Fibration Fibration::coordinate(int n, int coord) {
  F3Matrix f(1, n);
  f.set(0, coord, 1);
  return Fibration(f);
}

Fibration Fibration::coordinates(int n, int first, int second) {
  F3Matrix f(2, n);
  f.set(0, first, 1);
  f.set(1, second, 1);
  return Fibration(f);
}

Coords Fibration::values(int label) const {
  Coords v{};
  for (int r = codim() - 1; r >= 0; --r) {
    v[r] = static_cast<std::uint8_t>(label % 3);
    label /= 3;
  }
  return v;
}

int Fibration::label_of(const Coords& values) const {
  int lab = 0;
  for (int r = 0; r < codim(); ++r) lab = lab * 3 + values[r] % 3;
  return lab;
}

PointSet Fibration::fiber_points(int label) const {
  PointSet s(dim());
  for (PointIndex p = 0; p < labels_.size(); ++p)
    if (labels_[p] == label) s.insert(p);
  return s;
}

PointIndex Fibration::local_index(PointIndex p) const {
  const Space& sp = Space::get(dim());
  Coords d = sp.coords(sp.sub(p, base_[labels_[p]]));
  Coords y = complement_.apply(d);
  return Space::get(dim() - codim()).index(y);
}

PointIndex Fibration::global_index(int label, PointIndex local) const {
  // G restricted to the fibre direction space is a bijection; invert by search over the fibre.
  const Space& sp = Space::get(dim());
  for (PointIndex p = 0; p < sp.size(); ++p)
    if (labels_[p] == label && local_index(p) == local) return p;
  throw CapsetError("fibration: local index out of range");
}

std::vector<int> fiber_counts(const PointSet& points, const Fibration& f) {
  if (points.dim() != f.dim()) throw CapsetError("fiber_counts: dimension mismatch");
  std::vector<int> counts(f.fiber_count(), 0);
  for (PointIndex p : points) ++counts[f.label(p)];
  return counts;
}

std::vector<CapSet> fibers(const CapSet& cap, const Fibration& f) {
  if (cap.dim() != f.dim()) throw CapsetError("fibers: dimension mismatch");
  if (f.codim() >= f.dim()) throw CapsetError("fibers: fibres must have positive dimension");
  const int local_dim = f.dim() - f.codim();
  std::vector<PointSet> parts(f.fiber_count(), PointSet(local_dim));
  for (PointIndex p : cap.points()) parts[f.label(p)].insert(f.local_index(p));
  std::vector<CapSet> out;
  out.reserve(parts.size());
  for (auto& s : parts) out.emplace_back(std::move(s));
  return out;
}

}  // namespace capset
