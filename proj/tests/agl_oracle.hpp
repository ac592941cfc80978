#pragma once

// Exhaustive AGL(n,3) for n <= 3, independent of the frame search.

#include <vector>

#include "capset/cap.hpp"

namespace oracle {

inline std::vector<capset::AffineMap> all_affine_maps(int n) {
  using namespace capset;
  std::vector<AffineMap> out;
  const std::uint32_t entries = pow3(n * n);
  for (std::uint32_t code = 0; code < entries; ++code) {
    F3Matrix m(n, n);
    std::uint32_t t = code;
    for (int i = 0; i < n * n; ++i, t /= 3) m.set(i / n, i % n, static_cast<int>(t % 3));
    if (m.determinant() == 0) continue;
    for (PointIndex s = 0; s < pow3(n); ++s) out.emplace_back(m, s);
  }
  return out;
}

inline const std::vector<capset::AffineMap>& agl(int n) {
  static std::vector<capset::AffineMap> cache[4];
  if (cache[n].empty()) cache[n] = all_affine_maps(n);
  return cache[n];
}

inline capset::PointSet min_image(const capset::PointSet& s) {
  capset::PointSet best = s;
  for (const auto& m : agl(s.dim())) {
    capset::PointSet img = m.apply(s);
    if (img < best) best = img;
  }
  return best;
}

inline std::size_t stabiliser_order(const capset::PointSet& s) {
  std::size_t c = 0;
  for (const auto& m : agl(s.dim()))
    if (m.apply(s) == s) ++c;
  return c;
}

inline bool equivalent(const capset::PointSet& a, const capset::PointSet& b) {
  if (a.size() != b.size()) return false;
  for (const auto& m : agl(a.dim()))
    if (m.apply(a) == b) return true;
  return false;
}

}  // namespace oracle
