#pragma once

#include <vector>

#include "capset/cap.hpp"
#include "capset/f3_matrix.hpp"

namespace capset {

/// Partition of AG(n,3) into the 3^c parallel flats {x : F x + k = v}.
///
/// Fibre labels are base-3 integers over the value tuple, value of the first
/// functional most significant.  Points of a fibre are re-coordinatised as
/// y = G (x - base), where G completes F to a basis and base is the fibre's
/// lowest-index point.
class Fibration {
 public:
  Fibration() = default;
  /// Throws if the functionals are dependent.
  Fibration(F3Matrix functionals, Coords constants = {});
  /// Level sets of a single coordinate (0-based).
  static Fibration coordinate(int n, int coord);
  /// Joint level sets of two coordinates.
  static Fibration coordinates(int n, int first, int second);

  int dim() const { return functionals_.cols(); }
  int codim() const { return functionals_.rows(); }
  int fiber_count() const { return static_cast<int>(pow3(codim())); }
  const F3Matrix& functionals() const { return functionals_; }
  const Coords& constants() const { return constants_; }

  int label(PointIndex p) const { return labels_[p]; }
  /// Value tuple of a label.
  Coords values(int label) const;
  int label_of(const Coords& values) const;

  /// All points of one fibre.
  PointSet fiber_points(int label) const;
  PointIndex fiber_base(int label) const { return base_[label]; }
  /// Coordinates of p inside its fibre, as a point of AG(n-c,3).
  PointIndex local_index(PointIndex p) const;
  /// Inverse of local_index for a given fibre.
  PointIndex global_index(int label, PointIndex local) const;

 private:
  F3Matrix functionals_;
  Coords constants_{};
  F3Matrix complement_;
  std::vector<int> labels_;
  std::vector<PointIndex> base_;
};

/// Fibre sizes of a point set, indexed by label.
std::vector<int> fiber_counts(const PointSet& points, const Fibration& f);

/// The cap's intersection with every fibre, re-coordinatised (requires c < n).
std::vector<CapSet> fibers(const CapSet& cap, const Fibration& f);

}  // namespace capset
