#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "capset/affine_map.hpp"
#include "capset/point_set.hpp"

namespace capset {

/// A point together with its ambient dimension.
struct Point {
  int dim = 0;
  PointIndex index = 0;

  static Point from_string(const std::string& digits);
  std::string to_string() const { return Space::get(dim).to_string(index); }
  bool operator==(const Point&) const = default;
};

/// Third point of the line through p and q; throws on dimension mismatch or p == q.
Point third_on_line(const Point& p, const Point& q);

/// True iff no three members are collinear.
bool is_cap(const PointSet& points);

/// A set of points of AG(n,3) with no three on a line.  Immutable once built.
class CapSet {
 public:
  CapSet() = default;
  /// Validates the cap property.
  explicit CapSet(PointSet points);
  CapSet(int dim, const std::vector<PointIndex>& points) : CapSet(PointSet(dim, points)) {}
  static CapSet empty(int dim) { return CapSet(PointSet(dim)); }

  int dim() const { return points_.dim(); }
  std::size_t size() const { return size_; }
  const PointSet& points() const { return points_; }
  bool contains(PointIndex p) const { return points_.contains(p); }
  std::vector<PointIndex> to_vector() const { return points_.to_vector(); }

  /// Cap obtained by adding a point; throws if the result is not a cap.
  CapSet with(PointIndex p) const;
  CapSet without(PointIndex p) const;

  bool operator==(const CapSet& o) const { return points_ == o.points_; }

 private:
  PointSet points_;
  std::size_t size_ = 0;
};

/// Points outside the set blocked by it: thirds of member pairs.
PointSet blocked_points(const PointSet& points);
/// All points P outside the cap such that cap + P is still a cap.
PointSet addable_points(const CapSet& cap);
inline bool is_complete(const CapSet& cap) { return addable_points(cap).empty(); }

CapSet apply_map(const AffineMap& m, const CapSet& cap);

/// Smallest affine flat containing the points, as its dimension (-1 for the empty set).
int affine_hull_dimension(const PointSet& points);

// Cap file format: "capset v1", "dim <n>", "<size>", then one point per line
// as n digits, ascending by index, with a trailing newline.
std::string format_cap(const CapSet& cap);
void write_cap(std::ostream& os, const CapSet& cap);
CapSet parse_cap(const std::string& text, const std::string& source = "<memory>");
CapSet read_cap_file(const std::filesystem::path& path);
/// Writes via a temporary file and rename.
void write_cap_file(const std::filesystem::path& path, const CapSet& cap);

}  // namespace capset
