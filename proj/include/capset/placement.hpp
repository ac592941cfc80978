#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capset/cap.hpp"

namespace capset {

/// Cross-level midpoint counts for caps at levels -1 and +1 (same local coordinates).
struct PlacementStats {
  int n0 = 0;  // middle points that are midpoints of no cross segment
  int n1 = 0;  // ... of exactly one
  int n2 = 0;  // ... of at most two
  bool operator==(const PlacementStats&) const = default;
};

PlacementStats placement_statistics(const CapSet& lower, const CapSet& upper);

/// Counting conventions for fibre-preserving placements.
///   "all"      every map T in the enumeration universe counts once
///   "aut-left" maps are counted modulo T ~ T g, g a level-preserving automorphism of the base
enum class Convention { all, aut_left };
Convention parse_convention(const std::string& id);
std::string convention_name(Convention c);

/// Level-preserving linear map of AG(d+1,3): (x1, y) -> (x1, A y + x1 w).
/// Coordinate 0 of the base cap is x1.
struct LinearPlacement {
  F3Matrix inner;        // A, d x d
  PointIndex shear = 0;  // w, a point of AG(d,3)
  std::uint64_t weight = 1;  // number of maps in the universe this representative stands for

  AffineMap map() const;
};

/// Linear parts (as level-preserving maps above) of the automorphisms of `base` fixing every x1-level.
std::vector<LinearPlacement> level_automorphisms(const CapSet& base);

struct SweepOptions {
  int threads = 1;
  /// Resume from / write to this file (atomic rewrite every `checkpoint_every` representatives).
  std::string checkpoint;
  std::uint64_t checkpoint_every = 20000;
  /// Stop after this many inner-matrix representatives (0 = all); the summary is then partial.
  std::uint64_t max_representatives = 0;
  /// Stop at the end of the batch in which this many placements reached the visitor (0 = never).
  std::uint64_t stop_after_hits = 0;
};

struct SweepSummary {
  int inner_dim = 0;
  std::uint64_t universe = 0;          // |GL(d,3)| * 3^d
  std::uint64_t level_group = 0;       // number of distinct level-preserving automorphism linear parts
  std::uint64_t representatives = 0;   // inner-matrix double-coset representatives processed
  bool complete = false;
  std::map<std::pair<int, int>, std::uint64_t> by_n0_n2;  // (n0, n2) -> number of maps

  std::uint64_t count(int n0, int n2, Convention c) const;
  std::string to_json() const;
};

/// Visits every level-preserving linear placement of `base` modulo the double-coset
/// reduction of the inner matrix by the base's level automorphisms.  The visitor sees
/// (representative, stats); representatives arrive in increasing order of the inner matrix
/// and are independent of the thread count.  Only placements accepted by `interesting`
/// reach the visitor (null = all).
SweepSummary sweep_linear_placements(const CapSet& base, const SweepOptions& options,
                                     const std::function<bool(const PlacementStats&)>& interesting,
                                     const std::function<void(const LinearPlacement&, const PlacementStats&)>& visit);

/// Straightforward version of the sweep over every map of the universe; for small dimensions and tests.
std::map<std::pair<int, int>, std::uint64_t> brute_force_linear_sweep(const CapSet& base);

/// Point reflection or translation of the base followed by the shear x -> x + x1 v.
struct ShiftPlacement {
  bool reflection = false;
  PointIndex shift = 0;  // v, a point of AG(d,3) where d = dim - 1
  CapSet image;
};

/// All 2 * 3^(dim-1) shifted placements of `base`, reflections first, then by shift index.
std::vector<ShiftPlacement> enumerate_shift_placements(const CapSet& base);

/// True if `b` is a translate of `a`.
bool is_translate(const PointSet& a, const PointSet& b);

/// Cap in dimension dim+1 with `lower` at x1 = -1, `upper` at x1 = +1 and `middle` at x1 = 0.
CapSet stack_levels(const PointSet& lower, const PointSet& middle, const PointSet& upper);

/// The middle points that are midpoints of no cross segment.
PointSet free_middle_points(const CapSet& lower, const CapSet& upper);

}  // namespace capset
