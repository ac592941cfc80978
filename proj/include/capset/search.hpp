#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "capset/cap.hpp"
#include "capset/fibration.hpp"

namespace capset {

enum class BranchRule {
  /// Smallest-index candidate point overall.
  smallest_index,
  /// Smallest-index candidate inside the fibre with the least slack (candidates minus points still needed).
  tightest_fiber,
};

struct ExtendOptions {
  std::size_t target = 0;
  /// Optional fibre targets: exact final size of every fibre of `fibration`, indexed by label.
  std::optional<Fibration> fibration;
  std::vector<int> fiber_targets;
  /// Keep one result per affine equivalence class.
  bool isomorph_free = false;
  /// Stop after this many raw results were found (0 = exhaustive).
  std::size_t max_results = 0;
  /// Give up after this many search nodes (0 = unlimited); the report is then marked truncated.
  std::uint64_t node_limit = 0;
  BranchRule rule = BranchRule::smallest_index;
  /// Only extend by points for which this returns true (null = all points).
  std::function<bool(PointIndex)> allowed;
};

struct ExtendReport {
  std::vector<CapSet> caps;  // sorted ascending in mask order
  std::uint64_t nodes = 0;
  std::uint64_t raw_results = 0;
  bool truncated = false;
  double seconds = 0;
};

/// All caps of the target size containing the seed (and meeting the fibre targets).
ExtendReport extend_dfs(const CapSet& seed, const ExtendOptions& options);

/// One pair of Lemma-style replacements: remove S_minus from the cap, add S_plus.
struct Replacement {
  PointSet removed;
  PointSet added;
  bool trivial() const { return removed == added; }
};

/// Every (S-, S+) with |S-| = |S+| = k, S- inside the cap, S+ outside cap - S-, such that
/// (cap - S-) + S+ is a cap for which `forbid` is false.  Trivial pairs S+ = S- are included.
std::vector<Replacement> replace_points(const CapSet& cap, int k, const std::function<bool(const PointSet&)>& forbid);

/// True if some hyperplane of the ambient space holds a max_cap_size(n-1) sub-cap.
bool contains_full_hyperplane_section(const PointSet& points);

/// Cross-level midpoint statistics for caps A (level -1) and B (level +1) of a coordinate
/// fibration in dimension n+1.  Points of the middle level are indexed in AG(n,3).
struct MidpointProfile {
  int dim = 0;                   // dimension of each level
  std::vector<int> n;            // n[Q] for Q in AG(dim,3)
  std::vector<PointIndex> partner;  // for n[Q] == 1 the unique A-point, else unset
  /// Histogram value -> number of Q.
  std::vector<std::uint64_t> histogram() const;
  std::vector<PointIndex> points_with(int value) const;
};

/// A and B in local coordinates of their levels; Q = -(p + r) in local coordinates as well.
MidpointProfile midpoint_profile(const CapSet& a, const CapSet& b);

/// S_a(Q): points P of `own` such that the third point of P and Q (computed across levels) lies in `other`.
/// Across levels a, 0, -a the third point of P (level a) and Q (level 0) is -(P + Q) at level -a.
PointSet cross_partners(const CapSet& own, const CapSet& other, PointIndex q);

}  // namespace capset
