#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "capset/cap.hpp"
#include "capset/fibration.hpp"

namespace capset {

/// A parallel class of codimension-c flats, stored as the reduced row echelon
/// basis of its annihilating subspace in the dual space.
class DirectionSpec {
 public:
  DirectionSpec() = default;
  /// Any full-rank c x n matrix; its row space is what matters.
  explicit DirectionSpec(const F3Matrix& functionals);

  int dim() const { return basis_.cols(); }
  int codim() const { return basis_.rows(); }
  const F3Matrix& basis() const { return basis_; }
  Fibration fibration() const { return Fibration(basis_); }

  /// True if v (a direction vector) is parallel to the flats, i.e. annihilated by every functional.
  bool contains_vector(PointIndex v) const;
  /// True if the other direction's flats contain this one's (subspace of its direction space).
  bool refines(const DirectionSpec& coarser) const;

  bool operator==(const DirectionSpec& o) const { return basis_ == o.basis_; }
  auto operator<=>(const DirectionSpec& o) const { return basis_ <=> o.basis_; }
  std::string to_string() const { return basis_.to_string(); }

 private:
  F3Matrix basis_;
};

/// Number of codim-c directions of AG(n,3) (Gaussian binomial at q = 3).
std::uint64_t direction_count(int n, int c);

/// Every codim-c direction, lexicographic in the echelon basis.
std::vector<DirectionSpec> enumerate_directions(int n, int c);

/// Hyperplane direction of one functional (a nonzero vector of the dual space, as a point index).
DirectionSpec hyperplane_direction(int n, PointIndex functional);

/// Fibre sizes of a point set in a direction, indexed by the label of the basis values.
std::vector<int> direction_counts(const PointSet& points, const DirectionSpec& d);

/// Point count of a cap in one direction: raw fibre sizes plus a relabelling-invariant key.
///
/// Keys: codim 1 gives the triple sorted descending; codim 2 gives the lexicographically
/// largest 3x3 grid (row = value of the first functional) over all affine relabellings of
/// F3^2; higher codimensions fall back to the descending multiset.
struct PointCountMatrix {
  int codim = 0;
  std::vector<int> counts;
  std::vector<int> key;
};

std::vector<int> normalize_counts(const std::vector<int>& counts, int codim);
PointCountMatrix direction_point_count(const CapSet& cap, const DirectionSpec& d);

/// Grid of a codim-2 count vector in the usual printed orientation: columns are the
/// first functional's values -1,0,1, rows top to bottom the second's values 1,0,-1.
std::array<std::array<int, 3>, 3> printed_grid(const std::vector<int>& counts);
/// Inverse of printed_grid.
std::vector<int> counts_from_printed_grid(const std::array<std::array<int, 3>, 3>& grid);

struct SpectrumReport {
  int dim = 0;
  int codim = 0;
  std::size_t size = 0;
  std::map<std::vector<int>, std::uint64_t, std::greater<>> census;

  std::uint64_t total() const;
  std::uint64_t multiplicity(const std::vector<int>& key) const;
  std::string to_json() const;
  bool operator==(const SpectrumReport&) const = default;
};

SpectrumReport spectrum(const CapSet& cap, int codim);
SpectrumReport spectrum_of_points(const PointSet& points, int codim);
/// Directions of a given key, in enumeration order.
std::vector<DirectionSpec> directions_with_key(const PointSet& points, int codim, const std::vector<int>& key);

struct IdentityCheck {
  bool ok = false;
  std::string diagnostic;
};

/// Double-counting identities of a codim-1 spectrum of an s-point set in dimension n.
IdentityCheck moment_identities(const SpectrumReport& report, std::size_t s, int n);

}  // namespace capset
