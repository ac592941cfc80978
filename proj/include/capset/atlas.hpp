#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "capset/cap.hpp"
#include "capset/directions.hpp"
#include "capset/fibration.hpp"
#include "capset/placement.hpp"
#include "capset/symmetry.hpp"

namespace capset {

// ---- small geometry helpers used by the feature extractors ----

/// Smallest flat containing the points (closure under third points).
PointSet flat_closure(const PointSet& points);
/// u with a + u == b, if b is a translate of a.
std::optional<PointIndex> translation_vector(const PointSet& a, const PointSet& b);
/// Representative of the line direction of v (the smaller of v and -v).
PointIndex line_direction(const Space& sp, PointIndex v);
/// All vectors parallel to the flats of a direction.
PointSet direction_space(const DirectionSpec& d);
/// Vectors of the fibre-local space of `f` carried into the ambient space.
PointSet embed_vectors(const PointSet& local_vectors, const Fibration& f, int label);
/// The point that is the third point of two different pairs of a 4-cap 2-flat.
std::optional<PointIndex> square_centre(const PointSet& square);
/// Side and diagonal line directions of a 4-cap square.
struct SquareDirections {
  std::vector<PointIndex> sides, diagonals;
};
SquareDirections square_directions(const PointSet& square);
/// True if the points split into three pairwise disjoint lines.
bool is_three_disjoint_lines(const PointSet& points);

// ---- dimension 3 ----

CapSet square_pyramid();
CapSet tetrahedron_plus_centre();
CapSet cube3();
CapSet build_9cap();
struct Dim3FiveCaps {
  std::uint64_t labelled = 0;
  std::vector<CanonicalCertificate> classes;
};
Dim3FiveCaps classify_dim3_5caps();

// ---- 18-cap 4-flats ----

struct Features882 {
  std::vector<DirectionSpec> nine_twos;
  std::vector<DirectionSpec> cube_855;
  std::vector<DirectionSpec> cube_882;
  std::optional<Fibration> pair;   // functionals (855 direction, 882 direction)
  std::vector<int> pair_counts;    // by pair label
  std::array<PointSet, 2> standard_squares;
  PointSet midpoints;                    // midpoints of the segments in the four corner 2-flats
  bool squares_are_translates = false;
  bool midpoints_form_square = false;
  bool midpoint_flat_ok = false;         // its 2-flat holds the square centres and the two single points
  std::vector<std::string> problems;

  bool ok() const { return problems.empty(); }
};
Features882 analyze_882(const CapSet& cap);
CapSet build_20cap();
/// The 18-cap 4-flat singled out by the feature uniqueness properties; throws if the search disagrees.
CapSet build_882A2();

// ---- 45-cap 5-flat ----

enum class Category45 { none = 0, twin_other = 1, twin_882A2 = 2, axial_15 = 3, skew_15 = 4 };

struct Features45 {
  std::vector<DirectionSpec> hyperplanes;    // all 121, enumeration order
  std::vector<Category45> category;          // parallel to hyperplanes
  std::array<int, 5> census{};               // by category
  std::vector<DirectionSpec> special;        // 3-flat directions: eight pyramids and one tetrahedron plus centre
  std::vector<PointIndex> axis_candidates;   // line directions inside every special direction
  std::optional<PointIndex> axis;
  bool other_twins_isomorphic = false;       // category (i) 18-caps all in one class
};
Features45 analyze_45(const CapSet& cap, const PointSet& canonical_882A2);
CapSet build_45cap(const CapSet& a882);
/// Affine image of a 45-cap with a twin-882A2 direction as coordinate 0, the 9-cap at x1 = 0.
CapSet level_frame_45(const CapSet& cap, const PointSet& canonical_882A2);

struct DualDesign {
  PointSet vectors;                  // in the dual space, encoded as points of AG(5,3)
  SpectrumReport spectrum;
  std::optional<DirectionSpec> empty_direction;  // the {45,45,0} direction
  bool matches_axis = false;         // that direction is f -> f(L)
  bool duality_ok = false;           // same hyperplane iff the difference vanishes on L
  int grid_ok = 0, grid_total = 0;   // (y,z) grids equal to one of the two stated matrices
  int flats_ok = 0, flats_total = 0; // 18-point flats are complements of 3 disjoint lines, 9-point flats are 9-caps
};
DualDesign dual_design(const CapSet& cap45, const PointSet& canonical_882A2);

// ---- dimension 6 and the rest ----

/// 45-cap at x1 = -1, its reflection at +1 and the free middle points.
CapSet build_112cap(const CapSet& cap45);
CapSet build_delta686(const CapSet& cap20);
/// From the first (6,6) placement of the full sweep.
CapSet build_96cap(const CapSet& framed45);
struct Extract40 {
  CapSet cap;
  std::vector<DirectionSpec> twins;   // {18,18,4} directions
  std::size_t orbits = 0;
  int fibres_882A2 = 0;               // number of 18-caps in those directions that are 882A2
};
Extract40 extract_40cap(const CapSet& cap112, const PointSet& canonical_882A2);

// ---- cache ----

struct CatalogEntry {
  std::string name;
  int dim;
  std::size_t size;
};
const std::vector<CatalogEntry>& atlas_catalog();

/// Cap files `<root>/<name>.cap` plus `<root>/manifest.json`; root defaults to $CAPSET_ATLAS or ./atlas.
class Atlas {
 public:
  explicit Atlas(std::filesystem::path root);
  static std::filesystem::path default_root();

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path path(const std::string& name) const { return root_ / (name + ".cap"); }

  /// Cached cap, or built (and cached) on first use.  Throws on an unknown name.
  const CapSet& get(const std::string& name);
  /// Canonical mask of the 882A2 class.
  const PointSet& canonical_882A2();
  /// Builds every missing entry (or just `only`).
  void build(const std::string& only = "");
  /// Problems with the cache: missing files, hash mismatches, failed re-certification.
  std::vector<std::string> audit() const;

  bool allow_build = true;

 private:
  CapSet make(const std::string& name);
  void store(const std::string& name, const CapSet& cap);

  std::filesystem::path root_;
  std::map<std::string, CapSet> loaded_;
  std::optional<PointSet> canon882_;
};

/// 64-bit FNV-1a, used for the manifest hashes.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace capset
