#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "capset/cap.hpp"
#include "capset/directions.hpp"

namespace capset {

/// Canonical representative of a cap's affine equivalence class.
///
/// The canonical mask is the minimum of m(C) over all invertible affine maps m in
/// point-set order (lowest differing index decides).  It is found by growing affine
/// frames one basis vector at a time and keeping only frames whose image restricted
/// to the flat spanned so far is minimal.  Frames are grown per origin; origins in
/// the orbit of an already explored one under the automorphisms found so far are
/// skipped, since they produce the same images.
struct CanonicalCertificate {
  PointSet canonical;
  AffineMap witness;  // witness.apply(cap) == canonical
  int hull_dim = 0;   // affine hull dimension of the input
  /// Sorted per-point invariants: for each cap point, how many hyperplanes through it hold k cap points.
  std::vector<std::vector<int>> fingerprint;
  std::uint64_t frames_examined = 0;

  std::string to_json() const;
};

CanonicalCertificate canonical_form(const CapSet& cap);

/// Cheap isomorphism invariant (same content as the certificate fingerprint).
std::vector<std::vector<int>> point_fingerprint(const CapSet& cap);

/// A witness m with m(a) == b, or nothing if the caps are not affinely equivalent.
std::optional<AffineMap> are_isomorphic(const CapSet& a, const CapSet& b);

/// Automorphism group of a spanning cap as (orbit transversal of one point) x (stabiliser of that point).
struct AutomorphismGroup {
  int dim = 0;
  std::vector<AffineMap> transversal;
  std::vector<AffineMap> stabiliser;
  std::vector<AffineMap> generators;  // generate the group; no identity
  std::uint64_t order() const { return transversal.size() * stabiliser.size(); }
  /// Every element, identity first, rest in map order.
  std::vector<AffineMap> elements() const;
};
AutomorphismGroup automorphism_group(const CapSet& cap);

/// Full stabiliser of a spanning cap in AGL(n,3), identity first, rest in map order.
std::vector<AffineMap> automorphisms(const CapSet& cap);

/// Image of a direction under an affine map (functionals pulled back through the inverse).
DirectionSpec map_direction(const AffineMap& m, const DirectionSpec& d);

/// Partition of `directions` into orbits of the group generated by `generators`; each orbit lists indices into `directions`, ascending,
/// and orbits are ordered by their smallest index.
std::vector<std::vector<std::size_t>> direction_orbits(const std::vector<AffineMap>& generators, const std::vector<DirectionSpec>& directions);
std::vector<std::vector<std::size_t>> direction_orbits(const CapSet& cap, const std::vector<DirectionSpec>& directions);

}  // namespace capset
