#include <random>
#include <set>

#include "agl_oracle.hpp"
#include "capset/symmetry.hpp"
#include "doctest.h"

using namespace capset;

namespace {


CapSet from_strings(std::initializer_list<const char*> pts) {
  std::vector<PointIndex> v;
  int n = 0;
  for (const char* s : pts) {
    Point p = Point::from_string(s);
    n = p.dim;
    v.push_back(p.index);
  }
  return CapSet(n, v);
}

CapSet random_cap(int n, std::size_t size, std::mt19937_64& rng) {
  for (;;) {
    PointSet s(n);
    std::vector<PointIndex> order(pow3(n));
    for (PointIndex p = 0; p < order.size(); ++p) order[p] = p;
    std::shuffle(order.begin(), order.end(), rng);
    for (PointIndex p : order) {
      if (s.size() == size) break;
      if (!blocked_points(s).contains(p)) s.insert(p);
    }
    if (s.size() == size) return CapSet(s);
  }
}

}  // namespace

TEST_CASE("AGL(3,3) oracle has the right order") { CHECK(oracle::agl(3).size() == 303264); }

TEST_CASE("canonical form equals the brute-force minimum image in dims 2 and 3") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 24; ++it) {
    int n = it < 8 ? 2 : 3;
    std::size_t size = 1 + rng() % (n == 2 ? 4 : 9);
    CapSet c = random_cap(n, size, rng);
    CanonicalCertificate cert = canonical_form(c);
    CHECK(cert.canonical == oracle::min_image(c.points()));
    CHECK(cert.witness.apply(c.points()) == cert.canonical);
    CHECK(cert.hull_dim == affine_hull_dimension(c.points()));
  }
}

TEST_CASE("dim 3 equivalence queries agree with the oracle") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 30; ++it) {
    std::size_t size = 4 + rng() % 5;
    CapSet a = random_cap(3, size, rng), b = random_cap(3, size, rng);
    bool fast = are_isomorphic(a, b).has_value();
    CHECK(fast == oracle::equivalent(a.points(), b.points()));
    if (auto w = are_isomorphic(a, b)) CHECK(w->apply(a.points()) == b.points());
  }
}

TEST_CASE("square pyramid and tetrahedron plus centre are different 5-caps") {
  CapSet pyramid = from_strings({"000", "010", "100", "110", "001"});
  CapSet tetra = from_strings({"000", "100", "010", "001", "111"});
  CHECK(canonical_form(pyramid).canonical != canonical_form(tetra).canonical);
  CHECK_FALSE(oracle::equivalent(pyramid.points(), tetra.points()));
  CHECK_FALSE(are_isomorphic(pyramid, tetra));
}

TEST_CASE("cube automorphisms") {
  CapSet cube = from_strings({"111", "112", "121", "122", "211", "212", "221", "222"});
  auto aut = automorphisms(cube);
  CHECK(aut.size() >= 48);
  CHECK(aut.size() == oracle::stabiliser_order(cube.points()));
  CHECK(aut.front() == AffineMap::identity(3));
  CHECK(303264 % aut.size() == 0);
  for (const auto& a : aut) CHECK(a.apply(cube.points()) == cube.points());
  CHECK_FALSE(are_isomorphic(cube, from_strings({"000", "010", "100", "110", "001"})));
}

TEST_CASE("automorphism lists are groups and orbits satisfy orbit-stabiliser") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 6; ++it) {
    int n = 3 + it % 2;
    CapSet c = random_cap(n, n == 3 ? 6 + it % 3 : 10 + it, rng);
    if (affine_hull_dimension(c.points()) != n) continue;
    auto group = automorphisms(c);
    std::set<AffineMap> s(group.begin(), group.end());
    CHECK(s.size() == group.size());
    for (const auto& a : group) {
      CHECK(s.count(a.inverse()));
      for (const auto& b : group) CHECK(s.count(a.compose(b)));
    }
    auto dirs = enumerate_directions(n, 1);
    auto orbits = direction_orbits(c, dirs);
    std::size_t covered = 0;
    for (const auto& orb : orbits) {
      covered += orb.size();
      std::size_t stab = 0;
      for (const auto& a : group)
        if (map_direction(a, dirs[orb.front()]) == dirs[orb.front()]) ++stab;
      CHECK(orb.size() * stab == group.size());
    }
    CHECK(covered == dirs.size());
  }
}

TEST_CASE("canonical form is invariant under random affine maps") {
  std::mt19937_64 rng(31);
  for (int n : {4, 5}) {
    CapSet c = random_cap(n, n == 4 ? 16 : 30, rng);
    PointSet canon = canonical_form(c).canonical;
    for (int it = 0; it < 20; ++it) {
      AffineMap m = AffineMap::random(n, rng);
      CapSet img = apply_map(m, c);
      CHECK(canonical_form(img).canonical == canon);
      auto w = are_isomorphic(c, img);
      REQUIRE(w);
      CHECK(w->apply(c.points()) == img.points());
    }
  }
}

TEST_CASE("non-spanning caps") {
  CapSet flat = from_strings({"000", "001", "010", "011"});
  CanonicalCertificate cert = canonical_form(flat);
  CHECK(cert.hull_dim == 2);
  CHECK(cert.canonical == oracle::min_image(flat.points()));
  CHECK_THROWS_WITH_AS(automorphisms(flat), doctest::Contains("affine hull dimension 2"), CapsetError);
  CHECK(canonical_form(CapSet::empty(3)).canonical.empty());
}

TEST_CASE("identity-only groups give singleton orbits") {
  auto dirs = enumerate_directions(3, 1);
  auto orbits = direction_orbits(std::vector<AffineMap>{}, dirs);
  CHECK(orbits.size() == dirs.size());
}

TEST_CASE("certificate json") {
  CapSet c = from_strings({"00", "01", "10"});
  std::string j = canonical_form(c).to_json();
  CHECK(j.find("\"canonical_mask\":\"00b\"") != std::string::npos);
  CHECK(j.find("\"matrix\":[[") != std::string::npos);
}
