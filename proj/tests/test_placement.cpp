#include <filesystem>
#include <random>

#include "capset/atlas.hpp"
#include "capset/placement.hpp"
#include "capset/search.hpp"
#include "doctest.h"

using namespace capset;

namespace {

CapSet some_cap(int dim, std::size_t size, std::uint64_t seed) {
  ExtendOptions o;
  o.target = size;
  o.max_results = 50;
  auto caps = extend_dfs(CapSet::empty(dim), o).caps;
  std::mt19937_64 rng(seed);
  return caps[rng() % caps.size()];
}

// n(Q) straight from the definition.
std::vector<int> direct_counts(const CapSet& a, const CapSet& b) {
  const Space& sp = Space::get(a.dim());
  std::vector<int> n(sp.size(), 0);
  for (PointIndex p : a.points())
    for (PointIndex r : b.points()) ++n[sp.neg(sp.add(p, r))];
  return n;
}

}  // namespace

TEST_CASE("placement statistics follow the definition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    CapSet a = some_cap(3, 6, rng()), b = some_cap(3, 7, rng());
    auto n = direct_counts(a, b);
    PlacementStats st = placement_statistics(a, b);
    CHECK(st.n0 == std::count(n.begin(), n.end(), 0));
    CHECK(st.n1 == std::count(n.begin(), n.end(), 1));
    CHECK(st.n2 == std::count_if(n.begin(), n.end(), [](int v) { return v <= 2; }));
    PointSet free = free_middle_points(a, b);
    CHECK(free.size() == std::size_t(st.n0));
    for (PointIndex q : free) CHECK(n[q] == 0);
  }
}

TEST_CASE("double-coset sweep agrees with the plain enumeration") {
  for (auto [dim, size] : std::vector<std::pair<int, std::size_t>>{{3, 6}, {4, 12}, {4, 16}}) {
    CapSet base = some_cap(dim, size, 17 + size);
    auto brute = brute_force_linear_sweep(base);
    SweepOptions o;
    SweepSummary s = sweep_linear_placements(base, o, nullptr, nullptr);
    CHECK(s.complete);
    CHECK(s.by_n0_n2 == brute);
    std::uint64_t total = 0;
    for (auto& [k, v] : brute) total += v;
    CHECK(s.universe == total);
    CHECK(s.level_group == level_automorphisms(base).size());
  }
}

TEST_CASE("sweep results do not depend on threads; visitor sees every accepted map") {
  CapSet base = some_cap(4, 14, 3);
  auto pick = [](const PlacementStats& st) { return st.n0 >= 2; };
  std::vector<std::pair<std::string, int>> seen[2];
  SweepSummary sum[2];
  for (int t : {1, 3}) {
    SweepOptions o;
    o.threads = t;
    auto& v = seen[t == 3];
    sum[t == 3] = sweep_linear_placements(base, o, pick, [&](const LinearPlacement& p, const PlacementStats& st) {
      v.emplace_back(p.map().to_string(), st.n0);
    });
  }
  CHECK(sum[0].by_n0_n2 == sum[1].by_n0_n2);
  CHECK(seen[0] == seen[1]);
  // visited representatives carry the weight of their class
  std::uint64_t accepted = 0;
  for (auto& [k, v] : sum[0].by_n0_n2)
    if (k.first >= 2) accepted += v;
  std::uint64_t weighted = 0;
  SweepOptions o;
  sweep_linear_placements(base, o, pick, [&](const LinearPlacement& p, const PlacementStats&) { weighted += p.weight; });
  CHECK(weighted == accepted);
}

TEST_CASE("aut-left convention divides by the level automorphisms") {
  CapSet base = some_cap(4, 16, 8);
  SweepSummary s = sweep_linear_placements(base, SweepOptions{}, nullptr, nullptr);
  for (auto& [k, v] : s.by_n0_n2) {
    CHECK(v % s.level_group == 0);
    CHECK(s.count(k.first, k.second, Convention::aut_left) * s.level_group == v);
    CHECK(s.count(k.first, k.second, Convention::all) == v);
  }
  CHECK(parse_convention("aut-left") == Convention::aut_left);
  CHECK(convention_name(Convention::all) == "all");
  CHECK_THROWS_AS(parse_convention("orbits"), CapsetError);
}

TEST_CASE("checkpoint resume gives the same counts") {
  CapSet base = some_cap(4, 15, 21);
  auto path = std::filesystem::temp_directory_path() / "capset_test_sweep.ckpt.json";
  std::filesystem::remove(path);
  SweepOptions o;
  o.checkpoint = path.string();
  o.checkpoint_every = 50;
  o.max_representatives = 120;
  SweepSummary part = sweep_linear_placements(base, o, nullptr, nullptr);
  CHECK_FALSE(part.complete);
  CHECK(std::filesystem::exists(path));
  o.max_representatives = 0;
  SweepSummary rest = sweep_linear_placements(base, o, nullptr, nullptr);
  SweepSummary fresh = sweep_linear_placements(base, SweepOptions{}, nullptr, nullptr);
  CHECK(rest.complete);
  CHECK(rest.by_n0_n2 == fresh.by_n0_n2);
  CHECK(rest.representatives == fresh.representatives);
  // a checkpoint for another base is refused
  o.checkpoint = path.string();
  CHECK_THROWS_AS(sweep_linear_placements(some_cap(4, 15, 22), o, nullptr, nullptr), CapsetError);
  std::filesystem::remove(path);
}

TEST_CASE("shift placements") {
  CapSet base = some_cap(4, 14, 11);
  auto pl = enumerate_shift_placements(base);
  REQUIRE(pl.size() == 2 * 27);
  CHECK(pl.front().reflection);
  CHECK_FALSE(pl.back().reflection);
  const Space& sp = Space::get(4);
  PointSet neg(4);
  for (PointIndex p : base.points()) neg.insert(sp.neg(p));
  CHECK(pl.front().image.points() == neg);
  CHECK(pl[27].image == base);
  for (const auto& p : pl) {
    CHECK(p.image.size() == base.size());
    // levels keep their sizes (reflections swap -1 and +1)
    auto a = fiber_counts(base.points(), Fibration::coordinate(4, 0));
    auto b = fiber_counts(p.image.points(), Fibration::coordinate(4, 0));
    CHECK(a[0] == b[0]);
    if (!p.reflection) CHECK(a == b);
  }
  PointSet moved(4);
  for (PointIndex p : base.points()) moved.insert(sp.add(p, 7));
  CHECK(is_translate(base.points(), moved));
  CHECK_FALSE(is_translate(base.points(), base.points() - PointSet(4, {base.points().first()})));
}

TEST_CASE("stack_levels places the three levels") {
  PointSet lower(2, {0, 1}), middle(2, {3}), upper(2, {0});
  CapSet c = stack_levels(lower, middle, upper);
  CHECK(c.dim() == 3);
  CHECK(c.contains(2 * 9 + 0));
  CHECK(c.contains(2 * 9 + 1));
  CHECK(c.contains(3));
  CHECK(c.contains(9));
  CHECK(c.size() == 4);
  CHECK_THROWS_AS(stack_levels(lower, PointSet(3), upper), CapsetError);
}
