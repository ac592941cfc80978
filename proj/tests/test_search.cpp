#include <random>

#include "agl_oracle.hpp"
#include "capset/search.hpp"
#include "capset/symmetry.hpp"
#include "doctest.h"

using namespace capset;

namespace {

bool triple_free(const std::vector<PointIndex>& v, int n) {
  const Space& sp = Space::get(n);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k)
        if (sp.third(v[i], v[j]) == v[k]) return false;
  return true;
}

// Every k-subset of AG(n,3) that is a cap, by plain combination enumeration.
std::vector<PointSet> brute_caps(int n, int k) {
  std::vector<PointSet> out;
  const int N = static_cast<int>(pow3(n));
  std::vector<PointIndex> cur;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      if (triple_free(cur, n)) out.emplace_back(n, cur);
      return;
    }
    for (int p = from; p < N; ++p) {
      cur.push_back(p);
      self(self, p + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointSet> masks(const ExtendReport& r) {
  std::vector<PointSet> v;
  for (const auto& c : r.caps) v.push_back(c.points());
  return v;
}

}  // namespace

TEST_CASE("plane 4-caps: 54 labelled, one class, none extend") {
  ExtendOptions o;
  o.target = 4;
  ExtendReport all = extend_dfs(CapSet::empty(2), o);
  CHECK(all.caps.size() == 54);
  CHECK(masks(all) == brute_caps(2, 4));
  o.isomorph_free = true;
  CHECK(extend_dfs(CapSet::empty(2), o).caps.size() == 1);
  o.target = 5;
  CHECK(extend_dfs(CapSet::empty(2), o).caps.empty());
}

TEST_CASE("dim 3 enumeration agrees with combinations") {
  ExtendOptions o;
  o.target = 4;
  CHECK(masks(extend_dfs(CapSet::empty(3), o)) == brute_caps(3, 4));

  // with fibre targets on the first coordinate
  o.fibration = Fibration::coordinate(3, 0);
  o.fiber_targets = {2, 2, 0};
  std::vector<PointSet> expect;
  for (const auto& s : brute_caps(3, 4))
    if (fiber_counts(s, *o.fibration) == std::vector<int>{2, 2, 0}) expect.push_back(s);
  for (auto rule : {BranchRule::smallest_index, BranchRule::tightest_fiber}) {
    o.rule = rule;
    CHECK(masks(extend_dfs(CapSet::empty(3), o)) == expect);
  }
}

TEST_CASE("9-caps in AG(3,3) form a single orbit") {
  ExtendOptions o;
  o.target = 9;
  ExtendReport r = extend_dfs(CapSet::empty(3), o);
  REQUIRE_FALSE(r.caps.empty());
  const std::size_t stab = oracle::stabiliser_order(r.caps.front().points());
  CHECK(r.caps.size() * stab == 303264);
  for (const auto& c : r.caps) CHECK(is_complete(c));
  o.target = 10;
  CHECK(extend_dfs(CapSet::empty(3), o).caps.empty());
}

TEST_CASE("seed, allowed filter and limits") {
  CapSet seed(3, {0, 1});
  ExtendOptions o;
  o.target = 4;
  o.allowed = [](PointIndex p) { return p % 2 == 1; };
  for (const auto& c : extend_dfs(seed, o).caps) {
    CHECK(c.contains(0));
    CHECK(c.contains(1));
    for (PointIndex p : c.points())
      if (p > 1) CHECK(p % 2 == 1);
  }
  o.allowed = nullptr;
  o.max_results = 3;
  CHECK(extend_dfs(seed, o).caps.size() == 3);
  o.max_results = 0;
  o.node_limit = 5;
  CHECK(extend_dfs(seed, o).truncated);
}

TEST_CASE("extend_dfs argument validation") {
  ExtendOptions o;
  o.target = 4;
  o.fiber_targets = {1, 1, 2};
  CHECK_THROWS_AS(extend_dfs(CapSet::empty(3), o), CapsetError);
  o.fibration = Fibration::coordinate(3, 0);
  o.fiber_targets = {1, 1, 1};
  CHECK_THROWS_WITH(extend_dfs(CapSet::empty(3), o), doctest::Contains("add up"));
  o.fiber_targets = {1, 3};
  CHECK_THROWS_AS(extend_dfs(CapSet::empty(3), o), CapsetError);
}

TEST_CASE("replace_points matches a direct enumeration") {
  std::mt19937_64 rng(9);
  ExtendOptions o;
  o.target = 6;
  o.max_results = 200;
  auto caps = extend_dfs(CapSet::empty(3), o).caps;
  const CapSet& cap = caps[rng() % caps.size()];
  auto never = [](const PointSet&) { return false; };
  for (int k : {1, 2}) {
    auto reps = replace_points(cap, k, never);
    std::size_t trivial = 0;
    for (const auto& r : reps) {
      trivial += r.trivial();
      CHECK(r.removed.size() == std::size_t(k));
      CHECK(r.added.size() == std::size_t(k));
      CHECK(r.removed.is_subset_of(cap.points()));
      CHECK(is_cap((cap.points() - r.removed) | r.added));
    }
    // independent count: choose S-, then every k-set outside cap - S- giving a cap
    std::size_t expect = 0;
    auto pts = cap.to_vector();
    std::vector<PointSet> removals;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (k == 1) removals.push_back(PointSet(3, {pts[i]}));
      else
        for (std::size_t j = i + 1; j < pts.size(); ++j) removals.push_back(PointSet(3, {pts[i], pts[j]}));
    }
    for (const auto& rm : removals) {
      PointSet rest = cap.points() - rm;
      for (PointIndex a = 0; a < 27; ++a) {
        if (rest.contains(a)) continue;
        if (k == 1) expect += is_cap(rest | PointSet(3, {a}));
        else
          for (PointIndex b = a + 1; b < 27; ++b)
            if (!rest.contains(b)) expect += is_cap(rest | PointSet(3, {a, b}));
      }
    }
    CHECK(reps.size() == expect);
    std::size_t choose = k == 1 ? pts.size() : pts.size() * (pts.size() - 1) / 2;
    CHECK(trivial == choose);
  }
  auto all_forbidden = replace_points(cap, 1, [](const PointSet&) { return true; });
  CHECK(all_forbidden.empty());
  CHECK_THROWS_AS(replace_points(cap, 0, never), CapsetError);
}

TEST_CASE("midpoint profile sums and cross partners") {
  std::mt19937_64 rng(4);
  ExtendOptions o;
  o.target = 8;
  o.max_results = 400;
  auto caps = extend_dfs(CapSet::empty(3), o).caps;
  const CapSet& a = caps[rng() % caps.size()];
  const CapSet& b = caps[rng() % caps.size()];
  MidpointProfile m = midpoint_profile(a, b);
  const Space& sp = Space::get(3);
  long total = 0;
  for (PointIndex q = 0; q < 27; ++q) {
    total += m.n[q];
    int direct = 0;
    for (PointIndex p : a.points())
      for (PointIndex r : b.points())
        direct += sp.neg(sp.add(p, r)) == q;
    CHECK(m.n[q] == direct);
    CHECK(cross_partners(a, b, q).size() == std::size_t(m.n[q]));
    CHECK(cross_partners(b, a, q).size() == std::size_t(m.n[q]));
    if (m.n[q] == 1) CHECK(cross_partners(a, b, q) == PointSet(3, {m.partner[q]}));
  }
  CHECK(total == long(a.size() * b.size()));
  std::uint64_t hsum = 0;
  for (auto h : m.histogram()) hsum += h;
  CHECK(hsum == 27);
}

TEST_CASE("full hyperplane sections") {
  ExtendOptions o;
  o.target = 9;
  o.max_results = 1;
  CapSet nine = extend_dfs(CapSet::empty(3), o).caps.front();
  std::vector<PointIndex> lifted;
  for (PointIndex p : nine.points()) lifted.push_back(p);  // first coordinate 0
  CHECK(contains_full_hyperplane_section(PointSet(4, lifted)));
  CHECK_FALSE(contains_full_hyperplane_section(PointSet(4, {0, 1, 3, 4})));
}
