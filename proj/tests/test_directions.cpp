#include <chrono>
#include <random>
#include <set>

#include "capset/directions.hpp"
#include "doctest.h"

using namespace capset;

namespace {

CapSet random_cap(int n, std::mt19937_64& rng, int tries = 400) {
  PointSet s(n);
  const std::uint32_t N = pow3(n);
  for (int i = 0; i < tries; ++i) {
    PointIndex p = rng() % N;
    if (!s.contains(p) && !blocked_points(s).contains(p)) s.insert(p);
  }
  return CapSet(s);
}

}  // namespace

TEST_CASE("direction counts") {
  auto t0 = std::chrono::steady_clock::now();
  CHECK(enumerate_directions(5, 1).size() == 121);
  CHECK(enumerate_directions(6, 1).size() == 364);
  CHECK(enumerate_directions(6, 2).size() == 11011);
  CHECK(std::chrono::steady_clock::now() - t0 < std::chrono::seconds(1));
  for (int n = 1; n <= 5; ++n)
    for (int c = 1; c <= n; ++c) {
      auto d = enumerate_directions(n, c);
      CHECK(d.size() == direction_count(n, c));
      std::set<DirectionSpec> uniq(d.begin(), d.end());
      CHECK(uniq.size() == d.size());
      CHECK(std::is_sorted(d.begin(), d.end()));
    }
  CHECK_THROWS_AS(enumerate_directions(3, 4), CapsetError);
  CHECK_THROWS_AS(enumerate_directions(3, 0), CapsetError);
}

TEST_CASE("direction equality is equality of spans") {
  DirectionSpec a(F3Matrix(2, 3, {{1, 1, 0}, {0, 1, 2}}));
  DirectionSpec b(F3Matrix(2, 3, {{1, 2, 2}, {1, 0, 1}}));  // r1 + r2 and r1 - r2
  CHECK(a == b);
  CHECK(a.contains_vector(Space::get(3).index(Coords{2, 1, 1})));
}

TEST_CASE("codim 2 normalisation is invariant under relabelling") {
  std::vector<int> m = counts_from_printed_grid({{{2, 4, 2}, {1, 0, 1}, {2, 4, 2}}});
  std::vector<int> key = normalize_counts(m, 2);
  // negating a functional, swapping them, or shifting a value gives the same key
  std::vector<int> swapped(9), shifted(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      swapped[j * 3 + i] = m[i * 3 + j];
      shifted[((i + 1) % 3) * 3 + j] = m[i * 3 + j];
    }
  CHECK(normalize_counts(swapped, 2) == key);
  CHECK(normalize_counts(shifted, 2) == key);
  auto back = printed_grid(m);
  CHECK(back[0] == std::array<int, 3>{2, 4, 2});
  CHECK(back[1] == std::array<int, 3>{1, 0, 1});
}

TEST_CASE("4-caps in the plane have four directions of type 2,2,0 or 2,1,1") {
  // brute force all 4-subsets of AG(2,3)
  int caps = 0;
  for (PointIndex a = 0; a < 9; ++a)
    for (PointIndex b = a + 1; b < 9; ++b)
      for (PointIndex c = b + 1; c < 9; ++c)
        for (PointIndex d = c + 1; d < 9; ++d) {
          PointSet s(2, {a, b, c, d});
          if (!is_cap(s)) continue;
          ++caps;
          auto r = spectrum_of_points(s, 1);
          CHECK(r.total() == 4);
          for (const auto& [k, v] : r.census) CHECK((k == std::vector<int>{2, 2, 0} || k == std::vector<int>{2, 1, 1}));
        }
  CHECK(caps == 54);
  CHECK(spectrum(CapSet::empty(3), 1).census.begin()->first == std::vector<int>{0, 0, 0});
}

TEST_CASE("spectrum is affine invariant and satisfies the moment identities") {
  std::mt19937_64 rng(3);
  for (int n : {3, 4, 5}) {
    for (int it = 0; it < 5; ++it) {
      CapSet cap = random_cap(n, rng);
      auto r1 = spectrum(cap, 1);
      CHECK(moment_identities(r1, cap.size(), n).ok);
      AffineMap m = AffineMap::random(n, rng);
      CHECK(spectrum(apply_map(m, cap), 1) == r1);
      if (n >= 3) CHECK(spectrum(apply_map(m, cap), 2) == spectrum(cap, 2));
      auto bad = r1;
      bad.census.begin()->second += 1;
      auto res = moment_identities(bad, cap.size(), n);
      CHECK_FALSE(res.ok);
      CHECK(res.diagnostic.find("moment") != std::string::npos);
    }
  }
}

TEST_CASE("spectrum json layout") {
  CapSet cap(2, {0, 1});
  std::string j = spectrum(cap, 1).to_json();
  CHECK(j.find("\"census\":[{\"count\":[2,0,0],\"multiplicity\":1},{\"count\":[1,1,0],\"multiplicity\":3}]") != std::string::npos);
}
