#include <functional>
#include <random>

#include "capset/cap.hpp"
#include "capset/fibration.hpp"
#include "doctest.h"

using namespace capset;

namespace {

// Independent oracle: coordinate arithmetic only, every 3-subset.
bool triple_oracle(int n, const std::vector<PointIndex>& pts) {
  const Space& sp = Space::get(n);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        Coords a = sp.coords(pts[i]), b = sp.coords(pts[j]), c = sp.coords(pts[k]);
        bool line = true;
        for (int t = 0; t < n; ++t)
          if ((a[t] + b[t] + c[t]) % 3 != 0) line = false;
        if (line) return false;
      }
  return true;
}

PointIndex pt(const char* s) { return Point::from_string(s).index; }

}  // namespace

TEST_CASE("index encoding is base 3 with the first coordinate most significant") {
  const Space& sp = Space::get(3);
  CHECK(pt("001") == 1);
  CHECK(pt("100") == 9);
  CHECK(pt("212") == 23);
  for (PointIndex p = 0; p < sp.size(); ++p) CHECK(sp.index(sp.coords(p)) == p);
  CHECK(sp.to_string(23) == "212");
}

TEST_CASE("third point of a line") {
  CHECK(third_on_line(Point::from_string("01"), Point::from_string("11")) == Point::from_string("21"));
  CHECK(third_on_line(Point::from_string("000"), Point::from_string("111")) == Point::from_string("222"));
  CHECK_THROWS_AS(third_on_line(Point::from_string("01"), Point::from_string("01")), CapsetError);
  CHECK_THROWS_AS(third_on_line(Point::from_string("01"), Point::from_string("011")), CapsetError);
  for (int n : {1, 2, 4, 6, 7}) {
    const Space& sp = Space::get(n);
    std::mt19937_64 rng(n);
    for (int it = 0; it < 500; ++it) {
      PointIndex p = rng() % sp.size(), q = rng() % sp.size();
      if (p == q) continue;
      PointIndex r = sp.third(p, q);
      CHECK(r != p);
      CHECK(r != q);
      CHECK(sp.third(q, p) == r);
      CHECK(sp.third(p, r) == q);
      CHECK(sp.add(sp.add(p, q), r) == 0);
    }
  }
}

TEST_CASE("is_cap agrees with the triple-loop oracle on random sets") {
  std::mt19937_64 rng(12345);
  int agreed = 0;
  for (int it = 0; it < 1000; ++it) {
    int n = 2 + it % 3;
    const Space& sp = Space::get(n);
    int s = static_cast<int>(rng() % std::min<std::uint32_t>(21, sp.size() + 1));
    std::vector<PointIndex> all(sp.size());
    for (PointIndex p = 0; p < sp.size(); ++p) all[p] = p;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(s);
    // bias toward caps so both outcomes are exercised
    if (it % 2) {
      PointSet greedy(n);
      for (PointIndex p : all)
        if (!blocked_points(greedy).contains(p)) greedy.insert(p);
      all = greedy.to_vector();
    }
    PointSet ps(n, all);
    if (is_cap(ps) == triple_oracle(n, ps.to_vector())) ++agreed;
  }
  CHECK(agreed == 1000);
}

TEST_CASE("small examples") {
  PointSet line(2, {pt("00"), pt("01"), pt("02")});
  CHECK_FALSE(is_cap(line));
  CHECK(is_cap(PointSet(2)));
  std::vector<PointIndex> cube;
  for (const char* s : {"111", "112", "121", "122", "211", "212", "221", "222"}) cube.push_back(pt(s));
  CHECK(is_cap(PointSet(3, cube)));
  CHECK(triple_oracle(3, cube));
  CHECK(addable_points(CapSet::empty(2)).size() == 9);
  AffineMap shift = AffineMap::translation(3, pt("100"));
  CHECK(apply_map(shift, CapSet(3, cube)).size() == 8);
}

TEST_CASE("affine maps compose, invert and preserve caps") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 5}) {
    const Space& sp = Space::get(n);
    for (int it = 0; it < 20; ++it) {
      AffineMap a = AffineMap::random(n, rng), b = AffineMap::random(n, rng);
      AffineMap ab = a.compose(b);
      for (PointIndex p = 0; p < sp.size(); p += 7) {
        CHECK(ab.apply(p) == a.apply(b.apply(p)));
        CHECK(a.inverse().apply(a.apply(p)) == p);
      }
      // lines go to lines
      PointIndex p = rng() % sp.size(), q = rng() % sp.size();
      if (p != q) CHECK(a.apply(sp.third(p, q)) == sp.third(a.apply(p), a.apply(q)));
    }
    PointIndex c = rng() % sp.size();
    AffineMap rho = AffineMap::point_reflection(n, c);
    CHECK(rho.compose(rho) == AffineMap::identity(n));
    CHECK(rho.apply(c) == c);
  }
  CHECK_THROWS_AS(AffineMap(F3Matrix(2, 2, {{1, 1}, {2, 2}}), 0), CapsetError);
}

TEST_CASE("fibration partitions the space and re-coordinatises fibres as caps") {
  std::mt19937_64 rng(99);
  F3Matrix f(2, 4, {{1, 2, 0, 1}, {0, 1, 1, 1}});
  Fibration fib(f, Coords{1, 2});
  std::vector<int> sizes = fiber_counts(PointSet::full(4), fib);
  for (int s : sizes) CHECK(s == 9);
  PointSet greedy(4);
  for (int it = 0; it < 200; ++it) {
    PointIndex p = rng() % 81;
    if (!blocked_points(greedy).contains(p)) greedy.insert(p);
  }
  CapSet cap(greedy);
  auto parts = fibers(cap, fib);
  std::size_t total = 0;
  for (const auto& c : parts) total += c.size();
  CHECK(total == cap.size());
  for (PointIndex p = 0; p < 81; ++p) CHECK(fib.global_index(fib.label(p), fib.local_index(p)) == p);
  // constants permute labels but not the multiset of sizes
  Fibration plain(f);
  auto a = fiber_counts(cap.points(), fib), b = fiber_counts(cap.points(), plain);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  CHECK_THROWS_AS(Fibration(F3Matrix(2, 3, {{1, 1, 0}, {2, 2, 0}})), CapsetError);
}

TEST_CASE("cap file round trip and diagnostics") {
  CapSet cap(3, {pt("000"), pt("001"), pt("010"), pt("100")});
  std::string text = format_cap(cap);
  CHECK(text == "capset v1\ndim 3\n4\n000\n001\n010\n100\n");
  CHECK(parse_cap(text) == cap);
  CHECK_THROWS_WITH_AS(parse_cap("capset v1\ndim 2\n3\n00\n01\n02\n", "x.cap"), doctest::Contains("x.cap:6"), CapsetError);
  CHECK_THROWS_WITH_AS(parse_cap("capset v1\ndim 2\n2\n01\n00\n", "x.cap"), doctest::Contains("x.cap:5"), CapsetError);
  CHECK_THROWS_WITH_AS(parse_cap("capset v1\ndim 2\n1\n0a\n", "x.cap"), doctest::Contains("x.cap:4"), CapsetError);
  CHECK_THROWS_AS(parse_cap("capset v1\ndim 2\n0"), CapsetError);
}

TEST_CASE("dim 3 holds no 10-cap") {
  // maximum cap size by exhaustive growth from the origin (every cap is equivalent to one containing it)
  const Space& sp = Space::get(3);
  int best = 0;
  std::vector<PointIndex> cur{0};
  std::function<void(PointIndex)> grow = [&](PointIndex from) {
    best = std::max<int>(best, static_cast<int>(cur.size()));
    for (PointIndex p = from; p < sp.size(); ++p) {
      bool ok = true;
      for (std::size_t i = 0; i < cur.size() && ok; ++i)
        for (std::size_t j = i + 1; j < cur.size() && ok; ++j)
          if (sp.third(cur[i], cur[j]) == p) ok = false;
      if (!ok) continue;
      cur.push_back(p);
      grow(p + 1);
      cur.pop_back();
    }
  };
  grow(1);
  CHECK(best == 9);
}

TEST_CASE("point set order and hex") {
  PointSet a(2, {0, 5}), b(2, {1, 2});
  CHECK(a < b);  // lowest differing index 0 belongs to a
  CHECK(PointSet::from_hex(2, a.to_hex()) == a);
  CHECK(a.to_hex() == "021");
}
