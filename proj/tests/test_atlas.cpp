#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "capset/atlas.hpp"
#include "capset/search.hpp"
#include "doctest.h"

using namespace capset;
namespace fs = std::filesystem;

namespace {

PointSet pts(std::initializer_list<const char*> v) {
  std::vector<PointIndex> out;
  int dim = 0;
  for (const char* s : v) {
    Point p = Point::from_string(s);
    dim = p.dim;
    out.push_back(p.index);
  }
  return PointSet(dim, out);
}

Atlas& shared_atlas() {
  static Atlas a(Atlas::default_root());
  return a;
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("capset_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("flat helpers") {
  CHECK(flat_closure(pts({"000", "100", "010"})).size() == 9);
  CHECK(flat_closure(pts({"000", "100", "010", "001"})).size() == 27);
  CHECK(flat_closure(pts({"000", "111"})).size() == 3);
  auto u = translation_vector(pts({"00", "01"}), pts({"10", "11"}));
  REQUIRE(u);
  CHECK(Space::get(2).to_string(*u) == "10");
  CHECK_FALSE(translation_vector(pts({"00", "01"}), pts({"10", "20"})));

  const Space& sp = Space::get(3);
  CHECK(line_direction(sp, Point::from_string("200").index) == Point::from_string("100").index);
  PointSet sq = pts({"000", "010", "100", "110"});
  auto c = square_centre(sq);
  REQUIRE(c);
  CHECK(sp.to_string(*c) == "220");
  auto d = square_directions(sq);
  CHECK(d.sides.size() == 2);
  CHECK(d.diagonals.size() == 2);

  CHECK(is_three_disjoint_lines(pts({"000", "001", "002", "100", "101", "102", "210", "211", "212"})));
  CHECK_FALSE(is_three_disjoint_lines(pts({"000", "001", "002", "100", "101", "102", "210", "211", "220"})));

  // a coordinate fibration embeds local vectors by inserting a zero coordinate
  Fibration f = Fibration::coordinate(3, 0);
  PointSet local(2, {Point::from_string("01").index});
  CHECK(embed_vectors(local, f, 1) == PointSet(3, {Point::from_string("001").index}));
  CHECK(direction_space(hyperplane_direction(3, Point::from_string("100").index)).size() == 9);
}

TEST_CASE("dimension 3 five-caps: two classes, count matches combinations") {
  Dim3FiveCaps r = classify_dim3_5caps();
  CHECK(r.classes.size() == 2);
  // labelled count straight from combinations
  const Space& sp = Space::get(3);
  std::uint64_t brute = 0;
  for (PointIndex a = 0; a < 27; ++a)
    for (PointIndex b = a + 1; b < 27; ++b)
      for (PointIndex c = b + 1; c < 27; ++c) {
        if (sp.third(a, b) == c) continue;
        for (PointIndex d = c + 1; d < 27; ++d) {
          if (sp.third(a, b) == d || sp.third(a, c) == d || sp.third(b, c) == d) continue;
          for (PointIndex e = d + 1; e < 27; ++e)
            brute += is_cap(PointSet(3, {a, b, c, d, e}));
        }
      }
  CHECK(r.labelled == brute);
  std::set<PointSet> classes;
  for (const auto& k : r.classes) classes.insert(k.canonical);
  CHECK(classes.count(canonical_form(square_pyramid()).canonical) == 1);
  CHECK(classes.count(canonical_form(tetrahedron_plus_centre()).canonical) == 1);
  CHECK(is_complete(build_9cap()));
}

TEST_CASE("cache round trip and poisoning") {
  fs::path root = scratch_dir("atlas_small");
  {
    Atlas a(root);
    a.build("dim3-cube");
    CHECK(fs::exists(root / "dim3-cube.cap"));
    CHECK(fs::exists(root / "manifest.json"));
    CHECK(a.get("dim3-cube") == cube3());
  }
  {
    Atlas a(root);
    a.allow_build = false;
    CHECK(a.get("dim3-cube") == cube3());
    CHECK_THROWS_WITH(a.get("dim3-pyramid"), doctest::Contains("building is disabled"));
    CHECK_THROWS_AS(a.get("dim9-nothing"), CapsetError);
  }
  // flip one point of the cached file
  std::string text = format_cap(cube3());
  auto pos = text.rfind("222");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 3, "000");
  std::ofstream(root / "dim3-cube.cap", std::ios::trunc) << text;
  {
    Atlas a(root);
    CHECK_THROWS_WITH(a.get("dim3-cube"), doctest::Contains("manifest hash"));
    bool flagged = false;
    for (const auto& p : a.audit()) flagged = flagged || p.find("dim3-cube: file hash mismatch") != std::string::npos;
    CHECK(flagged);
    a.build("dim3-cube");
    CHECK(a.get("dim3-cube") == cube3());
  }
  fs::remove_all(root);
}

TEST_CASE("every atlas cap is a cap of its size and re-certifies from its file") {
  Atlas& a = shared_atlas();
  for (const auto& e : atlas_catalog()) {
    CAPTURE(e.name);
    CapSet c = read_cap_file(a.path(e.name));
    CHECK(c.dim() == e.dim);
    CHECK(c.size() == e.size);
    CHECK(is_cap(c.points()));
    CanonicalCertificate k = canonical_form(c);
    CHECK(k.witness.apply(c.points()) == k.canonical);
    CHECK(canonical_form(CapSet(k.canonical)).canonical == k.canonical);
  }
  CHECK(a.audit().empty());
}

TEST_CASE("882A2 features survive affine maps") {
  Atlas& a = shared_atlas();
  const CapSet& cap = a.get("dim4-882A2");
  std::mt19937_64 rng(882);
  for (int i = 0; i < 10; ++i) {
    CapSet img = apply_map(AffineMap::random(4, rng), cap);
    Features882 f = analyze_882(img);
    CHECK(f.ok());
    CHECK(f.nine_twos.size() == 1);
  }
  // the other class of twin 18-cap hyperplanes lacks them
  Features45 g = analyze_45(a.get("dim5-45cap"), a.canonical_882A2());
  for (std::size_t i = 0; i < g.hyperplanes.size(); ++i) {
    if (g.category[i] != Category45::twin_other) continue;
    auto counts = direction_counts(a.get("dim5-45cap").points(), g.hyperplanes[i]);
    auto fib = fibers(a.get("dim5-45cap"), g.hyperplanes[i].fibration());
    for (int l = 0; l < 3; ++l)
      if (counts[l] == 18) CHECK(canonical_form(fib[l]).canonical != a.canonical_882A2());
    break;
  }
}

TEST_CASE("112-cap invariants") {
  Atlas& a = shared_atlas();
  const CapSet& c = a.get("dim6-112cap");
  CHECK(is_complete(c));
  // removing any two points leaves a 110-cap (sampled pairs)
  std::mt19937_64 rng(110);
  auto v = c.to_vector();
  for (int i = 0; i < 200; ++i) {
    std::size_t x = rng() % v.size(), y = rng() % v.size();
    if (x == y) continue;
    PointSet s = c.points();
    s.erase(v[x]);
    s.erase(v[y]);
    CHECK(s.size() == 110);
    CHECK(is_cap(s));
  }
  // central symmetry: some point reflection fixes it
  const Space& sp = Space::get(6);
  PointSet neg(6);
  for (PointIndex p : c.points()) neg.insert(sp.neg(p));
  CHECK(translation_vector(neg, c.points()).has_value());
}

TEST_CASE("45-cap frame puts a twin 882A2 direction on coordinate 0") {
  Atlas& a = shared_atlas();
  CapSet f = level_frame_45(a.get("dim5-45cap"), a.canonical_882A2());
  CHECK(canonical_form(f).canonical == canonical_form(a.get("dim5-45cap")).canonical);
  auto counts = fiber_counts(f.points(), Fibration::coordinate(5, 0));
  CHECK(counts == std::vector<int>{9, 18, 18});
  for (int l : {1, 2}) CHECK(canonical_form(fibers(f, Fibration::coordinate(5, 0))[l]).canonical == a.canonical_882A2());
}
