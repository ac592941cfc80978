#include "capset/atlas.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "capset/search.hpp"
#include "json.hpp"

namespace capset {
namespace {

CapSet cap_of(std::initializer_list<const char*> pts) {
  std::vector<PointIndex> v;
  int n = 0;
  for (const char* s : pts) {
    Point p = Point::from_string(s);
    n = p.dim;
    v.push_back(p.index);
  }
  return CapSet(n, v);
}

bool all_equal(const std::vector<int>& v, int x) {
  return std::all_of(v.begin(), v.end(), [x](int y) { return y == x; });
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int label_with(const std::vector<int>& counts, int value) {
  for (std::size_t l = 0; l < counts.size(); ++l)
    if (counts[l] == value) return static_cast<int>(l);
  return -1;
}

PointSet points_in_fibre(const PointSet& pts, const Fibration& f, int label) { return pts & f.fiber_points(label); }

const PointSet& cube_class() {
  static const PointSet c = canonical_form(cube3()).canonical;
  return c;
}

bool is_cube(const CapSet& c) { return c.size() == 8 && canonical_form(c).canonical == cube_class(); }

// Functional row of a hyperplane direction as a point of the dual space.
PointIndex functional_index(const DirectionSpec& d) { return Space::get(d.dim()).index(d.basis().row(0)); }

}  // namespace

PointSet flat_closure(const PointSet& points) {
  PointSet flat = points;
  const Space& sp = points.space();
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<PointIndex> v = flat.to_vector();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        PointIndex t = sp.third(v[i], v[j]);
        if (!flat.contains(t)) {
          flat.insert(t);
          grew = true;
        }
      }
  }
  return flat;
}

std::optional<PointIndex> translation_vector(const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return std::nullopt;
  if (a.empty()) return PointIndex{0};
  const Space& sp = a.space();
  const PointIndex a0 = a.first();
  for (PointIndex r : b) {
    const PointIndex u = sp.sub(r, a0);
    bool ok = true;
    for (PointIndex p : a)
      if (!b.contains(sp.add(p, u))) {
        ok = false;
        break;
      }
    if (ok) return u;
  }
  return std::nullopt;
}

PointIndex line_direction(const Space& sp, PointIndex v) { return std::min(v, sp.neg(v)); }

PointSet direction_space(const DirectionSpec& d) {
  PointSet out(d.dim());
  for (PointIndex v = 0; v < pow3(d.dim()); ++v)
    if (d.contains_vector(v)) out.insert(v);
  return out;
}

PointSet embed_vectors(const PointSet& local, const Fibration& f, int label) {
  const Space& sp = Space::get(f.dim());
  const PointIndex base = f.global_index(label, 0);
  PointSet out(f.dim());
  for (PointIndex v : local) out.insert(sp.sub(f.global_index(label, v), base));
  return out;
}

std::optional<PointIndex> square_centre(const PointSet& square) {
  if (square.size() != 4) return std::nullopt;
  const Space& sp = square.space();
  std::map<PointIndex, int> hits;
  auto v = square.to_vector();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) ++hits[sp.third(v[i], v[j])];
  for (auto [p, c] : hits)
    if (c == 2) return p;
  return std::nullopt;
}

SquareDirections square_directions(const PointSet& square) {
  SquareDirections out;
  auto centre = square_centre(square);
  if (!centre) return out;
  const Space& sp = square.space();
  auto v = square.to_vector();
  std::set<PointIndex> sides, diagonals;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      PointIndex dir = line_direction(sp, sp.sub(v[j], v[i]));
      (sp.third(v[i], v[j]) == *centre ? diagonals : sides).insert(dir);
    }
  out.sides.assign(sides.begin(), sides.end());
  out.diagonals.assign(diagonals.begin(), diagonals.end());
  return out;
}

bool is_three_disjoint_lines(const PointSet& points) {
  if (points.size() != 9) return false;
  const Space& sp = points.space();
  auto v = points.to_vector();
  std::vector<PointSet> lines;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      PointIndex t = sp.third(v[i], v[j]);
      if (t > v[j] && points.contains(t)) lines.push_back(PointSet(points.dim(), {v[i], v[j], t}));
    }
  for (std::size_t a = 0; a < lines.size(); ++a)
    for (std::size_t b = a + 1; b < lines.size(); ++b)
      for (std::size_t c = b + 1; c < lines.size(); ++c)
        if ((lines[a] | lines[b] | lines[c]) == points) return true;
  return false;
}

CapSet square_pyramid() { return cap_of({"000", "010", "100", "110", "001"}); }
CapSet tetrahedron_plus_centre() { return cap_of({"000", "100", "010", "001", "111"}); }
CapSet cube3() { return cap_of({"111", "112", "121", "122", "211", "212", "221", "222"}); }

CapSet build_9cap() {
  ExtendOptions o;
  o.target = 9;
  o.max_results = 1;
  auto r = extend_dfs(CapSet::empty(3), o);
  if (r.caps.empty()) throw CapsetError("build_9cap: no 9-cap found");
  return r.caps.front();
}

Dim3FiveCaps classify_dim3_5caps() {
  ExtendOptions o;
  o.target = 5;
  o.isomorph_free = true;
  auto r = extend_dfs(CapSet::empty(3), o);
  Dim3FiveCaps out;
  out.labelled = r.raw_results;
  for (const auto& c : r.caps) out.classes.push_back(canonical_form(c));
  return out;
}

Features882 analyze_882(const CapSet& cap) {
  Features882 f;
  auto bad = [&](std::string s) { f.problems.push_back(std::move(s)); };
  if (cap.dim() != 4 || cap.size() != 18) {
    bad("not an 18-cap 4-flat");
    return f;
  }
  for (const auto& d : enumerate_directions(4, 2))
    if (all_equal(direction_counts(cap.points(), d), 2)) f.nine_twos.push_back(d);
  for (const auto& d : enumerate_directions(4, 1)) {
    auto counts = direction_counts(cap.points(), d);
    auto s = sorted(counts);
    if (s != std::vector<int>{5, 5, 8} && s != std::vector<int>{2, 8, 8}) continue;
    auto fib = fibers(cap, d.fibration());
    int cubes = 0;
    for (int l = 0; l < 3; ++l) cubes += counts[l] == 8 && is_cube(fib[l]);
    if (s[0] == 5 && cubes == 1) f.cube_855.push_back(d);
    if (s[0] == 2 && cubes == 2) f.cube_882.push_back(d);
  }
  if (f.nine_twos.size() != 1) bad("nine-2s directions: " + std::to_string(f.nine_twos.size()));
  if (f.cube_855.size() != 1) bad("855 cube directions: " + std::to_string(f.cube_855.size()));
  if (f.cube_882.size() != 1) bad("882 cube directions: " + std::to_string(f.cube_882.size()));
  if (f.cube_855.empty() || f.cube_882.empty()) return f;

  // the coordinate origins are free: pick the constants that give the stated count
  const F3Matrix pair = f.cube_855.front().basis().stacked(f.cube_882.front().basis());
  const auto target = counts_from_printed_grid({{{2, 4, 2}, {1, 0, 1}, {2, 4, 2}}});
  for (int c = 0; c < 9 && !f.pair; ++c) {
    Coords k{};
    k[0] = static_cast<std::uint8_t>(c / 3);
    k[1] = static_cast<std::uint8_t>(c % 3);
    Fibration fib(pair, k);
    if (fiber_counts(cap.points(), fib) == target) f.pair = fib;
  }
  if (!f.pair) {
    f.pair = Fibration(pair);
    bad("pair point count differs");
  }
  f.pair_counts = fiber_counts(cap.points(), *f.pair);
  // labels are 3*v1 + v2 for (x1,x2) = (v1,v2); value 2 stands for -1
  f.standard_squares = {points_in_fibre(cap.points(), *f.pair, 1), points_in_fibre(cap.points(), *f.pair, 2)};
  f.squares_are_translates = translation_vector(f.standard_squares[0], f.standard_squares[1]).has_value();
  if (!f.squares_are_translates) bad("standard squares are not translates");
  const Space& sp = Space::get(4);
  f.midpoints = PointSet(4);
  for (int l : {4, 5, 7, 8}) {
    auto seg = points_in_fibre(cap.points(), *f.pair, l).to_vector();
    if (seg.size() == 2) f.midpoints.insert(sp.third(seg[0], seg[1]));
  }
  f.midpoints_form_square = f.midpoints.size() == 4 && is_cap(f.midpoints) && affine_hull_dimension(f.midpoints) == 2;
  if (!f.midpoints_form_square) bad("midpoints do not form a square");
  PointSet flat = flat_closure(f.midpoints);
  bool ok = f.midpoints_form_square;
  for (const auto& sq : f.standard_squares) {
    auto c = square_centre(sq);
    ok = ok && c && flat.contains(*c);
  }
  for (int l : {3, 6}) ok = ok && points_in_fibre(cap.points(), *f.pair, l).is_subset_of(flat);
  f.midpoint_flat_ok = ok;
  if (!ok) bad("midpoint 2-flat misses a square centre or a single point");
  return f;
}

CapSet build_20cap() {
  ExtendOptions o;
  o.target = 20;
  o.max_results = 1;
  auto r = extend_dfs(cap_of({"0000", "1000", "0100", "0010", "0001"}), o);
  if (r.caps.empty()) throw CapsetError("build_20cap: search found nothing");
  return r.caps.front();
}

CapSet build_882A2() {
  // The stated pair count puts the standard squares at (x1,x2) = (0,+-1); seed one of them.
  ExtendOptions o;
  o.target = 18;
  o.fibration = Fibration::coordinates(4, 0, 1);
  o.fiber_targets = counts_from_printed_grid({{{2, 4, 2}, {1, 0, 1}, {2, 4, 2}}});
  auto r = extend_dfs(cap_of({"0100", "0101", "0110", "0111"}), o);
  std::map<PointSet, CapSet> passing;
  for (const auto& c : r.caps) {
    int nine = 0;
    for (const auto& d : enumerate_directions(4, 2)) nine += all_equal(direction_counts(c.points(), d), 2);
    if (nine != 1 || !analyze_882(c).ok()) continue;
    passing.emplace(canonical_form(c).canonical, c);
  }
  if (passing.size() != 1)
    throw CapsetError("build_882A2: " + std::to_string(passing.size()) + " classes satisfy the 882A2 properties, expected 1");
  return passing.begin()->second;
}

Features45 analyze_45(const CapSet& cap, const PointSet& canon882) {
  Features45 f;
  const Space& sp = Space::get(5);
  const PointSet pyr = canonical_form(square_pyramid()).canonical;
  const PointSet tet = canonical_form(tetrahedron_plus_centre()).canonical;
  for (const auto& d : enumerate_directions(5, 2)) {
    auto counts = direction_counts(cap.points(), d);
    if (!all_equal(counts, 5)) continue;
    int np = 0, nt = 0;
    for (const auto& fib : fibers(cap, d.fibration())) {
      PointSet c = canonical_form(fib).canonical;
      np += c == pyr;
      nt += c == tet;
    }
    if (np == 8 && nt == 1) f.special.push_back(d);
  }
  for (PointIndex v = 1; v < sp.size(); ++v) {
    if (line_direction(sp, v) != v) continue;
    bool all = !f.special.empty();
    for (const auto& d : f.special) all = all && d.contains_vector(v);
    if (all) f.axis_candidates.push_back(v);
  }
  if (f.axis_candidates.size() == 1) f.axis = f.axis_candidates.front();

  std::set<PointSet> other;
  f.hyperplanes = enumerate_directions(5, 1);
  for (const auto& d : f.hyperplanes) {
    auto counts = direction_counts(cap.points(), d);
    auto s = sorted(counts);
    Category45 c = Category45::none;
    if (s == std::vector<int>{9, 18, 18}) {
      auto fib = fibers(cap, d.fibration());
      int a2 = 0;
      std::vector<PointSet> forms;
      for (int l = 0; l < 3; ++l)
        if (counts[l] == 18) {
          forms.push_back(canonical_form(fib[l]).canonical);
          a2 += forms.back() == canon882;
        }
      if (a2 == 2) c = Category45::twin_882A2;
      if (a2 == 0) {
        c = Category45::twin_other;
        other.insert(forms.begin(), forms.end());
      }
    } else if (s == std::vector<int>{15, 15, 15} && f.axis) {
      c = d.contains_vector(*f.axis) ? Category45::axial_15 : Category45::skew_15;
    }
    f.category.push_back(c);
    ++f.census[static_cast<int>(c)];
  }
  f.other_twins_isomorphic = other.size() == 1;
  return f;
}

CapSet build_45cap(const CapSet& a882) {
  const std::uint32_t N = pow3(4);
  PointSet seed(5);
  for (PointIndex p : a882.points()) seed.insert(2 * N + p);
  ExtendOptions o;
  o.target = 45;
  o.fibration = Fibration::coordinate(5, 0);
  o.fiber_targets = {9, 18, 18};
  o.max_results = 1;
  auto r = extend_dfs(CapSet(seed), o);
  if (r.caps.empty()) throw CapsetError("build_45cap: no completion of the 882A2 seed");
  return r.caps.front();
}

CapSet level_frame_45(const CapSet& cap, const PointSet& canon882) {
  for (const auto& d : enumerate_directions(5, 1)) {
    auto counts = direction_counts(cap.points(), d);
    if (sorted(counts) != std::vector<int>{9, 18, 18}) continue;
    auto fib = fibers(cap, d.fibration());
    bool twin = true;
    for (int l = 0; l < 3; ++l)
      if (counts[l] == 18) twin = twin && canonical_form(fib[l]).canonical == canon882;
    if (!twin) continue;
    F3Matrix m = d.basis().stacked(d.basis().complement_rows());
    Coords t{};
    t[0] = static_cast<std::uint8_t>((3 - label_with(counts, 9)) % 3);
    return apply_map(AffineMap(m, Space::get(5).index(t)), cap);
  }
  throw CapsetError("level_frame_45: no hyperplane direction with two 882A2 caps");
}

DualDesign dual_design(const CapSet& cap45, const PointSet& canon882) {
  DualDesign out;
  const Space& sp = Space::get(5);
  Features45 f = analyze_45(cap45, canon882);
  out.vectors = PointSet(5);
  for (std::size_t i = 0; i < f.hyperplanes.size(); ++i)
    if (f.category[i] == Category45::twin_882A2) {
      PointIndex g = functional_index(f.hyperplanes[i]);
      out.vectors.insert(g);
      out.vectors.insert(sp.neg(g));
    }
  out.spectrum = spectrum_of_points(out.vectors, 1);
  auto empty = directions_with_key(out.vectors, 1, {45, 45, 0});
  if (empty.size() != 1 || !f.axis) return out;
  out.empty_direction = empty.front();
  const PointIndex axis = *f.axis;
  out.matches_axis = *out.empty_direction == hyperplane_direction(5, axis);

  const Fibration fy = out.empty_direction->fibration();
  bool duality = true;
  auto v = out.vectors.to_vector();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const bool same = fy.label(v[i]) == fy.label(v[j]);
      duality = duality && same == hyperplane_direction(5, sp.sub(v[i], v[j])).contains_vector(axis);
    }
  out.duality_ok = duality;

  const auto m1 = counts_from_printed_grid({{{9, 0, 18}, {18, 0, 18}, {18, 0, 9}}});
  const auto m2 = counts_from_printed_grid({{{18, 0, 9}, {18, 0, 18}, {9, 0, 18}}});
  for (const auto& z : directions_with_key(out.vectors, 1, {36, 27, 27})) {
    Fibration yz(out.empty_direction->basis().stacked(z.basis()));
    auto counts = fiber_counts(out.vectors, yz);
    ++out.grid_total;
    out.grid_ok += counts == m1 || counts == m2;
    for (int l = 0; l < 9; ++l) {
      PointSet flat = yz.fiber_points(l);
      PointSet in = out.vectors & flat;
      if (in.size() == 18) {
        ++out.flats_total;
        out.flats_ok += is_three_disjoint_lines(flat - in);
      } else if (in.size() == 9) {
        ++out.flats_total;
        out.flats_ok += is_cap(in);
      }
    }
  }
  return out;
}

CapSet build_112cap(const CapSet& cap45) {
  const Space& sp = Space::get(5);
  PointSet refl(5);
  for (PointIndex p : cap45.points()) refl.insert(sp.neg(p));
  CapSet upper(refl);
  PointSet middle = free_middle_points(cap45, upper);
  if (middle.size() != 22 || !is_cap(middle))
    throw CapsetError("build_112cap: " + std::to_string(middle.size()) + " free middle points" + (is_cap(middle) ? "" : " (not a cap)"));
  CapSet c = stack_levels(cap45.points(), middle, upper.points());
  if (!is_complete(c)) throw CapsetError("build_112cap: result is not complete");
  return c;
}

CapSet build_delta686(const CapSet& cap20) {
  const std::uint32_t N = pow3(4);
  PointSet seed(5);
  for (PointIndex p : cap20.points()) seed.insert(N + p);
  ExtendOptions o;
  o.target = 42;
  o.fibration = Fibration::coordinate(5, 0);
  o.fiber_targets = {6, 20, 16};
  o.max_results = 1;
  auto r = extend_dfs(CapSet(seed), o);
  if (r.caps.empty()) throw CapsetError("build_delta686: no completion of the 20-cap seed");
  if (!is_complete(r.caps.front())) throw CapsetError("build_delta686: 42-cap is not complete");
  return r.caps.front();
}

CapSet build_96cap(const CapSet& framed45) {
  SweepOptions o;
  o.stop_after_hits = 1;
  std::optional<LinearPlacement> hit;
  sweep_linear_placements(
      framed45, o, [](const PlacementStats& s) { return s.n0 == 6 && s.n2 == 6; },
      [&](const LinearPlacement& p, const PlacementStats&) {
        if (!hit) hit = p;
      });
  if (!hit) throw CapsetError("build_96cap: no (6,6) placement");
  CapSet upper = apply_map(hit->map(), framed45);
  PointSet middle = free_middle_points(framed45, upper);
  CapSet c = stack_levels(framed45.points(), middle, upper.points());
  if (c.size() != 96 || !is_complete(c)) throw CapsetError("build_96cap: not a complete 96-cap");
  return c;
}

Extract40 extract_40cap(const CapSet& cap112, const PointSet& canon882) {
  auto dirs = directions_with_key(cap112.points(), 1, {40, 36, 36});
  if (dirs.empty()) throw CapsetError("extract_40cap: no {40,36,36} direction");
  auto counts = direction_counts(cap112.points(), dirs.front());
  Extract40 out;
  out.cap = fibers(cap112, dirs.front().fibration())[label_with(counts, 40)];
  out.twins = directions_with_key(out.cap.points(), 1, {18, 18, 4});
  out.orbits = direction_orbits(out.cap, out.twins).size();
  for (const auto& d : out.twins) {
    auto c = direction_counts(out.cap.points(), d);
    auto fib = fibers(out.cap, d.fibration());
    for (int l = 0; l < 3; ++l) out.fibres_882A2 += c[l] == 18 && canonical_form(fib[l]).canonical == canon882;
  }
  return out;
}

const std::vector<CatalogEntry>& atlas_catalog() {
  static const std::vector<CatalogEntry> c = {
      {"dim3-pyramid", 3, 5},  {"dim3-tetracentre", 3, 5}, {"dim3-cube", 3, 8},      {"dim3-9cap", 3, 9},
      {"dim4-20cap", 4, 20},   {"dim4-882A2", 4, 18},      {"dim5-45cap", 5, 45},    {"dim5-delta686", 5, 42},
      {"dim6-96cap", 6, 96},   {"dim6-112cap", 6, 112},    {"dim5-40cap", 5, 40},
  };
  return c;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr int kAtlasVersion = 1;

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << v;
  return os.str();
}

const CatalogEntry& catalog_entry(const std::string& name) {
  for (const auto& e : atlas_catalog())
    if (e.name == name) return e;
  throw CapsetError("unknown atlas entry '" + name + "'");
}

nlohmann::json read_manifest(const std::filesystem::path& root) {
  std::ifstream is(root / "manifest.json");
  if (!is) return nlohmann::json::object();
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  if (j.is_discarded() || j.value("version", 0) != kAtlasVersion) return nlohmann::json::object();
  return j;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void write_atomic(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw CapsetError("cannot write " + tmp.string());
    os << text;
  }
  std::filesystem::rename(tmp, p);
}

}  // namespace

Atlas::Atlas(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path Atlas::default_root() {
  if (const char* env = std::getenv("CAPSET_ATLAS"); env && *env) return env;
  return "atlas";
}

const PointSet& Atlas::canonical_882A2() {
  if (!canon882_) canon882_ = canonical_form(get("dim4-882A2")).canonical;
  return *canon882_;
}

CapSet Atlas::make(const std::string& name) {
  if (name == "dim3-pyramid") return square_pyramid();
  if (name == "dim3-tetracentre") return tetrahedron_plus_centre();
  if (name == "dim3-cube") return cube3();
  if (name == "dim3-9cap") return build_9cap();
  if (name == "dim4-20cap") return build_20cap();
  if (name == "dim4-882A2") return build_882A2();
  if (name == "dim5-45cap") return build_45cap(get("dim4-882A2"));
  if (name == "dim5-delta686") return build_delta686(get("dim4-20cap"));
  if (name == "dim6-112cap") return build_112cap(get("dim5-45cap"));
  if (name == "dim6-96cap") return build_96cap(level_frame_45(get("dim5-45cap"), canonical_882A2()));
  if (name == "dim5-40cap") return extract_40cap(get("dim6-112cap"), canonical_882A2()).cap;
  throw CapsetError("unknown atlas entry '" + name + "'");
}

void Atlas::store(const std::string& name, const CapSet& cap) {
  std::filesystem::create_directories(root_);
  const std::string text = format_cap(cap);
  write_atomic(path(name), text);
  nlohmann::json m = read_manifest(root_);
  m["format"] = "capset-atlas";
  m["version"] = kAtlasVersion;
  nlohmann::json e;
  e["file"] = name + ".cap";
  e["dim"] = cap.dim();
  e["size"] = cap.size();
  e["file_fnv1a"] = hex64(fnv1a(text));
  const std::string canon = canonical_form(cap).canonical.to_hex();
  e["canonical_fnv1a"] = hex64(fnv1a(canon));
  m["entries"][name] = e;
  write_atomic(root_ / "manifest.json", m.dump(2) + "\n");
}

const CapSet& Atlas::get(const std::string& name) {
  if (auto it = loaded_.find(name); it != loaded_.end()) return it->second;
  const CatalogEntry& entry = catalog_entry(name);
  const nlohmann::json m = read_manifest(root_);
  const bool listed = m.contains("entries") && m["entries"].contains(name);
  if (listed && std::filesystem::exists(path(name))) {
    const std::string text = slurp(path(name));
    if (m["entries"][name].value("file_fnv1a", "") != hex64(fnv1a(text)))
      throw CapsetError("atlas entry " + name + " does not match its manifest hash (rebuild with `capset atlas build --only " + name + "`)");
    CapSet c = parse_cap(text, path(name).string());
    if (c.dim() != entry.dim || c.size() != entry.size) throw CapsetError("atlas entry " + name + " has the wrong size");
    return loaded_.emplace(name, std::move(c)).first->second;
  }
  if (!allow_build) throw CapsetError("atlas entry " + name + " is missing and building is disabled");
  CapSet c = make(name);
  if (c.dim() != entry.dim || c.size() != entry.size) throw CapsetError("builder for " + name + " returned the wrong size");
  store(name, c);
  return loaded_.emplace(name, std::move(c)).first->second;
}

void Atlas::build(const std::string& only) {
  for (const auto& e : atlas_catalog()) {
    if (!only.empty() && e.name != only) continue;
    const nlohmann::json m = read_manifest(root_);
    bool fresh = m.contains("entries") && m["entries"].contains(e.name) && std::filesystem::exists(path(e.name)) &&
                 m["entries"][e.name].value("file_fnv1a", "") == hex64(fnv1a(slurp(path(e.name))));
    if (!fresh) {
      loaded_.erase(e.name);
      CapSet c = make(e.name);
      store(e.name, c);
      loaded_.emplace(e.name, std::move(c));
    } else {
      get(e.name);
    }
  }
  if (!only.empty()) catalog_entry(only);
}

std::vector<std::string> Atlas::audit() const {
  std::vector<std::string> problems;
  const nlohmann::json m = read_manifest(root_);
  if (!m.contains("entries")) {
    problems.push_back("manifest missing or of another version");
    return problems;
  }
  for (const auto& e : atlas_catalog()) {
    if (!m["entries"].contains(e.name)) {
      problems.push_back(e.name + ": not in manifest");
      continue;
    }
    const auto& me = m["entries"][e.name];
    if (!std::filesystem::exists(path(e.name))) {
      problems.push_back(e.name + ": file missing");
      continue;
    }
    const std::string text = slurp(path(e.name));
    if (me.value("file_fnv1a", "") != hex64(fnv1a(text))) problems.push_back(e.name + ": file hash mismatch");
    try {
      CapSet c = parse_cap(text, path(e.name).string());
      if (c.dim() != e.dim || c.size() != e.size) problems.push_back(e.name + ": wrong dimension or size");
      if (me.value("canonical_fnv1a", "") != hex64(fnv1a(canonical_form(c).canonical.to_hex())))
        problems.push_back(e.name + ": canonical form does not re-verify");
    } catch (const CapsetError& err) {
      problems.push_back(e.name + ": " + err.what());
    }
  }
  return problems;
}

}  // namespace capset
