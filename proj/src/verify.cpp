#include "capset/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "capset/search.hpp"
#include "json.hpp"

namespace capset {

// ---- expected values ----

const std::vector<Expectation>& expectations() {
  using B = Basis;
  static const std::vector<Expectation> table = {
      {"dirs-count", "hyperplane directions n=5", "121", B::claimed, "45-cap hyperplane census total"},
      {"dirs-count", "hyperplane directions n=6", "364", B::claimed, "56 + 308 for the 112-cap"},
      {"dirs-count", "4-flat directions n=6", "11011", B::claimed, "1540 + 3696 + 5775"},
      {"dirs-count", "enumeration under one second", "yes", B::claimed, "time budget"},

      {"A882-props", "nine-2s 2-flat directions", "1", B::claimed, "property (a)"},
      {"A882-props", "855 cube directions", "1", B::claimed, "property (b)"},
      {"A882-props", "882 cube directions", "1", B::claimed, "property (c)"},
      {"A882-props", "point count for (855, 882)", "[[2,4,2],[1,0,1],[2,4,2]]", B::claimed, "property (d)"},
      {"A882-props", "coordinate pairs with that point count", "4", B::claimed, "unique up to negating either coordinate"},
      {"A882-props", "standard squares are translates", "yes", B::claimed, "property (d)"},
      {"A882-props", "midpoints form a square", "yes", B::claimed, "property (d)"},
      {"A882-props", "its 2-flat holds the square centres and single points", "yes", B::claimed, "property (d)"},

      {"dim3-types", "5-cap classes in AG(3,3)", "2", B::derived, "exhaustive isomorph-free search"},
      {"dim3-types", "classes are pyramid and tetrahedron plus centre", "yes", B::derived, ""},
      {"dim3-types", "9-cap is complete", "yes", B::derived, "no 10-cap in AG(3,3)"},
      {"dim3-types", "cube is a spanning 8-cap", "yes", B::trivial, "{1,2}^3"},

      {"L2.2-census", "special 3-flat directions", "45", B::claimed, "eight pyramids and one tetrahedron plus centre"},
      {"L2.2-census", "axis line directions", "1", B::claimed, "unique line direction"},
      {"L2.2-census", "(i) twin 18-caps of the other class", "10", B::claimed, ""},
      {"L2.2-census", "(ii) twin 882A2 directions", "45", B::claimed, ""},
      {"L2.2-census", "(iii) 15-15-15 unions of axis lines", "30", B::claimed, ""},
      {"L2.2-census", "(iv) other 15-15-15 directions", "36", B::claimed, ""},
      {"L2.2-census", "directions in no category", "0", B::derived, "121 - 10 - 45 - 30 - 36"},
      {"L2.2-census", "category (i) 18-caps form one class", "yes", B::claimed, "a single other class"},
      {"L2.2-census", "symmetry orbits per category", "1,1,1,1", B::claimed, "each category is one orbit"},
      {"L2.2-census", "complete", "yes", B::claimed, "no addable point"},

      {"L2.3-k1", "solutions", "18", B::claimed, "C(18,1)"},
      {"L2.3-k1", "nontrivial solutions", "0", B::claimed, ""},
      {"L2.3-k2", "solutions", "153", B::claimed, "C(18,2)"},
      {"L2.3-k2", "nontrivial solutions", "0", B::claimed, ""},
      {"L2.3-k3", "solutions", "816", B::claimed, "C(18,3)"},
      {"L2.3-k3", "nontrivial solutions", "0", B::claimed, ""},
      {"L2.3-k4", "nontrivial solutions exist", "yes", B::claimed, "further search for n = 4"},
      {"L2.3-k4", "removal sets examined", "3060", B::trivial, "C(18,4)"},

      {"L2.4-parallel", "twin 882A2 directions examined", "45", B::claimed, "category (ii)"},
      {"L2.4-parallel", "(a) nine-2s directions parallel", "45", B::claimed, ""},
      {"L2.4-parallel", "(b) 882 cube parallel to the other 855 cube", "45", B::claimed, ""},
      {"L2.4-parallel", "(c) square sides parallel to the other diagonals", "45", B::claimed, ""},

      {"L2.5a", "translations examined", "81", B::trivial, "every U"},
      {"L2.5a", "points with n=0", "0", B::claimed, "rest have n >= 4"},
      {"L2.5a", "points with n=1", "18", B::claimed, ""},
      {"L2.5a", "points with n=2", "4", B::claimed, ""},
      {"L2.5a", "points with n=3", "0", B::claimed, "rest have n >= 4"},
      {"L2.5a", "n=1 points are U of the upper cap", "yes", B::claimed, "(i)"},
      {"L2.5a", "n=1 segment is U(Q)U^-1(Q)", "yes", B::claimed, "(i)"},
      {"L2.5a", "n=2 points are U of the upper square of midpoints", "yes", B::claimed, "(ii)"},
      {"L2.5a", "n=2 segments pairwise disjoint", "yes", B::claimed, "(ii)"},
      {"L2.5a", "S_a(Q) not inside a nine-2s 2-flat", "yes", B::claimed, "(ii)"},
      {"L2.5a", "Q is the midpoint of U^a(S_a(Q))", "yes", B::claimed, "(ii)"},

      {"L2.5b", "point reflections examined", "81", B::trivial, "every centre"},
      {"L2.5b", "points with n=0", "4", B::claimed, ""},
      {"L2.5b", "points with n=1", "0", B::claimed, "rest have n >= 4"},
      {"L2.5b", "points with n=2", "4", B::claimed, ""},
      {"L2.5b", "points with n=3", "24", B::claimed, ""},
      {"L2.5b", "n=0 points are U of the upper square of midpoints", "yes", B::claimed, "(i)"},
      {"L2.5b", "n=2 segments pairwise disjoint", "yes", B::claimed, "(ii)"},
      {"L2.5b", "n=2 points form a translate of every standard square", "yes", B::claimed, "(ii)"},
      {"L2.5b", "its centre is U of the upper midpoint centre", "yes", B::claimed, "(ii)"},
      {"L2.5b", "n=2 / n=3 intersections small or a segment through Q3", "yes", B::claimed, "(iii)"},
      {"L2.5b", "large n=3 / n=3 intersections satisfy (1)-(3)", "yes", B::claimed, "(iii)"},

      {"L3.1-recipe", "free middle points", "22", B::claimed, "22 points P form a cap"},
      {"L3.1-recipe", "middle points form a cap", "yes", B::claimed, ""},
      {"L3.1-recipe", "stacked size", "112", B::claimed, ""},
      {"L3.1-recipe", "stacked set is a cap", "yes", B::claimed, ""},
      {"L3.1-recipe", "complete", "yes", B::derived, "112 is the maximum in AG(6,3)"},

      {"L3.1a", "hyperplane census", "{45,45,22}:56 {40,36,36}:308", B::claimed, "(a)"},
      {"L3.1b", "{40,36,36} directions y1 - y2 with y1, y2 of type {45,45,22}", "308", B::claimed, "(b)"},
      {"L3.1c", "4-flat classes", "3", B::claimed, "(c)"},
      {"L3.1c", "directions like [[18,9,18],[9,4,9],[18,9,18]]", "1540", B::claimed, "case (i)"},
      {"L3.1c", "directions like [[15,6,15],[15,10,15],[15,6,15]]", "3696", B::claimed, "case (ii)"},
      {"L3.1c", "directions like [[12,12,12],[12,16,12],[12,12,12]]", "5775", B::claimed, "case (iii)"},
      {"L3.1d", "pairs of {45,45,22} directions", "1540", B::trivial, "C(56,2)"},
      {"L3.1d", "distinct intersection directions", "1540", B::claimed, "(d)"},
      {"L3.1d", "intersections are exactly case (i)", "yes", B::claimed, "(d)"},

      {"L3.2-design", "|S|", "90", B::claimed, "two functionals per twin 882A2 direction"},
      {"L3.2-design", "hyperplane census of S", "{45,45,0}:1 {36,36,18}:10 {36,27,27}:20 {30,30,30}:90", B::claimed, ""},
      {"L3.2-design", "{45,45,0} direction is f -> f(L)", "yes", B::claimed, ""},
      {"L3.2-design", "same hyperplane iff the difference vanishes on L", "yes", B::claimed, ""},
      {"L3.2-design", "(y,z) grids equal to a stated matrix", "20/20", B::claimed, ""},
      {"L3.2-design", "18-point flats are complements of three disjoint lines, 9-point flats caps", "120/120", B::claimed, ""},

      {"P3.6-cases", "maps", "1965150720", B::trivial, "|GL(4,3)| * 3^4"},
      {"P3.6-cases", "sweep complete", "yes", B::trivial, ""},
      {"P3.6-cases", "maps with n0 >= 6 or n2 >= 14 outside the four cases", "0", B::claimed, ""},
      {"P3.6-cases", "(0,45) occurs", "yes", B::claimed, ""},
      {"P3.6-cases", "(22,22) occurs", "yes", B::claimed, ""},
      {"P3.6-cases", "(6,6) occurs", "yes", B::claimed, ""},
      {"P3.6-cases", "(2,14) occurs", "yes", B::claimed, ""},
      {"P3.6-cases", "(0,45) are translates, one segment per Q", "yes", B::claimed, ""},
      {"P3.6-cases", "(22,22) are point reflections", "yes", B::claimed, ""},
      {"P3.6-cases", "(22,22) middle caps give 112-caps isomorphic to the atlas one", "yes", B::claimed, ""},
      {"P3.6-cases", "(6,6) six points P = Q form a cap", "yes", B::claimed, ""},
      {"P3.6-cases", "(6,6) give complete 96-caps", "yes", B::claimed, ""},
      {"P3.6-cases", "(6,6) 96-caps pairwise isomorphic", "yes", B::claimed, ""},
      {"P3.6-cases", "(6,6) 96-caps isomorphic to the atlas one", "yes", B::derived, "atlas entry comes from the first (6,6) hit"},
      {"P3.6-cases", "largest n0 among other maps", "4", B::derived, "sweep"},
      {"P3.6-cases", "largest n2 among other maps", "11", B::derived, "sweep"},
      {"P3.6-counts", "(0,45) maps", "8", B::claimed, ""},
      {"P3.6-counts", "(22,22) maps", "8", B::claimed, ""},
      {"P3.6-counts", "(6,6) maps", "32", B::claimed, ""},
      {"P3.6-counts", "(2,14) maps", "176", B::claimed, ""},
      {"P3.6-counts", "aut-left convention", "1,1,4,22", B::derived, "counts divided by 8 level automorphisms"},

      {"P96", "size", "96", B::trivial, ""},
      {"P96", "complete", "yes", B::claimed, ""},
      {"P96", "has a {45,45,6} direction", "yes", B::claimed, ""},

      {"P3.7-dir", "40-cap hyperplane census", "{18,18,4}:10 {16,12,12}:75 {15,15,10}:36", B::derived, ""},
      {"P3.7-dir", "{18,18,4} directions", "10", B::claimed, ""},
      {"P3.7-dir", "symmetry orbits on them", "1", B::claimed, "acts transitively"},
      {"P3.7-dir", "their 18-caps that are 882A2", "20", B::claimed, "premise of the statement"},

      {"T1-delta686", "hyperplane census",
       "{20,16,6}:3 {18,18,6}:4 {18,17,7}:18 {18,12,12}:6 {16,15,11}:24 {16,14,12}:36 {15,15,12}:3 {14,14,14}:27", B::claimed,
       "table of hyperplane point counts"},
      {"T1-delta686", "size", "42", B::trivial, ""},
      {"T1-delta686", "complete", "yes", B::derived, ""},
      {"T1-delta686", "{20,16,6} direction orbits", "1", B::derived, "multiplicity 3, one orbit"},
      {"T1-delta686", "45-cap minus 3 samples with this census", "0/300", B::derived, "seeded sample"},

      {"P4.1a-opt1", "x1 point count", "45,22,45", B::claimed, "Option 1 rows"},
      {"P4.1a-opt1", "placements", "486", B::claimed, "2 * 3^5"},
      {"P4.1a-opt1", "(i) placements with a free middle point", "0", B::claimed, ""},
      {"P4.1a-opt1", "(ii) non-translates with more than two Q", "0", B::claimed, ""},
      {"P4.1a-opt1", "translates", "2", B::derived, "the 112-cap is centrally symmetric"},
      {"P4.1a-opt1", "(iii) translates: 112 Q, each on one segment, disjoint, U of the upper cap", "yes", B::claimed, ""},

      {"atlas-manifest", "problems", "0", B::trivial, "hashes and re-certification"},
  };
  return table;
}

const std::vector<CheckInfo>& check_registry() {
  using R = Runtime;
  static const std::vector<CheckInfo> reg = {
      {"dirs-count", "direction counts", {}, R::fast},
      {"A882-props", "882A2 properties (a)-(d)", {"dim4-882A2"}, R::fast},
      {"dim3-types", "dimension-3 cap types", {"dim3-pyramid", "dim3-tetracentre", "dim3-cube", "dim3-9cap"}, R::fast},
      {"L2.2-census", "45-cap hyperplane and 3-flat census", {"dim5-45cap", "dim4-882A2"}, R::fast},
      {"L2.3-k1", "replacing one point of 882A2", {"dim4-882A2"}, R::fast},
      {"L2.3-k2", "replacing two points of 882A2", {"dim4-882A2"}, R::fast},
      {"L2.3-k3", "replacing three points of 882A2", {"dim4-882A2"}, R::fast},
      {"L2.3-k4", "replacing four points of 882A2", {"dim4-882A2"}, R::fast},
      {"L2.4-parallel", "parallel features of twin 882A2 hyperplanes", {"dim5-45cap", "dim4-882A2"}, R::fast},
      {"L2.5a", "midpoints between translated 882A2 caps", {"dim4-882A2"}, R::fast},
      {"L2.5b", "midpoints between reflected 882A2 caps", {"dim4-882A2"}, R::fast},
      {"L3.1-recipe", "112-cap from a 45-cap and its reflection", {"dim5-45cap", "dim6-112cap"}, R::fast},
      {"L3.1a", "112-cap hyperplane census", {"dim6-112cap"}, R::fast},
      {"L3.1b", "{40,36,36} directions as differences", {"dim6-112cap"}, R::fast},
      {"L3.1c", "112-cap 4-flat census", {"dim6-112cap"}, R::fast},
      {"L3.1d", "case (i) 4-flat directions as intersections", {"dim6-112cap"}, R::fast},
      {"L3.2-design", "dual design of the 45-cap", {"dim5-45cap", "dim4-882A2"}, R::fast},
      {"P3.6-cases", "level-preserving placements of two 45-caps", {"dim5-45cap", "dim4-882A2", "dim6-112cap", "dim6-96cap"}, R::medium},
      {"P3.6-counts", "placement counts per case", {"dim5-45cap", "dim4-882A2"}, R::medium},
      {"P96", "the 96-cap", {"dim6-96cap"}, R::fast},
      {"P3.7-dir", "{18,18,4} directions of the 40-cap", {"dim5-40cap", "dim6-112cap", "dim4-882A2"}, R::fast},
      {"T1-delta686", "Delta686 hyperplane census", {"dim5-delta686", "dim5-45cap"}, R::fast},
      {"P4.1a-opt1", "shifted placements of two 112-caps", {"dim6-112cap"}, R::fast},
      {"atlas-manifest", "atlas cache audit",
       {"dim3-pyramid", "dim3-tetracentre", "dim3-cube", "dim3-9cap", "dim4-20cap", "dim4-882A2", "dim5-45cap",
        "dim5-delta686", "dim6-96cap", "dim6-112cap", "dim5-40cap"},
       R::fast},
  };
  return reg;
}

const CheckInfo& check_info(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  throw CapsetError("unknown check id '" + id + "'");
}

Runtime parse_runtime(const std::string& s) {
  if (s == "fast") return Runtime::fast;
  if (s == "medium") return Runtime::medium;
  if (s == "long") return Runtime::slow;
  throw CapsetError("unknown runtime class '" + s + "' (fast, medium, long)");
}

std::string runtime_name(Runtime r) {
  switch (r) {
    case Runtime::fast: return "fast";
    case Runtime::medium: return "medium";
    case Runtime::slow: return "long";
  }
  return "?";
}

std::string basis_name(Basis b) {
  switch (b) {
    case Basis::claimed: return "claimed";
    case Basis::derived: return "derived";
    case Basis::trivial: return "trivial";
  }
  return "?";
}

// ---- reports ----

namespace {

nlohmann::ordered_json report_object(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["title"] = r.title;
  j["passed"] = r.passed;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json x;
    x["key"] = row.key;
    x["observed"] = row.observed;
    if (!row.expected.empty()) {
      x["expected"] = row.expected;
      x["basis"] = row.basis;
    }
    x["ok"] = row.ok;
    j["rows"].push_back(x);
  }
  j["witnesses"] = r.witnesses;
  return j;
}

}  // namespace

std::string CheckReport::to_json() const { return report_object(*this).dump(2); }

std::string report_json(const std::vector<CheckReport>& reports) {
  nlohmann::ordered_json j;
  j["format"] = "capset-verify";
  j["version"] = 1;
  std::size_t passed = 0;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    passed += r.passed;
    j["checks"].push_back(report_object(r));
  }
  j["passed"] = passed;
  j["failed"] = reports.size() - passed;
  return j.dump(2) + "\n";
}

// ---- shared state ----

struct SweepData {
  CapSet base;
  SweepSummary summary;
  std::vector<std::pair<LinearPlacement, PlacementStats>> hits;
};

struct VerifyState {
  std::optional<SweepData> sweep;
};

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string key_string(const std::vector<int>& k) {
  std::string s = "{";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "}";
}

std::string census_string(const SpectrumReport& r) {
  std::string s;
  for (const auto& [k, m] : r.census) s += (s.empty() ? "" : " ") + key_string(k) + ":" + std::to_string(m);
  return s;
}

template <class T>
std::string joined(const std::set<T>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

std::string grid_string(const std::vector<int>& counts) {
  auto g = printed_grid(counts);
  std::string s = "[";
  for (int i = 0; i < 3; ++i) s += std::string(i ? "," : "") + "[" + std::to_string(g[i][0]) + "," + std::to_string(g[i][1]) + "," + std::to_string(g[i][2]) + "]";
  return s + "]";
}

std::string point_list(const PointSet& s) {
  std::string out;
  for (PointIndex p : s) out += (out.empty() ? "" : " ") + s.space().to_string(p);
  return out;
}

PointSet shifted(const PointSet& s, PointIndex u) {
  const Space& sp = s.space();
  PointSet out(s.dim());
  for (PointIndex p : s) out.insert(sp.add(p, u));
  return out;
}

PointSet negated(const PointSet& s) {
  const Space& sp = s.space();
  PointSet out(s.dim());
  for (PointIndex p : s) out.insert(sp.neg(p));
  return out;
}

PointIndex functional_of(const DirectionSpec& d) { return Space::get(d.dim()).index(d.basis().row(0)); }

class Ctx {
 public:
  explicit Ctx(CheckReport& r) : r_(r) {}

  void expect(const std::string& key, const std::string& observed) {
    const Expectation* e = nullptr;
    for (const auto& x : expectations())
      if (x.check == r_.id && x.key == key) e = &x;
    if (!e) throw CapsetError("no expected value registered for " + r_.id + " / " + key);
    r_.rows.push_back({key, observed, e->value, basis_name(e->basis), observed == e->value});
  }
  void expect(const std::string& key, std::uint64_t observed) { expect(key, std::to_string(observed)); }
  void expect(const std::string& key, bool observed) { expect(key, yes(observed)); }
  void expect(const std::string& key, const char* observed) { expect(key, std::string(observed)); }

  void info(const std::string& key, const std::string& observed) { r_.rows.push_back({key, observed, "", "", true}); }

  void witness(const std::string& w) {
    if (r_.witnesses.size() < 8) r_.witnesses.push_back(w);
  }

 private:
  CheckReport& r_;
};

struct Env {
  Atlas& atlas;
  int threads;
  VerifyState& state;
};

// ---- checks ----

void check_dirs(Ctx& c, Env&) {
  auto t0 = std::chrono::steady_clock::now();
  const std::size_t a = enumerate_directions(5, 1).size();
  const std::size_t b = enumerate_directions(6, 1).size();
  const std::size_t d = enumerate_directions(6, 2).size();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect("hyperplane directions n=5", std::uint64_t(a));
  c.expect("hyperplane directions n=6", std::uint64_t(b));
  c.expect("4-flat directions n=6", std::uint64_t(d));
  c.expect("enumeration under one second", secs < 1.0);
}

void check_882(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim4-882A2");
  Features882 f = analyze_882(cap);
  for (const auto& p : f.problems) c.witness(p);
  c.expect("nine-2s 2-flat directions", std::uint64_t(f.nine_twos.size()));
  c.expect("855 cube directions", std::uint64_t(f.cube_855.size()));
  c.expect("882 cube directions", std::uint64_t(f.cube_882.size()));
  if (f.cube_855.size() != 1 || f.cube_882.size() != 1) {
    c.witness(format_cap(cap));
    return;
  }
  c.expect("point count for (855, 882)", grid_string(f.pair_counts));
  const auto target = counts_from_printed_grid({{{2, 4, 2}, {1, 0, 1}, {2, 4, 2}}});
  int pairs = 0;
  for (int s1 : {1, 2})
    for (int s2 : {1, 2})
      for (int c1 = 0; c1 < 3; ++c1)
        for (int c2 = 0; c2 < 3; ++c2) {
          F3Matrix r1 = f.cube_855.front().basis(), r2 = f.cube_882.front().basis();
          if (s1 == 2) r1 = r1.negated();
          if (s2 == 2) r2 = r2.negated();
          Coords k{};
          k[0] = static_cast<std::uint8_t>(c1);
          k[1] = static_cast<std::uint8_t>(c2);
          pairs += fiber_counts(cap.points(), Fibration(r1.stacked(r2), k)) == target;
        }
  c.expect("coordinate pairs with that point count", std::uint64_t(pairs));
  c.expect("standard squares are translates", f.squares_are_translates);
  c.expect("midpoints form a square", f.midpoints_form_square);
  c.expect("its 2-flat holds the square centres and single points", f.midpoint_flat_ok);
}

void check_dim3(Ctx& c, Env& e) {
  Dim3FiveCaps five = classify_dim3_5caps();
  c.info("labelled 5-caps", std::to_string(five.labelled));
  c.expect("5-cap classes in AG(3,3)", std::uint64_t(five.classes.size()));
  std::set<PointSet> got, want;
  for (const auto& k : five.classes) got.insert(k.canonical);
  want.insert(canonical_form(e.atlas.get("dim3-pyramid")).canonical);
  want.insert(canonical_form(e.atlas.get("dim3-tetracentre")).canonical);
  c.expect("classes are pyramid and tetrahedron plus centre", got == want);
  c.expect("9-cap is complete", is_complete(e.atlas.get("dim3-9cap")));
  const CapSet& cube = e.atlas.get("dim3-cube");
  c.expect("cube is a spanning 8-cap", cube.size() == 8 && affine_hull_dimension(cube.points()) == 3);
}

void check_45(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim5-45cap");
  Features45 f = analyze_45(cap, e.atlas.canonical_882A2());
  c.expect("special 3-flat directions", std::uint64_t(f.special.size()));
  c.expect("axis line directions", std::uint64_t(f.axis_candidates.size()));
  c.expect("(i) twin 18-caps of the other class", std::uint64_t(f.census[1]));
  c.expect("(ii) twin 882A2 directions", std::uint64_t(f.census[2]));
  c.expect("(iii) 15-15-15 unions of axis lines", std::uint64_t(f.census[3]));
  c.expect("(iv) other 15-15-15 directions", std::uint64_t(f.census[4]));
  c.expect("directions in no category", std::uint64_t(f.census[0]));
  c.expect("category (i) 18-caps form one class", f.other_twins_isomorphic);
  std::array<int, 5> orbits{};
  for (const auto& orb : direction_orbits(cap, f.hyperplanes)) {
    std::set<Category45> cats;
    for (std::size_t i : orb) cats.insert(f.category[i]);
    if (cats.size() != 1) c.witness("orbit mixes categories, e.g. direction " + f.hyperplanes[orb.front()].to_string());
    ++orbits[static_cast<int>(f.category[orb.front()])];
  }
  c.expect("symmetry orbits per category", std::to_string(orbits[1]) + "," + std::to_string(orbits[2]) + "," + std::to_string(orbits[3]) + "," + std::to_string(orbits[4]));
  c.expect("complete", is_complete(cap));
  if (f.axis) c.info("axis", Space::get(5).to_string(*f.axis));
}

void check_replace(Ctx& c, Env& e, int k) {
  const CapSet& cap = e.atlas.get("dim4-882A2");
  auto reps = replace_points(cap, k, contains_full_hyperplane_section);
  std::uint64_t nontrivial = 0;
  for (const auto& r : reps)
    if (!r.trivial()) {
      if (nontrivial++ == 0) c.witness("remove " + point_list(r.removed) + " add " + point_list(r.added));
    }
  if (k < 4) {
    c.expect("solutions", std::uint64_t(reps.size()));
    c.expect("nontrivial solutions", nontrivial);
  } else {
    std::uint64_t choose = 1;
    for (int i = 0; i < 4; ++i) choose = choose * (18 - i) / (i + 1);
    c.expect("removal sets examined", choose);
    c.expect("nontrivial solutions exist", nontrivial > 0);
    c.info("solutions", std::to_string(reps.size()));
    c.info("nontrivial solutions", std::to_string(nontrivial));
  }
}

void check_parallel(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim5-45cap");
  Features45 f = analyze_45(cap, e.atlas.canonical_882A2());
  std::uint64_t examined = 0, pa = 0, pb = 0, pc = 0;
  for (std::size_t i = 0; i < f.hyperplanes.size(); ++i) {
    if (f.category[i] != Category45::twin_882A2) continue;
    ++examined;
    const DirectionSpec& d = f.hyperplanes[i];
    const Fibration fib = d.fibration();
    auto counts = direction_counts(cap.points(), d);
    auto caps = fibers(cap, fib);
    std::vector<int> labels;
    for (int l = 0; l < 3; ++l)
      if (counts[l] == 18) labels.push_back(l);
    const int la = labels[0], lb = labels[1];
    Features882 fa = analyze_882(caps[la]), fb = analyze_882(caps[lb]);
    if (!fa.ok() || !fb.ok()) {
      c.witness("direction " + d.to_string() + ": an 18-cap fails the 882A2 features");
      continue;
    }
    auto emb = [&](const DirectionSpec& x, int l) { return embed_vectors(direction_space(x), fib, l); };
    const bool a = emb(fa.nine_twos[0], la) == emb(fb.nine_twos[0], lb);
    const bool b = emb(fa.cube_882[0], la) == emb(fb.cube_855[0], lb) && emb(fa.cube_855[0], la) == emb(fb.cube_882[0], lb);
    auto global = [&](const PointSet& sq, int l) {
      PointSet g(5);
      for (PointIndex p : sq) g.insert(fib.global_index(l, p));
      return square_directions(g);
    };
    bool cc = true;
    for (const auto& s : fa.standard_squares)
      for (const auto& t : fb.standard_squares) {
        auto ds = global(s, la), dt = global(t, lb);
        cc = cc && !ds.sides.empty() && ds.sides == dt.diagonals && dt.sides == ds.diagonals;
      }
    pa += a;
    pb += b;
    pc += cc;
    if (!(a && b && cc)) c.witness("direction " + d.to_string() + std::string(a ? "" : " (a)") + (b ? "" : " (b)") + (cc ? "" : " (c)"));
  }
  c.expect("twin 882A2 directions examined", examined);
  c.expect("(a) nine-2s directions parallel", pa);
  c.expect("(b) 882 cube parallel to the other 855 cube", pb);
  c.expect("(c) square sides parallel to the other diagonals", pc);
}

std::set<std::uint64_t>& at(std::map<int, std::set<std::uint64_t>>& m, int k) { return m[k]; }

std::uint64_t hist_at(const std::vector<std::uint64_t>& h, int v) { return v < static_cast<int>(h.size()) ? h[v] : 0; }

PointSet set_of(int dim, const std::vector<PointIndex>& v) { return PointSet(dim, v); }

void check_mid_translate(Ctx& c, Env& e) {
  const CapSet& A = e.atlas.get("dim4-882A2");
  const Space& sp = Space::get(4);
  std::map<int, std::set<std::uint64_t>> hist;
  bool i1 = true, i2 = true, ii1 = true, ii2 = true, ii3 = true, ii4 = true, witnessed = false;
  Features882 fa = analyze_882(A);
  for (PointIndex u = 0; u < sp.size(); ++u) {
    CapSet B(shifted(A.points(), u));
    Features882 fb = fa;
    fb.midpoints = shifted(fa.midpoints, u);
    MidpointProfile m = midpoint_profile(A, B);
    auto h = m.histogram();
    for (int v = 0; v < 4; ++v) at(hist, v).insert(hist_at(h, v));
    const PointIndex uu = sp.add(u, u);
    auto ones = m.points_with(1);
    if (set_of(4, ones) != shifted(A.points(), uu)) i1 = false;
    for (PointIndex q : ones)
      if (m.partner[q] != sp.add(q, u) || !B.contains(sp.sub(q, u))) i2 = false;
    auto twos = m.points_with(2);
    if (set_of(4, twos) != shifted(fb.midpoints, u)) ii1 = false;
    PointSet ends_a(4), ends_b(4);
    const Fibration na = fa.nine_twos[0].fibration();
    for (PointIndex q : twos) {
      PointSet sa = cross_partners(A, B, q), sb = cross_partners(B, A, q);
      ends_a |= sa;
      ends_b |= sb;
      auto va = sa.to_vector(), vb = sb.to_vector();
      if (va.size() != 2 || vb.size() != 2) {
        ii3 = ii4 = false;
        continue;
      }
      // B is a translate of A, so its nine-2s 2-flats are the same direction
      if (na.label(va[0]) == na.label(va[1]) || na.label(vb[0]) == na.label(vb[1])) ii3 = false;
      if (sp.third(sp.sub(va[0], u), sp.sub(va[1], u)) != q || sp.third(sp.add(vb[0], u), sp.add(vb[1], u)) != q) ii4 = false;
    }
    if (ends_a.size() != 2 * twos.size() || ends_b.size() != 2 * twos.size()) ii2 = false;
    if (!(i1 && i2 && ii1 && ii2 && ii3 && ii4) && !witnessed) {
      c.witness("translation by " + sp.to_string(u));
      witnessed = true;
    }
  }
  c.expect("translations examined", std::uint64_t(sp.size()));
  c.expect("points with n=0", joined(hist[0]));
  c.expect("points with n=1", joined(hist[1]));
  c.expect("points with n=2", joined(hist[2]));
  c.expect("points with n=3", joined(hist[3]));
  c.expect("n=1 points are U of the upper cap", i1);
  c.expect("n=1 segment is U(Q)U^-1(Q)", i2);
  c.expect("n=2 points are U of the upper square of midpoints", ii1);
  c.expect("n=2 segments pairwise disjoint", ii2);
  c.expect("S_a(Q) not inside a nine-2s 2-flat", ii3);
  c.expect("Q is the midpoint of U^a(S_a(Q))", ii4);
}

void check_mid_reflect(Ctx& c, Env& e) {
  const CapSet& A = e.atlas.get("dim4-882A2");
  const Space& sp = Space::get(4);
  const std::uint32_t N = sp.size();
  Features882 fa = analyze_882(A);
  std::map<int, std::set<std::uint64_t>> hist;
  bool i = true, ii1 = true, ii2 = true, ii3 = true, iii1 = true, iii2 = true;
  std::set<std::uint64_t> large_pairs;
  for (PointIndex t = 0; t < N; ++t) {
    CapSet B(shifted(negated(A.points()), t));
    Features882 fb = analyze_882(B);
    auto u = translation_vector(fa.midpoints, fb.midpoints);
    if (!fb.ok() || !u) {
      c.witness("reflection centre shift " + sp.to_string(t) + ": features of the reflected cap");
      i = false;
      continue;
    }
    MidpointProfile m = midpoint_profile(A, B);
    auto h = m.histogram();
    for (int v = 0; v < 4; ++v) at(hist, v).insert(hist_at(h, v));
    if (set_of(4, m.points_with(0)) != shifted(fb.midpoints, *u)) i = false;

    auto X = [&](PointIndex q) {
      PointSet x(5);
      for (PointIndex p : cross_partners(A, B, q)) x.insert(2 * N + p);
      for (PointIndex r : cross_partners(B, A, q)) x.insert(N + r);
      return x;
    };
    auto twos = m.points_with(2), threes = m.points_with(3);
    PointSet S = set_of(4, twos);
    PointSet ends(5);
    for (PointIndex q : twos) ends |= X(q);
    if (ends.size() != 4 * twos.size()) ii1 = false;
    bool square = S.size() == 4 && is_cap(S) && affine_hull_dimension(S) == 2;
    for (const auto* f : {&fa, &fb})
      for (const auto& sq : f->standard_squares) square = square && translation_vector(sq, S).has_value();
    if (!square) ii2 = false;
    auto cs = square_centre(S), cm = square_centre(fb.midpoints);
    if (!cs || !cm || *cs != sp.add(*cm, *u)) ii3 = false;

    for (PointIndex q2 : twos)
      for (PointIndex q3 : threes) {
        PointSet in = X(q2) & X(q3);
        if (in.size() <= 1) continue;
        bool seg = false;
        if (in.size() == 2) {
          auto v = in.to_vector();  // lower level has the larger indices
          seg = v[1] >= 2 * N && v[0] >= N && v[0] < 2 * N && sp.third(v[1] - 2 * N, v[0] - N) == q3;
        }
        if (!seg) {
          iii1 = false;
          c.witness("Q2 " + sp.to_string(q2) + " Q3 " + sp.to_string(q3));
        }
      }
    std::uint64_t large = 0;
    for (std::size_t a = 0; a < threes.size(); ++a)
      for (std::size_t b = a + 1; b < threes.size(); ++b) {
        PointSet in = X(threes[a]) & X(threes[b]);
        if (in.size() <= 2) continue;
        ++large;
        bool ok = in.size() == 3 && m.n[sp.third(threes[a], threes[b])] == 0;
        for (std::size_t z = 0; z < threes.size() && ok; ++z)
          if (z != a && z != b && in.is_subset_of(X(threes[z]))) ok = false;
        if (!ok) {
          iii2 = false;
          c.witness("Q3 " + sp.to_string(threes[a]) + " Q3' " + sp.to_string(threes[b]));
        }
      }
    large_pairs.insert(large);
  }
  c.expect("point reflections examined", std::uint64_t(N));
  c.expect("points with n=0", joined(hist[0]));
  c.expect("points with n=1", joined(hist[1]));
  c.expect("points with n=2", joined(hist[2]));
  c.expect("points with n=3", joined(hist[3]));
  c.expect("n=0 points are U of the upper square of midpoints", i);
  c.expect("n=2 segments pairwise disjoint", ii1);
  c.expect("n=2 points form a translate of every standard square", ii2);
  c.expect("its centre is U of the upper midpoint centre", ii3);
  c.expect("n=2 / n=3 intersections small or a segment through Q3", iii1);
  c.expect("large n=3 / n=3 intersections satisfy (1)-(3)", iii2);
  c.info("n=3 pairs with a large intersection", joined(large_pairs));
}

void check_112_recipe(Ctx& c, Env& e) {
  const CapSet& c45 = e.atlas.get("dim5-45cap");
  CapSet upper(negated(c45.points()));
  PointSet middle = free_middle_points(c45, upper);
  c.expect("free middle points", std::uint64_t(middle.size()));
  c.expect("middle points form a cap", is_cap(middle));
  PointSet all(6);
  const std::uint32_t N = pow3(5);
  for (PointIndex p : c45.points()) all.insert(2 * N + p);
  for (PointIndex p : middle) all.insert(p);
  for (PointIndex p : upper.points()) all.insert(N + p);
  c.expect("stacked size", std::uint64_t(all.size()));
  const bool cap = is_cap(all);
  c.expect("stacked set is a cap", cap);
  c.expect("complete", cap && is_complete(CapSet(all)));
  if (cap) c.info("equals the atlas 112-cap", yes(CapSet(all) == e.atlas.get("dim6-112cap")));
}

void check_112a(Ctx& c, Env& e) { c.expect("hyperplane census", census_string(spectrum(e.atlas.get("dim6-112cap"), 1))); }

void check_112b(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim6-112cap");
  const Space& sp = Space::get(6);
  PointSet F(6);
  for (const auto& d : directions_with_key(cap.points(), 1, {45, 45, 22})) {
    F.insert(functional_of(d));
    F.insert(sp.neg(functional_of(d)));
  }
  std::uint64_t ok = 0;
  for (const auto& d : directions_with_key(cap.points(), 1, {40, 36, 36})) {
    const PointIndex g = functional_of(d);
    bool found = false;
    for (PointIndex f1 : F) found = found || F.contains(sp.sub(f1, g));
    ok += found;
    if (!found) c.witness("direction " + d.to_string());
  }
  c.expect("{40,36,36} directions y1 - y2 with y1, y2 of type {45,45,22}", ok);
}

std::vector<int> matrix_key(const std::array<std::array<int, 3>, 3>& m) { return normalize_counts(counts_from_printed_grid(m), 2); }

void check_112c(Ctx& c, Env& e) {
  SpectrumReport s = spectrum(e.atlas.get("dim6-112cap"), 2);
  c.expect("4-flat classes", std::uint64_t(s.census.size()));
  c.expect("directions like [[18,9,18],[9,4,9],[18,9,18]]", s.multiplicity(matrix_key({{{18, 9, 18}, {9, 4, 9}, {18, 9, 18}}})));
  c.expect("directions like [[15,6,15],[15,10,15],[15,6,15]]", s.multiplicity(matrix_key({{{15, 6, 15}, {15, 10, 15}, {15, 6, 15}}})));
  c.expect("directions like [[12,12,12],[12,16,12],[12,12,12]]", s.multiplicity(matrix_key({{{12, 12, 12}, {12, 16, 12}, {12, 12, 12}}})));
  c.info("total", std::to_string(s.total()));
}

void check_112d(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim6-112cap");
  auto d45 = directions_with_key(cap.points(), 1, {45, 45, 22});
  std::set<DirectionSpec> inter;
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < d45.size(); ++i)
    for (std::size_t j = i + 1; j < d45.size(); ++j, ++pairs) inter.insert(DirectionSpec(d45[i].basis().stacked(d45[j].basis())));
  auto k1 = directions_with_key(cap.points(), 2, matrix_key({{{18, 9, 18}, {9, 4, 9}, {18, 9, 18}}}));
  std::set<DirectionSpec> case1(k1.begin(), k1.end());
  c.expect("pairs of {45,45,22} directions", pairs);
  c.expect("distinct intersection directions", std::uint64_t(inter.size()));
  c.expect("intersections are exactly case (i)", inter == case1);
  for (const auto& d : inter)
    if (!case1.count(d)) {
      c.witness("intersection not in case (i): " + d.to_string());
      break;
    }
}

void check_design(Ctx& c, Env& e) {
  DualDesign d = dual_design(e.atlas.get("dim5-45cap"), e.atlas.canonical_882A2());
  c.expect("|S|", std::uint64_t(d.vectors.size()));
  c.expect("hyperplane census of S", census_string(d.spectrum));
  c.expect("{45,45,0} direction is f -> f(L)", d.matches_axis);
  c.expect("same hyperplane iff the difference vanishes on L", d.duality_ok);
  c.expect("(y,z) grids equal to a stated matrix", std::to_string(d.grid_ok) + "/" + std::to_string(d.grid_total));
  c.expect("18-point flats are complements of three disjoint lines, 9-point flats caps", std::to_string(d.flats_ok) + "/" + std::to_string(d.flats_total));
}

const SweepData& sweep(Env& e) {
  if (!e.state.sweep) {
    SweepData s;
    s.base = level_frame_45(e.atlas.get("dim5-45cap"), e.atlas.canonical_882A2());
    SweepOptions o;
    o.threads = e.threads;
    s.summary = sweep_linear_placements(
        s.base, o, [](const PlacementStats& st) { return st.n0 >= 6 || st.n2 >= 14; },
        [&](const LinearPlacement& p, const PlacementStats& st) { s.hits.emplace_back(p, st); });
    e.state.sweep = std::move(s);
  }
  return *e.state.sweep;
}

bool named_case(int n0, int n2) {
  return (n0 == 0 && n2 == 45) || (n0 == 22 && n2 == 22) || (n0 == 6 && n2 == 6) || (n0 == 2 && n2 == 14);
}

void check_sweep_cases(Ctx& c, Env& e) {
  const SweepData& s = sweep(e);
  c.expect("maps", s.summary.universe);
  c.expect("sweep complete", s.summary.complete);
  std::uint64_t outside = 0;
  int max_n0 = 0, max_n2 = 0;
  for (const auto& [k, m] : s.summary.by_n0_n2) {
    if (named_case(k.first, k.second)) continue;
    if (k.first >= 6 || k.second >= 14) outside += m;
    max_n0 = std::max(max_n0, k.first);
    max_n2 = std::max(max_n2, k.second);
  }
  c.expect("maps with n0 >= 6 or n2 >= 14 outside the four cases", outside);
  for (auto [n0, n2] : std::vector<std::pair<int, int>>{{0, 45}, {22, 22}, {6, 6}, {2, 14}})
    c.expect("(" + std::to_string(n0) + "," + std::to_string(n2) + ") occurs", s.summary.count(n0, n2, Convention::all) > 0);

  const PointSet c112 = canonical_form(e.atlas.get("dim6-112cap")).canonical;
  std::optional<PointSet> c96;
  bool t45 = true, r22 = true, g22 = true, p66 = true, f66 = true, iso66 = true;
  for (const auto& [p, st] : s.hits) {
    if (!named_case(st.n0, st.n2)) {
      c.witness("map " + p.map().to_string() + " n0=" + std::to_string(st.n0) + " n2=" + std::to_string(st.n2));
      continue;
    }
    CapSet upper = apply_map(p.map(), s.base);
    if (st.n0 == 0) {
      if (!is_translate(s.base.points(), upper.points()) || st.n1 != 45) t45 = false;
    } else if (st.n0 == 22) {
      if (!translation_vector(negated(s.base.points()), upper.points())) r22 = false;
      PointSet mid = free_middle_points(s.base, upper);
      CapSet full = stack_levels(s.base.points(), mid, upper.points());
      if (!is_cap(mid) || full.size() != 112 || canonical_form(full).canonical != c112) g22 = false;
    } else if (st.n0 == 6) {
      PointSet mid = free_middle_points(s.base, upper);
      MidpointProfile m = midpoint_profile(s.base, upper);
      PointSet q(5);
      for (int v = 0; v <= 2; ++v)
        for (PointIndex x : m.points_with(v)) q.insert(x);
      if (mid != q || !is_cap(mid)) {
        p66 = false;
        continue;
      }
      CapSet full = stack_levels(s.base.points(), mid, upper.points());
      if (full.size() != 96 || !is_complete(full)) f66 = false;
      PointSet k = canonical_form(full).canonical;
      if (!c96) c96 = k;
      if (k != *c96) {
        iso66 = false;
        c.witness("(6,6) map with a different 96-cap: " + p.map().to_string());
      }
    }
  }
  c.expect("(0,45) are translates, one segment per Q", t45);
  c.expect("(22,22) are point reflections", r22);
  c.expect("(22,22) middle caps give 112-caps isomorphic to the atlas one", g22);
  c.expect("(6,6) six points P = Q form a cap", p66);
  c.expect("(6,6) give complete 96-caps", f66);
  c.expect("(6,6) 96-caps pairwise isomorphic", iso66 && c96.has_value());
  c.expect("largest n0 among other maps", std::uint64_t(max_n0));
  c.expect("largest n2 among other maps", std::uint64_t(max_n2));
  c.info("representatives", std::to_string(s.summary.representatives));
  c.info("placements reported", std::to_string(s.hits.size()));
  c.expect("(6,6) 96-caps isomorphic to the atlas one", c96 && *c96 == canonical_form(e.atlas.get("dim6-96cap")).canonical);
}

void check_sweep_counts(Ctx& c, Env& e) {
  const SweepData& s = sweep(e);
  const std::vector<std::pair<int, int>> cases = {{0, 45}, {22, 22}, {6, 6}, {2, 14}};
  std::string left;
  for (auto [n0, n2] : cases) {
    c.expect("(" + std::to_string(n0) + "," + std::to_string(n2) + ") maps", s.summary.count(n0, n2, Convention::all));
    left += (left.empty() ? "" : ",") + std::to_string(s.summary.count(n0, n2, Convention::aut_left));
  }
  c.expect("aut-left convention", left);
  c.info("level automorphisms", std::to_string(s.summary.level_group));
}

void check_96(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim6-96cap");
  c.expect("size", std::uint64_t(cap.size()));
  c.expect("complete", is_complete(cap));
  auto d = directions_with_key(cap.points(), 1, {45, 45, 6});
  c.expect("has a {45,45,6} direction", !d.empty());
  c.info("{45,45,6} directions", std::to_string(d.size()));
  c.info("hyperplane census", census_string(spectrum(cap, 1)));
}

void check_40(Ctx& c, Env& e) {
  Extract40 x = extract_40cap(e.atlas.get("dim6-112cap"), e.atlas.canonical_882A2());
  c.info("matches the atlas 40-cap", yes(x.cap == e.atlas.get("dim5-40cap")));
  c.expect("40-cap hyperplane census", census_string(spectrum(x.cap, 1)));
  c.expect("{18,18,4} directions", std::uint64_t(x.twins.size()));
  c.expect("symmetry orbits on them", std::uint64_t(x.orbits));
  c.expect("their 18-caps that are 882A2", std::uint64_t(x.fibres_882A2));
}

void check_686(Ctx& c, Env& e) {
  const CapSet& cap = e.atlas.get("dim5-delta686");
  const std::string table = census_string(spectrum(cap, 1));
  c.expect("hyperplane census", table);
  c.expect("size", std::uint64_t(cap.size()));
  c.expect("complete", is_complete(cap));
  c.expect("{20,16,6} direction orbits", std::uint64_t(direction_orbits(cap, directions_with_key(cap.points(), 1, {20, 16, 6})).size()));
  const CapSet& c45 = e.atlas.get("dim5-45cap");
  auto pts = c45.to_vector();
  std::mt19937_64 rng(686);
  int hits = 0;
  const int samples = 300;
  for (int s = 0; s < samples; ++s) {
    std::shuffle(pts.begin(), pts.end(), rng);
    PointSet rest = c45.points();
    for (int i = 0; i < 3; ++i) rest.erase(pts[i]);
    if (census_string(spectrum_of_points(rest, 1)) == table) {
      ++hits;
      c.witness("45-cap minus " + point_list(c45.points() - rest));
    }
  }
  c.expect("45-cap minus 3 samples with this census", std::to_string(hits) + "/" + std::to_string(samples));
}

void check_41(Ctx& c, Env& e) {
  const CapSet& base = e.atlas.get("dim6-112cap");
  auto lv = fiber_counts(base.points(), Fibration::coordinate(6, 0));
  c.expect("x1 point count", std::to_string(lv[2]) + "," + std::to_string(lv[0]) + "," + std::to_string(lv[1]));
  auto pl = enumerate_shift_placements(base);
  const Space& sp = Space::get(6);
  std::uint64_t free_pts = 0, many = 0, translates = 0;
  bool iii = true;
  for (const auto& p : pl) {
    PlacementStats st = placement_statistics(base, p.image);
    auto u = translation_vector(base.points(), p.image.points());
    const std::string what = std::string(p.reflection ? "reflection" : "translation") + " shift " + sp.to_string(p.shift);
    if (st.n0 > 0) {
      ++free_pts;
      c.witness(what + " n0=" + std::to_string(st.n0));
    }
    if (!u && st.n2 > 2) {
      ++many;
      c.witness(what + " n2=" + std::to_string(st.n2));
    }
    if (u) {
      ++translates;
      MidpointProfile m = midpoint_profile(base, p.image);
      auto ones = m.points_with(1);
      PointSet ends(6);
      for (PointIndex q : ones) ends.insert(m.partner[q]);  // lower endpoints; disjoint iff all distinct
      bool ok = st.n2 == 112 && st.n1 == 112 && set_of(6, ones) == shifted(p.image.points(), *u) && ends.size() == ones.size();
      if (!ok) {
        iii = false;
        c.witness(what + " translate fails (iii)");
      }
    }
  }
  c.expect("placements", std::uint64_t(pl.size()));
  c.expect("(i) placements with a free middle point", free_pts);
  c.expect("(ii) non-translates with more than two Q", many);
  c.expect("translates", translates);
  c.expect("(iii) translates: 112 Q, each on one segment, disjoint, U of the upper cap", iii && translates > 0);
}

void check_manifest(Ctx& c, Env& e) {
  auto problems = e.atlas.audit();
  for (const auto& p : problems) c.witness(p);
  c.expect("problems", std::uint64_t(problems.size()));
}

using CheckFn = std::function<void(Ctx&, Env&)>;

const std::map<std::string, CheckFn>& implementations() {
  static const std::map<std::string, CheckFn> m = {
      {"dirs-count", check_dirs},
      {"A882-props", check_882},
      {"dim3-types", check_dim3},
      {"L2.2-census", check_45},
      {"L2.3-k1", [](Ctx& c, Env& e) { check_replace(c, e, 1); }},
      {"L2.3-k2", [](Ctx& c, Env& e) { check_replace(c, e, 2); }},
      {"L2.3-k3", [](Ctx& c, Env& e) { check_replace(c, e, 3); }},
      {"L2.3-k4", [](Ctx& c, Env& e) { check_replace(c, e, 4); }},
      {"L2.4-parallel", check_parallel},
      {"L2.5a", check_mid_translate},
      {"L2.5b", check_mid_reflect},
      {"L3.1-recipe", check_112_recipe},
      {"L3.1a", check_112a},
      {"L3.1b", check_112b},
      {"L3.1c", check_112c},
      {"L3.1d", check_112d},
      {"L3.2-design", check_design},
      {"P3.6-cases", check_sweep_cases},
      {"P3.6-counts", check_sweep_counts},
      {"P96", check_96},
      {"P3.7-dir", check_40},
      {"T1-delta686", check_686},
      {"P4.1a-opt1", check_41},
      {"atlas-manifest", check_manifest},
  };
  return m;
}

}  // namespace

Verifier::Verifier(Atlas& atlas, int threads) : atlas_(atlas), threads_(threads), state_(std::make_unique<VerifyState>()) {}
Verifier::~Verifier() = default;

CheckReport Verifier::run(const std::string& id) {
  const CheckInfo& info = check_info(id);
  CheckReport r;
  r.id = info.id;
  r.title = info.title;
  auto t0 = std::chrono::steady_clock::now();
  Ctx ctx(r);
  Env env{atlas_, threads_, *state_};
  try {
    if (info.id != "atlas-manifest")
      for (const auto& d : info.deps) atlas_.get(d);
    implementations().at(info.id)(ctx, env);
    for (const auto& x : expectations())
      if (x.check == r.id && std::none_of(r.rows.begin(), r.rows.end(), [&](const CheckRow& row) { return row.key == x.key; }))
        r.rows.push_back({x.key, "not evaluated", x.value, basis_name(x.basis), false});
    r.passed = !r.rows.empty() && std::all_of(r.rows.begin(), r.rows.end(), [](const CheckRow& row) { return row.ok; });
  } catch (const std::exception& err) {
    r.passed = false;
    r.witnesses.push_back(std::string("error: ") + err.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CheckReport> Verifier::run_all(Runtime max) {
  std::vector<CheckReport> out;
  for (const auto& c : check_registry())
    if (c.runtime <= max) out.push_back(run(c.id));
  return out;
}

}  // namespace capset
