// Acceptance run: one PASS/FAIL line per criterion.  Exact values come from the verify
// registry; every time limit below is in seconds and fixed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "agl_oracle.hpp"
#include "capset/verify.hpp"

using namespace capset;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> checks;
  double limit_seconds;
  std::function<Outcome(Atlas&)> extra;  // extra work timed with the checks
};

// ---- criterion 13 ----

bool triple_loop_is_cap(const PointSet& s) {
  auto v = s.to_vector();
  const Space& sp = s.space();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        Coords a = sp.coords(v[i]), b = sp.coords(v[j]), c = sp.coords(v[k]);
        bool line = true;
        for (int d = 0; d < s.dim(); ++d) line = line && (a[d] + b[d] + c[d]) % 3 == 0;
        if (line) return false;
      }
  return true;
}

PointSet random_near_cap(int dim, std::mt19937_64& rng) {
  const std::uint32_t N = pow3(dim);
  PointSet s(dim);
  std::vector<PointIndex> order(N);
  for (PointIndex p = 0; p < N; ++p) order[p] = p;
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t want = 2 + rng() % (max_cap_size(dim) - 1);
  for (PointIndex p : order) {
    if (s.size() == want) break;
    PointSet t = s;
    t.insert(p);
    if (triple_loop_is_cap(t)) s = t;
  }
  if (rng() % 2) s.insert(order[rng() % N]);  // often breaks the cap property
  return s;
}

Outcome properties(Atlas& atlas) {
  Outcome out;
  std::mt19937_64 rng(13);
  std::string d;

  // is_cap against the triple loop
  int sets = 0, caps = 0, bad = 0;
  for (int dim = 2; dim <= 4; ++dim)
    for (int i = 0; i < 1000; ++i, ++sets) {
      PointSet s = random_near_cap(dim, rng);
      const bool want = triple_loop_is_cap(s);
      caps += want;
      bad += is_cap(s) != want;
    }
  out.ok = out.ok && bad == 0;
  d += "is_cap " + std::to_string(sets - bad) + "/" + std::to_string(sets) + " (" + std::to_string(caps) + " caps)";

  // canonical invariance
  int maps = 0, moved = 0;
  for (const auto& e : atlas_catalog()) {
    const CapSet& c = atlas.get(e.name);
    const PointSet k = canonical_form(c).canonical;
    for (int i = 0; i < 100; ++i, ++maps) moved += canonical_form(apply_map(AffineMap::random(c.dim(), rng), c)).canonical != k;
  }
  out.ok = out.ok && moved == 0;
  d += "; canonical " + std::to_string(maps - moved) + "/" + std::to_string(maps);

  // moment identities
  int spectra = 0, failed = 0;
  auto moments = [&](const SpectrumReport& r, std::size_t s, int n) {
    ++spectra;
    failed += !moment_identities(r, s, n).ok;
  };
  for (const auto& e : atlas_catalog()) {
    const CapSet& c = atlas.get(e.name);
    moments(spectrum(c, 1), c.size(), c.dim());
  }
  Extract40 x = extract_40cap(atlas.get("dim6-112cap"), atlas.canonical_882A2());
  moments(spectrum(x.cap, 1), x.cap.size(), 5);
  DualDesign dd = dual_design(atlas.get("dim5-45cap"), atlas.canonical_882A2());
  moments(dd.spectrum, dd.vectors.size(), 5);
  for (int i = 0; i < 50; ++i) {
    PointSet s = random_near_cap(2 + i % 3, rng);
    moments(spectrum_of_points(s, 1), s.size(), s.dim());
  }
  out.ok = out.ok && failed == 0;
  d += "; moments " + std::to_string(spectra - failed) + "/" + std::to_string(spectra);

  // AGL(3,3) oracle
  int queries = 0, disagree = 0;
  std::vector<PointSet> pool;
  for (const char* n : {"dim3-pyramid", "dim3-tetracentre", "dim3-cube", "dim3-9cap"}) pool.push_back(atlas.get(n).points());
  while (pool.size() < 24) {
    PointSet s = random_near_cap(3, rng);
    if (s.size() >= 5 && is_cap(s)) pool.push_back(s);  // five cap points span AG(3,3)
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    CapSet a(pool[i]);
    ++queries;
    disagree += automorphism_group(a).order() != oracle::stabiliser_order(pool[i]);
    for (std::size_t j = i; j < pool.size(); ++j) {
      CapSet b(pool[j]);
      ++queries;
      disagree += are_isomorphic(a, b).has_value() != oracle::equivalent(pool[i], pool[j]);
      CapSet moved_b = apply_map(AffineMap::random(3, rng), b);
      ++queries;
      disagree += are_isomorphic(a, moved_b).has_value() != oracle::equivalent(pool[i], moved_b.points());
    }
  }
  out.ok = out.ok && disagree == 0;
  d += "; AGL(3,3) " + std::to_string(queries - disagree) + "/" + std::to_string(queries);
  out.detail = d;
  return out;
}

Outcome time_builder(const std::string& what, const std::function<CapSet()>& f, const CapSet& cached) {
  auto t0 = Clock::now();
  CapSet c = f();
  const double s = since(t0);
  Outcome o;
  o.ok = canonical_form(c).canonical == canonical_form(cached).canonical;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s rebuilt in %.2f s%s", what.c_str(), s, o.ok ? "" : " (differs from the atlas)");
  o.detail = buf;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  Atlas atlas(argc > 1 ? std::filesystem::path(argv[1]) : Atlas::default_root());
  Verifier v(atlas);
  const std::vector<Criterion> criteria = {
      {1, "direction counts 121 / 364 / 11011", {"dirs-count"}, 1.0, nullptr},
      {2, "882A2 properties (a)-(d) and the point-count matrix", {"A882-props"}, 60.0, nullptr},
      {3, "replacement counts 18 / 153 / 816, nontrivial for k=4", {"L2.3-k1", "L2.3-k2", "L2.3-k3", "L2.3-k4"}, 600.0, nullptr},
      {4, "45-cap census 10/45/30/36, 45 special directions, complete", {"L2.2-census"}, 1800.0,
       [](Atlas& a) { return time_builder("45-cap", [&] { return build_45cap(a.get("dim4-882A2")); }, a.get("dim5-45cap")); }},
      {5, "parallelism in every twin 882A2 direction", {"L2.4-parallel"}, 300.0, nullptr},
      {6, "midpoint histograms and side claims, both cases", {"L2.5a", "L2.5b"}, 300.0, nullptr},
      {7, "dual design: 90 vectors, 1/10/90/20, axis duality", {"L3.2-design"}, 300.0, nullptr},
      {8, "112-cap recipe, censuses 56/308 and 1540/3696/5775, intersections", {"L3.1-recipe", "L3.1a", "L3.1b", "L3.1c", "L3.1d"}, 1800.0,
       [](Atlas& a) { return time_builder("112-cap", [&] { return build_112cap(a.get("dim5-45cap")); }, a.get("dim6-112cap")); }},
      {9, "placement sweep cases, 112-caps and isomorphic complete 96-caps", {"P3.6-cases", "P96"}, 7200.0, nullptr},
      {10, "40-cap: 10 {18,18,4} directions, one orbit, 882A2 fibres", {"P3.7-dir"}, 600.0, nullptr},
      {11, "Delta686 census equals the table", {"T1-delta686"}, 60.0,
       [](Atlas& a) { return time_builder("Delta686", [&] { return build_delta686(a.get("dim4-20cap")); }, a.get("dim5-delta686")); }},
      {12, "486 shifted 112-cap placements satisfy (i)-(iii)", {"P4.1a-opt1"}, 600.0, nullptr},
      {13, "property suites", {}, 1800.0, properties},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail, failing;
    try {
      for (const auto& id : c.checks) {
        CheckReport r = v.run(id);
        if (!r.passed) {
          ok = false;
          failing += (failing.empty() ? "" : ",") + id;
        }
      }
      if (c.extra) {
        Outcome o = c.extra(atlas);
        ok = ok && o.ok;
        detail = o.detail;
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("error: ") + e.what();
    }
    if (c.number == 9) {
      CheckReport counts = v.run("P3.6-counts");
      detail = std::string("stretch counts 8/8/32/176 ") + (counts.passed ? "matched" : "not matched");
    }
    const double secs = since(t0);
    const bool in_time = secs <= c.limit_seconds;
    ok = ok && in_time;
    failed += !ok;
    std::printf("%s criterion %2d: %s [%.2f s, limit %.0f s]", ok ? "PASS" : "FAIL", c.number, c.title.c_str(), secs, c.limit_seconds);
    if (!detail.empty()) std::printf(" %s", detail.c_str());
    if (!failing.empty()) std::printf(" failing checks: %s", failing.c_str());
    if (!in_time) std::printf(" over the time limit");
    std::printf("\n");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
