#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "CLI11.hpp"
#include "capset/atlas.hpp"
#include "capset/search.hpp"
#include "capset/verify.hpp"
#include "json.hpp"

using namespace capset;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string key_string(const std::vector<int>& k) {
  std::string s = "{";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + "}";
}

void print_spectrum(const SpectrumReport& r) {
  std::cout << "codim " << r.codim << " census (" << r.total() << " directions)\n";
  for (const auto& [k, m] : r.census) std::cout << "  " << key_string(k) << ": " << m << "\n";
}

// ---- job files ----

json load_job(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw UsageError("cannot open job file " + path);
  json j = json::parse(is, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw UsageError(path + ": not a JSON object");
  return j;
}

// Rejects unknown keys and wrong types; `spec` maps key -> (type, required).
void validate(const json& j, const std::map<std::string, std::pair<json::value_t, bool>>& spec, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!spec.count(it.key())) throw UsageError(where + ": unknown key '" + it.key() + "'");
  for (const auto& [k, s] : spec) {
    if (!j.contains(k)) {
      if (s.second) throw UsageError(where + ": missing key '" + k + "'");
      continue;
    }
    json::value_t t = j[k].type();
    bool ok = t == s.first;
    if (s.first == json::value_t::number_unsigned) ok = t == json::value_t::number_unsigned || (t == json::value_t::number_integer && j[k].get<long long>() >= 0);
    if (!ok) throw UsageError(where + ": key '" + k + "' has the wrong type");
  }
}

using V = json::value_t;

std::filesystem::path relative_to(const std::string& job, const std::string& p) {
  std::filesystem::path q(p);
  if (q.is_absolute() || std::filesystem::exists(q)) return q;
  return std::filesystem::path(job).parent_path() / q;
}

int run_search(const std::string& path, int /*threads*/) {
  json j = load_job(path);
  validate(j,
           {{"kind", {V::string, true}},
            {"dim", {V::number_unsigned, false}},
            {"seed", {V::string, false}},
            {"target", {V::number_unsigned, false}},
            {"fibration", {V::array, false}},
            {"fiber_targets", {V::array, false}},
            {"isomorph_free", {V::boolean, false}},
            {"max_results", {V::number_unsigned, false}},
            {"node_limit", {V::number_unsigned, false}},
            {"rule", {V::string, false}},
            {"cap", {V::string, false}},
            {"k", {V::number_unsigned, false}},
            {"forbid", {V::string, false}},
            {"output", {V::string, false}}},
           path);
  const std::string kind = j["kind"];
  json out;
  out["kind"] = kind;
  if (kind == "extend") {
    CapSet seed;
    if (j.contains("seed")) seed = read_cap_file(relative_to(path, j["seed"]));
    else if (j.contains("dim")) seed = CapSet::empty(j["dim"].get<int>());
    else throw UsageError(path + ": extend needs 'seed' or 'dim'");
    if (!j.contains("target")) throw UsageError(path + ": extend needs 'target'");
    ExtendOptions o;
    o.target = j["target"];
    if (j.contains("fibration")) {
      auto rows = j["fibration"].get<std::vector<std::vector<int>>>();
      if (rows.empty()) throw UsageError(path + ": empty fibration");
      o.fibration = Fibration(F3Matrix(static_cast<int>(rows.size()), seed.dim(), rows));
      o.fiber_targets = j.value("fiber_targets", std::vector<int>{});
    } else if (j.contains("fiber_targets")) {
      throw UsageError(path + ": fiber_targets needs fibration");
    }
    o.isomorph_free = j.value("isomorph_free", false);
    o.max_results = j.value("max_results", std::size_t{0});
    o.node_limit = j.value("node_limit", std::uint64_t{0});
    const std::string rule = j.value("rule", "smallest");
    if (rule == "smallest") o.rule = BranchRule::smallest_index;
    else if (rule == "tightest") o.rule = BranchRule::tightest_fiber;
    else throw UsageError(path + ": rule must be 'smallest' or 'tightest'");
    ExtendReport r = extend_dfs(seed, o);
    out["nodes"] = r.nodes;
    out["raw_results"] = r.raw_results;
    out["truncated"] = r.truncated;
    out["caps"] = json::array();
    for (const auto& c : r.caps) out["caps"].push_back(c.points().to_hex());
    if (j.contains("output")) {
      std::filesystem::path dir = relative_to(path, j["output"]);
      std::filesystem::create_directories(dir);
      for (std::size_t i = 0; i < r.caps.size(); ++i) write_cap_file(dir / ("cap" + std::to_string(i) + ".cap"), r.caps[i]);
    }
  } else if (kind == "replace") {
    if (!j.contains("cap") || !j.contains("k")) throw UsageError(path + ": replace needs 'cap' and 'k'");
    CapSet cap = read_cap_file(relative_to(path, j["cap"]));
    const std::string forbid = j.value("forbid", "none");
    std::function<bool(const PointSet&)> f;
    if (forbid == "none") f = [](const PointSet&) { return false; };
    else if (forbid == "full-hyperplane") f = contains_full_hyperplane_section;
    else throw UsageError(path + ": forbid must be 'none' or 'full-hyperplane'");
    auto reps = replace_points(cap, j["k"].get<int>(), f);
    std::size_t trivial = 0;
    out["nontrivial"] = json::array();
    for (const auto& r : reps) {
      trivial += r.trivial();
      if (!r.trivial()) out["nontrivial"].push_back({{"removed", r.removed.to_hex()}, {"added", r.added.to_hex()}});
    }
    out["solutions"] = reps.size();
    out["trivial"] = trivial;
  } else {
    throw UsageError(path + ": kind must be 'extend' or 'replace'");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_placements(const std::string& path, int threads, const std::string& checkpoint) {
  json j = load_job(path);
  validate(j,
           {{"mode", {V::string, true}},
            {"base", {V::string, true}},
            {"convention", {V::string, false}},
            {"report_n0", {V::number_unsigned, false}},
            {"report_n2", {V::number_unsigned, false}},
            {"max_representatives", {V::number_unsigned, false}}},
           path);
  CapSet base = read_cap_file(relative_to(path, j["base"]));
  const std::string mode = j["mode"];
  const Convention conv = parse_convention(j.value("convention", "all"));
  const int rn0 = j.value("report_n0", 1000), rn2 = j.value("report_n2", 1000);
  json out;
  out["mode"] = mode;
  out["convention"] = convention_name(conv);
  out["reported"] = json::array();
  if (mode == "linear") {
    SweepOptions o;
    o.threads = threads;
    o.max_representatives = j.value("max_representatives", std::uint64_t{0});
    if (!checkpoint.empty()) {
      std::filesystem::create_directories(checkpoint);
      o.checkpoint = (std::filesystem::path(checkpoint) / "placements.ckpt.json").string();
    }
    SweepSummary s = sweep_linear_placements(
        base, o, [&](const PlacementStats& st) { return st.n0 >= rn0 || st.n2 >= rn2; },
        [&](const LinearPlacement& p, const PlacementStats& st) {
          out["reported"].push_back({{"map", p.map().to_string()}, {"n0", st.n0}, {"n2", st.n2}, {"weight", p.weight}});
        });
    out["summary"] = json::parse(s.to_json());
    json counts = json::array();
    for (const auto& [k, m] : s.by_n0_n2) counts.push_back({{"n0", k.first}, {"n2", k.second}, {"count", s.count(k.first, k.second, conv)}});
    out["counts"] = counts;
  } else if (mode == "shift") {
    std::map<std::pair<int, int>, std::uint64_t> counts;
    for (const auto& p : enumerate_shift_placements(base)) {
      PlacementStats st = placement_statistics(base, p.image);
      ++counts[{st.n0, st.n2}];
      if (st.n0 >= rn0 || st.n2 >= rn2)
        out["reported"].push_back({{"reflection", p.reflection}, {"shift", Space::get(base.dim()).to_string(p.shift)}, {"n0", st.n0}, {"n2", st.n2}, {"translate", is_translate(base.points(), p.image.points())}});
    }
    json c = json::array();
    for (const auto& [k, m] : counts) c.push_back({{"n0", k.first}, {"n2", k.second}, {"count", m}});
    out["counts"] = c;
  } else {
    throw UsageError(path + ": mode must be 'linear' or 'shift'");
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_analyze(const std::string& file, int codim, bool features, Atlas& atlas) {
  CapSet cap = read_cap_file(file);
  std::cout << "dim " << cap.dim() << "\nsize " << cap.size() << "\nhull " << affine_hull_dimension(cap.points()) << "\ncomplete "
            << (is_complete(cap) ? "yes" : "no") << "\n";
  if (codim < 1 || codim >= cap.dim()) throw UsageError("--codim must be between 1 and dim-1");
  print_spectrum(spectrum(cap, codim));
  if (!features) return 0;
  std::cout << "automorphisms " << automorphism_group(cap).order() << "\n";
  if (cap.dim() == 4 && cap.size() == 18) {
    Features882 f = analyze_882(cap);
    std::cout << "882A2 features " << (f.ok() ? "present" : "absent") << "\n";
    for (const auto& p : f.problems) std::cout << "  " << p << "\n";
    if (f.pair) {
      auto g = printed_grid(f.pair_counts);
      std::cout << "pair point count\n";
      for (auto& r : g) std::cout << "  " << r[0] << " " << r[1] << " " << r[2] << "\n";
    }
  }
  if (cap.dim() == 5 && cap.size() == 45) {
    Features45 f = analyze_45(cap, atlas.canonical_882A2());
    std::cout << "special 3-flat directions " << f.special.size() << "\naxis directions " << f.axis_candidates.size() << "\n";
    const char* names[] = {"none", "(i) other twin", "(ii) twin 882A2", "(iii) 15s along axis", "(iv) other 15s"};
    for (int i = 0; i < 5; ++i) std::cout << "  " << names[i] << ": " << f.census[i] << "\n";
  }
  return 0;
}

int run_canon(const std::string& a, const std::string& b) {
  CapSet x = read_cap_file(a);
  if (b.empty()) {
    std::cout << canonical_form(x).to_json() << "\n";
    return 0;
  }
  CapSet y = read_cap_file(b);
  if (auto m = are_isomorphic(x, y)) {
    std::cout << "isomorphic\nwitness " << m->to_string() << "\n";
  } else {
    std::cout << "not isomorphic\n";
  }
  return 0;
}

int run_verify(Atlas& atlas, int threads, const std::vector<std::string>& ids, bool all, const std::string& max_runtime,
               const std::string& json_path, bool list) {
  if (list) {
    for (const auto& c : check_registry()) std::cout << c.id << "  [" << runtime_name(c.runtime) << "]  " << c.title << "\n";
    return 0;
  }
  if (ids.empty() && !all) throw UsageError("verify: give --id or --all");
  Verifier v(atlas, threads);
  std::vector<CheckReport> reports;
  if (all) reports = v.run_all(parse_runtime(max_runtime));
  for (const auto& id : ids) {
    check_info(id);
    reports.push_back(v.run(id));
  }
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed;
    std::printf("%s %-14s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id.c_str(), r.seconds, r.title.c_str());
    for (const auto& row : r.rows)
      if (!row.ok || reports.size() == 1)
        std::printf("    %s %s: %s%s\n", row.ok ? " " : "!", row.key.c_str(), row.observed.c_str(),
                    row.expected.empty() ? "" : (" (expected " + row.expected + ", " + row.basis + ")").c_str());
    for (const auto& w : r.witnesses) std::printf("    witness: %s\n", w.c_str());
  }
  if (!json_path.empty()) {
    std::ofstream os(json_path);
    if (!os) throw UsageError("cannot write " + json_path);
    os << report_json(reports);
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"capset: caps in AG(n,3)"};
  app.require_subcommand(1);
  int threads = 1;
  std::string atlas_dir, checkpoint;
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--atlas", atlas_dir, "atlas directory (default $CAPSET_ATLAS or ./atlas)");
  app.add_option("--checkpoint", checkpoint, "checkpoint directory for long sweeps");

  auto* atlas_cmd = app.add_subcommand("atlas", "build or audit the cap atlas");
  atlas_cmd->require_subcommand(1);
  auto* build_cmd = atlas_cmd->add_subcommand("build", "build missing atlas entries");
  std::string only;
  build_cmd->add_option("--only", only, "build just this entry");
  auto* audit_cmd = atlas_cmd->add_subcommand("audit", "re-check hashes and canonical forms");
  atlas_cmd->add_subcommand("list", "list atlas entries");

  auto* analyze_cmd = app.add_subcommand("analyze", "spectrum and features of a cap file");
  std::string cap_file;
  int codim = 1;
  bool features = false;
  analyze_cmd->add_option("cap", cap_file)->required();
  analyze_cmd->add_option("--codim", codim, "flat codimension");
  analyze_cmd->add_flag("--features", features, "automorphisms and named features");

  auto* canon_cmd = app.add_subcommand("canon", "canonical form, or isomorphism of two caps");
  std::string cap_a, cap_b;
  canon_cmd->add_option("capA", cap_a)->required();
  canon_cmd->add_option("capB", cap_b);

  auto* search_cmd = app.add_subcommand("search", "run a search job");
  std::string job;
  search_cmd->add_option("job", job)->required();
  auto* place_cmd = app.add_subcommand("placements", "run a placement job");
  place_cmd->add_option("job", job)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run registered checks");
  std::vector<std::string> ids;
  bool all = false, list = false;
  std::string max_runtime = "fast", json_path;
  verify_cmd->add_option("--id", ids, "check id (repeatable)");
  verify_cmd->add_flag("--all", all, "all checks up to --max-runtime");
  verify_cmd->add_option("--max-runtime", max_runtime, "fast, medium or long")->check(CLI::IsMember({"fast", "medium", "long"}));
  verify_cmd->add_option("--json", json_path, "write the JSON report here");
  verify_cmd->add_flag("--list", list, "list check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Atlas atlas(atlas_dir.empty() ? Atlas::default_root() : std::filesystem::path(atlas_dir));
    if (*atlas_cmd) {
      if (atlas_cmd->got_subcommand("list")) {
        for (const auto& e : atlas_catalog()) std::cout << e.name << "  dim " << e.dim << "  size " << e.size << "\n";
        return 0;
      }
      if (*audit_cmd) {
        auto problems = atlas.audit();
        for (const auto& p : problems) std::cout << p << "\n";
        std::cout << (problems.empty() ? "atlas ok\n" : "atlas has problems\n");
        return problems.empty() ? 0 : 1;
      }
      if (!only.empty()) {
        bool known = false;
        for (const auto& e : atlas_catalog()) known = known || e.name == only;
        if (!known) throw UsageError("unknown atlas entry '" + only + "'");
      }
      atlas.build(only);
      for (const auto& e : atlas_catalog())
        if (only.empty() || e.name == only) std::cout << atlas.path(e.name).string() << "\n";
      return 0;
    }
    if (*analyze_cmd) return run_analyze(cap_file, codim, features, atlas);
    if (*canon_cmd) return run_canon(cap_a, cap_b);
    if (*search_cmd) return run_search(job, threads);
    if (*place_cmd) return run_placements(job, threads, checkpoint);
    if (*verify_cmd) return run_verify(atlas, threads, ids, all, max_runtime, json_path, list);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapsetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
