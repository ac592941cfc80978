#include <filesystem>
#include <fstream>
#include <set>

#include "capset/verify.hpp"
#include "doctest.h"

using namespace capset;
namespace fs = std::filesystem;

TEST_CASE("registry and expectation table are consistent") {
  std::set<std::string> ids;
  for (const auto& c : check_registry()) {
    CHECK(ids.insert(c.id).second);
    for (const auto& d : c.deps) {
      bool known = false;
      for (const auto& e : atlas_catalog()) known = known || e.name == d;
      CHECK_MESSAGE(known, d);
    }
  }
  std::set<std::string> with_values;
  std::set<std::pair<std::string, std::string>> keys;
  for (const auto& e : expectations()) {
    CHECK_MESSAGE(ids.count(e.check), e.check);
    CHECK_MESSAGE(keys.insert({e.check, e.key}).second, e.key);
    CHECK_FALSE(e.value.empty());
    with_values.insert(e.check);
  }
  CHECK(with_values == ids);
  for (const char* id : {"L2.2-census", "L2.3-k1", "L2.3-k2", "L2.3-k3", "L2.3-k4", "L2.5a", "L3.1c", "L3.2-design", "P3.6-cases",
                         "P3.7-dir", "P4.1a-opt1", "T1-delta686"})
    CHECK_MESSAGE(ids.count(id), id);
  CHECK_THROWS_AS(check_info("L9.9"), CapsetError);
}

TEST_CASE("runtime names") {
  CHECK(parse_runtime("fast") == Runtime::fast);
  CHECK(parse_runtime("medium") == Runtime::medium);
  CHECK(parse_runtime("long") == Runtime::slow);
  CHECK(runtime_name(Runtime::slow) == "long");
  CHECK_THROWS_AS(parse_runtime("quick"), CapsetError);
  CHECK(check_info("P3.6-cases").runtime == Runtime::medium);
}

TEST_CASE("reports are deterministic") {
  Atlas a(Atlas::default_root());
  a.allow_build = false;
  std::vector<CheckReport> first, second;
  for (const char* id : {"dirs-count", "L3.1a", "T1-delta686", "L2.3-k2"}) {
    Verifier v1(a), v2(a);
    first.push_back(v1.run(id));
    second.push_back(v2.run(id));
    CHECK_MESSAGE(first.back().passed, id);
  }
  CHECK(report_json(first) == report_json(second));
  CHECK(report_json(first).find("\"format\": \"capset-verify\"") != std::string::npos);
  CHECK(first.front().to_json().find("seconds") == std::string::npos);
}

TEST_CASE("missing dependency with building disabled fails the check") {
  fs::path root = fs::temp_directory_path() / "capset_test_empty_atlas";
  fs::remove_all(root);
  Atlas a(root);
  a.allow_build = false;
  Verifier v(a);
  CheckReport r = v.run("L3.1a");
  CHECK_FALSE(r.passed);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses.front().find("building is disabled") != std::string::npos);
  CHECK_THROWS_AS(v.run("no-such-check"), CapsetError);
}

TEST_CASE("corrupting one atlas point fails the manifest check") {
  fs::path src = Atlas::default_root();
  fs::path root = fs::temp_directory_path() / "capset_test_poisoned_atlas";
  fs::remove_all(root);
  fs::copy(src, root, fs::copy_options::recursive);
  {
    Atlas a(root);
    Verifier v(a);
    CHECK(v.run("atlas-manifest").passed);
  }
  // change the last coordinate of the final point line of the 112-cap
  fs::path f = root / "dim6-112cap.cap";
  std::ifstream is(f);
  std::string text((std::istreambuf_iterator<char>(is)), {});
  is.close();
  REQUIRE(text.size() > 2);
  std::size_t pos = text.size() - 2;
  text[pos] = text[pos] == '0' ? '1' : '0';
  std::ofstream(f, std::ios::trunc) << text;
  Atlas a(root);
  a.allow_build = false;
  Verifier v(a);
  CheckReport r = v.run("atlas-manifest");
  CHECK_FALSE(r.passed);
  bool named = false;
  for (const auto& w : r.witnesses) named = named || w.find("dim6-112cap") != std::string::npos;
  CHECK(named);
  CHECK_FALSE(v.run("L3.1a").passed);
  fs::remove_all(root);
}
