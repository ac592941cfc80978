#pragma once

#include <memory>
#include <string>
#include <vector>

#include "capset/atlas.hpp"

namespace capset {

enum class Runtime { fast = 0, medium = 1, slow = 2 };
Runtime parse_runtime(const std::string& s);  // "fast", "medium", "long"
std::string runtime_name(Runtime r);

/// Where an expected value comes from.
///   claimed  stated in the source being re-verified
///   derived  computed here by independent means and pinned
///   trivial  follows from definitions
enum class Basis { claimed, derived, trivial };
std::string basis_name(Basis b);

struct Expectation {
  std::string check;
  std::string key;
  std::string value;
  Basis basis;
  std::string note;
};
/// Every expected value used by a check.
const std::vector<Expectation>& expectations();

struct CheckInfo {
  std::string id;
  std::string title;
  std::vector<std::string> deps;  // atlas names
  Runtime runtime;
};
const std::vector<CheckInfo>& check_registry();
const CheckInfo& check_info(const std::string& id);  // throws on unknown id

struct CheckRow {
  std::string key;
  std::string observed;
  std::string expected;  // empty for informational rows
  std::string basis;
  bool ok = true;
};

struct CheckReport {
  std::string id;
  std::string title;
  bool passed = false;
  std::vector<CheckRow> rows;
  std::vector<std::string> witnesses;
  double seconds = 0;  // not part of the JSON report

  std::string to_json() const;
};

/// {"format":"capset-verify",...}; deterministic, no timings.
std::string report_json(const std::vector<CheckReport>& reports);

struct VerifyState;

class Verifier {
 public:
  explicit Verifier(Atlas& atlas, int threads = 1);
  ~Verifier();

  CheckReport run(const std::string& id);
  /// All checks with runtime at most `max`, in registry order.
  std::vector<CheckReport> run_all(Runtime max);

 private:
  Atlas& atlas_;
  int threads_;
  std::unique_ptr<VerifyState> state_;
};

}  // namespace capset
