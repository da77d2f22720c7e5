#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "factorsmith/engine.hpp"

namespace factorsmith::suites {

inline constexpr const char* kSchema = "factorsmith.report/1";

/// Suite parameters as text. Every lookup records the effective value, so a
/// report lists the defaults it actually ran with.
class Params {
 public:
  Params() = default;
  explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::string text(const std::string& key, const std::string& fallback) const;
  std::int64_t integer(const std::string& key, std::int64_t fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<std::int64_t> integers(const std::string& key, const std::string& fallback) const;
  const std::map<std::string, std::string>& used() const { return used_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> used_;
};

/// Reads key=value lines; '#' starts a comment. Throws std::runtime_error
/// on unreadable files or malformed lines.
std::map<std::string, std::string> read_config(const std::string& path);

struct Verdict {
  std::string claim;
  std::string expected;
  std::string computed;
  std::string tolerance = "exact";
  bool pass = false;
  std::string witness;
};

struct RunReport {
  std::string suite;
  std::map<std::string, std::string> parameters;
  std::vector<Verdict> verdicts;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  double seconds = 0;

  bool pass() const;
};

/// Suite ids accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// Runs one verification suite. Every element-level sweep reports to
/// `observer` (when set) in addition to the suite's own checks. Throws
/// std::invalid_argument on unknown suites or bad parameters.
RunReport run_suite(const std::string& suite, const Params& params, const SweepObserver& observer = {});

nlohmann::ordered_json sweep_json(const InvariantReport& report);
nlohmann::ordered_json to_json(const RunReport& report, bool with_timing = true);
std::string to_csv(const RunReport& report);
std::string to_table(const RunReport& report);

}  // namespace factorsmith::suites
