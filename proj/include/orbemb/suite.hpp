#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbemb/serialize.hpp"

namespace orbemb {

struct Tolerances {
  double residual = kDefaultResidualTol;  ///< identities, square roots, linear algebra
  double witness = 1e-8;                  ///< witness, sigma-fixedness and commutant residuals
  double cluster = kDefaultClusterRadius;
};

struct SuiteConfig {
  std::vector<std::size_t> n_values{1, 2, 3};
  std::size_t trials = 20;  ///< per property and per n
  std::uint64_t seed = 1;
  Mode mode = Mode::Exact;
  Tolerances tol;
  std::vector<std::string> properties;  ///< empty runs all
  std::size_t max_dumps = 3;            ///< failing instances kept per property
};

struct TrialResult {
  bool pass = true;
  bool theorem_violation = false;
  bool mode_switched = false;
  std::string message;
  double residual = 0.0;  ///< largest residual seen, relative to its scale
  std::optional<int> tag;
  Json instance;
};

struct PropertyReport {
  std::string name;
  std::string module;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t theorem_violations = 0;
  std::size_t mode_switches = 0;
  double worst_residual = 0.0;
  std::vector<int> tags;  ///< distinct tag values, sorted
  Json failures = Json::array();
};

struct SuiteReport {
  std::vector<PropertyReport> properties;
  std::size_t failed = 0;
  std::size_t theorem_violations = 0;

  bool ok() const { return failed == 0; }
};

struct PropertyInfo {
  std::string name;
  std::string module;
  bool per_n;  ///< false: trials run once, independent of n
};

std::vector<PropertyInfo> list_properties();

/// Seed of one trial: derive_seed(master, fnv1a(property name), n << 32 | trial).
std::uint64_t trial_seed(std::uint64_t master, const std::string& property, std::size_t n, std::size_t trial);

/// Runs the selected properties.  Throws SchemaError for unknown names.
SuiteReport run_suite(const SuiteConfig& cfg);

/// Runs a single trial with an explicit seed; used for replaying dumps.
TrialResult run_trial(const std::string& property, std::size_t n, std::uint64_t seed, Mode mode,
                      const Tolerances& tol);

Json to_json(const SuiteConfig& cfg);
Json to_json(const SuiteReport& report, const SuiteConfig& cfg);

}  // namespace orbemb
