#pragma once

#include <iosfwd>
#include <string>

#include "orbemb/suite.hpp"

// Subcommand bodies behind the command-line tool.  Each returns the process
// exit status: 0 ok, 1 property or verification failure, 2 input error,
// 3 theorem violation.

namespace orbemb {

enum class Format { Json, Text };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitTheorem = 3;

/// "3", "1-3" or "1,2,4".  Throws SchemaError.
std::vector<std::size_t> parse_n_list(const std::string& spec);

/// Overrides fields of `base` from a config document; throws SchemaError.
SuiteConfig suite_config_from_json(const Json& j, SuiteConfig base);

Json read_json_file(const std::string& path);

int cmd_verify(const SuiteConfig& cfg, Format format, bool timing, std::ostream& out, std::ostream& err);

/// Runs the suite for master seeds seed, seed + 1, ...; stops at the first
/// failing round and prints its report.
int cmd_fuzz(const SuiteConfig& cfg, std::size_t rounds, Format format, std::ostream& out, std::ostream& err);

/// Re-runs one failure dump produced by verify or fuzz.
int cmd_replay(const Json& dump, Format format, std::ostream& out, std::ostream& err);

int cmd_witness(const Json& instance, const Tolerances& tol, Format format, std::ostream& out, std::ostream& err);

int cmd_conjugate(const Json& instance, const Tolerances& tol, std::uint64_t seed, Format format, std::ostream& out,
                  std::ostream& err);

/// Table of Gamma_k (and gamma_k when X lies in L for alpha = -1).  Without
/// an instance a random X in L is drawn from `seed`.
int cmd_invariants(const Json* instance, std::size_t n, unsigned k_max, std::uint64_t seed, Mode mode,
                   Format format, std::ostream& out, std::ostream& err);

int cmd_case_gl2(Format format, std::ostream& out, std::ostream& err);

}  // namespace orbemb
