#include <CLI11.hpp>
#include <iostream>

#include "orbemb/commands.hpp"

using namespace orbemb;

namespace {

struct Common {
  std::string n = "1-3";
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::string mode = "exact";
  double tol = 0.0;  // 0: keep defaults
  std::string format = "text";
  std::string config;
  std::vector<std::string> properties;
};

void add_format(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
}

void add_tol(CLI::App* app, Common& c) {
  app->add_option("--tol", c.tol, "Override the residual and witness tolerances")->check(CLI::PositiveNumber);
}

void add_suite_options(CLI::App* app, Common& c) {
  app->add_option("--n", c.n, "n values, e.g. 2, 1-3 or 1,3");
  app->add_option("--trials", c.trials, "Trials per property and n");
  app->add_option("--seed", c.seed, "Master seed");
  app->add_option("--mode", c.mode, "Arithmetic mode")->check(CLI::IsMember({"exact", "approx"}));
  app->add_option("--config", c.config, "JSON config file; command-line flags given explicitly win");
  app->add_option("--property", c.properties, "Run only these properties (repeatable)");
  add_tol(app, c);
  add_format(app, c);
}

Format format_of(const Common& c) { return c.format == "json" ? Format::Json : Format::Text; }

Tolerances tolerances_of(const Common& c) {
  Tolerances tol;
  if (c.tol > 0.0) tol.residual = tol.witness = c.tol;
  return tol;
}

SuiteConfig suite_config(const Common& c, const CLI::App* app) {
  SuiteConfig cfg;
  if (!c.config.empty()) cfg = suite_config_from_json(read_json_file(c.config), cfg);
  if (c.config.empty() || app->count("--n")) cfg.n_values = parse_n_list(c.n);
  if (c.config.empty() || app->count("--trials")) cfg.trials = c.trials;
  if (c.config.empty() || app->count("--seed")) cfg.seed = c.seed;
  if (c.config.empty() || app->count("--mode")) cfg.mode = c.mode == "approx" ? Mode::Approx : Mode::Exact;
  if (c.tol > 0.0) cfg.tol.residual = cfg.tol.witness = c.tol;
  if (!c.properties.empty()) cfg.properties = c.properties;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit embeddings for enhanced Lie algebras: witnesses, invariants and property checks"};
  app.require_subcommand(1);
  Common c;

  auto* verify = app.add_subcommand("verify", "Run the property suite");
  add_suite_options(verify, c);
  bool timing = false;
  std::string replay;
  verify->add_flag("--timing", timing, "Report wall time (makes output run-dependent)");
  verify->add_option("--replay", replay, "Re-run one failure dump (or the first failure in a report)");

  auto* fuzz = app.add_subcommand("fuzz", "Run the suite over consecutive master seeds until a failure");
  add_suite_options(fuzz, c);
  std::size_t rounds = 10;
  fuzz->add_option("--rounds", rounds, "Number of master seeds");

  std::string instance_path;
  auto* witness = app.add_subcommand("witness", "Extract a symplectic witness from an instance file");
  witness->add_option("instance", instance_path, "Instance JSON")->required();
  add_tol(witness, c);
  add_format(witness, c);

  auto* conjugate = app.add_subcommand("conjugate", "Search for a conjugator between two enhanced elements");
  conjugate->add_option("instance", instance_path, "Instance JSON")->required();
  conjugate->add_option("--seed", c.seed, "Sampling seed");
  add_tol(conjugate, c);
  add_format(conjugate, c);

  auto* invariants = app.add_subcommand("invariants", "Tabulate the invariants Gamma_k and gamma_k");
  invariants->add_option("instance", instance_path, "Instance JSON with fields schema, mode, n, X (optional)");
  unsigned k_max = 5;
  std::size_t inv_n = 1;
  invariants->add_option("--k-max", k_max, "Largest k");
  invariants->add_option("--n", inv_n, "n for a random instance")->check(CLI::Range(1, 16));
  invariants->add_option("--seed", c.seed, "Seed for a random instance");
  invariants->add_option("--mode", c.mode, "Mode for a random instance")->check(CLI::IsMember({"exact", "approx"}));
  add_format(invariants, c);

  auto* case_gl2 = app.add_subcommand("case-gl2", "Run the GL(2) case study");
  add_format(case_gl2, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const Format format = format_of(c);
  try {
    if (verify->parsed()) {
      if (!replay.empty()) return cmd_replay(read_json_file(replay), format, std::cout, std::cerr);
      return cmd_verify(suite_config(c, verify), format, timing, std::cout, std::cerr);
    }
    if (fuzz->parsed()) return cmd_fuzz(suite_config(c, fuzz), rounds, format, std::cout, std::cerr);
    if (witness->parsed()) return cmd_witness(read_json_file(instance_path), tolerances_of(c), format, std::cout, std::cerr);
    if (conjugate->parsed()) {
      return cmd_conjugate(read_json_file(instance_path), tolerances_of(c), c.seed, format, std::cout, std::cerr);
    }
    if (invariants->parsed()) {
      const Mode mode = c.mode == "approx" ? Mode::Approx : Mode::Exact;
      if (instance_path.empty()) return cmd_invariants(nullptr, inv_n, k_max, c.seed, mode, format, std::cout, std::cerr);
      const Json inst = read_json_file(instance_path);
      return cmd_invariants(&inst, inv_n, k_max, c.seed, mode, format, std::cout, std::cerr);
    }
    if (case_gl2->parsed()) return cmd_case_gl2(format, std::cout, std::cerr);
  } catch (const SchemaError& e) {
    std::cerr << "error (schema): " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
