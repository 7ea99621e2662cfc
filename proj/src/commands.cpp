#include "orbemb/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "orbemb/gl2_case.hpp"
#include "orbemb/invariants.hpp"
#include "orbemb/random.hpp"

namespace orbemb {

namespace {

using Q = GaussRat;

std::string scalar_text(const GaussRat& x) { return x.str(); }

std::string scalar_text(const Complex& x) {
  std::ostringstream os;
  os << std::setprecision(10) << x.real();
  if (x.imag() != 0.0) os << (x.imag() < 0 ? "-" : "+") << std::abs(x.imag()) << " i";
  return os.str();
}

template <Field T>
void print_matrix(std::ostream& out, const std::string& indent, const Matrix<T>& m) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (const auto& x : m.entries()) {
    cells.push_back(scalar_text(x));
    width = std::max(width, cells.back().size());
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << indent << "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "  " : " ") << std::setw(static_cast<int>(width)) << cells[i * m.cols() + j];
    out << " ]\n";
  }
}

int report_error(std::ostream& out, std::ostream& err, Format format, const char* kind, const std::string& what,
                 int code) {
  err << "error (" << kind << "): " << what << "\n";
  if (format == Format::Json) {
    out << Json{{"schema", kSchemaVersion}, {"error", {{"kind", kind}, {"message", what}}}}.dump(2) << "\n";
  }
  return code;
}

/// Maps library exceptions to exit statuses.
template <typename F>
int guarded(std::ostream& out, std::ostream& err, Format format, F&& body) {
  try {
    return body();
  } catch (const SchemaError& e) {
    return report_error(out, err, format, "schema", e.what(), kExitInput);
  } catch (const DimensionMismatch& e) {
    return report_error(out, err, format, "dimension", e.what(), kExitInput);
  } catch (const PreconditionViolation& e) {
    return report_error(out, err, format, "precondition", e.what(), kExitInput);
  } catch (const SingularMatrix& e) {
    return report_error(out, err, format, "singular", e.what(), kExitInput);
  } catch (const TheoremViolation& e) {
    return report_error(out, err, format, "theorem-violation", e.what(), kExitTheorem);
  } catch (const Error& e) {
    return report_error(out, err, format, "verification", e.what(), kExitFailure);
  } catch (const nlohmann::json::exception& e) {
    return report_error(out, err, format, "schema", e.what(), kExitInput);
  }
}

Json tolerances_json(const Tolerances& tol) {
  return Json{{"residual", tol.residual}, {"witness", tol.witness}, {"cluster", tol.cluster}};
}

void print_suite_text(std::ostream& out, const SuiteReport& report, const SuiteConfig& cfg) {
  out << std::left << std::setw(28) << "property" << std::setw(24) << "module" << std::right << std::setw(7) << "pass"
      << std::setw(6) << "fail" << std::setw(14) << "worst" << "\n";
  std::size_t passed = 0;
  for (const auto& p : report.properties) {
    passed += p.passed;
    out << std::left << std::setw(28) << p.name << std::setw(24) << p.module << std::right << std::setw(7) << p.passed
        << std::setw(6) << p.failed << std::setw(14) << std::setprecision(3) << p.worst_residual;
    if (!p.tags.empty()) {
      out << "  tags";
      for (int t : p.tags) out << " " << t;
    }
    if (p.mode_switches) out << "  (" << p.mode_switches << " approx fallbacks)";
    out << "\n";
    for (const auto& f : p.failures) {
      out << "    FAIL";
      if (f.contains("n")) out << " n=" << f["n"] << " trial=" << f["trial"] << " seed=" << f["seed"];
      out << ": " << f["message"].get<std::string>() << "\n";
    }
  }
  out << "summary: " << passed << " passed, " << report.failed << " failed, " << report.theorem_violations
      << " theorem violations (mode " << mode_name(cfg.mode) << ", seed " << cfg.seed << ", tol "
      << cfg.tol.residual << "/" << cfg.tol.witness << ")\n";
}

template <Field T>
Json witness_result(const WitnessReport<T>& rep) {
  Json j = to_json(rep);
  j["computed_in"] = mode_name(FieldTraits<T>::mode);
  return j;
}

template <Field T>
void print_witness_text(std::ostream& out, const WitnessReport<T>& rep) {
  out << "witness (" << constraint_name(rep.constraint) << " input, computed in " << mode_name(FieldTraits<T>::mode)
      << "):\n";
  print_matrix(out, "  ", rep.witness.matrix());
  out << "residuals:\n";
  for (const auto& [name, value] : rep.residuals) out << "  " << std::left << std::setw(14) << name << value << "\n";
}

template <Field T>
Json conjugate_body(const Json& j, std::size_t n, GroupConstraint constraint, const Tolerances& tol,
                    std::uint64_t seed, std::ostream* text) {
  SymplecticContext<T> ctx(n);
  const auto x = enhanced_from_json<T>(j.at("X"), ctx.dim());
  const auto y = enhanced_from_json<T>(j.at("Y"), ctx.dim());
  ConjugatorOptions opts;
  opts.seed = seed;
  opts.tol = tol.residual;
  auto s = find_conjugator(ctx, x, y, constraint, opts);
  Json out{{"found", s.conjugator.has_value()},
           {"feasible", s.feasible},
           {"solution_dim", s.solution_dim},
           {"samples", s.samples_tried},
           {"coefficient_set_size", s.coefficient_set_size},
           {"probabilistic_no", s.probabilistic_no}};
  if (s.conjugator) {
    out["conjugator"] = to_json(s.conjugator->matrix());
    out["action_residual"] = s.action_residual;
  }
  if (text) {
    if (s.conjugator) {
      *text << "conjugator found (solution space dimension " << s.solution_dim << "):\n";
      print_matrix(*text, "  ", s.conjugator->matrix());
    } else {
      *text << "no conjugator" << (s.probabilistic_no ? " (probabilistic: " + std::to_string(s.samples_tried) +
                                                            " singular samples)" : "")
            << "\n";
    }
  }
  return out;
}

template <Field T>
Json invariants_body(const EnhancedElement<T>& x, std::size_t n, unsigned k_max, std::ostream* text) {
  SymplecticContext<T> ctx(n);
  require_shape(ctx, x, "invariants");
  const bool locus = in_L(ctx, x, AlphaSign::minus());
  bool sp = false;
  if (locus) {
    try {
      require_sp(ctx, x.A, "invariants");
      sp = true;
    } catch (const PreconditionViolation&) {
    }
  }
  Json rows = Json::array();
  std::optional<int> sign;
  if (text) *text << std::left << std::setw(4) << "k" << std::setw(28) << "Gamma_k" << (sp ? "gamma_k" : "") << "\n";
  for (unsigned k = 0; k <= k_max; ++k) {
    const T big = gamma_big(ctx, x, k);
    Json row{{"k", k}, {"Gamma", to_json(big)}};
    std::string small_text;
    if (sp) {
      const T small = gamma_small(ctx, x.u, x.A, k);
      row["gamma"] = to_json(small);
      small_text = scalar_text(small);
      auto check = restriction_identity_check(ctx, x.u, x.A, k);
      if (check.sign) sign = check.sign;
    }
    rows.push_back(std::move(row));
    if (text) *text << std::left << std::setw(4) << k << std::setw(28) << scalar_text(big) << small_text << "\n";
  }
  Json out{{"in_L", locus}, {"values", std::move(rows)}, {"X", to_json(x)}};
  out["restriction_sign"] = sign ? Json(*sign) : Json(nullptr);
  if (text && sign) *text << "Gamma_k restricted to L equals " << *sign << " * gamma_k\n";
  return out;
}

}  // namespace

std::vector<std::size_t> parse_n_list(const std::string& spec) {
  std::vector<std::size_t> out;
  auto to_size = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw SchemaError("invalid n list \"" + spec + "\"");
    }
    const auto v = std::stoul(s);
    if (v < 1 || v > 16) throw SchemaError("n must lie in [1, 16]");
    return static_cast<std::size_t>(v);
  };
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(to_size(part));
      continue;
    }
    const std::size_t lo = to_size(part.substr(0, dash)), hi = to_size(part.substr(dash + 1));
    if (lo > hi) throw SchemaError("empty n range \"" + part + "\"");
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw SchemaError("empty n list");
  return out;
}

SuiteConfig suite_config_from_json(const Json& j, SuiteConfig cfg) {
  if (!j.is_object()) throw SchemaError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "schema") {
        if (value != kSchemaVersion) throw SchemaError("unsupported config schema");
      } else if (key == "n") {
        cfg.n_values = value.is_string() ? parse_n_list(value.get<std::string>())
                                         : value.get<std::vector<std::size_t>>();
        if (cfg.n_values.empty()) throw SchemaError("empty n list");
      } else if (key == "trials") {
        if (!value.is_number_unsigned()) throw SchemaError("\"trials\" must be a non-negative integer");
        cfg.trials = value.get<std::size_t>();
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) throw SchemaError("\"seed\" must be a non-negative integer");
        cfg.seed = value.get<std::uint64_t>();
      } else if (key == "mode") {
        if (value == "exact") cfg.mode = Mode::Exact;
        else if (value == "approx") cfg.mode = Mode::Approx;
        else throw SchemaError("\"mode\" must be \"exact\" or \"approx\"");
      } else if (key == "tol") {
        const double t = value.get<double>();
        if (!(t > 0.0)) throw SchemaError("\"tol\" must be positive");
        cfg.tol.residual = cfg.tol.witness = t;
      } else if (key == "tolerances") {
        if (value.contains("residual")) cfg.tol.residual = value.at("residual").get<double>();
        if (value.contains("witness")) cfg.tol.witness = value.at("witness").get<double>();
        if (value.contains("cluster")) cfg.tol.cluster = value.at("cluster").get<double>();
      } else if (key == "properties") {
        cfg.properties = value.get<std::vector<std::string>>();
      } else {
        throw SchemaError("unknown config field \"" + key + "\"");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed config: ") + e.what());
  }
  return cfg;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

int cmd_verify(const SuiteConfig& cfg, Format format, bool timing, std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport report = run_suite(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (format == Format::Json) {
      Json j = to_json(report, cfg);
      if (timing) j["wall_time_s"] = seconds;
      out << j.dump(2) << "\n";
    } else {
      print_suite_text(out, report, cfg);
      if (timing) out << "wall time: " << seconds << " s\n";
    }
    return report.ok() ? kExitOk : kExitFailure;
  });
}

int cmd_fuzz(const SuiteConfig& cfg, std::size_t rounds, Format format, std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    SuiteConfig round_cfg = cfg;
    for (std::size_t round = 0; round < rounds; ++round) {
      round_cfg.seed = cfg.seed + round;
      SuiteReport report = run_suite(round_cfg);
      if (report.ok()) continue;
      if (format == Format::Json) {
        Json j = to_json(report, round_cfg);
        j["round"] = round;
        out << j.dump(2) << "\n";
      } else {
        out << "round " << round << " failed:\n";
        print_suite_text(out, report, round_cfg);
      }
      return kExitFailure;
    }
    if (format == Format::Json) {
      out << Json{{"schema", kSchemaVersion}, {"mode", mode_name(cfg.mode)}, {"rounds", rounds},
                  {"first_seed", cfg.seed}, {"config", to_json(cfg)}, {"ok", true}}
                 .dump(2)
          << "\n";
    } else {
      out << rounds << " rounds passed (seeds " << cfg.seed << ".." << cfg.seed + rounds - (rounds ? 1 : 0) << ")\n";
    }
    return kExitOk;
  });
}

int cmd_replay(const Json& dump_in, Format format, std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    Json dump = dump_in;
    if (dump.contains("properties")) {
      // A whole report: replay its first dumped failure.
      bool found = false;
      for (const auto& p : dump["properties"]) {
        for (const auto& f : p["failures"]) {
          if (f.contains("seed")) {
            dump = f;
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (!found) throw SchemaError("report contains no replayable failure");
    }
    for (const char* key : {"property", "n", "seed", "mode"}) {
      if (!dump.contains(key)) throw SchemaError(std::string("failure dump lacks \"") + key + "\"");
    }
    Tolerances tol;
    if (dump.contains("tolerances")) {
      const auto& t = dump["tolerances"];
      tol.residual = t.value("residual", tol.residual);
      tol.witness = t.value("witness", tol.witness);
      tol.cluster = t.value("cluster", tol.cluster);
    }
    const Mode mode = dump["mode"] == "approx" ? Mode::Approx : Mode::Exact;
    const auto property = dump["property"].get<std::string>();
    const auto n = dump["n"].get<std::size_t>();
    const auto seed = dump["seed"].get<std::uint64_t>();
    TrialResult r = run_trial(property, n, seed, mode, tol);
    Json j{{"schema", kSchemaVersion},
           {"property", property},
           {"n", n},
           {"seed", seed},
           {"mode", mode_name(mode)},
           {"tolerances", tolerances_json(tol)},
           {"pass", r.pass},
           {"message", r.message},
           {"residual", r.residual},
           {"theorem_violation", r.theorem_violation},
           {"instance", r.instance}};
    if (format == Format::Json) {
      out << j.dump(2) << "\n";
    } else {
      out << property << " n=" << n << " seed=" << seed << ": " << (r.pass ? "pass" : "FAIL");
      if (!r.pass) out << " (" << r.message << ")";
      out << ", residual " << r.residual << "\n";
    }
    if (r.theorem_violation) return kExitTheorem;
    return r.pass ? kExitOk : kExitFailure;
  });
}

int cmd_witness(const Json& instance, const Tolerances& tol, Format format, std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    const Mode mode = instance_mode(instance);
    const WitnessOptions opts{tol.residual, tol.witness, tol.cluster};
    Json j{{"schema", kSchemaVersion}, {"mode", mode_name(mode)}, {"tolerances", tolerances_json(tol)}};
    std::ostringstream text;
    if (mode == Mode::Exact) {
      const auto inst = witness_instance_from_json<Q>(instance);
      const GroupElement<Q> g(inst.g);
      auto outcome = witness_with_fallback(inst.n, inst.x, inst.y, g, inst.constraint, inst.alpha, opts);
      j["mode_switched"] = outcome.mode_switched;
      if (outcome.mode_switched) j["switch_reason"] = outcome.switch_reason;
      std::visit(
          [&](const auto& rep) {
            j["report"] = witness_result(rep);
            print_witness_text(text, rep);
          },
          outcome.report);
    } else {
      const auto inst = witness_instance_from_json<Complex>(instance);
      SymplecticContext<Complex> ctx(inst.n);
      const GroupElement<Complex> g(inst.g);
      auto rep = symplectic_witness(ctx, inst.x, inst.y, g, inst.constraint, inst.alpha, opts);
      j["mode_switched"] = false;
      j["report"] = witness_result(rep);
      print_witness_text(text, rep);
    }
    j["verified"] = true;
    if (format == Format::Json) {
      out << j.dump(2) << "\n";
    } else {
      out << text.str();
      if (j["mode_switched"] == true) out << "(exact square root unavailable: " << j["switch_reason"].get<std::string>() << ")\n";
    }
    return kExitOk;
  });
}

int cmd_conjugate(const Json& instance, const Tolerances& tol, std::uint64_t seed, Format format, std::ostream& out,
                  std::ostream& err) {
  return guarded(out, err, format, [&] {
    const Mode mode = instance_mode(instance);
    if (!instance.contains("n") || !instance["n"].is_number_unsigned() || instance["n"].get<std::size_t>() < 1) {
      throw SchemaError("\"n\" must be a positive integer");
    }
    const auto n = instance["n"].get<std::size_t>();
    GroupConstraint constraint = GroupConstraint::Full;
    if (instance.contains("constraint")) {
      if (instance["constraint"] == "block-diagonal") constraint = GroupConstraint::BlockDiagonal;
      else if (instance["constraint"] != "full") throw SchemaError("\"constraint\" must be \"full\" or \"block-diagonal\"");
    }
    if (!instance.contains("X") || !instance.contains("Y")) throw SchemaError("instance needs fields X and Y");
    std::ostringstream text;
    std::ostream* tp = format == Format::Text ? &text : nullptr;
    Json body = mode == Mode::Exact ? conjugate_body<Q>(instance, n, constraint, tol, seed, tp)
                                    : conjugate_body<Complex>(instance, n, constraint, tol, seed, tp);
    Json j{{"schema", kSchemaVersion}, {"mode", mode_name(mode)}, {"seed", seed},
           {"constraint", constraint_name(constraint)}, {"tolerances", tolerances_json(tol)}, {"result", body}};
    if (format == Format::Json) out << j.dump(2) << "\n"; else out << text.str();
    return kExitOk;
  });
}

int cmd_invariants(const Json* instance, std::size_t n, unsigned k_max, std::uint64_t seed, Mode mode, Format format,
                   std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    std::ostringstream text;
    std::ostream* tp = format == Format::Text ? &text : nullptr;
    Json body;
    if (instance) {
      mode = instance_mode(*instance);
      if (!instance->contains("n") || !(*instance)["n"].is_number_unsigned()) throw SchemaError("\"n\" must be a positive integer");
      n = (*instance)["n"].get<std::size_t>();
      if (n < 1) throw SchemaError("\"n\" must be a positive integer");
      if (instance->contains("k_max")) k_max = (*instance)["k_max"].get<unsigned>();
      if (!instance->contains("X")) throw SchemaError("instance needs field X");
      body = mode == Mode::Exact ? invariants_body(enhanced_from_json<Q>((*instance)["X"], 2 * n), n, k_max, tp)
                                 : invariants_body(enhanced_from_json<Complex>((*instance)["X"], 2 * n), n, k_max, tp);
    } else {
      SymplecticContext<Q> ctx(n);
      Rng rng(seed);
      const auto x = random_L_element(ctx, rng, AlphaSign::minus());
      body = mode == Mode::Exact ? invariants_body(x, n, k_max, tp) : invariants_body(to_approx(x), n, k_max, tp);
    }
    Json j{{"schema", kSchemaVersion}, {"mode", mode_name(mode)}, {"n", n}, {"k_max", k_max}, {"result", body}};
    if (format == Format::Json) out << j.dump(2) << "\n"; else out << text.str();
    return kExitOk;
  });
}

int cmd_case_gl2(Format format, std::ostream& out, std::ostream& err) {
  return guarded(out, err, format, [&] {
    std::ostringstream text;
    bool ok = true;

    const auto pairs = collapsing_pairs();
    Json pj = Json::array();
    text << "collapsing pairs (" << pairs.size() << "):\n";
    for (const auto& p : pairs) {
      pj.push_back(Json{{"first", to_json(p.first)},
                        {"second", to_json(p.second)},
                        {"conjugator", to_json(p.conjugator.matrix())},
                        {"K_rep_first", to_json(canonical_K_rep(p.first))},
                        {"K_rep_second", to_json(canonical_K_rep(p.second))}});
      text << "  pair, conjugated by g:\n";
      print_matrix(text, "    ", p.first);
      text << "    ~\n";
      print_matrix(text, "    ", p.second);
      text << "    g =\n";
      print_matrix(text, "    ", p.conjugator.matrix());
    }
    ok = ok && pairs.size() == 3;

    struct Case {
      Matrix<Q> x, h;
      bool expect_root;
    };
    const Matrix<Q> u{{Q(1), Q(1)}, {Q(0), Q(1)}};
    const Matrix<Q> d{{Q(1), Q(0)}, {Q(0), Q(-1)}};
    const std::vector<Case> cases = {
        {u, Matrix<Q>{{Q(-1), Q(5)}, {Q(0), Q(-1)}}, false},
        {u, Matrix<Q>{{Q(1), Q(4)}, {Q(0), Q(1)}}, true},
        {d, Matrix<Q>{{Q(-1), Q(0)}, {Q(0), Q(-1)}}, false},
        {d, Matrix<Q>{{Q(1), Q(0)}, {Q(0), Q(-1)}}, false},
        {d, Matrix<Q>{{Q(-1), Q(0)}, {Q(0), Q(1)}}, false},
        {d, Matrix<Q>::identity(2), true},
    };
    Json cj = Json::array();
    text << "obstruction certificates:\n";
    for (const auto& c : cases) {
      auto cert = obstruction_check(c.x, c.h);
      ok = ok && cert.has_root == c.expect_root;
      Json entry{{"x", to_json(cert.x)}, {"h", to_json(cert.h)}, {"family", cert.family},
                 {"has_root", cert.has_root}, {"reason", cert.reason}};
      if (cert.f) entry["f"] = to_json(*cert.f);
      cj.push_back(std::move(entry));
      text << "  x = " << Json(to_json(cert.x)).dump() << ", h = " << Json(to_json(cert.h)).dump() << ": "
           << (cert.has_root ? "square root f = " + Json(to_json(*cert.f)).dump() : "no square root") << " ("
           << cert.reason << ")\n";
    }

    Json rj = Json::array();
    text << "canonical K-representatives:\n";
    for (const auto& x : {u, Matrix<Q>{{Q(1), Q(5)}, {Q(0), Q(1)}}, Matrix<Q>{{Q(2), Q(3)}, {Q(1), Q(2)}}}) {
      Json entry{{"x", to_json(x)}};
      try {
        entry["rep"] = to_json(canonical_K_rep(x));
        entry["mode"] = "exact";
      } catch (const NotExactlyRepresentable&) {
        entry["rep"] = to_json(canonical_K_rep(to_approx(x)));
        entry["mode"] = "approx";
      }
      text << "  " << Json(entry["x"]).dump() << " -> " << Json(entry["rep"]).dump() << "\n";
      rj.push_back(std::move(entry));
    }

    if (format == Format::Json) {
      out << Json{{"schema", kSchemaVersion}, {"mode", "exact"}, {"collapsing_pairs", pj},
                  {"obstructions", cj}, {"canonical_reps", rj}, {"ok", ok}}
                 .dump(2)
          << "\n";
    } else {
      out << text.str() << (ok ? "all case-study checks passed\n" : "case-study checks FAILED\n");
    }
    return ok ? kExitOk : kExitFailure;
  });
}

}  // namespace orbemb
