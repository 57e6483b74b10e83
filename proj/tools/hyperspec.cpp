// hyperspec: build hypergraph tensors, compute spectra, and run property checks.
//
// Exit codes: 0 success, 1 failure, 2 inconclusive, 3 input error.
// Every tuning flag can also be set through a HYPERSPEC_* environment variable.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyperspec/hyperspec.hpp"

using namespace hyperspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInput = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Inconclusive:
      return kExitInconclusive;
    case ErrorCode::NoConvergence:
    case ErrorCode::PathBudgetExceeded:
    case ErrorCode::MissingExactCoefficients:
      return kExitFailure;
    default:
      return kExitInput;
  }
}

struct RunConfig {
  std::string input;
  std::string kind = "A";
  std::uint64_t seed = 1;
  double tol_dedup = ClassifyOptions{}.dedup_tolerance;
  double tol_residual = SolveOptions{}.residual_tolerance;
  double real_threshold = ClassifyOptions{}.real_threshold;
  std::uint64_t paths_budget = SolveOptions{}.path_budget;
  unsigned workers = 1;
  std::string out;
  std::string plot_out;

  SpectrumOptions spectrum() const {
    SpectrumOptions opt;
    opt.seed = seed;
    opt.classify.dedup_tolerance = tol_dedup;
    opt.classify.real_threshold = real_threshold;
    opt.solve.residual_tolerance = tol_residual;
    opt.solve.path_budget = paths_budget;
    opt.solve.tracker.workers = workers;
    return opt;
  }
  TensorKind tensor_kind() const { return parse_tensor_kind(kind); }
};

void add_input(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("input", cfg.input, "hypergraph JSON file")->required();
}

void add_kind(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--kind", cfg.kind, "tensor kind: A, K, K+, L, L+, RW, RW+")
      ->envname("HYPERSPEC_KIND")
      ->check(CLI::IsMember({"A", "K", "K+", "L", "L+", "RW", "RW+"}));
}

void add_solver_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "random seed")->envname("HYPERSPEC_SEED");
  cmd->add_option("--tol-dedup", cfg.tol_dedup, "eigenvalue deduplication tolerance")
      ->envname("HYPERSPEC_TOL_DEDUP")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-residual", cfg.tol_residual, "eigenpair acceptance residual")
      ->envname("HYPERSPEC_TOL_RESIDUAL")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--real-threshold", cfg.real_threshold, "relative |Im| below which a value is real")
      ->envname("HYPERSPEC_REAL_THRESHOLD")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--paths-budget", cfg.paths_budget, "maximum number of paths per solve")
      ->envname("HYPERSPEC_PATHS_BUDGET")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", cfg.workers, "path-tracking threads")
      ->envname("HYPERSPEC_WORKERS")
      ->check(CLI::Range(1u, 1024u));
}

void add_out(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out, "output file (default: stdout)")->envname("HYPERSPEC_OUT");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void log_stats(const SpectrumReport& r) {
  const auto& s = r.stats;
  std::cerr << "paths=" << s.paths_tracked << " finite=" << s.finite << " at_infinity=" << s.at_infinity
            << " singular=" << s.singular << " failures=" << s.failures << " distinct=" << r.eigenvalues.size()
            << " real=" << r.real_values().size() << (r.possibly_incomplete ? " possibly_incomplete" : "") << "\n";
}

Complex parse_eigenvalue(const std::string& s) {
  const auto comma = s.find(',');
  try {
    std::size_t used = 0;
    const double re = std::stod(s.substr(0, comma), &used);
    if (used != (comma == std::string::npos ? s.size() : comma)) throw std::invalid_argument(s);
    double im = 0.0;
    if (comma != std::string::npos) {
      const auto rest = s.substr(comma + 1);
      im = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(s);
    }
    return {re, im};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::ParseError, "eigenvalue must be \"re\" or \"re,im\": " + s);
  }
}

// ---------------------------------------------------------------------------

int cmd_tensor(const RunConfig& cfg) {
  const auto g = read_hypergraph_file(cfg.input);
  emit(cfg.out, dump(tensor_to_json(build(g, cfg.tensor_kind()))));
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg) {
  const auto g = read_hypergraph_file(cfg.input);
  const auto kind = cfg.tensor_kind();
  const auto report = compute_spectrum(build(g, kind), cfg.spectrum());
  log_stats(report);
  emit(cfg.out, dump(spectrum_to_json(report, kind)));
  if (!cfg.plot_out.empty()) {
    std::ofstream f(cfg.plot_out);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + cfg.plot_out);
    write_plot_csv(f, report);
  }
  return kExitOk;
}

int cmd_gm(const RunConfig& cfg, const std::string& eigenvalue) {
  const auto target = parse_eigenvalue(eigenvalue);
  const auto g = read_hypergraph_file(cfg.input);
  const auto kind = cfg.tensor_kind();
  const auto t = build(g, kind);
  const auto opt = cfg.spectrum();
  const auto report = compute_spectrum(t, opt);
  log_stats(report);
  if (!contains_value(report.values(), target, opt.classify.dedup_tolerance * 100)) {
    throw Error(ErrorCode::RangeError, "not an eigenvalue of the tensor: " + eigenvalue);
  }
  const auto trace = geometric_multiplicity_trace(t, target, opt);
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    std::cerr << "slices=" << s.slices << " seed=" << s.seed << " paths=" << s.paths
              << " found=" << (s.found ? "yes" : "no") << "\n";
    steps.push_back({{"slices", s.slices}, {"seed", s.seed}, {"paths", s.paths}, {"found", s.found}});
  }
  Json j = {{"kind", to_string(kind)},
            {"eigenvalue", {target.real(), target.imag()}},
            {"gm", trace.gm ? Json(*trace.gm) : Json(nullptr)},
            {"trace", steps}};
  emit(cfg.out, dump(j));
  if (!trace.gm) {
    std::cerr << "inconclusive: slice runs under two seeds disagree\n";
    return kExitInconclusive;
  }
  std::cerr << "gm=" << *trace.gm << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// check

struct CheckContext {
  const WeightedHypergraph& g;
  AnalysisOptions opt;
  TensorKind kind;
  bool kind_given;
  unsigned ell;
};

TheoremCheckResult run_duplicate(const CheckContext& c) {
  TheoremCheckResult r;
  r.theorem_id = "duplicate";
  if (duplicate_classes(c.g, c.opt.limits).empty()) {
    r.notes.push_back("no duplicate vertices");
    return r;
  }
  if (c.g.order() % 2 == 0) {
    for (const auto& nv : duplicate_null_vectors(c.g, c.opt.limits)) {
      r.add({"null vector residual for " + to_string(nv.kind), "0", TheoremCheckResult::format(nv.residual),
             nv.kind == TensorKind::L || nv.kind == TensorKind::LPlus ? 1e-12 : 0.0,
             nv.residual <= (nv.kind == TensorKind::L || nv.kind == TensorKind::LPlus ? 1e-12 : 0.0), false});
    }
  }
  const auto kind = c.kind_given ? c.kind : TensorKind::A;
  const auto report = compute_spectrum(build(c.g, kind), c.opt.spectrum);
  auto constraint = check_duplicate_constraint(c.g, kind, report, 1e-6, c.opt.limits);
  for (auto& a : constraint.assertions) r.add(std::move(a));
  for (auto& n : constraint.notes) r.notes.push_back(std::move(n));
  return r;
}

TheoremCheckResult run_flower(const CheckContext& c) {
  const auto shape = as_hyperflower(c.g);
  if (!shape) throw Error(ErrorCode::RangeError, "input is not a hyperflower");
  const auto report = compute_spectrum(build(c.g, TensorKind::A), c.opt.spectrum);
  return check_flower(flower_prediction(shape->first, shape->second), report.values(), c.opt.set_tolerance);
}

TheoremCheckResult run_hbounds(const CheckContext& c) {
  const auto kind = c.kind_given ? c.kind : TensorKind::K;
  const auto t = build(c.g, kind);
  return check_h_bounds(c.g, t, h_eigen_search(t, c.opt.spectrum));
}

struct CheckEntry {
  std::function<TheoremCheckResult(const CheckContext&)> run;
  // Whether `--theorem all` runs it on this input; a directly selected check
  // always runs and reports its error.
  std::function<bool(const CheckContext&)> applies;
};

const std::map<std::string, CheckEntry>& registry() {
  auto always = [](const CheckContext&) { return true; };
  auto connected = [](const CheckContext& c) { return is_connected(c.g); };
  auto no_isolated = [](const CheckContext& c) {
    const auto prof = degree_profile(c.g);
    return std::all_of(prof.degrees.begin(), prof.degrees.end(), [](const Rational& d) { return d > 0; });
  };
  static const std::map<std::string, CheckEntry> r = {
      {"rowsums", {[](const CheckContext& c) { return check_row_sums(c.g); }, always}},
      {"dominance", {[](const CheckContext& c) { return check_dominance(c.g); }, always}},
      {"irreducibility", {[](const CheckContext& c) { return check_irreducibility(c.g, c.opt.limits); }, always}},
      {"radius", {[](const CheckContext& c) { return check_radius(c.g); }, connected}},
      {"hbounds", {run_hbounds, no_isolated}},
      {"colorability",
       {[](const CheckContext& c) { return check_colorability_symmetry(c.g, c.ell, c.opt); }, connected}},
      {"oddbipartite", {[](const CheckContext& c) { return check_odd_bipartite_spectra(c.g, c.opt); }, connected}},
      {"duplicate", {run_duplicate, no_isolated}},
      {"flower", {run_flower, [](const CheckContext& c) { return as_hyperflower(c.g).has_value(); }}},
      {"isospectral", {[](const CheckContext& c) { return check_isospectral(c.g, c.opt); }, no_isolated}},
      {"reflection", {[](const CheckContext& c) { return check_reflection(c.g, c.opt); }, no_isolated}},
  };
  return r;
}

int cmd_check(const RunConfig& cfg, const std::string& theorem, unsigned ell, bool kind_given) {
  const auto g = read_hypergraph_file(cfg.input);
  CheckContext ctx{g, {}, cfg.tensor_kind(), kind_given, ell};
  ctx.opt.spectrum = cfg.spectrum();

  std::vector<std::string> selected;
  if (theorem == "all") {
    for (const auto& [id, entry] : registry()) {
      if (entry.applies(ctx)) selected.push_back(id);
    }
  } else if (registry().count(theorem)) {
    selected.push_back(theorem);
  } else {
    throw Error(ErrorCode::ParseError, "unknown theorem id: " + theorem);
  }

  std::vector<TheoremCheckResult> results;
  for (const auto& id : selected) {
    TheoremCheckResult r;
    try {
      r = registry().at(id).run(ctx);
    } catch (const Error& e) {
      r = TheoremCheckResult{};
      r.theorem_id = id;
      r.add({"check ran", "completed", e.what(), 0.0, false, false});
    }
    std::cerr << id << ": " << (r.passed ? (r.warning ? "pass (warnings)" : "pass") : "FAIL") << "\n";
    results.push_back(std::move(r));
  }
  emit(cfg.out, dump(check_report_to_json(results)));
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

int cmd_flower(const RunConfig& cfg, unsigned nabla, unsigned petals) {
  const auto prediction = flower_prediction(nabla, petals);
  const auto g = hyperflower(nabla, petals);
  const auto kind = cfg.tensor_kind();
  const auto report = compute_spectrum(build(g, kind), cfg.spectrum());
  log_stats(report);
  const auto found = report.values();
  const double tol = AnalysisOptions{}.set_tolerance;

  Json j = spectrum_to_json(report, kind);
  j["nabla"] = nabla;
  j["petals"] = petals;
  int status = kExitOk;
  if (kind == TensorKind::A) {
    const auto check = check_flower(prediction, found, tol);
    std::cerr << "predicted                                   found\n";
    Json table = Json::array();
    for (auto v : prediction.distinct_eigenvalues) {
      const bool hit = contains_value(found, v, tol);
      std::cerr << std::left << std::setw(44) << TheoremCheckResult::format(v) << (hit ? "yes" : "no") << "\n";
      table.push_back({{"re", v.real()}, {"im", v.imag()}, {"found", hit}});
    }
    for (auto v : found) {
      if (!contains_value(prediction.distinct_eigenvalues, v, tol)) {
        std::cerr << "unpredicted solver value " << TheoremCheckResult::format(v) << "\n";
      }
    }
    j["prediction"] = table;
    j["check"] = check_to_json(check);
    if (!check.passed) status = kExitFailure;
  } else {
    j["prediction"] = nullptr;
    std::cerr << "closed-form prediction covers the adjacency tensor only\n";
  }
  emit(cfg.out, dump(j));
  if (!cfg.plot_out.empty()) {
    std::ofstream f(cfg.plot_out);
    if (!f) throw Error(ErrorCode::ParseError, "cannot write " + cfg.plot_out);
    write_plot_csv(f, report);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of weighted hypergraph tensors"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* tensor = app.add_subcommand("tensor", "dump a tensor with exact coefficients");
  add_input(tensor, cfg);
  add_kind(tensor, cfg);
  add_out(tensor, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "all eigenvalues by homotopy continuation");
  add_input(spectrum, cfg);
  add_kind(spectrum, cfg);
  add_solver_flags(spectrum, cfg);
  add_out(spectrum, cfg);
  spectrum->add_option("--plot-out", cfg.plot_out, "re,im scatter data")->envname("HYPERSPEC_PLOT_OUT");

  std::string eigenvalue;
  auto* gm = app.add_subcommand("gm", "geometric multiplicity by slicing");
  add_input(gm, cfg);
  add_kind(gm, cfg);
  gm->add_option("--eigenvalue", eigenvalue, "\"re\" or \"re,im\"")->required();
  add_solver_flags(gm, cfg);
  add_out(gm, cfg);

  std::string theorem = "all";
  unsigned ell = 3;
  auto* check = app.add_subcommand("check", "run property checks");
  add_input(check, cfg);
  auto* kind_opt = check->add_option("--kind", cfg.kind, "tensor kind for hbounds and duplicate")
                       ->check(CLI::IsMember({"A", "K", "K+", "L", "L+", "RW", "RW+"}));
  check->add_option("--theorem", theorem, "check id or \"all\"");
  check->add_option("--ell", ell, "rotation order for colorability")->check(CLI::Range(2u, 64u));
  add_solver_flags(check, cfg);
  add_out(check, cfg);

  unsigned nabla = 3;
  unsigned petals = 2;
  auto* flower = app.add_subcommand("flower", "solve a hyperflower and compare with the closed form");
  flower->add_option("--nabla", nabla, "edge size")->required();
  flower->add_option("--petals", petals, "number of edges")->required();
  add_kind(flower, cfg);
  add_solver_flags(flower, cfg);
  add_out(flower, cfg);
  flower->add_option("--plot-out", cfg.plot_out, "re,im scatter data")->envname("HYPERSPEC_PLOT_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*tensor) return cmd_tensor(cfg);
    if (*spectrum) return cmd_spectrum(cfg);
    if (*gm) return cmd_gm(cfg, eigenvalue);
    if (*check) return cmd_check(cfg, theorem, ell, kind_opt->count() > 0);
    if (*flower) return cmd_flower(cfg, nabla, petals);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
