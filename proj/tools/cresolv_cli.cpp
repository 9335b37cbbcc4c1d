// Command-line front end: run composite-resolvent solves from JSON
// configs, verify candidates against the independent certifier, compare
// the one- and two-parameter schemes, and emit CSV convergence histories.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cresolv/io.hpp"
#include "cresolv/lure.hpp"
#include "cresolv/oracle.hpp"
#include "cresolv/repro.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cresolv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitUnsupported = 3;

// resolvent of scale*M, for running the single-parameter scheme on a
// rescaled operator
class ScaledOp final : public MonotoneOp {
 public:
  ScaledOp(MonotoneOpPtr inner, double scale)
      : inner_(std::move(inner)), scale_(scale) {}
  int dim() const override { return inner_->dim(); }
  Vector resolvent(double t, const Vector& x) const override {
    return inner_->resolvent(scale_ * t, x);
  }
  double membership_residual(const Vector& p, const Vector& c) const override {
    return scale_ * inner_->membership_residual(p, c / scale_);
  }
  Vector project_value_set(const Vector& p, const Vector& s) const override {
    return scale_ * inner_->project_value_set(p, s / scale_);
  }

 private:
  MonotoneOpPtr inner_;
  double scale_;
};

struct GlobalFlags {
  std::string config;
  std::string out_dir = ".";
  std::optional<double> tol;
  std::optional<int> max_iter;
  std::uint64_t seed = 0;
};

json load_config(const GlobalFlags& g) {
  std::ifstream in(g.config);
  if (!in) throw io::ParseError("cannot open config " + g.config);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw io::ParseError(g.config + ": " + e.what());
  }
}

SolveOptions options_from(const json& cfg, const GlobalFlags& g) {
  SolveOptions o = cfg.contains("options") ? io::parse_solve_options(cfg.at("options"))
                                           : SolveOptions{};
  if (g.tol) o.tol = *g.tol;
  if (g.max_iter) o.max_iter = *g.max_iter;
  return o;
}

void write_history(const fs::path& path, const std::vector<double>& steps) {
  std::string text = "k,step_norm\n";
  for (std::size_t k = 0; k < steps.size(); ++k) {
    text += std::to_string(k + 1) + "," + io::format_full(steps[k]) + "\n";
  }
  io::write_text_atomic(path, text);
}

std::string result_row(const SolveReport& r) {
  std::string row;
  for (Eigen::Index i = 0; i < r.x.size(); ++i) {
    if (i) row += ',';
    row += io::format_full(r.x(i));
  }
  row += "," + std::to_string(r.iterations);
  row += r.converged ? ",1" : ",0";
  row += "," + io::format_full(r.condition_certificate);
  row += "," + io::format_full(r.inclusion_residual);
  row += "\n";
  return row;
}

int cmd_resolve(const GlobalFlags& g, bool sum_mode) {
  json cfg = load_config(g);
  fs::path base = fs::path(g.config).parent_path();
  SolveOptions opts = options_from(cfg, g);
  SolveReport r;
  if (sum_mode) {
    SumResolventProblem p = io::parse_sum_problem(cfg.at("problem"), base);
    r = solve_algorithm3(p, opts);
  } else {
    ResolventProblem p = io::parse_resolvent_problem(cfg.at("problem"), base);
    const int algorithm = cfg.value("algorithm", 2);
    if (algorithm == 1) {
      r = solve_algorithm1(p, opts);
    } else if (algorithm == 2) {
      r = solve_algorithm2(p, opts);
    } else {
      throw io::ParseError("algorithm must be 1 or 2");
    }
    try {
      r.inclusion_residual = oracle::inclusion_residual(p, r.x);
    } catch (const UnsupportedOperatorError&) {
      // leave NaN; `verify` reports this case explicitly
    }
  }
  fs::create_directories(g.out_dir);
  io::write_text_atomic(fs::path(g.out_dir) / "result.csv", result_row(r));
  if (opts.record_history) {
    write_history(fs::path(g.out_dir) / "history.csv", r.step_history);
  }
  if (!r.condition_holds && std::isfinite(r.condition_certificate) &&
      r.condition_certificate > 1.0) {
    std::cerr << "warning: nonexpansiveness condition violated (certificate "
              << r.condition_certificate << ")\n";
  }
  std::cout << (r.converged ? "converged" : "not converged") << " after "
            << r.iterations << " iterations\n";
  return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_compare_mcx(const GlobalFlags& g) {
  json cfg = load_config(g);
  fs::path base = fs::path(g.config).parent_path();
  ResolventProblem p = io::parse_resolvent_problem(cfg.at("problem"), base);
  SolveOptions opts = options_from(cfg, g);
  std::vector<double> mus;
  if (cfg.contains("mu_values")) {
    mus = cfg.at("mu_values").get<std::vector<double>>();
  } else {
    mus = {auto_parameters(p.C, p.lambda, estimate_spectrum(p.C)).mu};
  }
  std::string out =
      "mu,method,certificate,iterations,converged,inclusion_residual";
  for (Eigen::Index i = 0; i < p.y.size(); ++i) {
    out += ",x" + std::to_string(i + 1);
  }
  out += "\n";
  auto emit = [&](double mu, const char* method, const SolveReport& r) {
    out += io::format_full(mu);
    out += std::string(",") + method + "," + io::format_full(r.condition_certificate) +
           "," + std::to_string(r.iterations) + (r.converged ? ",1" : ",0");
    double resid = std::numeric_limits<double>::quiet_NaN();
    try {
      resid = oracle::inclusion_residual(p, r.x);
    } catch (const UnsupportedOperatorError&) {
    }
    out += "," + io::format_full(resid);
    for (Eigen::Index i = 0; i < r.x.size(); ++i) out += "," + io::format_full(r.x(i));
    out += "\n";
  };
  for (double mu : mus) {
    SolveOptions o = opts;
    o.mu = mu;
    emit(mu, "two-parameter", solve_algorithm2(p, o));
    // single-parameter scheme: lambda = 1 on the rescaled operator
    auto scaled = std::make_shared<ScaledOp>(p.M, p.lambda);
    emit(mu, "single-parameter", mcx_resolvent(p.C, scaled, p.lambda * mu, p.y, o));
  }
  fs::create_directories(g.out_dir);
  io::write_text_atomic(fs::path(g.out_dir) / "compare_mcx.csv", out);
  std::cout << out;
  return kExitOk;
}

int cmd_verify(const GlobalFlags& g, double threshold) {
  json cfg = load_config(g);
  fs::path base = fs::path(g.config).parent_path();
  ResolventProblem p = io::parse_resolvent_problem(cfg.at("problem"), base);
  Vector x = io::parse_vector(cfg.at("candidate"), base);
  double resid;
  try {
    resid = oracle::inclusion_residual(p, x);
  } catch (const UnsupportedOperatorError& e) {
    std::cerr << "unsupported operator: " << e.what() << "\n";
    return kExitUnsupported;
  }
  std::cout << "inclusion_residual " << io::format_full(resid) << "\n";
  return resid <= threshold ? kExitOk : kExitNoConvergence;
}

int cmd_bench(const GlobalFlags& g) {
  json cfg = load_config(g);
  fs::path base = fs::path(g.config).parent_path();
  SolveOptions opts = options_from(cfg, g);
  std::vector<ResolventProblem> instances;
  if (cfg.contains("instances")) {
    for (const auto& j : cfg.at("instances")) {
      instances.push_back(io::parse_resolvent_problem(j, base));
    }
  }
  if (cfg.contains("random_instances")) {
    const auto& r = cfg.at("random_instances");
    const int count = r.at("count").get<int>();
    const int rows = r.at("rows").get<int>();
    const int cols = r.at("cols").get<int>();
    const double lambda = r.value("lambda", 1.0);
    std::mt19937_64 rng(g.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int i = 0; i < count; ++i) {
      Matrix C(rows, cols);
      for (int a = 0; a < rows; ++a)
        for (int b = 0; b < cols; ++b) C(a, b) = gauss(rng);
      Vector y(cols);
      for (int a = 0; a < cols; ++a) y(a) = 3.0 * gauss(rng);
      instances.emplace_back(LinearMap(C), std::make_shared<L1Subdifferential>(rows),
                             lambda, y);
    }
    std::cout << "seed " << g.seed << "\n";
  }
  if (instances.empty()) throw io::ParseError("bench: no instances configured");

  std::vector<double> mus;
  bool auto_mu = !cfg.contains("mu_values");
  if (!auto_mu) mus = cfg.at("mu_values").get<std::vector<double>>();

  fs::create_directories(g.out_dir);
  std::string summary =
      "instance,mu,predicted_q,certificate,iterations,converged,contraction_estimate\n";
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const ResolventProblem& p = instances[i];
    GramSpectrum s = estimate_spectrum(p.C);
    AutoParams ap = auto_parameters(p.C, p.lambda, s);
    std::vector<double> row_mus = auto_mu ? std::vector<double>{ap.mu} : mus;
    for (std::size_t j = 0; j < row_mus.size(); ++j) {
      SolveOptions o = opts;
      o.mu = row_mus[j];
      SolveReport r = solve_algorithm2(p, o);
      double predicted = (row_mus[j] == ap.mu) ? ap.predicted_q
                                               : std::numeric_limits<double>::quiet_NaN();
      summary += std::to_string(i) + "," + io::format_full(row_mus[j]) + "," +
                 io::format_full(predicted) + "," +
                 io::format_full(r.condition_certificate) + "," +
                 std::to_string(r.iterations) + (r.converged ? ",1" : ",0") + "," +
                 io::format_full(r.contraction_estimate) + "\n";
      write_history(fs::path(g.out_dir) / ("history_" + std::to_string(i) + "_" +
                                           std::to_string(j) + ".csv"),
                    r.step_history);
    }
  }
  io::write_text_atomic(fs::path(g.out_dir) / "summary.csv", summary);
  std::cout << summary;
  return kExitOk;
}

int cmd_lure_eq(const GlobalFlags& g) {
  json cfg = load_config(g);
  fs::path base = fs::path(g.config).parent_path();
  LureSystem sys = io::parse_lure_system(cfg.at("system"), base);
  SolveOptions inner = options_from(cfg, g);
  const double step = cfg.value("step", 1.0);
  const double tol = g.tol.value_or(cfg.value("tol", 1e-8));
  const int max_outer = cfg.value("max_outer", 10000);
  EquilibriumReport r = find_equilibrium(sys, step, tol, max_outer, inner);
  std::string out;
  for (Eigen::Index i = 0; i < r.x_star.size(); ++i) {
    if (i) out += ',';
    out += io::format_full(r.x_star(i));
  }
  out += "," + std::to_string(r.outer_iterations) + (r.converged ? ",1" : ",0") +
         "," + io::format_full(r.equilibrium_residual) + "\n";
  fs::create_directories(g.out_dir);
  io::write_text_atomic(fs::path(g.out_dir) / "equilibrium.csv", out);
  std::cout << "equilibrium_residual " << io::format_full(r.equilibrium_residual)
            << " (certificate " << io::format_full(sys.strong_monotonicity_certificate())
            << ")\n";
  return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_repro_example1(const GlobalFlags& g) {
  repro::Report rep = repro::run();
  std::string text = repro::render(rep);
  fs::create_directories(g.out_dir);
  io::write_text_atomic(fs::path(g.out_dir) / "repro_example1.csv", text);
  std::cout << text;
  return (rep.stable_rows_agree && rep.matches_reference) ? kExitOk
                                                          : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"composite-resolvent solver: averaged fixed-point computation of "
               "resolvents of C^T M C and M1 + C^T M2 C"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--config", g.config, "JSON config file");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--tol", g.tol, "override stopping tolerance");
  app.add_option("--max-iter", g.max_iter, "override iteration cap");
  app.add_option("--seed", g.seed, "seed for generated bench instances");

  // global flags remain usable after the subcommand name
  auto* resolve = app.add_subcommand("resolve", "composite resolvent solve")->fallthrough();
  auto* resolve_sum = app.add_subcommand("resolve-sum", "sum-resolvent solve")->fallthrough();
  auto* compare = app.add_subcommand("compare-mcx",
                                     "two-parameter vs single-parameter comparison")
                      ->fallthrough();
  double threshold = 1e-6;
  auto* verify = app.add_subcommand("verify", "certify a candidate solution")->fallthrough();
  verify->add_option("--threshold", threshold, "acceptance threshold");
  auto* bench = app.add_subcommand("bench", "convergence-rate measurements")->fallthrough();
  auto* lure_eq = app.add_subcommand("lure-eq", "feedback-system equilibrium")->fallthrough();
  auto* repro1 =
      app.add_subcommand("repro-example1", "built-in 5x5 comparison tables")->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (resolve->parsed()) return cmd_resolve(g, false);
    if (resolve_sum->parsed()) return cmd_resolve(g, true);
    if (compare->parsed()) return cmd_compare_mcx(g);
    if (verify->parsed()) return cmd_verify(g, threshold);
    if (bench->parsed()) return cmd_bench(g);
    if (lure_eq->parsed()) return cmd_lure_eq(g);
    if (repro1->parsed()) return cmd_repro_example1(g);
  } catch (const io::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const UnsupportedOperatorError& e) {
    std::cerr << "unsupported operator: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
