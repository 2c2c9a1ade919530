#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "maball/config.hpp"
#include "maball/continuation.hpp"
#include "maball/errors.hpp"
#include "maball/pointalg.hpp"
#include "maball/verify.hpp"

namespace {

using namespace maball;

// Exit codes per the CLI contract.
constexpr int kOk = 0;
constexpr int kStalled = 2;
constexpr int kConfigError = 3;
constexpr int kHypothesisViolated = 4;
constexpr int kCounterexample = 5;

// Shortest decimal representation that round-trips the double.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ScalarField build_f(const RunConfig& cfg, const Grid& grid) {
  if (!cfg.f_csv.empty()) {
    std::ifstream in(cfg.f_csv);
    if (!in) throw ConfigError("cannot open f_csv file: " + cfg.f_csv);
    ScalarField f(grid);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (n >= grid.size()) throw ConfigError("f_csv has too many rows");
      const auto comma = line.find_last_of(',');
      const std::string v = comma == std::string::npos ? line : line.substr(comma + 1);
      f[n++] = std::stod(v);
    }
    if (n != grid.size())
      throw ConfigError("f_csv row count does not match the grid");
    return f;
  }
  ScalarField f(grid);
  for (int n = 0; n < grid.size(); ++n) f[n] = expr::eval(cfg.f_expr, grid.coord(n));
  return f;
}

ProblemSpec make_spec(const RunConfig& cfg, const Grid& grid) {
  ProblemSpec spec;
  spec.sigma = cfg.sigma;
  spec.f = build_f(cfg, grid);
  spec.initial_mu = cfg.mu.value_or(0.0);
  spec.strict_hypotheses = cfg.strict;
  return spec;
}

void write_path_csv(const std::string& path, const ContinuationState& state) {
  std::ofstream out(path, std::ios::binary);
  out << "t,newton_iters,residual_sup,min_hessian_eig,min_pair_product,"
         "min_cone_gap,min_ellipticity\n";
  for (const auto& e : state.history)
    out << fmt(e.t) << ',' << e.newton_iterations << ',' << fmt(e.residual_sup)
        << ',' << fmt(e.monitors.min_hessian_eig) << ','
        << fmt(e.monitors.min_pair_product) << ',' << fmt(e.monitors.min_cone_gap)
        << ',' << fmt(e.monitors.min_ellipticity) << '\n';
}

void write_solution_csv(const std::string& path, const ScalarField& u) {
  const Grid& g = *u.grid;
  std::ofstream out(path, std::ios::binary);
  for (int i = 0; i < g.dim(); ++i) out << 'x' << (i + 1) << ',';
  out << "u\n";
  for (int n = 0; n < g.size(); ++n) {
    for (int i = 0; i < g.dim(); ++i) out << fmt(g.coord(n)[i]) << ',';
    out << fmt(u[n]) << '\n';
  }
}

int origin_node(const Grid& g) { return g.node_at({0, 0, 0}); }

int cmd_solve(const RunConfig& cfg) {
  const Grid grid = build_ball_grid(cfg.dim, cfg.h);
  const ProblemSpec spec = make_spec(cfg, grid);
  ContinuationOptions opts;
  opts.newton_tol = cfg.newton_tol;
  opts.t_step = cfg.t_step;
  const ContinuationState state = run_continuation(spec, grid, opts);

  std::filesystem::create_directories(cfg.output_dir);
  write_path_csv(cfg.output_dir + "/path.csv", state);
  write_solution_csv(cfg.output_dir + "/solution.csv", state.u);
  std::ofstream sum(cfg.output_dir + "/summary.txt", std::ios::binary);
  const auto& last = state.history.back();
  sum << "t_final=" << fmt(state.t) << "\n"
      << "steps=" << state.history.size() - 1 << "\n"
      << "residual_sup=" << fmt(last.residual_sup) << "\n"
      << "min_hessian_eig=" << fmt(last.monitors.min_hessian_eig) << "\n"
      << "min_cone_gap=" << fmt(last.monitors.min_cone_gap) << "\n"
      << "min_ellipticity=" << fmt(last.monitors.min_ellipticity) << "\n";
  const int o = origin_node(grid);
  if (o >= 0) sum << "u_origin=" << fmt(state.u[o]) << "\n";
  std::cout << "solved: t=1 reached, residual_sup=" << fmt(last.residual_sup)
            << "\n";
  return kOk;
}

int cmd_mms(const RunConfig& cfg, const std::string& case_name, int levels) {
  verify::ExactCase which;
  if (case_name == "quadratic")
    which = verify::ExactCase::Quadratic;
  else if (case_name == "quartic")
    which = verify::ExactCase::Quartic;
  else if (case_name == "offcenter")
    which = verify::ExactCase::Offcenter;
  else
    throw ConfigError("unknown mms case: " + case_name);

  const auto rows = verify::mms_study(which, cfg.sigma, cfg.dim, levels);
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(cfg.output_dir + "/mms.csv", std::ios::binary);
  out << "h,interior_error,full_error,rate,converged\n";
  for (const auto& r : rows) {
    out << fmt(r.h) << ',' << fmt(r.interior_error) << ',' << fmt(r.full_error)
        << ',' << (r.rate ? fmt(*r.rate) : "") << ',' << (r.converged ? 1 : 0)
        << '\n';
    std::cout << "h=" << fmt(r.h) << " interior_error=" << fmt(r.interior_error)
              << (r.rate ? " rate=" + fmt(*r.rate) : "")
              << (r.converged ? "" : " FAILED") << "\n";
  }
  return kOk;
}

int cmd_oracle_compare(const RunConfig& cfg) {
  const Grid grid = build_ball_grid(cfg.dim, cfg.h);
  const ProblemSpec spec = make_spec(cfg, grid);
  const double fmin = min_value(spec.f), fmax = max_value(spec.f);
  if (std::abs(fmax - fmin) > 1e-12)
    throw ConfigError("oracle-compare requires a constant f");
  const auto oracle = verify::radial_oracle(fmax, cfg.sigma, cfg.dim);
  ContinuationOptions opts;
  opts.newton_tol = cfg.newton_tol;
  opts.t_step = cfg.t_step;
  const ContinuationState state = run_continuation(spec, grid, opts);
  const int o = origin_node(grid);
  const double diff = std::abs(state.u[o] - oracle.at_zero());
  std::cout << "u_solver(0)=" << fmt(state.u[o])
            << " u_oracle(0)=" << fmt(oracle.at_zero()) << " diff=" << fmt(diff)
            << "\n";
  return kOk;
}

int cmd_uniqueness(const RunConfig& cfg, int seeds) {
  const Grid grid = build_ball_grid(cfg.dim, cfg.h);
  const ProblemSpec spec = make_spec(cfg, grid);
  ContinuationOptions opts;
  opts.newton_tol = cfg.newton_tol;
  run_continuation(spec, grid, opts);  // validates that the instance is solvable
  const double spread = uniqueness_probe(spec, grid, seeds, cfg.seed, opts);
  std::cout << "seeds=" << seeds << " max_pairwise_sup_distance=" << fmt(spread)
            << "\n";
  return kOk;
}

int cmd_verify(const std::string& which, int samples, unsigned long long seed) {
  using namespace maball::pointalg;
  if (which == "identity-n2" || which == "identity-n3") {
    const IdentityReport rep = which == "identity-n2"
                                   ? sample_n2_identity(samples, seed)
                                   : sample_n3_reduction(samples, seed);
    std::cout << which << ": samples=" << rep.samples
              << " max_relative_residual=" << fmt(rep.max_relative_residual) << "\n";
    if (rep.max_relative_residual >= 1e-12) {
      std::cout << which << ": FAILED (residual above 1e-12)\n";
      return kCounterexample;
    }
    return kOk;
  }
  if (which == "concavity-real") {
    const SampleReport rep = sample_concavity_real(samples, seed);
    std::cout << "concavity-real: samples=" << rep.samples
              << " worst_margin=" << fmt(rep.worst_margin) << "\n";
    if (rep.counterexample) {
      std::cout << "counterexample: lambda=(" << fmt(rep.witness_lambda[0]) << ','
                << fmt(rep.witness_lambda[1]) << ',' << fmt(rep.witness_lambda[2])
                << ") v=(" << fmt(rep.witness_v[0]) << ',' << fmt(rep.witness_v[1])
                << ',' << fmt(rep.witness_v[2]) << ")\n";
      return kCounterexample;
    }
    std::array<double, 3> wl{}, wv{};
    if (find_real_sharpness_witness(seed, &wl, &wv)) {
      std::cout << "sharpness witness (min lambda < 1): lambda=(" << fmt(wl[0])
                << ',' << fmt(wl[1]) << ',' << fmt(wl[2]) << ") v=(" << fmt(wv[0])
                << ',' << fmt(wv[1]) << ',' << fmt(wv[2]) << ")\n";
    } else {
      std::cout << "sharpness witness NOT found\n";
      return kCounterexample;
    }
    return kOk;
  }
  if (which == "concavity-complex") {
    const SampleReport rep = sample_concavity_complex(samples, seed);
    std::cout << "concavity-complex: samples=" << rep.samples
              << " worst_margin=" << fmt(rep.worst_margin) << "\n";
    return rep.counterexample ? kCounterexample : kOk;
  }
  throw ConfigError("unknown verify target: " + which);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuation solver and validators for det(D^2 u) + sigma Lap u = f "
               "on the unit ball"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mms_case = "quartic";
  int mms_levels = 3;
  int seeds = 3;
  std::string verify_target;
  int samples = 10000;
  unsigned long long seed = 0;

  auto* solve = app.add_subcommand("solve", "method-of-continuity run");
  solve->add_option("-c,--config", config_path, "config file")->required();

  auto* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  mms->add_option("-c,--config", config_path, "config file")->required();
  mms->add_option("--case", mms_case, "quadratic|quartic|offcenter");
  mms->add_option("--levels", mms_levels, "number of levels");

  auto* oracle = app.add_subcommand("oracle-compare", "compare against the radial oracle");
  oracle->add_option("-c,--config", config_path, "config file")->required();

  auto* uniq = app.add_subcommand("uniqueness", "perturbed-restart uniqueness probe");
  uniq->add_option("-c,--config", config_path, "config file")->required();
  uniq->add_option("--seeds", seeds, "number of restarts");

  auto* ver = app.add_subcommand("verify", "pointwise algebra certificates");
  ver->add_option("target", verify_target,
                  "concavity-real|concavity-complex|identity-n2|identity-n3")
      ->required();
  ver->add_option("--samples", samples, "sample count");
  ver->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (ver->parsed()) return cmd_verify(verify_target, samples, seed);
    RunConfig cfg = load_config_file(config_path);
    if (solve->parsed()) return cmd_solve(cfg);
    if (mms->parsed()) return cmd_mms(cfg, mms_case, mms_levels);
    if (oracle->parsed()) return cmd_oracle_compare(cfg);
    if (uniq->parsed()) return cmd_uniqueness(cfg, seeds);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ContinuationError& e) {
    std::cerr << e.what() << "\n";
    return e.kind == ContinuationError::Kind::Stalled ? kStalled
                                                      : kHypothesisViolated;
  } catch (const NewtonError& e) {
    std::cerr << e.what() << "\n";
    return kStalled;
  } catch (const LinearSolveError& e) {
    std::cerr << e.what() << " (residual " << e.achieved_residual << ")\n";
    return kStalled;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
