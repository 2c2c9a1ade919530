#include "maball/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "maball/errors.hpp"

namespace maball {

namespace {

void validate(const ProblemSpec& spec, const Grid& grid) {
  if (spec.sigma != 1.0 && spec.sigma != 0.0 && spec.sigma != -1.0)
    throw ConfigError("sigma must be +1, 0 or -1");
  if (spec.f.grid != &grid || spec.f.size() != grid.size())
    throw ConfigError("f is not defined on the given grid");
  for (double v : spec.f.values)
    if (!std::isfinite(v)) throw ConfigError("f has non-finite values");
  if (spec.strict_hypotheses) {
    const double fmin = min_value(spec.f);
    if (spec.sigma == 1.0 && !(fmin > 36.0))
      throw ContinuationError(ContinuationError::Kind::HypothesisViolated,
                              "hypothesis violated: strict mode requires f > 36",
                              0.0);
    if (spec.sigma <= 0.0 && !(fmin > 0.0))
      throw ContinuationError(ContinuationError::Kind::HypothesisViolated,
                              "hypothesis violated: strict mode requires f > 0",
                              0.0);
  }
}

double start_operator_value(double mu, int d, double sigma) {
  return std::pow(mu, d) + sigma * d * mu;
}

}  // namespace

double resolve_mu(const ProblemSpec& spec, const Grid& grid) {
  validate(spec, grid);
  const int d = grid.dim();
  if (spec.initial_mu != 0.0) {
    if (!(spec.initial_mu > 0.0)) throw ConfigError("initial_mu must be positive");
    if (spec.sigma == -1.0 &&
        !(start_operator_value(spec.initial_mu, d, -1.0) > max_value(spec.f)))
      throw ConfigError("initial_mu too small: need mu^d - d*mu > max f");
    return spec.initial_mu;
  }
  if (spec.sigma == 1.0) return 3.0;
  // Smallest mu with mu^d + sigma*d*mu > max f + 1 (bisection; the map is
  // increasing for mu^2 > 1, and we also keep mu above the convexity
  // margin sqrt(d) so the start is elliptic).
  const double target = max_value(spec.f) + 1.0;
  double lo = std::sqrt(static_cast<double>(d)) + 1e-9;
  double hi = std::max(lo + 1.0, 4.0);
  while (start_operator_value(hi, d, spec.sigma) <= target) hi *= 2.0;
  if (start_operator_value(lo, d, spec.sigma) > target) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (start_operator_value(mid, d, spec.sigma) > target ? hi : lo) = mid;
  }
  return hi;
}

ScalarField initial_solution(const ProblemSpec& spec, const Grid& grid) {
  const double mu = resolve_mu(spec, grid);
  ScalarField phi(grid);
  for (int n = 0; n < grid.size(); ++n)
    phi[n] = 0.5 * mu * (grid.radius_sq(n) - 1.0);
  return phi;
}

NewtonResult newton_solve(const ProblemSpec& spec, const Grid& grid,
                          const ScalarField& rhs, const ScalarField& u0,
                          double tol, int max_iter) {
  ScalarField u = u0;
  SymMatrixField h = hessian(u);
  if (!(min_ellipticity(h, spec.sigma) > 0.0))
    throw NewtonError(NewtonError::Kind::EllipticityLost,
                      "ellipticity lost: linearization at the start is not elliptic",
                      HUGE_VAL);
  ScalarField g = ma_operator(h, spec.sigma);

  auto residual_sup = [&](const ScalarField& gu) {
    double m = 0.0;
    for (int n = 0; n < grid.size(); ++n)
      m = std::max(m, std::abs(gu[n] - rhs[n]));
    return m;
  };

  double res = residual_sup(g);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (res <= tol) return {u, iter, res};

    const SparseOperator lin = assemble_linearization(h, spec.sigma);
    std::vector<double> b(grid.size());
    for (int n = 0; n < grid.size(); ++n) b[n] = rhs[n] - g[n];
    const std::vector<double> w = solve(lin, b);

    // Step halving on residual increase, at most 6 halvings.
    double alpha = 1.0;
    bool accepted = false;
    for (int halvings = 0; halvings <= 6; ++halvings, alpha *= 0.5) {
      ScalarField trial = u;
      for (int n = 0; n < grid.size(); ++n) trial[n] += alpha * w[n];
      SymMatrixField th = hessian(trial);
      ScalarField tg = ma_operator(th, spec.sigma);
      const double tres = residual_sup(tg);
      if (std::isfinite(tres) && tres < res) {
        u = std::move(trial);
        h = std::move(th);
        g = std::move(tg);
        res = tres;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw NewtonError(NewtonError::Kind::Stalled,
                        "newton stalled: no residual decrease", res);
    if (!(min_ellipticity(h, spec.sigma) > 0.0))
      throw NewtonError(NewtonError::Kind::EllipticityLost,
                        "ellipticity lost mid-iteration", res);
    if (res <= tol) return {u, iter + 1, res};
  }
  throw NewtonError(NewtonError::Kind::Stalled, "newton stalled: max_iter exceeded",
                    res);
}

ContinuationState run_continuation(const ProblemSpec& spec, const Grid& grid,
                                   const ContinuationOptions& opts) {
  validate(spec, grid);
  ContinuationState state;
  state.u = initial_solution(spec, grid);
  state.t = 0.0;
  state.step = opts.t_step;

  // rhs(0) must equal G_sigma[phi0] exactly, so the path endpoints come
  // from the evaluated field, combined convexly at each step.
  const ScalarField g0 = ma_operator(state.u, spec.sigma);

  auto check_hypotheses = [&](const MonitorReport& m, double t) {
    if (!spec.strict_hypotheses) return;
    const bool bad = spec.sigma == 1.0
                         ? m.min_hessian_eig <= 3.0
                         : (m.min_hessian_eig <= 0.0 || m.min_cone_gap <= 0.0);
    if (bad)
      throw ContinuationError(ContinuationError::Kind::HypothesisViolated,
                              "hypothesis violated along the path", t);
  };

  auto rhs_at = [&](double t) {
    ScalarField r(grid);
    for (int n = 0; n < grid.size(); ++n)
      r[n] = t * spec.f[n] + (1.0 - t) * g0[n];
    return r;
  };

  {
    // The start phi0 has hessian exactly mu I (min eig 3 when mu = 3), so
    // strict thresholds apply to the accepted Newton steps, not the seed.
    const MonitorReport m0 = monitors(state.u, spec.sigma, g0);
    state.history.push_back({0.0, 0, m0.residual_sup, m0});
  }

  while (state.t < 1.0) {
    const double t_next = std::min(1.0, state.t + state.step);
    const ScalarField rhs = rhs_at(t_next);
    bool ok = false;
    NewtonResult nr;
    try {
      nr = newton_solve(spec, grid, rhs, state.u, opts.newton_tol,
                        opts.newton_max_iter);
      ok = true;
    } catch (const NewtonError&) {
      ok = false;
    }
    if (ok) {
      state.u = nr.u;
      state.t = t_next;
      const MonitorReport m = monitors(state.u, spec.sigma, rhs);
      state.history.push_back({t_next, nr.iterations, nr.residual, m});
      check_hypotheses(m, t_next);
      if (nr.iterations <= 3)
        state.step = std::min(opts.t_step_max, state.step * 2.0);
    } else {
      state.step *= 0.5;
      if (state.step < opts.t_step_min)
        throw ContinuationError(ContinuationError::Kind::Stalled,
                                "continuation stalled: step floor reached",
                                state.t);
    }
  }
  return state;
}

double uniqueness_probe(const ProblemSpec& spec, const Grid& grid, int n_seeds,
                        std::uint64_t seed, const ContinuationOptions& opts) {
  if (n_seeds < 1) throw ConfigError("uniqueness_probe: need n_seeds >= 1");
  const ScalarField phi0 = initial_solution(spec, grid);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  std::vector<ScalarField> solutions;
  for (int s = 0; s < n_seeds; ++s) {
    // Smooth perturbation vanishing on the sphere; first seed is phi0 itself.
    ScalarField start = phi0;
    if (s > 0) {
      std::array<double, 3> wv{2.0 * uni(rng), 2.0 * uni(rng), 2.0 * uni(rng)};
      const double phase = M_PI * uni(rng);
      double delta = 0.1 * (1.0 + sup_norm(phi0));
      for (int attempt = 0; attempt < 30; ++attempt) {
        ScalarField trial = phi0;
        for (int n = 0; n < grid.size(); ++n) {
          const auto& x = grid.coord(n);
          const double bump = (1.0 - grid.radius_sq(n)) *
                              std::cos(wv[0] * x[0] + wv[1] * x[1] + wv[2] * x[2] +
                                       phase);
          trial[n] += delta * bump;
        }
        if (min_ellipticity(hessian(trial), spec.sigma) > 0.0) {
          start = std::move(trial);
          break;
        }
        delta *= 0.5;  // shrink until ellipticity holds at the start
      }
    }
    try {
      NewtonResult nr = newton_solve(spec, grid, spec.f, start, opts.newton_tol,
                                     opts.newton_max_iter);
      solutions.push_back(std::move(nr.u));
    } catch (const NewtonError&) {
      // failed restarts are reported by the caller via the count drop
    }
  }

  double worst = 0.0;
  for (size_t a = 0; a < solutions.size(); ++a) {
    for (size_t b = a + 1; b < solutions.size(); ++b) {
      double dist = 0.0;
      for (int n = 0; n < grid.size(); ++n)
        dist = std::max(dist, std::abs(solutions[a][n] - solutions[b][n]));
      worst = std::max(worst, dist);
    }
  }
  return worst;
}

}  // namespace maball
