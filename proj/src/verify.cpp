#include "maball/verify.hpp"

#include <algorithm>
#include <cmath>

#include "maball/errors.hpp"

namespace maball::verify {

namespace {

double r2_of(const std::array<double, 3>& x, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += x[i] * x[i];
  return s;
}

constexpr double kOffcenterEps = 0.1;

}  // namespace

double exact_solution(ExactCase which, int dim, const std::array<double, 3>& x,
                      double quadratic_a) {
  const double r2 = r2_of(x, dim);
  switch (which) {
    case ExactCase::Quadratic:
      return 0.5 * quadratic_a * (r2 - 1.0);
    case ExactCase::Quartic:
      return 0.25 * (r2 * r2 - 1.0);
    case ExactCase::Offcenter:
      return (r2 - 1.0) * (1.5 + kOffcenterEps * x[0]);
  }
  return 0.0;
}

double exact_rhs(ExactCase which, double sigma, int dim,
                 const std::array<double, 3>& x, double quadratic_a) {
  const double r2 = r2_of(x, dim);
  switch (which) {
    case ExactCase::Quadratic:
      return std::pow(quadratic_a, dim) + sigma * dim * quadratic_a;
    case ExactCase::Quartic:
      // Hessian of (r^4 - 1)/4 is r^2 I + 2 x x^T: radial eigenvalue 3 r^2,
      // tangential r^2.
      return dim == 3 ? 3.0 * r2 * r2 * r2 + sigma * 5.0 * r2
                      : 3.0 * r2 * r2 + sigma * 4.0 * r2;
    case ExactCase::Offcenter: {
      // u = (r^2 - 1) q with q = 3/2 + e x1: D2u = 2q I + 2e (x e1^T + e1 x^T).
      // The rank-2 part has eigenvalues 2e (x1 +- r), zero otherwise.
      const double e = kOffcenterEps;
      const double c = 2.0 * (1.5 + e * x[0]);
      const double det = (dim == 3 ? c : 1.0) *
                         ((c + 2.0 * e * x[0]) * (c + 2.0 * e * x[0]) -
                          4.0 * e * e * r2);
      const double trace = dim * c + 4.0 * e * x[0];
      return det + sigma * trace;
    }
  }
  return 0.0;
}

std::vector<ConvergenceRow> mms_study(ExactCase which, double sigma, int dim,
                                      int levels, double quadratic_a,
                                      int first_level) {
  std::vector<ConvergenceRow> rows;
  for (int k = first_level; k < first_level + levels; ++k) {
    const double h = std::ldexp(1.0, -k);
    const Grid grid = build_ball_grid(dim, h);
    ScalarField f(grid), u_exact(grid);
    for (int n = 0; n < grid.size(); ++n) {
      f[n] = exact_rhs(which, sigma, dim, grid.coord(n), quadratic_a);
      u_exact[n] = exact_solution(which, dim, grid.coord(n), quadratic_a);
    }
    ProblemSpec spec;
    spec.sigma = sigma;
    spec.f = f;
    spec.strict_hypotheses = false;

    ConvergenceRow row;
    row.h = h;
    ScalarField u;
    bool ok = false;
    try {
      const ScalarField phi0 = initial_solution(spec, grid);
      u = newton_solve(spec, grid, f, phi0, 1e-10, 60).u;
      ok = true;
    } catch (const NewtonError&) {
      // fall back to a homotopy from the solvable quadratic start
      try {
        ContinuationOptions opts;
        opts.newton_tol = 1e-10;
        u = run_continuation(spec, grid, opts).u;
        ok = true;
      } catch (const ContinuationError&) {
        ok = false;
      }
    }
    row.converged = ok;
    const ScalarField& probe = ok ? u : u_exact;
    {
      const MonitorReport m = monitors(probe, sigma, f);
      row.min_hessian_eig = m.min_hessian_eig;
      row.min_pair_product = m.min_pair_product;
    }
    if (ok) {
      double interior = 0.0, full = 0.0;
      for (int n = 0; n < grid.size(); ++n) {
        const double e = std::abs(u[n] - u_exact[n]);
        full = std::max(full, e);
        if (grid.radius_sq(n) <= 0.8 * 0.8) interior = std::max(interior, e);
      }
      row.interior_error = interior;
      row.full_error = full;
      if (!rows.empty() && rows.back().converged && interior > 0.0)
        row.rate = std::log2(rows.back().interior_error / interior);
    }
    rows.push_back(row);
  }
  return rows;
}

RadialSolution::RadialSolution(std::vector<double> r, std::vector<double> u)
    : r_(std::move(r)), u_(std::move(u)) {}

double RadialSolution::operator()(double r) const {
  if (r <= r_.front()) return u_.front();
  if (r >= r_.back()) return u_.back();
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const size_t i = it - r_.begin();
  const double w = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
  return (1.0 - w) * u_[i - 1] + w * u_[i];
}

RadialSolution radial_oracle(double f_const, double sigma, int dim) {
  if (dim != 3 || sigma != 1.0)
    throw ConfigError("radial_oracle: only sigma = +1, dim = 3 is supported");
  if (!(f_const > 0.0)) throw ConfigError("radial_oracle: f must be positive");

  // Near r = 0 the regular solution behaves like u' = c r with
  // c^3 + 3 c = f; start the integration from that series.
  double c = std::cbrt(f_const);
  for (int it = 0; it < 100; ++it) {
    const double g = c * c * c + 3.0 * c - f_const;
    c -= g / (3.0 * c * c + 3.0);
  }

  const int steps = 8192;
  const double r0 = 1e-6;
  const double dr = (1.0 - r0) / steps;
  auto slope = [&](double r, double v) {
    const double s = v / r;
    return (f_const - sigma * 2.0 * s) / (s * s + sigma);
  };

  std::vector<double> rs, vs;
  rs.reserve(steps + 2);
  vs.reserve(steps + 2);
  rs.push_back(0.0);
  vs.push_back(0.0);
  double r = r0, v = c * r0;
  rs.push_back(r);
  vs.push_back(v);
  for (int i = 0; i < steps; ++i) {
    const double k1 = slope(r, v);
    const double k2 = slope(r + 0.5 * dr, v + 0.5 * dr * k1);
    const double k3 = slope(r + 0.5 * dr, v + 0.5 * dr * k2);
    const double k4 = slope(r + dr, v + dr * k3);
    v += dr / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    r += dr;
    rs.push_back(r);
    vs.push_back(v);
  }

  // Cumulative integral of u' (trapezoid on the fine mesh).
  std::vector<double> integral(rs.size(), 0.0);
  for (size_t i = 1; i < rs.size(); ++i)
    integral[i] =
        integral[i - 1] + 0.5 * (vs[i] + vs[i - 1]) * (rs[i] - rs[i - 1]);

  // Shoot on a = u(0), bisecting until |u(1)| < 1e-10.
  const double tail = integral.back();
  double lo = -std::abs(tail) - 1.0, hi = std::abs(tail) + 1.0;
  if (lo + tail > 0.0 || hi + tail < 0.0)
    throw ConfigError("radial_oracle: shooting bracket not found");
  double a = 0.0;
  for (int it = 0; it < 200; ++it) {
    a = 0.5 * (lo + hi);
    const double end = a + tail;
    if (std::abs(end) < 1e-12) break;
    (end > 0.0 ? hi : lo) = a;
  }
  if (!(std::abs(a + tail) < 1e-10))
    throw ConfigError("radial_oracle: shooting did not converge");

  std::vector<double> us(rs.size());
  for (size_t i = 0; i < rs.size(); ++i) us[i] = a + integral[i];
  return RadialSolution(std::move(rs), std::move(us));
}

BarrierReport barrier_check(const ScalarField& u, const ScalarField& f, double sigma,
                            double mu, double tol) {
  const Grid& g = *u.grid;
  const int d = g.dim();
  BarrierReport rep;
  rep.max_f = max_value(f);
  rep.A = sigma == -1.0 ? 0.5 * mu : rep.max_f / (2.0 * d);

  rep.max_u = max_value(u);
  rep.max_principle_ok = rep.max_u <= tol;

  double gap = 1e300;
  for (int n = 0; n < g.size(); ++n)
    gap = std::min(gap, u[n] - rep.A * (g.radius_sq(n) - 1.0));
  rep.barrier_gap = gap;
  rep.barrier_ok = gap >= -tol;

  double quot = 0.0;
  for (int n = 0; n < g.size(); ++n)
    for (int axis = 0; axis < d; ++axis)
      for (int dir = 0; dir < 2; ++dir) {
        const AxisLink& l = g.link(n, axis, dir);
        if (l.is_boundary())
          quot = std::max(quot, std::abs(u[n]) / (l.theta * g.spacing()));
      }
  rep.max_normal_quotient = quot;
  rep.normal_ok = quot <= 2.0 * rep.A + tol;

  if (sigma == 1.0) {
    const SymMatrixField h = hessian(u);
    double lap = -1e300;
    for (const auto& m : h.values) lap = std::max(lap, m.trace());
    rep.max_laplacian = lap;
    rep.laplacian_ok = lap <= rep.max_f + tol;
  }
  return rep;
}

}  // namespace maball::verify
