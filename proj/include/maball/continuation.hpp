#pragma once

#include <cstdint>
#include <vector>

#include "maball/diffops.hpp"
#include "maball/fields.hpp"

namespace maball {

// Target problem: G_sigma[u] = f on the ball, u = 0 on the sphere.
struct ProblemSpec {
  double sigma = 1.0;  // in {+1, 0, -1}
  ScalarField f;
  // mu of the starting quadratic phi0 = (mu/2)(r^2 - 1). 0 = pick the
  // default: mu = 3 for sigma = +1, otherwise the smallest mu with
  // G_sigma[phi0] = mu^d + sigma*d*mu > max f + 1.
  double initial_mu = 0.0;
  bool strict_hypotheses = false;
};

struct ContinuationOptions {
  double newton_tol = 1e-8;
  int newton_max_iter = 50;
  double t_step = 0.1;
  double t_step_min = 1e-4;
  double t_step_max = 0.25;
};

struct HistoryEntry {
  double t;
  int newton_iterations;
  double residual_sup;
  MonitorReport monitors;
};

struct ContinuationState {
  double t = 0.0;
  ScalarField u;
  double step = 0.1;
  std::vector<HistoryEntry> history;
};

struct NewtonResult {
  ScalarField u;
  int iterations = 0;
  double residual = 0.0;
};

// Resolve the default mu for a spec on a given grid (validates the spec).
double resolve_mu(const ProblemSpec& spec, const Grid& grid);

// phi0 = (mu/2)(sum x_i^2 - 1); G_sigma[phi0] is constant.
ScalarField initial_solution(const ProblemSpec& spec, const Grid& grid);

// Damped Newton for G_sigma[u] = rhs with Dirichlet zero data.
// Requires min_ellipticity(u0) > 0. Throws NewtonError on stall or loss
// of ellipticity.
NewtonResult newton_solve(const ProblemSpec& spec, const Grid& grid,
                          const ScalarField& rhs, const ScalarField& u0,
                          double tol = 1e-8, int max_iter = 50);

// Method of continuity along rhs(t) = t f + (1 - t) G_sigma[phi0], with
// warm-started Newton and adaptive step control. Throws ContinuationError
// when the step floor is hit or (strict mode) a theorem hypothesis fails.
ContinuationState run_continuation(const ProblemSpec& spec, const Grid& grid,
                                   const ContinuationOptions& opts = {});

// Re-solve the t = 1 problem from perturbed starts; returns the maximum
// pairwise sup-distance between converged solutions.
double uniqueness_probe(const ProblemSpec& spec, const Grid& grid, int n_seeds,
                        std::uint64_t seed = 0,
                        const ContinuationOptions& opts = {});

}  // namespace maball
