#pragma once

#include <optional>
#include <vector>

#include "maball/continuation.hpp"
#include "maball/fields.hpp"

namespace maball::verify {

enum class ExactCase { Quadratic, Quartic, Offcenter };

struct ConvergenceRow {
  double h;
  double interior_error;             // sup over nodes with |x| <= 0.8
  double full_error;                 // sup over all nodes, reported not gated
  std::optional<double> rate;        // log2 ratio vs the previous row
  bool converged = true;
  double min_hessian_eig = 0.0;      // hypothesis flag for the strict cases
  double min_pair_product = 0.0;
};

// Manufactured-solution study: solve G_sigma[u] = f with f computed from
// the closed form, report interior sup errors per level h = 2^{-k},
// k = 3, 4, ... A level that fails to converge is marked and the study
// continues.
std::vector<ConvergenceRow> mms_study(ExactCase which, double sigma, int dim,
                                      int levels, double quadratic_a = 4.0,
                                      int first_level = 3);

double exact_solution(ExactCase which, int dim, const std::array<double, 3>& x,
                      double quadratic_a = 4.0);
double exact_rhs(ExactCase which, double sigma, int dim,
                 const std::array<double, 3>& x, double quadratic_a = 4.0);

// Radial ODE oracle for constant-f instances in d = 3:
//   u'' (u'/r)^2 + sigma (u'' + 2 u'/r) = f,  u'(0) = 0,  u(1) = 0,
// solved by RK4 shooting on u(0) with bisection to |u(1)| < 1e-10.
class RadialSolution {
 public:
  RadialSolution(std::vector<double> r, std::vector<double> u);
  double operator()(double r) const;  // linear interpolation
  double at_zero() const { return u_.front(); }

 private:
  std::vector<double> r_, u_;
};

RadialSolution radial_oracle(double f_const, double sigma, int dim);

struct BarrierReport {
  double A = 0.0;
  double max_u = 0.0;
  double barrier_gap = 0.0;           // min of u - A (sum x_i^2 - 1)
  double max_normal_quotient = 0.0;   // one-sided quotient at boundary hits
  double max_laplacian = 0.0;         // sigma = +1 only
  double max_f = 0.0;
  bool max_principle_ok = false;      // (i)   u <= 0
  bool barrier_ok = false;            // (ii)  u >= A (sum x_i^2 - 1)
  bool normal_ok = false;             // (iii) quotient <= 2A
  bool laplacian_ok = true;           // (iv)  max Lap u <= max f (sigma = +1)
  bool all_ok() const {
    return max_principle_ok && barrier_ok && normal_ok && laplacian_ok;
  }
};

// The C0 / C1 / C2 comparison bounds applied to a computed solution.
// sigma = +1 uses A = max f / (2 d); sigma = -1 uses A = mu / 2.
BarrierReport barrier_check(const ScalarField& u, const ScalarField& f, double sigma,
                            double mu = 3.0, double tol = 1e-6);

}  // namespace maball::verify
