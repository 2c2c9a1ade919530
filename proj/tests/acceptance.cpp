// Acceptance suite: one PASS/FAIL line per criterion, exit 1 on any failure.
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "maball/continuation.hpp"
#include "maball/diffops.hpp"
#include "maball/fields.hpp"
#include "maball/grid.hpp"
#include "maball/pointalg.hpp"
#include "maball/verify.hpp"

using namespace maball;

namespace {

int failures = 0;

void report(int id, const char* what, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what,
              detail.c_str());
  if (!ok) ++failures;
}

ScalarField quadratic_phi(const Grid& g, double mu) {
  return sample(g, [&](const std::array<double, 3>& x) {
    double r2 = 0.0;
    for (int i = 0; i < g.dim(); ++i) r2 += x[i] * x[i];
    return 0.5 * mu * (r2 - 1.0);
  });
}

double sup_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i)
    m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

int main() {
  // Shared runs reused across criteria.
  const Grid g3 = build_ball_grid(3, 1.0 / 16);
  const Grid g2 = build_ball_grid(2, 1.0 / 32);

  // --- 1: path anchor. G_{+1}[phi0] with mu=3 in d=3 is exactly 36 at
  // every node of the h=1/16 grid.
  try {
    const ScalarField gval = ma_operator(quadratic_phi(g3, 3.0), 1.0);
    double dev = 0.0;
    for (double v : gval.values) dev = std::max(dev, std::abs(v - 36.0));
    report(1, "G[phi0] == 36 anchor (d=3, h=1/16)", dev <= 1e-9,
           "max |G - 36| = " + fmt(dev) + ", tol 1e-9");
  } catch (const std::exception& e) {
    report(1, "G[phi0] == 36 anchor (d=3, h=1/16)", false, e.what());
  }

  // --- 2: quadratic recovery, both signs, mu in {3, 3.5, 4, 5}, h=1/16.
  try {
    double worst = 0.0;
    for (double mu : {3.0, 3.5, 4.0, 5.0})
      for (double sigma : {1.0, -1.0}) {
        const double gv = mu * mu * mu + sigma * 3.0 * mu;
        ProblemSpec sp;
        sp.sigma = sigma;
        sp.f = constant_field(g3, gv);
        sp.initial_mu = (sigma < 0.0 ? std::max(mu, 3.0) + 1.0 : 0.0);
        const ContinuationState st = run_continuation(sp, g3);
        worst = std::max(worst, sup_diff(st.u, quadratic_phi(g3, mu)));
      }
    report(2, "quadratic recovery sup error (8 instances)", worst < 1e-10,
           "worst sup = " + fmt(worst) + ", tol 1e-10");
  } catch (const std::exception& e) {
    report(2, "quadratic recovery sup error (8 instances)", false, e.what());
  }

  // --- 3 & 4: sigma=+1, d=3, f=48 continuation; compare u(0) to the radial
  // oracle; hessian monitor stays above 3 on every accepted step.
  ContinuationState run3;
  bool run3_ok = false;
  try {
    ProblemSpec sp;
    sp.sigma = 1.0;
    sp.f = constant_field(g3, 48.0);
    sp.strict_hypotheses = true;
    run3 = run_continuation(sp, g3);
    run3_ok = (run3.t == 1.0);
    const double res = run3.history.back().residual_sup;
    const verify::RadialSolution oracle = verify::radial_oracle(48.0, 1.0, 3);
    const int center = g3.node_at({0, 0, 0});
    const double diff = std::abs(run3.u.values[center] - oracle.at_zero());
    report(3, "f=48 run matches the radial oracle at the origin",
           run3_ok && res <= 1e-8 && diff <= 2e-3,
           "residual = " + fmt(res) + ", |u(0) - oracle| = " + fmt(diff) +
               ", tols 1e-8 / 2e-3");
  } catch (const std::exception& e) {
    report(3, "f=48 run matches the radial oracle at the origin", false, e.what());
  }
  {
    bool ok = run3_ok && !run3.history.empty();
    double lowest = 1e300;
    for (const HistoryEntry& e : run3.history)
      if (e.t > 0.0) lowest = std::min(lowest, e.monitors.min_hessian_eig);
    ok = ok && lowest > 3.0;
    report(4, "D^2 u > 3 on all accepted steps of the f=48 run", ok,
           "min over path = " + fmt(run3_ok ? lowest : 0.0) + ", need > 3");
  }

  // --- 5: sigma=-1, d=2, h=1/32, f=1 and f=1+x1^2; strict hypotheses.
  std::vector<ContinuationState> run5;
  try {
    bool ok = true;
    std::string detail;
    for (int variant = 0; variant < 2; ++variant) {
      ProblemSpec sp;
      sp.sigma = -1.0;
      sp.f = variant == 0 ? constant_field(g2, 1.0)
                          : sample(g2, [](const std::array<double, 3>& x) {
                              return 1.0 + x[0] * x[0];
                            });
      sp.strict_hypotheses = true;
      const ContinuationState st = run_continuation(sp, g2);
      run5.push_back(st);
      double min_eig = 1e300, min_gap = 1e300;
      for (const HistoryEntry& e : st.history) {
        min_eig = std::min(min_eig, e.monitors.min_hessian_eig);
        min_gap = std::min(min_gap, e.monitors.min_cone_gap);
      }
      const double res = st.history.back().residual_sup;
      const bool this_ok = st.t == 1.0 && res <= 1e-8 && min_eig > 0.0 &&
                           min_gap > 0.0 && max_value(st.u) <= 0.0;
      ok = ok && this_ok;
      detail += (variant ? "; " : "") + std::string(variant ? "f=1+x1^2" : "f=1") +
                ": res " + fmt(res) + ", min eig " + fmt(min_eig) + ", min gap " +
                fmt(min_gap);
    }
    report(5, "sigma=-1 d=2 runs keep the cone hypotheses", ok, detail);
  } catch (const std::exception& e) {
    report(5, "sigma=-1 d=2 runs keep the cone hypotheses", false, e.what());
  }

  // --- 6: uniqueness probe, 3 perturbed restarts on instances 3 and 5.
  try {
    ProblemSpec sp3;
    sp3.sigma = 1.0;
    sp3.f = constant_field(g3, 48.0);
    const double d3 = uniqueness_probe(sp3, g3, 3, 0);
    ProblemSpec sp5;
    sp5.sigma = -1.0;
    sp5.f = constant_field(g2, 1.0);
    const double d5 = uniqueness_probe(sp5, g2, 3, 0);
    report(6, "uniqueness: perturbed restarts coincide",
           d3 < 1e-6 && d5 < 1e-6,
           "spreads " + fmt(d3) + " / " + fmt(d5) + ", tol 1e-6");
  } catch (const std::exception& e) {
    report(6, "uniqueness: perturbed restarts coincide", false, e.what());
  }

  // --- 7: concavity certificates, 1e4 samples each, plus sharpness witness.
  try {
    const pointalg::SampleReport rr = pointalg::sample_concavity_real(10000, 20260826);
    const pointalg::SampleReport rc =
        pointalg::sample_concavity_complex(10000, 20260826);
    std::array<double, 3> wl{}, wv{};
    const bool witness = pointalg::find_real_sharpness_witness(20260826, &wl, &wv);
    const bool wneg =
        witness && pointalg::concavity_form_real(wl, wv).value < 0.0;
    report(7, "concavity certificates (real + complex) and sharpness witness",
           !rr.counterexample && !rc.counterexample && wneg,
           "real margin " + fmt(rr.worst_margin) + ", complex margin " +
               fmt(rc.worst_margin) + ", witness value " +
               (witness ? fmt(pointalg::concavity_form_real(wl, wv).value)
                        : std::string("none")));
  } catch (const std::exception& e) {
    report(7, "concavity certificates (real + complex) and sharpness witness",
           false, e.what());
  }

  // --- 8: identity certificates, 1e3 tuples, relative residual < 1e-12.
  try {
    const pointalg::IdentityReport i2 = pointalg::sample_n2_identity(1000, 31415);
    const pointalg::IdentityReport i3 = pointalg::sample_n3_reduction(1000, 31415);
    report(8, "determinant identity certificates (n=2 and n=3)",
           i2.max_relative_residual < 1e-12 && i3.max_relative_residual < 1e-12,
           "max rel residuals " + fmt(i2.max_relative_residual) + " / " +
               fmt(i3.max_relative_residual) + ", tol 1e-12");
  } catch (const std::exception& e) {
    report(8, "determinant identity certificates (n=2 and n=3)", false, e.what());
  }

  // --- 9: MMS quartic, sigma=+1, d=3, h = 1/8, 1/16, 1/32, interior rate.
  try {
    const auto rows = verify::mms_study(verify::ExactCase::Quartic, 1.0, 3, 3, 4.0, 3);
    bool ok = rows.size() == 3;
    for (const auto& r : rows) ok = ok && r.converged;
    const double rate = (ok && rows[2].rate) ? *rows[2].rate : 0.0;
    ok = ok && rate >= 1.7;
    report(9, "MMS quartic d=3 interior convergence rate", ok,
           "rate(1/16 -> 1/32) = " + fmt(rate) + ", need >= 1.7");
  } catch (const std::exception& e) {
    report(9, "MMS quartic d=3 interior convergence rate", false, e.what());
  }

  // --- 10: barrier checks on the endpoints of runs 3 and 5.
  try {
    bool ok = run3_ok && run5.size() == 2;
    std::string detail;
    if (run3_ok) {
      const double tol3 = 1e-6 + 10.0 * (1.0 / 16) * (1.0 / 16);
      const verify::BarrierReport b3 =
          verify::barrier_check(run3.u, constant_field(g3, 48.0), 1.0, 3.0, tol3);
      ok = ok && b3.all_ok();
      detail += "run3 gap " + fmt(b3.barrier_gap) + ", quotient " +
                fmt(b3.max_normal_quotient);
    }
    if (run5.size() == 2) {
      const double tol2 = 1e-6 + 10.0 * (1.0 / 32) * (1.0 / 32);
      for (int variant = 0; variant < 2; ++variant) {
        ProblemSpec sp;
        sp.sigma = -1.0;
        sp.f = variant == 0 ? constant_field(g2, 1.0)
                            : sample(g2, [](const std::array<double, 3>& x) {
                                return 1.0 + x[0] * x[0];
                              });
        const double mu = resolve_mu(sp, g2);
        const verify::BarrierReport b =
            verify::barrier_check(run5[variant].u, sp.f, -1.0, mu, tol2);
        ok = ok && b.all_ok();
        detail += std::string("; run5[") + (variant ? "1" : "0") + "] gap " +
                  fmt(b.barrier_gap);
      }
    }
    report(10, "barrier comparison bounds on the solver endpoints", ok, detail);
  } catch (const std::exception& e) {
    report(10, "barrier comparison bounds on the solver endpoints", false, e.what());
  }

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
