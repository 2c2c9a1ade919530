#include "maball/diffops.hpp"

#include <algorithm>
#include <cmath>

#include "maball/eig.hpp"

namespace maball {

double apply_stencil(const StencilWeights& st, const ScalarField& u) {
  double s = 0.0;
  for (const auto& e : st.interior) s += e.weight * u[e.node];
  // boundary entries multiply the Dirichlet value 0
  return s;
}

SymMatrixField hessian(const ScalarField& u) {
  const Grid& g = *u.grid;
  const int d = g.dim();
  SymMatrixField h(g);
  for (int n = 0; n < g.size(); ++n) {
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        const double v = apply_stencil(g.second_derivative_stencil(n, i, j), u);
        h[n](i, j) = v;
        h[n](j, i) = v;
      }
    }
  }
  return h;
}

ScalarField ma_operator(const SymMatrixField& hess, double sigma) {
  ScalarField out(*hess.grid);
  for (int n = 0; n < out.size(); ++n)
    out[n] = hess[n].det() + sigma * hess[n].trace();
  return out;
}

ScalarField ma_operator(const ScalarField& u, double sigma) {
  return ma_operator(hessian(u), sigma);
}

SparseOperator assemble_linearization(const SymMatrixField& hess, double sigma) {
  const Grid& g = *hess.grid;
  const int d = g.dim();
  std::vector<std::vector<std::pair<int, double>>> rows(g.size());
  for (int n = 0; n < g.size(); ++n) {
    const SymMat c = hess[n].cof();
    auto& row = rows[n];
    row.reserve(6 * d);
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        double coeff = c(i, j) + (i == j ? sigma : 0.0);
        if (i != j) coeff *= 2.0;  // off-diagonal pair appears twice in the trace
        if (coeff == 0.0) continue;
        for (const auto& e : g.second_derivative_stencil(n, i, j).interior)
          row.emplace_back(e.node, coeff * e.weight);
      }
    }
  }
  return SparseOperator::from_rows(std::move(rows));
}

SparseOperator assemble_linearization(const ScalarField& u, double sigma) {
  return assemble_linearization(hessian(u), sigma);
}

double min_ellipticity(const SymMatrixField& hess, double sigma) {
  const int d = hess.grid->dim();
  double m = 1e300;
  for (const auto& h : hess.values) {
    const auto ev = sym_eigenvalues(h);
    for (int i = 0; i < d; ++i) {
      double cof_eig = 1.0;
      for (int j = 0; j < d; ++j)
        if (j != i) cof_eig *= ev[j];
      m = std::min(m, cof_eig + sigma);
    }
  }
  return m;
}

MonitorReport monitors(const SymMatrixField& hess, double sigma,
                       const ScalarField& g_of_u, const ScalarField& rhs) {
  const int d = hess.grid->dim();
  MonitorReport r;
  r.min_hessian_eig = 1e300;
  r.max_hessian_eig = -1e300;
  r.min_pair_product = 1e300;
  r.min_cone_gap = 1e300;
  r.min_ellipticity = 1e300;
  for (int n = 0; n < static_cast<int>(hess.values.size()); ++n) {
    const SymMat& h = hess[n];
    const auto ev = sym_eigenvalues(h);
    r.min_hessian_eig = std::min(r.min_hessian_eig, ev[0]);
    r.max_hessian_eig = std::max(r.max_hessian_eig, ev[d - 1]);
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        r.min_pair_product = std::min(r.min_pair_product, ev[i] * ev[j] - 1.0);
    r.min_cone_gap = std::min(r.min_cone_gap, h.det() - h.trace());
    for (int i = 0; i < d; ++i) {
      double cof_eig = 1.0;
      for (int j = 0; j < d; ++j)
        if (j != i) cof_eig *= ev[j];
      r.min_ellipticity = std::min(r.min_ellipticity, cof_eig + sigma);
    }
    r.residual_sup = std::max(r.residual_sup, std::abs(g_of_u[n] - rhs[n]));
  }
  return r;
}

MonitorReport monitors(const ScalarField& u, double sigma, const ScalarField& rhs) {
  const SymMatrixField h = hessian(u);
  return monitors(h, sigma, ma_operator(h, sigma), rhs);
}

}  // namespace maball
