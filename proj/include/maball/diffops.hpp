#pragma once

#include "maball/fields.hpp"
#include "maball/sparse.hpp"

namespace maball {

// Per-node extrema of the quantities the continuation driver tracks.
struct MonitorReport {
  double min_hessian_eig = 0.0;
  double max_hessian_eig = 0.0;
  // min over nodes and eigenvalue pairs i < j of lambda_i * lambda_j - 1.
  double min_pair_product = 0.0;
  // min over nodes of det(D2u) - tr(D2u).
  double min_cone_gap = 0.0;
  // min over nodes of lambda_min(cof(D2u) + sigma * I).
  double min_ellipticity = 0.0;
  double residual_sup = 0.0;
};

// Apply a stencil to a field; boundary entries carry Dirichlet value 0.
double apply_stencil(const StencilWeights& st, const ScalarField& u);

// Discrete Hessian, one symmetric matrix per node.
SymMatrixField hessian(const ScalarField& u);

// G_sigma[u] = det(D2u) + sigma * tr(D2u), per node.
ScalarField ma_operator(const ScalarField& u, double sigma);
ScalarField ma_operator(const SymMatrixField& hess, double sigma);

// Linearization of G_sigma at u: w -> tr(cof(D2u) D2w) + sigma * Lap w,
// Dirichlet rows eliminated. The adjugate is used instead of
// det * inverse so singular Hessians assemble cleanly.
SparseOperator assemble_linearization(const ScalarField& u, double sigma);
SparseOperator assemble_linearization(const SymMatrixField& hess, double sigma);

MonitorReport monitors(const ScalarField& u, double sigma, const ScalarField& rhs);
// Variant reusing a precomputed Hessian and operator value G_sigma[u].
MonitorReport monitors(const SymMatrixField& hess, double sigma,
                       const ScalarField& g_of_u, const ScalarField& rhs);

// lambda_min(cof(D2u) + sigma I) over all nodes; the linearization is
// elliptic iff this is positive.
double min_ellipticity(const SymMatrixField& hess, double sigma);

}  // namespace maball
