#include "maball/sparse.hpp"

#include <Eigen/Sparse>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>

#include "maball/errors.hpp"

namespace maball {

namespace {

using EigenCsc = Eigen::SparseMatrix<double>;

EigenCsc to_eigen(const SparseOperator& A) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(A.val.size());
  for (int r = 0; r < A.n; ++r)
    for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k)
      trip.emplace_back(r, A.col[k], A.val[k]);
  EigenCsc m(A.n, A.n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

double residual_norm(const SparseOperator& A, const std::vector<double>& x,
                     const std::vector<double>& b) {
  const auto ax = A.apply(x);
  double s = 0.0;
  for (int i = 0; i < A.n; ++i) s += (ax[i] - b[i]) * (ax[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

SparseOperator SparseOperator::from_rows(
    std::vector<std::vector<std::pair<int, double>>> rows) {
  SparseOperator A;
  A.n = static_cast<int>(rows.size());
  A.row_ptr.assign(A.n + 1, 0);
  for (int r = 0; r < A.n; ++r) {
    auto& row = rows[r];
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    for (const auto& e : row) {
      if (!merged.empty() && merged.back().first == e.first)
        merged.back().second += e.second;
      else
        merged.push_back(e);
    }
    bool has_diag = false;
    for (const auto& e : merged) has_diag |= e.first == r;
    if (!has_diag) {
      merged.push_back({r, 0.0});
      std::sort(merged.begin(), merged.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (const auto& e : merged) {
      A.col.push_back(e.first);
      A.val.push_back(e.second);
    }
    A.row_ptr[r + 1] = static_cast<int>(A.col.size());
  }
  return A;
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(n, 0.0);
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) s += val[k] * x[col[k]];
    y[r] = s;
  }
  return y;
}

std::vector<double> solve(const SparseOperator& A, const std::vector<double>& b,
                          double tol, int max_iter, SolveMethod method) {
  if (A.n == 0) return {};
  if (static_cast<int>(b.size()) != A.n)
    throw ConfigError("solve: dimension mismatch");

  const EigenCsc m = to_eigen(A);
  Eigen::Map<const Eigen::VectorXd> bv(b.data(), A.n);
  const double bnorm = bv.norm();
  if (bnorm == 0.0) return std::vector<double>(A.n, 0.0);

  Eigen::VectorXd x;
  bool have = false;

  auto good = [&](const Eigen::VectorXd& xx) {
    const Eigen::VectorXd r = m * xx - bv;
    return r.allFinite() && r.norm() <= tol * bnorm;
  };

  const bool want_direct =
      method == SolveMethod::Direct || (method == SolveMethod::Auto && A.n <= 2000);

  if (method != SolveMethod::Direct && !want_direct) {
    // Diagonal-preconditioned BiCGStab first; cheap and usually sufficient
    // for these elliptic stencil matrices.
    Eigen::BiCGSTAB<EigenCsc, Eigen::DiagonalPreconditioner<double>> it;
    it.setTolerance(tol * 0.1);
    it.setMaxIterations(max_iter);
    it.compute(m);
    x = it.solve(bv);
    have = good(x);
    if (!have) {
      Eigen::BiCGSTAB<EigenCsc, Eigen::IncompleteLUT<double>> ilut;
      ilut.preconditioner().setDroptol(1e-5);
      ilut.preconditioner().setFillfactor(8);
      ilut.setTolerance(tol * 0.1);
      ilut.setMaxIterations(max_iter);
      ilut.compute(m);
      x = ilut.solve(bv);
      have = good(x);
    }
  }

  if (!have && (want_direct || A.n <= 200000) && method != SolveMethod::Iterative) {
    Eigen::SparseLU<EigenCsc> lu;
    lu.compute(m);
    if (lu.info() == Eigen::Success) {
      x = lu.solve(bv);
      // One step of iterative refinement.
      if (x.allFinite()) x += lu.solve(bv - m * x);
      have = good(x);
    }
  }

  if (!have) {
    const double achieved =
        x.size() == A.n && x.allFinite() ? (m * x - bv).norm() / bnorm : INFINITY;
    throw LinearSolveError("linear solve failed", achieved);
  }
  return std::vector<double>(x.data(), x.data() + A.n);
}

}  // namespace maball
