#pragma once

#include <vector>

namespace maball {

// Row-compressed sparse matrix over the interior nodes. Entries within a
// row are sorted by column, no duplicates, diagonal always present.
struct SparseOperator {
  int n = 0;
  std::vector<int> row_ptr;  // n + 1 offsets
  std::vector<int> col;
  std::vector<double> val;

  // Assemble from per-row (col, value) lists; merges duplicates, sorts,
  // and inserts an explicit zero diagonal where missing.
  static SparseOperator from_rows(std::vector<std::vector<std::pair<int, double>>> rows);

  std::vector<double> apply(const std::vector<double>& x) const;
};

enum class SolveMethod { Auto, Direct, Iterative };

// Solve A x = b to ||Ax - b||_2 <= tol * ||b||_2. Nonsymmetric systems:
// sparse LU for small n, preconditioned BiCGStab otherwise, with an LU
// fallback if the Krylov iteration stagnates. The residual contract is
// verified on every return. Throws LinearSolveError on failure.
std::vector<double> solve(const SparseOperator& A, const std::vector<double>& b,
                          double tol = 1e-10, int max_iter = 2000,
                          SolveMethod method = SolveMethod::Auto);

}  // namespace maball
