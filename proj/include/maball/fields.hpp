#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "maball/grid.hpp"

namespace maball {

// One real value per interior node; the Dirichlet boundary value is
// identically 0.
struct ScalarField {
  const Grid* grid = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g) : grid(&g), values(g.size(), 0.0) {}

  double& operator[](int n) { return values[n]; }
  double operator[](int n) const { return values[n]; }
  int size() const { return static_cast<int>(values.size()); }
};

inline ScalarField sample(const Grid& g,
                          const std::function<double(const std::array<double, 3>&)>& f) {
  ScalarField u(g);
  for (int n = 0; n < g.size(); ++n) u[n] = f(g.coord(n));
  return u;
}

inline ScalarField constant_field(const Grid& g, double c) {
  ScalarField u(g);
  std::fill(u.values.begin(), u.values.end(), c);
  return u;
}

inline double sup_norm(const ScalarField& u) {
  double m = 0.0;
  for (double v : u.values) m = std::max(m, std::abs(v));
  return m;
}

inline double max_value(const ScalarField& u) {
  double m = -1e300;
  for (double v : u.values) m = std::max(m, v);
  return m;
}

inline double min_value(const ScalarField& u) {
  double m = 1e300;
  for (double v : u.values) m = std::min(m, v);
  return m;
}

// Small dense symmetric d x d matrix, d in {2, 3}.
struct SymMat {
  int d = 3;
  std::array<std::array<double, 3>, 3> m{};

  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }

  double trace() const {
    double t = 0.0;
    for (int i = 0; i < d; ++i) t += m[i][i];
    return t;
  }

  double det() const {
    if (d == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }

  // Adjugate: cof(M) * M = det(M) * I, defined for singular M as well.
  SymMat cof() const {
    SymMat c;
    c.d = d;
    if (d == 2) {
      c(0, 0) = m[1][1];
      c(1, 1) = m[0][0];
      c(0, 1) = c(1, 0) = -m[0][1];
      return c;
    }
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
        const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
        // adj(M)_ij = cofactor_ji; symmetric input keeps the result symmetric.
        c(i, j) = m[j1][i1] * m[j2][i2] - m[j1][i2] * m[j2][i1];
      }
    }
    return c;
  }
};

inline SymMat sym_identity(int d, double scale = 1.0) {
  SymMat s;
  s.d = d;
  for (int i = 0; i < d; ++i) s(i, i) = scale;
  return s;
}

// One symmetric matrix per interior node (the discrete Hessian).
struct SymMatrixField {
  const Grid* grid = nullptr;
  std::vector<SymMat> values;

  SymMatrixField() = default;
  explicit SymMatrixField(const Grid& g) : grid(&g), values(g.size()) {
    for (auto& s : values) s.d = g.dim();
  }

  SymMat& operator[](int n) { return values[n]; }
  const SymMat& operator[](int n) const { return values[n]; }
};

}  // namespace maball
