#include "maball/eig.hpp"

#include <algorithm>
#include <cmath>

namespace maball {

namespace {

std::array<double, 3> eig2(const SymMat& a) {
  const double tr = a(0, 0) + a(1, 1);
  const double dd = a(0, 0) - a(1, 1);
  const double disc = std::sqrt(dd * dd + 4.0 * a(0, 1) * a(0, 1));
  return {0.5 * (tr - disc), 0.5 * (tr + disc), 0.0};
}

// Full-sweep cyclic Jacobi on a 3x3 symmetric matrix.
std::array<double, 3> jacobi3(SymMat a) {
  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = std::abs(a(0, 1)) + std::abs(a(0, 2)) + std::abs(a(1, 2));
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        SymMat b = a;
        for (int k = 0; k < 3; ++k) {
          b(p, k) = c * a(p, k) - s * a(q, k);
          b(q, k) = s * a(p, k) + c * a(q, k);
        }
        a = b;
        for (int k = 0; k < 3; ++k) {
          b(k, p) = c * a(k, p) - s * a(k, q);
          b(k, q) = s * a(k, p) + c * a(k, q);
        }
        a = b;
      }
    }
  }
  std::array<double, 3> ev{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::array<double, 3> eig3(const SymMat& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = a.trace() / 3.0;
  const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                    (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
  const double scale = std::abs(q) + std::sqrt(p2);
  if (p2 <= 1e-28 * scale * scale) return {q, q, q};

  const double p = std::sqrt(p2 / 6.0);
  SymMat b;
  b.d = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = (a(i, j) - (i == j ? q : 0.0)) / p;
  double r = b.det() / 2.0;
  // Nearly coincident roots make the trigonometric branch ill-conditioned.
  if (r > 1.0 - 1e-10 || r < -1.0 + 1e-10) return jacobi3(a);

  const double phi = std::acos(r) / 3.0;
  const double e1 = q + 2.0 * p * std::cos(phi);
  const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
  const double e2 = 3.0 * q - e1 - e3;
  std::array<double, 3> ev{e1, e2, e3};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

std::array<double, 3> sym_eigenvalues(const SymMat& a) {
  return a.d == 2 ? eig2(a) : eig3(a);
}

}  // namespace maball
