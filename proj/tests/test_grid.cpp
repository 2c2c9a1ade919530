#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "maball/diffops.hpp"
#include "maball/errors.hpp"
#include "maball/fields.hpp"
#include "maball/grid.hpp"

using namespace maball;

namespace {

// Independent oracle: enumerate k in {-K..K}^d and keep |k h| < 1.
int count_ball_nodes(int dim, double h) {
  const int K = static_cast<int>(std::floor(1.0 / h)) + 1;
  int count = 0;
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b)
      for (int c = dim == 3 ? -K : 0; c <= (dim == 3 ? K : 0); ++c)
        if ((double(a) * a + double(b) * b + double(c) * c) * h * h < 1.0) ++count;
  return count;
}

// Apply a stencil with exact (non-zero) values at sphere points.
double apply_exact(const StencilWeights& st, const ScalarField& u,
                   const std::function<double(const std::array<double, 3>&)>& fn) {
  double s = apply_stencil(st, u);
  for (const auto& b : st.boundary) s += b.weight * fn(b.point);
  return s;
}

}  // namespace

TEST_CASE("2d h=0.5 grid has the nine expected interior nodes") {
  const Grid g = build_ball_grid(2, 0.5);
  CHECK(g.size() == 9);
  CHECK(g.size() == count_ball_nodes(2, 0.5));
  std::set<std::pair<double, double>> got;
  for (int n = 0; n < g.size(); ++n) got.insert({g.coord(n)[0], g.coord(n)[1]});
  const std::set<std::pair<double, double>> want{
      {0, 0}, {0.5, 0}, {-0.5, 0}, {0, 0.5}, {0, -0.5},
      {0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
  CHECK(got == want);
}

TEST_CASE("node counts match the enumeration oracle") {
  for (double h : {0.5, 0.25, 0.125}) {
    CHECK(build_ball_grid(2, h).size() == count_ball_nodes(2, h));
    CHECK(build_ball_grid(3, h).size() == count_ball_nodes(3, h));
  }
}

TEST_CASE("boundary hit theta solves the sphere quadratic exactly") {
  const Grid g2 = build_ball_grid(2, 0.5);
  const int n = g2.node_at({1, 0, 0});  // (0.5, 0)
  REQUIRE(n >= 0);
  const AxisLink& plus_x = g2.link(n, 0, 1);
  CHECK(plus_x.is_boundary());
  CHECK(plus_x.theta == doctest::Approx(1.0).epsilon(1e-14));

  const Grid g3 = build_ball_grid(3, 0.5);
  const int m = g3.node_at({1, 1, 1});  // (0.5, 0.5, 0.5)
  REQUIRE(m >= 0);
  const AxisLink& l = g3.link(m, 0, 1);
  CHECK(l.is_boundary());
  // solve (0.5 + 0.5 theta)^2 + 0.5 = 1 by hand
  CHECK(l.theta == doctest::Approx(2.0 * (std::sqrt(0.5) - 0.5)).epsilon(1e-13));

  // every recorded hit satisfies |x + theta h e| = 1
  for (int node = 0; node < g3.size(); ++node)
    for (int axis = 0; axis < 3; ++axis)
      for (int dir = 0; dir < 2; ++dir) {
        const AxisLink& link = g3.link(node, axis, dir);
        if (!link.is_boundary()) continue;
        auto p = g3.coord(node);
        p[axis] += (dir == 0 ? -1 : 1) * link.theta * g3.spacing();
        const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        CHECK(r2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(link.theta > 0.0);
        CHECK(link.theta <= 1.0);
      }
}

TEST_CASE("theta=1 hit reduces Shortley-Weller to the central stencil") {
  const Grid g = build_ball_grid(2, 0.5);
  const int n = g.node_at({1, 0, 0});
  const StencilWeights& st = g.second_derivative_stencil(n, 0, 0);
  const double h2 = 0.25;
  for (const auto& e : st.interior) {
    if (e.node == n)
      CHECK(e.weight == doctest::Approx(-2.0 / h2));
    else
      CHECK(e.weight == doctest::Approx(1.0 / h2));
  }
  REQUIRE(st.boundary.size() == 1);
  CHECK(st.boundary[0].weight == doctest::Approx(1.0 / h2));
}

TEST_CASE("stencils are exact on polynomials of degree <= 2") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int dim : {2, 3}) {
    for (double h : {0.5, 0.25, 0.125}) {
      const Grid g = build_ball_grid(dim, h);
      // random quadratic q(x) = x^T A x / 2 + b.x + c
      double A[3][3], b[3];
      for (int i = 0; i < 3; ++i) {
        b[i] = uni(rng);
        for (int j = 0; j < 3; ++j) A[i][j] = 0.0;
      }
      for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) A[i][j] = A[j][i] = uni(rng);
      const double c0 = uni(rng);
      auto q = [&](const std::array<double, 3>& x) {
        double s = c0;
        for (int i = 0; i < dim; ++i) {
          s += b[i] * x[i];
          for (int j = 0; j < dim; ++j) s += 0.5 * A[i][j] * x[i] * x[j];
        }
        return s;
      };
      const ScalarField u = sample(g, q);
      for (int n = 0; n < g.size(); ++n)
        for (int i = 0; i < dim; ++i)
          for (int j = i; j < dim; ++j) {
            const double got =
                apply_exact(g.second_derivative_stencil(n, i, j), u, q);
            CHECK(got == doctest::Approx(A[i][j]).epsilon(1e-9).scale(1.0 / (h * h)));
          }
    }
  }
}

TEST_CASE("halving h grows the node count (3x in 2d, 5x in 3d)") {
  CHECK(build_ball_grid(2, 0.125).size() >= 3 * build_ball_grid(2, 0.25).size());
  CHECK(build_ball_grid(3, 0.125).size() >= 5 * build_ball_grid(3, 0.25).size());
}

TEST_CASE("grid construction is deterministic") {
  const Grid a = build_ball_grid(3, 0.25);
  const Grid b = build_ball_grid(3, 0.25);
  REQUIRE(a.size() == b.size());
  for (int n = 0; n < a.size(); ++n) {
    CHECK(a.lattice(n) == b.lattice(n));
    CHECK(a.coord(n) == b.coord(n));
  }
}

TEST_CASE("bad construction arguments are rejected") {
  CHECK_THROWS_AS(build_ball_grid(4, 0.25), ConfigError);
  CHECK_THROWS_AS(build_ball_grid(2, 0.0), ConfigError);
  CHECK_THROWS_AS(build_ball_grid(2, -0.1), ConfigError);
  CHECK_THROWS_AS(build_ball_grid(3, 0.75), ConfigError);
}
