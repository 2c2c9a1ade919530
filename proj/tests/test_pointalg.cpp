#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "maball/pointalg.hpp"

using namespace maball::pointalg;

namespace {

HermitianMatrix real_diag3(double a, double b, double c) {
  HermitianMatrix m = HermitianMatrix::zero(3);
  m.set(0, 0, a);
  m.set(1, 1, b);
  m.set(2, 2, c);
  return m;
}

HermitianMatrix random_herm(int order, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  HermitianMatrix m = HermitianMatrix::zero(order);
  for (int i = 0; i < order; ++i) {
    m.set(i, i, uni(rng));
    for (int j = i + 1; j < order; ++j) m.set(i, j, Complex(uni(rng), uni(rng)));
  }
  return m;
}

}  // namespace

TEST_CASE("construction symmetrizes and validates") {
  std::array<Complex, 9> e{};
  e[0] = 1.0;
  e[1] = Complex(0.5, 0.25);
  e[3] = Complex(0.5, -0.25);
  e[4] = 2.0;
  const HermitianMatrix m(2, e);
  CHECK(m(0, 1) == Complex(0.5, 0.25));
  CHECK(m(1, 0) == std::conj(m(0, 1)));

  e[3] = Complex(0.9, 0.0);  // badly non-Hermitian
  CHECK_THROWS_AS(HermitianMatrix(2, e), std::invalid_argument);
  CHECK_THROWS_AS(HermitianMatrix(4, e), std::invalid_argument);
}

TEST_CASE("mixed determinant: det anchor, symmetry, multilinearity") {
  std::mt19937_64 rng(3);
  const HermitianMatrix a = random_herm(3, rng);
  const HermitianMatrix b = random_herm(3, rng);
  const HermitianMatrix c = random_herm(3, rng);
  // M(A,A,A) = det A
  CHECK(mixed_det({a, a, a}) == doctest::Approx(a.det()).epsilon(1e-12).scale(1.0));
  // full symmetry
  const double m1 = mixed_det({a, b, c});
  CHECK(mixed_det({c, a, b}) == doctest::Approx(m1).epsilon(1e-12).scale(1.0));
  CHECK(mixed_det({b, a, c}) == doctest::Approx(m1).epsilon(1e-12).scale(1.0));
  // multilinearity in the first slot
  CHECK(mixed_det({a + b, b, c}) ==
        doctest::Approx(mixed_det({a, b, c}) + mixed_det({b, b, c}))
            .epsilon(1e-12)
            .scale(1.0));
  // 2x2 oracle: M(A, B) = (tr A tr B - tr(AB)) / 2
  const HermitianMatrix p = random_herm(2, rng);
  const HermitianMatrix q = random_herm(2, rng);
  const double oracle = 0.5 * (p.trace() * q.trace() - trace_product(p, q));
  CHECK(mixed_det({p, q}) == doctest::Approx(oracle).epsilon(1e-12).scale(1.0));
  // argument validation
  CHECK_THROWS_AS(mixed_det({a, b}), std::invalid_argument);
  CHECK_THROWS_AS(mixed_det(std::vector<HermitianMatrix>{}), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues: diagonal anchor and invariants") {
  const auto lam = real_diag3(3.0, 1.0, 2.0).eigenvalues();
  CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lam[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lam[2] == doctest::Approx(3.0).epsilon(1e-12));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 200; ++t) {
    const HermitianMatrix m = random_herm(3, rng, 2.0);
    const auto l = m.eigenvalues();
    CHECK(l[0] <= l[1]);
    CHECK(l[1] <= l[2]);
    CHECK(l[0] + l[1] + l[2] == doctest::Approx(m.trace()).epsilon(1e-9));
    CHECK(l[0] * l[1] * l[2] == doctest::Approx(m.det()).epsilon(1e-7).scale(10.0));
  }
  // repeated roots
  const auto r = HermitianMatrix::identity(3, 2.0).eigenvalues();
  for (double v : r) CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("inverse is the true inverse; singular rejected") {
  std::mt19937_64 rng(31);
  const HermitianMatrix m = random_herm(3, rng) + HermitianMatrix::identity(3, 4.0);
  const HermitianMatrix inv = m.inverse();
  CHECK(trace_product(m, inv) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(HermitianMatrix::zero(3).inverse(), std::domain_error);
}

TEST_CASE("real concavity form reproduces the frozen example") {
  // lambda = (4,4,4), v = (1,1,1): x = 12 + 64 = 76,
  // value = 76 * (3 * 17)^2 - 2 * 12 = 76 * 2601 - 24 = 197652
  const ScaledHessForm f = concavity_form_real({4.0, 4.0, 4.0}, {1.0, 1.0, 1.0});
  CHECK(f.x == doctest::Approx(76.0).epsilon(1e-14));
  CHECK(f.value == doctest::Approx(197652.0).epsilon(1e-12));
}

TEST_CASE("complex concavity form reproduces the frozen example") {
  // A = 5I, B = I, V = A: tr(A^-1 V) = 3, tr(B^-1 V) = 15, det A = 125,
  // x = 125 + 15 = 140, lin = 125*3 + 15 = 390,
  // value = -140 * 390^2 + 125 * (9 - 3) = -21293250.
  const HermitianMatrix A = real_diag3(5.0, 5.0, 5.0);
  const HermitianMatrix B = HermitianMatrix::identity(3);
  const ScaledHessForm f = concavity_form_complex(A, B, A);
  CHECK(f.x == doctest::Approx(140.0).epsilon(1e-14));
  CHECK(f.value == doctest::Approx(-21293250.0).epsilon(1e-12));
}

TEST_CASE("complex concavity form rejects ill-conditioned input") {
  const HermitianMatrix A = real_diag3(1.0, 1.0, 1e-14);
  const HermitianMatrix B = HermitianMatrix::identity(3);
  CHECK_THROWS_AS(concavity_form_complex(A, B, B), std::domain_error);
  CHECK_THROWS_AS(concavity_form_complex(real_diag3(1.0, 1.0, -1.0), B, B),
                  std::domain_error);
}

TEST_CASE("ellipticity bounds reproduce the closed forms") {
  // lambda = (10,10,10): s_i = 1 + 100 = 101, x = 30 + 1000.
  const EllipticityBounds b1 = ellipticity_bounds_real({10.0, 10.0, 10.0});
  CHECK(b1.min_s == doctest::Approx(101.0).epsilon(1e-14));
  CHECK(b1.max_s == doctest::Approx(101.0).epsilon(1e-14));
  CHECK(b1.x == doctest::Approx(1030.0).epsilon(1e-14));
  // lambda = (1,2,3): prod = 6, s = (7, 4, 3), x = 12.
  const EllipticityBounds b2 = ellipticity_bounds_real({1.0, 2.0, 3.0});
  CHECK(b2.min_s == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(b2.max_s == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(b2.x == doctest::Approx(12.0).epsilon(1e-14));
}

TEST_CASE("evans-krylov transform against a quadrature oracle") {
  CHECK(evans_krylov_transform(36.0) == doctest::Approx(0.0).scale(1.0));
  const double f0 = evans_krylov_transform(0.0);
  const double f10 = evans_krylov_transform(10.0);
  CHECK(f0 < f10);
  CHECK(f10 < 0.0);
  auto quad = [](double a, double b) {
    const int N = 400000;
    double s = 0.0;
    const double dt = (b - a) / N;
    for (int i = 0; i < N; ++i) {
      const double t = a + (i + 0.5) * dt;
      s += std::exp(-0.5 * t * t);
    }
    return s * dt;
  };
  CHECK(evans_krylov_transform(2.0) == doctest::Approx(quad(36.0, 2.0)).epsilon(1e-8));
  CHECK(evans_krylov_transform(0.5) == doctest::Approx(quad(36.0, 0.5)).epsilon(1e-8));
  // transform of large x stays finite (no underflow blowup)
  CHECK(std::isfinite(evans_krylov_transform(1000.0)));
}

TEST_CASE("n2 identity holds on random tuples") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int t = 0; t < 300; ++t) {
    const double res = check_n2_identity(random_herm(2, rng), random_herm(2, rng),
                                         uni(rng), random_herm(2, rng));
    CHECK(std::abs(res) < 1e-12);
  }
}

TEST_CASE("n3 reduction holds on random tuples") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 300; ++t) {
    const double res = check_n3_reduction(random_herm(3, rng), random_herm(3, rng),
                                          random_herm(3, rng), random_herm(3, rng));
    CHECK(std::abs(res) < 1e-11);
  }
}

TEST_CASE("bulk samplers certify over their documented domains") {
  const SampleReport r1 = sample_concavity_real(2000, 123);
  CHECK(r1.samples == 2000);
  CHECK_FALSE(r1.counterexample);
  const SampleReport r2 = sample_concavity_complex(300, 456);
  CHECK_FALSE(r2.counterexample);
  const IdentityReport r3 = sample_n2_identity(1000, 7);
  CHECK(r3.max_relative_residual < 1e-12);
  const IdentityReport r4 = sample_n3_reduction(1000, 7);
  CHECK(r4.max_relative_residual < 1e-12);
}

TEST_CASE("samplers are deterministic per seed") {
  const SampleReport a = sample_concavity_real(500, 42);
  const SampleReport b = sample_concavity_real(500, 42);
  CHECK(a.worst_margin == b.worst_margin);
}

TEST_CASE("sharpness witness exists below the lambda > 1 regime") {
  std::array<double, 3> lambda{}, v{};
  REQUIRE(find_real_sharpness_witness(99, &lambda, &v));
  CHECK(*std::min_element(lambda.begin(), lambda.end()) < 1.0);
  const ScaledHessForm f = concavity_form_real(lambda, v);
  CHECK(f.value < 0.0);
  double vmax = 0.0;
  for (double c : v) vmax = std::max(vmax, std::abs(c));
  CHECK(vmax == doctest::Approx(1.0).epsilon(1e-12));
}
