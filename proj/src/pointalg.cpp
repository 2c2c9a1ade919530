#include "maball/pointalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace maball::pointalg {

namespace {

constexpr double kHermTol = 1e-14;

Complex det2(const std::array<Complex, 9>& a) {
  return a[0] * a[4] - a[1] * a[3];
}

Complex det3(const std::array<Complex, 9>& a) {
  return a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
         a[2] * (a[3] * a[7] - a[4] * a[6]);
}

// Plain complex product, row-major, order n.
std::array<Complex, 9> matmul(int n, const std::array<Complex, 9>& a,
                              const std::array<Complex, 9>& b) {
  std::array<Complex, 9> c{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += a[i * 3 + k] * b[k * 3 + j];
      c[i * 3 + j] = s;
    }
  return c;
}

Complex mat_trace(int n, const std::array<Complex, 9>& a) {
  Complex t = 0.0;
  for (int i = 0; i < n; ++i) t += a[i * 3 + i];
  return t;
}

// Real roots of lambda^3 - c2 lambda^2 + c1 lambda - c0 = 0 when all roots
// are real (Hermitian characteristic polynomial), ascending.
std::array<double, 3> cubic_roots(double c2, double c1, double c0) {
  // Depress with lambda = y + q: y^3 + p y + r = 0. All roots are real for
  // a Hermitian characteristic polynomial, so p <= 0 up to roundoff.
  const double q = c2 / 3.0;
  const double p = c1 - 3.0 * q * q;
  const double r = c1 * q - 2.0 * q * q * q - c0;
  const double mp = std::max(0.0, -p / 3.0);
  if (mp == 0.0) return {q, q, q};
  const double m = 2.0 * std::sqrt(mp);
  const double cos3t = std::clamp(-4.0 * r / (m * m * m), -1.0, 1.0);
  const double theta = std::acos(cos3t) / 3.0;
  std::array<double, 3> ev{q + m * std::cos(theta),
                           q + m * std::cos(theta - 2.0 * M_PI / 3.0),
                           q + m * std::cos(theta - 4.0 * M_PI / 3.0)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

HermitianMatrix::HermitianMatrix(int n, const std::array<Complex, 9>& entries)
    : n_(n) {
  if (n != 2 && n != 3) throw std::invalid_argument("HermitianMatrix: order must be 2 or 3");
  double scale = 0.0, dev = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      scale = std::max(scale, std::abs(entries[i * 3 + j]));
      dev = std::max(dev,
                     std::abs(entries[i * 3 + j] - std::conj(entries[j * 3 + i])));
    }
  if (dev > kHermTol * std::max(1.0, scale) * 10.0)
    throw std::invalid_argument("HermitianMatrix: input is not Hermitian");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a_[i * 3 + j] = 0.5 * (entries[i * 3 + j] + std::conj(entries[j * 3 + i]));
}

HermitianMatrix HermitianMatrix::zero(int n) {
  HermitianMatrix m;
  m.n_ = n;
  return m;
}

HermitianMatrix HermitianMatrix::identity(int n, double scale) {
  HermitianMatrix m;
  m.n_ = n;
  for (int i = 0; i < n; ++i) m.a_[i * 3 + i] = scale;
  return m;
}

void HermitianMatrix::set(int i, int j, Complex v) {
  if (i == j) v = Complex(v.real(), 0.0);
  a_[i * 3 + j] = v;
  a_[j * 3 + i] = std::conj(v);
}

double HermitianMatrix::trace() const { return mat_trace(n_, a_).real(); }

double HermitianMatrix::det() const {
  return (n_ == 2 ? det2(a_) : det3(a_)).real();
}

double HermitianMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m = std::max(m, std::abs(a_[i * 3 + j]));
  return m;
}

HermitianMatrix HermitianMatrix::inverse() const {
  const double d = det();
  if (std::abs(d) < 1e-300) throw std::domain_error("HermitianMatrix: singular");
  HermitianMatrix inv;
  inv.n_ = n_;
  if (n_ == 2) {
    inv.a_[0] = a_[4] / d;
    inv.a_[4] = a_[0] / d;
    inv.a_[1] = -a_[1] / d;
    inv.a_[3] = -a_[3] / d;
    return inv;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
      const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      inv.a_[i * 3 + j] =
          (a_[j1 * 3 + i1] * a_[j2 * 3 + i2] - a_[j1 * 3 + i2] * a_[j2 * 3 + i1]) / d;
    }
  return inv;
}

std::array<double, 3> HermitianMatrix::eigenvalues() const {
  if (n_ == 2) {
    const double tr = trace();
    const double dd = (a_[0] - a_[4]).real();
    const double disc = std::sqrt(dd * dd + 4.0 * std::norm(a_[1]));
    return {0.5 * (tr - disc), 0.5 * (tr + disc), 0.0};
  }
  const double c2 = trace();
  // Sum of principal 2x2 minors, real for Hermitian input.
  double c1 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    c1 += (a_[i1 * 3 + i1] * a_[i2 * 3 + i2] - a_[i1 * 3 + i2] * a_[i2 * 3 + i1]).real();
  }
  return cubic_roots(c2, c1, det());
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  HermitianMatrix r;
  r.n_ = n_;
  for (int k = 0; k < 9; ++k) r.a_[k] = a_[k] + o.a_[k];
  return r;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  HermitianMatrix r;
  r.n_ = n_;
  for (int k = 0; k < 9; ++k) r.a_[k] = a_[k] - o.a_[k];
  return r;
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  HermitianMatrix r;
  r.n_ = n_;
  for (int k = 0; k < 9; ++k) r.a_[k] = a_[k] * s;
  return r;
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int n = a.order();
  Complex t = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
  return t.real();
}

double trace_product_sq(const HermitianMatrix& a, const HermitianMatrix& b) {
  const int n = a.order();
  std::array<Complex, 9> ab{}, aa{}, bb{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      aa[i * 3 + j] = a(i, j);
      bb[i * 3 + j] = b(i, j);
    }
  ab = matmul(n, aa, bb);
  return mat_trace(n, matmul(n, ab, ab)).real();
}

double mixed_det(const std::vector<HermitianMatrix>& matrices) {
  if (matrices.empty()) throw std::invalid_argument("mixed_det: empty list");
  const int n = matrices[0].order();
  if (static_cast<int>(matrices.size()) != n)
    throw std::invalid_argument("mixed_det: list length must equal the order");
  for (const auto& m : matrices)
    if (m.order() != n) throw std::invalid_argument("mixed_det: mixed orders");

  // Polarization by inclusion-exclusion over nonempty subsets:
  // M = (1/n!) sum_S (-1)^(n-|S|) det(sum_{i in S} A_i).
  double acc = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    HermitianMatrix s = HermitianMatrix::zero(n);
    int popcount = 0;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) {
        s = s + matrices[i];
        ++popcount;
      }
    acc += ((n - popcount) % 2 == 0 ? 1.0 : -1.0) * s.det();
  }
  const double factorial = n == 2 ? 2.0 : 6.0;
  return acc / factorial;
}

namespace {

struct IdentitySides {
  double lhs;
  double rhs;
  double max_term;
};

IdentitySides n2_sides(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                       double alpha2, const HermitianMatrix& ddc_phi) {
  const HermitianMatrix w = omega + ddc_phi;
  const double eta = w.det() + mixed_det({alpha1, w}) + alpha2;
  const double lhs = (w + alpha1 * 0.5).det();
  const double det_a1 = alpha1.det();
  const double rhs = eta - alpha2 + det_a1 / 4.0;
  const double max_term = std::max({std::abs(lhs), std::abs(eta), std::abs(alpha2),
                                    std::abs(det_a1) / 4.0, 1.0});
  return {lhs, rhs, max_term};
}

IdentitySides n3_sides(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                       const HermitianMatrix& alpha2, const HermitianMatrix& ddc_phi) {
  const HermitianMatrix w = omega + ddc_phi;
  const HermitianMatrix s = w + alpha1 * (1.0 / 3.0);
  // eta from the unreduced form; alpha2 acts as the square of its matrix
  // under polarization, so alpha2 ^ W -> M(a2, a2, W).
  const double eta =
      w.det() + mixed_det({alpha1, w, w}) + mixed_det({alpha2, alpha2, w});
  const double lhs = s.det() + mixed_det({alpha2, alpha2, s}) -
                     mixed_det({alpha1, alpha1, s}) / 3.0;
  const double rhs = eta - 2.0 * alpha1.det() / 27.0 +
                     mixed_det({alpha1, alpha2, alpha2}) / 3.0;
  const double max_term =
      std::max({std::abs(lhs), std::abs(rhs), std::abs(eta), std::abs(s.det()), 1.0});
  return {lhs, rhs, max_term};
}

}  // namespace

double check_n2_identity(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                         double alpha2_scalar, const HermitianMatrix& ddc_phi) {
  const auto s = n2_sides(omega, alpha1, alpha2_scalar, ddc_phi);
  return s.lhs - s.rhs;
}

double check_n3_reduction(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                          const HermitianMatrix& alpha2,
                          const HermitianMatrix& ddc_phi) {
  const auto s = n3_sides(omega, alpha1, alpha2, ddc_phi);
  return s.lhs - s.rhs;
}

ScaledHessForm concavity_form_real(const std::array<double, 3>& lambda,
                                   const std::array<double, 3>& v) {
  const double prod = lambda[0] * lambda[1] * lambda[2];
  const double x = lambda[0] + lambda[1] + lambda[2] + prod;
  const double s1 = 1.0 + lambda[1] * lambda[2];
  const double s2 = 1.0 + lambda[2] * lambda[0];
  const double s3 = 1.0 + lambda[0] * lambda[1];
  const double inner = v[0] * s1 + v[1] * s2 + v[2] * s3;
  const double cross =
      v[0] * v[1] * lambda[2] + v[1] * v[2] * lambda[0] + v[2] * v[0] * lambda[1];
  return {x * inner * inner - 2.0 * cross, x};
}

ScaledHessForm concavity_form_complex(const HermitianMatrix& A,
                                      const HermitianMatrix& B,
                                      const HermitianMatrix& V) {
  for (const HermitianMatrix* m : {&A, &B}) {
    const auto ev = m->eigenvalues();
    const int n = m->order();
    const double lo = ev[0], hi = ev[n - 1];
    if (!(lo > 0.0) || hi / lo > 1e12)
      throw std::domain_error("concavity_form_complex: matrix numerically singular");
  }
  const HermitianMatrix a_inv = A.inverse();
  const HermitianMatrix b_inv = B.inverse();
  const double det_a = A.det();
  const double x = det_a + trace_product(b_inv, A);
  const double t_av = trace_product(a_inv, V);
  const double t_bv = trace_product(b_inv, V);
  const double t_av2 = trace_product_sq(a_inv, V);
  const double lin = det_a * t_av + t_bv;
  return {-x * lin * lin + det_a * (t_av * t_av - t_av2), x};
}

EllipticityBounds ellipticity_bounds_real(const std::array<double, 3>& lambda) {
  const double prod = lambda[0] * lambda[1] * lambda[2];
  const double x = lambda[0] + lambda[1] + lambda[2] + prod;
  double mn = 1e300, mx = -1e300;
  for (int i = 0; i < 3; ++i) {
    const double s = 1.0 + prod / lambda[i];
    mn = std::min(mn, s);
    mx = std::max(mx, s);
  }
  return {mn, mx, x};
}

double evans_krylov_transform(double x) {
  // int_36^x e^{-t^2/2} dt = sqrt(pi/2) (erfc(36/sqrt 2) - erfc(x/sqrt 2)).
  const double c = std::sqrt(M_PI / 2.0);
  return c * (std::erfc(36.0 / M_SQRT2) - std::erfc(x / M_SQRT2));
}

namespace {

HermitianMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  HermitianMatrix m = HermitianMatrix::zero(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, uni(rng));
    for (int j = i + 1; j < n; ++j) m.set(i, j, Complex(uni(rng), uni(rng)));
  }
  return m;
}

// B = R R^dagger + 0.05 I, positive definite by construction.
HermitianMatrix random_pd(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::array<Complex, 9> r{}, rd{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i * 3 + j] = Complex(uni(rng), uni(rng));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rd[j * 3 + i] = std::conj(r[i * 3 + j]);
  const auto p = matmul(n, r, rd);
  HermitianMatrix m = HermitianMatrix::zero(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, p[i * 3 + i].real() + 0.05);
    for (int j = i + 1; j < n; ++j) m.set(i, j, p[i * 3 + j]);
  }
  return m;
}

}  // namespace

SampleReport sample_concavity_real(int n, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lam(3.0, 50.0);
  std::uniform_real_distribution<double> vel(-1.0, 1.0);
  SampleReport rep;
  rep.worst_margin = 1e300;
  for (int k = 0; k < n; ++k) {
    const std::array<double, 3> lambda{std::nextafter(lam(rng), 51.0),
                                       std::nextafter(lam(rng), 51.0),
                                       std::nextafter(lam(rng), 51.0)};
    const std::array<double, 3> v{vel(rng), vel(rng), vel(rng)};
    const ScaledHessForm f = concavity_form_real(lambda, v);
    const double s1 = 1.0 + lambda[1] * lambda[2];
    const double s2 = 1.0 + lambda[2] * lambda[0];
    const double s3 = 1.0 + lambda[0] * lambda[1];
    const double abs_inner =
        std::abs(v[0]) * s1 + std::abs(v[1]) * s2 + std::abs(v[2]) * s3;
    const double scale = f.x * abs_inner * abs_inner +
                         2.0 * (std::abs(v[0] * v[1]) * lambda[2] +
                                std::abs(v[1] * v[2]) * lambda[0] +
                                std::abs(v[2] * v[0]) * lambda[1]) +
                         1.0;
    const double margin = f.value / scale;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (f.value < -tol * scale && !rep.counterexample) {
      rep.counterexample = true;
      rep.witness_lambda = lambda;
      rep.witness_v = v;
    }
  }
  rep.samples = n;
  return rep;
}

bool find_real_sharpness_witness(std::uint64_t seed, std::array<double, 3>* lambda_out,
                                 std::array<double, 3>* v_out, int attempts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> small(0.05, 0.95);
  std::uniform_real_distribution<double> wide(0.05, 2.0);
  for (int k = 0; k < attempts; ++k) {
    const std::array<double, 3> lambda{small(rng), small(rng), wide(rng)};
    // Kill the squared term by choosing v with sum v_i s_i = 0; the form
    // then reduces to -2 * cross, negative whenever cross > 0.
    const double s1 = 1.0 + lambda[1] * lambda[2];
    const double s2 = 1.0 + lambda[2] * lambda[0];
    const double s3 = 1.0 + lambda[0] * lambda[1];
    std::array<double, 3> v{1.0, 1.0, -(s1 + s2) / s3};
    const double vmax = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    for (auto& c : v) c /= vmax;
    const ScaledHessForm f = concavity_form_real(lambda, v);
    if (f.value < -1e-10) {
      if (lambda_out) *lambda_out = lambda;
      if (v_out) *v_out = v;
      return true;
    }
  }
  return false;
}

SampleReport sample_concavity_complex(int n, std::uint64_t seed, double tol,
                                      double margin) {
  std::mt19937_64 rng(seed);
  SampleReport rep;
  rep.worst_margin = -1e300;
  for (int k = 0; k < n; ++k) {
    const HermitianMatrix B = random_pd(3, rng);
    const double lmax_b = B.eigenvalues()[2];
    HermitianMatrix A = random_hermitian(3, rng);
    const double lmin_a = A.eigenvalues()[0];
    A = A + HermitianMatrix::identity(3, margin * lmax_b - lmin_a + 0.01);
    const HermitianMatrix b_inv = B.inverse();
    for (int grow = 0; grow < 200 && A.det() <= 3.0 * trace_product(b_inv, A); ++grow)
      A = A * 1.5;
    const HermitianMatrix V = random_hermitian(3, rng);

    const ScaledHessForm f = concavity_form_complex(A, B, V);
    const auto ev_a = A.eigenvalues();
    const auto ev_b = B.eigenvalues();
    const double v_norm = V.max_abs() * 3.0;
    const double lin_bound =
        A.det() * (1.0 / ev_a[0]) * v_norm + (1.0 / ev_b[0]) * v_norm;
    const double scale = f.x * lin_bound * lin_bound + 1.0;
    const double m = f.value / scale;
    rep.worst_margin = std::max(rep.worst_margin, m);
    if (f.value > tol * scale && !rep.counterexample) rep.counterexample = true;
  }
  rep.samples = n;
  return rep;
}

IdentityReport sample_n2_identity(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  IdentityReport rep;
  rep.samples = n;
  for (int k = 0; k < n; ++k) {
    const auto s = n2_sides(random_hermitian(2, rng), random_hermitian(2, rng),
                            uni(rng), random_hermitian(2, rng));
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, std::abs(s.lhs - s.rhs) / s.max_term);
  }
  return rep;
}

IdentityReport sample_n3_reduction(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IdentityReport rep;
  rep.samples = n;
  for (int k = 0; k < n; ++k) {
    const auto s = n3_sides(random_hermitian(3, rng), random_hermitian(3, rng),
                            random_hermitian(3, rng), random_hermitian(3, rng));
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, std::abs(s.lhs - s.rhs) / s.max_term);
  }
  return rep;
}

}  // namespace maball::pointalg
