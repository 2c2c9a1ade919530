#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace maball::pointalg {

using Complex = std::complex<double>;

// Small dense Hermitian matrix, order 2 or 3; real symmetric matrices are
// the special case of real entries. Construction symmetrizes (M + M*)/2
// and rejects inputs further than 1e-14 from Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  HermitianMatrix(int n, const std::array<Complex, 9>& entries);
  static HermitianMatrix zero(int n);
  static HermitianMatrix identity(int n, double scale = 1.0);

  int order() const { return n_; }
  Complex operator()(int i, int j) const { return a_[i * 3 + j]; }
  void set(int i, int j, Complex v);  // also sets the conjugate mirror

  double trace() const;
  double det() const;
  HermitianMatrix inverse() const;       // throws domain_error when singular
  double max_abs() const;

  // Eigenvalues ascending (real; characteristic polynomial has real
  // coefficients for Hermitian input).
  std::array<double, 3> eigenvalues() const;

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  int n_ = 0;
  std::array<Complex, 9> a_{};
};

// tr(A * B) for Hermitian A, B (real).
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);
// tr((A * B)^2), real for Hermitian A, B with A positive definite.
double trace_product_sq(const HermitianMatrix& a, const HermitianMatrix& b);

// The symmetric multilinear polarization of the determinant:
// M(A, ..., A) = det(A). Computed by inclusion-exclusion. The list length
// must equal the common order.
double mixed_det(const std::vector<HermitianMatrix>& matrices);

// Residual of the completion-of-square identity for n = 2:
// det(W + a1/2) = eta - a2 + det(a1)/4 with W = omega + ddc_phi and
// eta = det(W) + M(a1, W) + a2. Zero up to roundoff for any inputs.
double check_n2_identity(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                         double alpha2_scalar, const HermitianMatrix& ddc_phi);

// Residual of the n = 3 reduction: with W = omega + ddc_phi, shifting by
// alpha1/3 removes the quadratic term. alpha2 enters as the square of the
// given matrix under polarization. Zero up to roundoff for any inputs.
double check_n3_reduction(const HermitianMatrix& omega, const HermitianMatrix& alpha1,
                          const HermitianMatrix& alpha2,
                          const HermitianMatrix& ddc_phi);

// Concavity / ellipticity quadratic forms with the positive factor
// e^{-x^2/2} divided out; the sign conclusions are unchanged and the
// scaled values never underflow.
struct ScaledHessForm {
  double value;
  double x;
};

// Negated Hessian form of g(lambda) = F(sum lambda + prod lambda) against
// direction v; value >= 0 certifies concavity at (lambda, v).
ScaledHessForm concavity_form_real(const std::array<double, 3>& lambda,
                                   const std::array<double, 3>& v);

// g''(V, V) for g(A) = F(det A + tr(B^-1 A)), scaled; value <= 0 certifies
// concavity. A, B must be positive definite with condition below 1e12.
ScaledHessForm concavity_form_complex(const HermitianMatrix& A,
                                      const HermitianMatrix& B,
                                      const HermitianMatrix& V);

struct EllipticityBounds {
  double min_s;
  double max_s;
  double x;
};

// s_i = 1 + prod(lambda) / lambda_i, the scaled derivative of g along each
// eigendirection; bound checks belong in log space to dodge underflow.
EllipticityBounds ellipticity_bounds_real(const std::array<double, 3>& lambda);

// F(x) = int_36^x e^{-t^2/2} dt, the concavifying transform. F(36) = 0 and
// F' = e^{-x^2/2}. Proof machinery only; never applied to solver data.
double evans_krylov_transform(double x);

// --- randomized certificate samplers (deterministic per seed) ---

struct SampleReport {
  int samples = 0;
  double worst_margin = 0.0;  // worst value / scale seen (signed)
  bool counterexample = false;
  std::array<double, 3> witness_lambda{};  // populated on counterexample
  std::array<double, 3> witness_v{};
};

// Samples lambda in (3, 50]^3, v in [-1, 1]^3 and checks value >= -tol*scale.
SampleReport sample_concavity_real(int n, std::uint64_t seed, double tol = 1e-10);

// Searches min lambda_i < 1 for a strictly negative form value (the claim
// is sharp: some witness must exist).
bool find_real_sharpness_witness(std::uint64_t seed, std::array<double, 3>* lambda_out,
                                 std::array<double, 3>* v_out, int attempts = 100000);

// Samples the complex precondition domain (B pd, det A > 3 tr(B^-1 A),
// A >= margin * lambda_max(B) * I) and checks value <= tol * scale.
SampleReport sample_concavity_complex(int n, std::uint64_t seed, double tol = 1e-10,
                                      double margin = 3.01);

struct IdentityReport {
  int samples = 0;
  double max_relative_residual = 0.0;
};

IdentityReport sample_n2_identity(int n, std::uint64_t seed);
IdentityReport sample_n3_reduction(int n, std::uint64_t seed);

}  // namespace maball::pointalg
