#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace rsdual {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr cxd iu{0.0, 1.0};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input is (numerically) singular or otherwise outside the factorization domain.
struct SingularInput : Error { using Error::Error; };
// A matrix expected to be unitary (or positive upper triangular, etc.) is not.
struct DomainError : Error { using Error::Error; };
// Eigenvalue clusters too close for a well-defined branch choice.
struct DegenerateSpectrum : Error { using Error::Error; };
// Point left the admissible chamber / phase-space domain.
struct ChamberViolation : Error { using Error::Error; };
// Exponent or product overflow guard tripped.
struct OverflowGuard : Error { using Error::Error; };
// Constraint residual too large for a map that assumes the constraint surface.
struct ConstraintViolated : Error { using Error::Error; };
// Bad CLI / file input.
struct MalformedInput : Error { using Error::Error; };

inline double spec_norm(const Mat& A) { return A.jacobiSvd().singularValues()(0); }

inline Mat herm(const Mat& A) { return A.adjoint(); }

// phase of a nonzero complex number
inline cxd phase(cxd z) {
  double a = std::abs(z);
  if (a == 0.0) throw SingularInput("phase of zero");
  return z / a;
}

// reversal permutation J (antidiagonal ones)
inline Mat reversal(int n) {
  Mat J = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
  return J;
}

// exp(H) for Hermitian H via eigendecomposition, scaled by complex factor s in
// the exponent: returns exp(s*H) when s*H stays normal, i.e. s real or pure
// imaginary. Caller guarantees H is Hermitian.
Mat exp_hermitian(const Mat& H, cxd s = cxd(1.0, 0.0));

}  // namespace rsdual
