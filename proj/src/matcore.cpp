#include "rsdual/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsdual {

Mat exp_hermitian(const Mat& H, cxd s) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const RVec& w = es.eigenvalues();
  Vec e(w.size());
  for (int i = 0; i < w.size(); ++i) e(i) = std::exp(s * w(i));
  return es.eigenvectors() * e.asDiagonal() * es.eigenvectors().adjoint();
}

double pairing_im_trace(const Mat& X, const Mat& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || X.rows() != X.cols())
    throw MalformedInput("pairing_im_trace: dimension mismatch");
  return (X * Y).trace().imag();
}

bool is_b_element(const Mat& b, double tol) {
  if (b.rows() != b.cols()) return false;
  const int n = (int)b.rows();
  double scale = std::max(1.0, b.norm());
  for (int i = 0; i < n; ++i) {
    if (!(b(i, i).real() > 0.0) || std::abs(b(i, i).imag()) > tol * scale)
      return false;
    for (int j = 0; j < i; ++j)
      if (std::abs(b(i, j)) > tol * scale) return false;
  }
  return true;
}

bool is_unitary(const Mat& u, double tol_per_n) {
  if (u.rows() != u.cols()) return false;
  const int n = (int)u.rows();
  Mat r = u * u.adjoint() - Mat::Identity(n, n);
  return r.norm() <= tol_per_n * n;
}

namespace {

void check_invertible(const Mat& K, double singularity_tol, const char* who) {
  Eigen::JacobiSVD<Mat> svd(K);
  double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (!(smin > singularity_tol))
    throw SingularInput(std::string(who) + ": smallest singular value " +
                        std::to_string(smin) + " below threshold");
}

}  // namespace

IwasawaLeft iwasawa_left(const Mat& K, const ToleranceConfig& tol) {
  if (K.rows() != K.cols()) throw MalformedInput("iwasawa_left: not square");
  const int n = (int)K.rows();
  check_invertible(K, tol.singularity_tol, "iwasawa_left");

  // Want K = bL * gR^{-1} with bL upper triangular, positive diagonal.
  // Flip trick: with J the reversal permutation, QR-factor (J K J)^dag = Q R,
  // normalize diag(R) phases to positive real, then bL = J R^dag J, gR = J Q J.
  Mat J = reversal(n);
  Mat M = (J * K * J).adjoint();
  Eigen::HouseholderQR<Mat> qr(M);
  Mat Q = qr.householderQ();
  Mat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    cxd ph = phase(R(j, j));
    R.row(j) *= std::conj(ph);
    Q.col(j) *= ph;
  }
  IwasawaLeft out;
  out.bL = J * R.adjoint() * J;
  out.gR = J * Q * J;
  // clean exact zeros below the diagonal
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) out.bL(i, j) = 0.0;
  for (int i = 0; i < n; ++i) out.bL(i, i) = out.bL(i, i).real();
  return out;
}

IwasawaRight iwasawa_right(const Mat& K, const ToleranceConfig& tol) {
  // K = gL * bR^{-1}  <=>  K^{-1} = bR * gL^{-1}
  IwasawaLeft inv = iwasawa_left(K.inverse(), tol);
  return IwasawaRight{inv.gR, inv.bL};
}

CartanTriple cartan_modified(const Mat& K, const ToleranceConfig& tol) {
  if (K.rows() != K.cols()) throw MalformedInput("cartan_modified: not square");
  const int n = (int)K.rows();
  Eigen::JacobiSVD<Mat> svd(K, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& sv = svd.singularValues();  // descending
  if (!(sv(n - 1) > tol.singularity_tol))
    throw SingularInput("cartan_modified: singular input");

  // ascending singular values so pHat = -log(sigma) is non-increasing
  Mat P = reversal(n);
  Mat etaL = svd.matrixU() * P;
  Mat etaR = svd.matrixV() * P;
  RVec pHat(n);
  for (int j = 0; j < n; ++j) pHat(j) = -std::log(sv(n - 1 - j));

  // torus-ambiguity convention: last nonzero entry of each etaL column
  // rotated to the positive real axis
  for (int j = 0; j < n; ++j) {
    int last = n - 1;
    while (last > 0 && std::abs(etaL(last, j)) <= 1e-12) --last;
    cxd ph = std::conj(phase(etaL(last, j)));
    etaL.col(j) *= ph;
    etaR.col(j) *= ph;
  }

  Vec d(n);
  for (int j = 0; j < n; ++j) d(j) = std::exp(-pHat(j));
  Mat core = etaL * d.asDiagonal();  // = K * etaR

  CartanTriple out;
  out.kL = etaL;
  out.pHat = pHat;
  out.kR = iwasawa_left(core, tol).gR * etaR;
  for (int j = 0; j + 1 < n; ++j)
    if (pHat(j) - pHat(j + 1) < tol.degeneracy_tol) out.degenerate = true;
  return out;
}

UnitaryEig unitary_eig(const Mat& g, const ToleranceConfig& tol) {
  if (g.rows() != g.cols()) throw MalformedInput("unitary_eig: not square");
  const int n = (int)g.rows();
  if (!is_unitary(g, 1e-8)) throw DomainError("unitary_eig: input not unitary");

  // g is normal, so its Schur form is diagonal and the Schur basis is an
  // orthonormal eigenbasis
  Eigen::ComplexSchur<Mat> schur(g);
  Mat u = schur.matrixU();
  Vec lam = schur.matrixT().diagonal();

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> ang(n);
  for (int j = 0; j < n; ++j) {
    double a = std::arg(lam(j));
    if (a < 0) a += 2.0 * M_PI;
    if (a >= 2.0 * M_PI) a -= 2.0 * M_PI;
    ang[j] = a;
  }
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return ang[a] > ang[b]; });

  UnitaryEig out;
  out.u = Mat(n, n);
  out.angles = RVec(n);
  for (int j = 0; j < n; ++j) {
    out.u.col(j) = u.col(idx[j]);
    out.angles(j) = ang[idx[j]];
  }
  (void)tol;
  return out;
}

}  // namespace rsdual
