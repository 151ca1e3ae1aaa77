#include "rsdual/reduction.hpp"

#include <cmath>

namespace rsdual {

Mat nu(const Coupling& c, int n) {
  const double x = c.x;
  Mat b = Mat::Identity(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l)
      b(k, l) = (1.0 - std::exp(-x)) * std::exp((l - k) * x / 2.0);
  return b;
}

RVec v_vec(const Coupling& c, int n) {
  const double x = c.x;
  double pref = std::sqrt(n * (std::exp(x) - 1.0) / (1.0 - std::exp(-n * x)));
  RVec v(n);
  for (int k = 0; k < n; ++k) v(k) = pref * std::exp(-(k + 1) * x / 2.0);
  return v;
}

bool is_gauge_element(const Mat& g, const Coupling& c, double tol) {
  if (!is_unitary(g, 1e-9)) return false;
  const int n = (int)g.rows();
  RVec v = v_vec(c, n);
  Vec gv = g * v.cast<cxd>();
  // gv must be a unit-modulus multiple of v; compare after phase alignment
  int imax;
  v.maxCoeff(&imax);
  cxd ph = phase(gv(imax));
  return (gv - ph * v.cast<cxd>()).norm() <= tol * std::sqrt((double)n);
}

Mat calN(const Vec& T, const Coupling& c) {
  const int n = (int)T.size();
  const double x = c.x;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(T(j) - T(k)) < 1e-9)
        throw DomainError("calN: coincident spectral parameters");
  Mat N = Mat::Identity(n, n);
  cxd ep = std::exp(cxd(x / 2, 0.0)), em = std::exp(cxd(-x / 2, 0.0));
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      cxd prod = 1.0;
      for (int m = 1; m <= l - k; ++m)
        prod *= (ep * T(l) - em * T(k + m)) / (T(l) - T(k + m - 1));
      N(k, l) = prod;
    }
  return N;
}

RVec slice_diagonal(const PointP& pt, const Coupling& c) {
  const int n = pt.n();
  double sh2 = std::sinh(c.x / 2) * std::sinh(c.x / 2);
  RVec a(n);
  for (int j = 0; j < n; ++j) {
    double la = -pt.p(j) / 2;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double s = std::sin(pt.q(j) - pt.q(m));
      double lb = 0.25 * std::log(1.0 + sh2 / (s * s));
      la += (m < j) ? -lb : lb;
    }
    a(j) = std::exp(la);
  }
  return a;
}

namespace {

Vec t_of_q(const RVec& q) {
  Vec T(q.size());
  for (int j = 0; j < q.size(); ++j) T(j) = std::exp(2.0 * iu * q(j));
  return T;
}

}  // namespace

Mat itilde(const PointP& pt, const Coupling& c, const ToleranceConfig& tol) {
  const int n = pt.n();
  Vec T = t_of_q(pt.q);
  RVec a = slice_diagonal(pt, c);
  Mat N = calN(T, c);
  Mat K = N * a.cast<cxd>().asDiagonal() * T.cwiseInverse().asDiagonal();

  // independent entrywise route: diagonal entries direct, each column filled
  // upward from its diagonal entry by the two-term recursive products
  Mat Kd = Mat::Zero(n, n);
  cxd ep = std::exp(cxd(c.x / 2, 0.0)), em = std::exp(cxd(-c.x / 2, 0.0));
  for (int l = 0; l < n; ++l) {
    Kd(l, l) = a(l) * std::exp(-2.0 * iu * pt.q(l));
    for (int k = 0; k < l; ++k) {
      cxd prod = 1.0;
      for (int m = 1; m <= l - k; ++m)
        prod *= (ep * T(l) - em * T(k + m)) / (T(l) - T(k + m - 1));
      Kd(k, l) = Kd(l, l) * prod;
    }
  }
  double scale = 1.0 + K.norm();
  if ((K - Kd).norm() > tol.cross_check_tol * scale * 100)
    throw ConstraintViolated("itilde: two construction routes disagree");

  double res = (moment(K, tol) - nu(c, n)).norm();
  if (res > 1e-6 * scale)
    throw ConstraintViolated("itilde: moment residual unexpectedly large");
  return K;
}

ResidualGaugeResult residual_gauge(int k, const PointP& pt, const Coupling& c,
                                   const ToleranceConfig& tol) {
  const int n = pt.n();
  if (k < 0 || k + 1 >= n) throw MalformedInput("residual_gauge: bad index");
  ResidualGaugeResult out;
  out.swapped = pt;
  std::swap(out.swapped.q(k), out.swapped.q(k + 1));
  std::swap(out.swapped.p(k), out.swapped.p(k + 1));

  const double x = c.x;
  double dq = pt.q(k) - pt.q(k + 1);
  // rotation angle from cot(gamma) = tanh(x/2) cot(dq); branch fixed below by
  // matching the action on the slice
  double gamma = std::atan2(std::sin(dq), std::tanh(x / 2) * std::cos(dq));

  Mat K0 = itilde(pt, c, tol);
  Mat K1 = itilde(out.swapped, c, tol);
  double best = 1e300;
  for (double g : {gamma, gamma + M_PI}) {
    cxd Gam = std::exp(iu * g);
    cxd al = std::cos(g) + iu * std::sin(g) * std::tanh(x / 2);
    cxd be = iu * std::sin(g) / std::cosh(x / 2);
    Mat G = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) G(j, j) = Gam;
    G(k, k) = al;
    G(k, k + 1) = be;
    G(k + 1, k) = be;
    G(k + 1, k + 1) = std::conj(al);
    double res = (quasi_adjoint(G, K0, tol) - K1).norm();
    if (res < best) {
      best = res;
      out.gauge = G;
    }
  }
  if (best > 1e-6 * (1.0 + K1.norm()))
    throw DomainError("residual_gauge: no branch reproduces the exchanged point");
  return out;
}

ReduceResult reduce_to_slice(const Mat& K, const Coupling& c,
                             const ToleranceConfig& tol) {
  const int n = (int)K.rows();
  IwasawaBundle ib = xi_maps(K, tol);

  // (1) spectral data of the unitary factor, canonical descending angles
  UnitaryEig eig = unitary_eig(ib.gR, tol);
  for (int j = 0; j + 1 < n; ++j)
    if (eig.angles(j) - eig.angles(j + 1) < tol.degeneracy_tol)
      throw DegenerateSpectrum("reduce_to_slice: unitary factor spectrum degenerate");
  if (n > 1 && eig.angles(0) - eig.angles(n - 1) > 2 * M_PI - tol.degeneracy_tol)
    throw DegenerateSpectrum("reduce_to_slice: spectrum degenerate across the cut");

  // (2) unitary moving K into a point whose unitary factor is diagonal
  Mat M = eig.u.adjoint() * ib.bL.inverse();
  Mat g0 = iwasawa_left(M, tol).gR.adjoint();

  // (3) diagonal correction bringing the moment value back to the constraint
  Mat nuX = nu(c, n);
  Mat D = dress(g0, nuX, tol);
  Vec tau(n);
  tau(n - 1) = 1.0;
  for (int j = n - 2; j >= 0; --j) {
    cxd r = D(j, j + 1) / nuX(j, j + 1);
    if (std::abs(std::abs(r) - 1.0) > 1e-6)
      throw DomainError("reduce_to_slice: gauge correction not unimodular");
    tau(j) = tau(j + 1) * (r / std::abs(r));
  }
  Mat g = tau.cwiseInverse().asDiagonal() * g0;

  Mat S = quasi_adjoint(g, K, tol);
  double res = (moment(S, tol) - nuX).norm();
  if (res > 1e-6 * (1.0 + S.norm()))
    throw DomainError("reduce_to_slice: gauge solve residual too large");

  // (4) read off the coordinates
  ReduceResult out;
  out.gauge = g;
  out.pt.q = RVec(n);
  out.pt.p = RVec(n);
  for (int j = 0; j < n; ++j) out.pt.q(j) = eig.angles(j) / 2;
  RVec a(n);
  Mat bLS = iwasawa_left(S, tol).bL;
  for (int j = 0; j < n; ++j) a(j) = bLS(j, j).real();
  double sh2 = std::sinh(c.x / 2) * std::sinh(c.x / 2);
  for (int j = 0; j < n; ++j) {
    double p = -2.0 * std::log(a(j));
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double s = std::sin(out.pt.q(j) - out.pt.q(m));
      double lw2 = std::log(1.0 + sh2 / (s * s));
      p += (m < j) ? -0.5 * lw2 : 0.5 * lw2;
    }
    out.pt.p(j) = p;
  }
  return out;
}

int moment_rank(const Mat& K, const Coupling& c, const ToleranceConfig& tol) {
  const int n = (int)K.rows();
  if ((moment(K, tol) - nu(c, n)).norm() > 1e-6)
    throw ConstraintViolated("moment_rank: point not on the constraint surface");
  const double h = 1e-6;
  const int dim = 2 * n * n;   // real dimension of the tangent space at K
  const int codim = n * n;     // real coordinates of a triangular variation
  RMat Jac(codim, dim);
  int col = 0;
  for (int re = 0; re < 2; ++re)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Mat E = Mat::Zero(n, n);
        E(j, k) = re == 0 ? cxd(1, 0) : cxd(0, 1);
        Mat d = (moment(K + h * E, tol) - moment(K - h * E, tol)) / (2 * h);
        int row = 0;
        for (int a = 0; a < n; ++a) Jac(row++, col) = d(a, a).real();
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) {
            Jac(row++, col) = d(a, b).real();
            Jac(row++, col) = d(a, b).imag();
          }
        ++col;
      }
  Eigen::JacobiSVD<RMat> svd(Jac);
  const RVec& sv = svd.singularValues();
  double smax = sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol.rank_tol * smax) ++rank;
  return rank;
}

}  // namespace rsdual
