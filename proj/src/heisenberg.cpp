#include "rsdual/heisenberg.hpp"

#include <array>
#include <cmath>

namespace rsdual {

HamiltonianSelector HamiltonianSelector::f(int k) {
  if (k < 1) throw MalformedInput("selector f: k must be >= 1");
  return {Family::F, k, {}};
}
HamiltonianSelector HamiltonianSelector::phi(int k) {
  if (k == 0) throw MalformedInput("selector phi: k must be nonzero");
  return {Family::Phi, k, {}};
}
HamiltonianSelector HamiltonianSelector::chi(std::vector<cxd> coeffs) {
  if (coeffs.empty()) throw MalformedInput("selector chi: empty series");
  return {Family::Chi, 0, std::move(coeffs)};
}

IwasawaBundle xi_maps(const Mat& K, const ToleranceConfig& tol) {
  IwasawaLeft l = iwasawa_left(K, tol);
  IwasawaRight r = iwasawa_right(K, tol);
  return IwasawaBundle{r.gL, l.gR, l.bL, r.bR};
}

Mat pi_b(const Mat& X) {
  const int n = (int)X.rows();
  Mat B = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    B(j, j) = X(j, j).real();
    for (int k = j + 1; k < n; ++k) B(j, k) = X(j, k) + std::conj(X(k, j));
  }
  return B;
}

Mat pi_g(const Mat& X) { return X - pi_b(X); }

Mat quasi_adjoint(const Mat& g, const Mat& K, const ToleranceConfig& tol) {
  Mat bL = iwasawa_left(K, tol).bL;
  Mat xi = iwasawa_left(g * bL, tol).gR;
  return g * K * xi;
}

Mat dress(const Mat& g, const Mat& b, const ToleranceConfig& tol) {
  return iwasawa_left(g * b, tol).bL;
}

Mat moment(const Mat& K, const ToleranceConfig& tol) {
  IwasawaBundle ib = xi_maps(K, tol);
  return ib.bL * ib.bR;
}

namespace {

// the four triangular/unitary factors of K, in the order bL, gL, bR, gR
std::array<Mat, 4> factors(const Mat& K, const ToleranceConfig& tol) {
  IwasawaBundle ib = xi_maps(K, tol);
  return {ib.bL, ib.gL, ib.bR, ib.gR};
}

// directional derivatives of the four factor maps at K along V, central
// differences with one Richardson step
std::array<Mat, 4> factor_derivs(const Mat& K, const Mat& V,
                                 const ToleranceConfig& tol, double h) {
  auto central = [&](double s) -> std::array<Mat, 4> {
    std::array<Mat, 4> plus, minus, out;
    try {
      plus = factors(K + s * V, tol);
      minus = factors(K - s * V, tol);
    } catch (const SingularInput&) {
      throw DomainError("finite-difference step left the invertible domain");
    }
    for (int i = 0; i < 4; ++i) out[i] = (plus[i] - minus[i]) / (2.0 * s);
    return out;
  };
  std::array<Mat, 4> dh = central(h), dh2 = central(h / 2);
  std::array<Mat, 4> out;
  for (int i = 0; i < 4; ++i) out[i] = (4.0 * dh2[i] - dh[i]) / 3.0;
  return out;
}

}  // namespace

double omega_plus(const Mat& K, const Mat& V, const Mat& W,
                  const ToleranceConfig& tol, double h) {
  std::array<Mat, 4> base = factors(K, tol);
  std::array<Mat, 4> dV = factor_derivs(K, V, tol, h);
  std::array<Mat, 4> dW = factor_derivs(K, W, tol, h);

  // Maurer-Cartan combinations dF F^{-1} for each factor map
  std::array<Mat, 4> aV, aW;
  for (int i = 0; i < 4; ++i) {
    Mat inv = base[i].inverse();
    aV[i] = dV[i] * inv;
    aW[i] = dW[i] * inv;
  }
  // pair the left family (bL with gL) and the right family (bR with gR)
  double left = ((aV[0] * aW[1] - aW[0] * aV[1]).trace()).imag();
  double right = ((aV[2] * aW[3] - aW[2] * aV[3]).trace()).imag();
  return 0.5 * (left + right);
}

Mat psi_eval(const HamiltonianSelector& sel, const Mat& g) {
  const int n = (int)g.rows();
  if (sel.family == HamiltonianSelector::Family::Phi) {
    int m = std::abs(sel.k);
    Mat p = Mat::Identity(n, n);
    for (int i = 0; i < m; ++i) p = p * g;
    return sel.k > 0 ? Mat(0.5 * p) : Mat(p / (2.0 * iu));
  }
  if (sel.family == HamiltonianSelector::Family::Chi) {
    // Horner: psi(g) = g (psi_1 + g (psi_2 + ...))
    Mat acc = Mat::Zero(n, n);
    for (int m = (int)sel.psi.size() - 1; m >= 0; --m)
      acc = g * (sel.psi[m] * Mat::Identity(n, n) + acc);
    return acc;
  }
  throw MalformedInput("psi_eval: selector not in the unitary family");
}

Mat dphi(const HamiltonianSelector& sel, const Mat& g) {
  Mat p = psi_eval(sel, g);
  return p - p.adjoint();
}

Mat drf(const HamiltonianSelector& sel, const Mat& b) {
  if (sel.family != HamiltonianSelector::Family::F)
    throw MalformedInput("drf: selector not in the positive family");
  const int n = (int)b.rows();
  Mat h = b.adjoint() * b;
  Mat p = Mat::Identity(n, n);
  for (int i = 0; i < sel.k; ++i) p = p * h;
  return iu * p;
}

double ham_value(const HamiltonianSelector& sel, const Mat& K,
                 const ToleranceConfig& tol) {
  IwasawaBundle ib = xi_maps(K, tol);
  const int n = (int)K.rows();
  if (sel.family == HamiltonianSelector::Family::F) {
    Mat h = ib.bR * ib.bR.adjoint();
    Mat p = Mat::Identity(n, n);
    for (int i = 0; i < sel.k; ++i) p = p * h;
    return p.trace().real() / (2.0 * sel.k);
  }
  const Mat& g = ib.gR;
  if (sel.family == HamiltonianSelector::Family::Phi) {
    int m = std::abs(sel.k);
    Mat p = Mat::Identity(n, n);
    for (int i = 0; i < m; ++i) p = p * g;
    cxd tr = p.trace();
    return sel.k > 0 ? tr.real() / m : tr.imag() / m;
  }
  // Chi: 2 Re tr sum_m (psi_m / m) g^m
  cxd acc = 0.0;
  Mat p = Mat::Identity(n, n);
  for (int m = 1; m <= (int)sel.psi.size(); ++m) {
    p = p * g;
    acc += sel.psi[m - 1] / double(m) * p.trace();
  }
  return 2.0 * acc.real();
}

GradientPair grad_pair(const HamiltonianSelector& sel, const Mat& K,
                       const ToleranceConfig& tol) {
  IwasawaBundle ib = xi_maps(K, tol);
  GradientPair out;
  if (sel.family == HamiltonianSelector::Family::F) {
    Mat d = drf(sel, ib.bR);
    out.left = -ib.gL * d * ib.gL.adjoint();
    out.right = -ib.bR * d * ib.bR.inverse();
  } else {
    Mat d = pi_b(iu * dphi(sel, ib.gR));
    out.left = -ib.bL * d * ib.bL.inverse();
    out.right = -ib.gR * d * ib.gR.adjoint();
  }
  return out;
}

double poisson_plus(const HamiltonianSelector& h1, const HamiltonianSelector& h2,
                    const Mat& K, const ToleranceConfig& tol) {
  GradientPair g1 = grad_pair(h1, K, tol);
  GradientPair g2 = grad_pair(h2, K, tol);
  auto rho = [](const Mat& X) { return Mat(0.5 * (pi_g(X) - pi_b(X))); };
  return pairing_im_trace(g1.right, rho(g2.right)) +
         pairing_im_trace(g1.left, rho(g2.left));
}

UnreducedLax unreduced_lax(const Mat& K, const ToleranceConfig& tol) {
  IwasawaBundle ib = xi_maps(K, tol);
  return UnreducedLax{ib.bR * ib.bR.adjoint(), ib.gR};
}

}  // namespace rsdual
