#include "rsdual/flows.hpp"

#include <cmath>

namespace rsdual {

namespace {

double spectral_radius_hermitian(const Mat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

constexpr double kExpCap = 30.0;   // per-step exponent norm for factorizations
constexpr double kHardCap = 300.0; // refuse exponents that overflow double

}  // namespace

Mat flow_lambda(const Mat& K0, const HamiltonianSelector& sel, double t,
                const ToleranceConfig& tol) {
  if (sel.family != HamiltonianSelector::Family::F)
    throw MalformedInput("flow_lambda: selector must be in the positive family");
  IwasawaBundle ib = xi_maps(K0, tol);
  Mat H = -iu * drf(sel, ib.bR);  // Hermitian
  // exp(-t * i H) is unitary, no overflow possible
  Mat U = exp_hermitian(H, cxd(0.0, -t));
  return ib.gL * U * ib.bR.inverse();
}

Mat flow_xi(const Mat& K0, const HamiltonianSelector& sel, double t,
            const ToleranceConfig& tol) {
  if (sel.family == HamiltonianSelector::Family::F)
    throw MalformedInput("flow_xi: selector must be in the unitary family");
  // the generator's spectrum is constant along the flow (the unitary factor
  // only gets conjugated), so a fixed chunk count keeps every exponential
  // well-scaled; exact steps compose exactly
  IwasawaBundle ib0 = xi_maps(K0, tol);
  double r = spectral_radius_hermitian(iu * dphi(sel, ib0.gR));
  int chunks = std::max(1, (int)std::ceil(r * std::abs(t) / kExpCap));
  double dt = t / chunks;
  Mat K = K0;
  for (int i = 0; i < chunks; ++i) {
    IwasawaBundle ib = xi_maps(K, tol);
    Mat Hm = iu * dphi(sel, ib.gR);   // Hermitian
    Mat E = exp_hermitian(Hm, dt);    // positive definite
    IwasawaLeft f = iwasawa_left(E, tol);
    Mat gamma = f.gR.adjoint();       // E = beta * gamma with gamma unitary
    Mat gRt = gamma * ib.gR * gamma.adjoint();
    K = (ib.bL * f.bL) * gRt.adjoint();
  }
  return K;
}

Mat cartan_invariant_flow(const Mat& K0, const HamiltonianSelector& sel,
                          double t, const ToleranceConfig& tol) {
  if (sel.family == HamiltonianSelector::Family::F)
    throw MalformedInput("cartan_invariant_flow: unitary-family selector required");
  IwasawaBundle ib = xi_maps(K0, tol);
  Mat Hm = iu * dphi(sel, ib.gR);
  if (spectral_radius_hermitian(Hm) * std::abs(2.0 * t) > kHardCap)
    throw OverflowGuard("cartan_invariant_flow: exponent beyond double range");
  Mat E = exp_hermitian(Hm, 2.0 * t);
  return ib.bL * E * ib.bL.adjoint();
}

Mat flow(const Mat& K0, const HamiltonianSelector& sel, double t,
         const ToleranceConfig& tol) {
  return sel.family == HamiltonianSelector::Family::F
             ? flow_lambda(K0, sel, t, tol)
             : flow_xi(K0, sel, t, tol);
}

}  // namespace rsdual
