#include "rsdual/duality.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace rsdual {

namespace {

double wrap_2pi(double a) {
  a = std::fmod(a, 2 * M_PI);
  if (a < 0) a += 2 * M_PI;
  return a;
}

std::vector<cxd> sorted_by_angle(const Vec& v) {
  std::vector<cxd> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(),
            [](cxd a, cxd b) { return wrap_2pi(std::arg(a)) < wrap_2pi(std::arg(b)); });
  return out;
}

}  // namespace

double multiset_residual_positive(const RVec& a, const RVec& b) {
  std::vector<double> sa(a.data(), a.data() + a.size());
  std::vector<double> sb(b.data(), b.data() + b.size());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double r = 0;
  for (size_t i = 0; i < sa.size(); ++i)
    r = std::max(r, std::abs(sa[i] - sb[i]) /
                        std::max({1.0, std::abs(sa[i]), std::abs(sb[i])}));
  return r;
}

double multiset_residual_unimodular(const Vec& a, const Vec& b) {
  auto sa = sorted_by_angle(a), sb = sorted_by_angle(b);
  const int n = (int)sa.size();
  double best = 1e300;
  // values live on the circle; allow a cyclic offset of the sorted order
  for (int s = 0; s < n; ++s) {
    double r = 0;
    for (int i = 0; i < n; ++i)
      r = std::max(r, std::abs(sa[i] - sb[(i + s) % n]));
    best = std::min(best, r);
  }
  return best;
}

RVec pi_hat(const Mat& K, const ToleranceConfig& tol) {
  (void)tol;
  Eigen::SelfAdjointEigenSolver<Mat> es(K * K.adjoint(), Eigen::EigenvaluesOnly);
  const RVec& lam = es.eigenvalues();  // ascending
  RVec p(lam.size());
  for (int j = 0; j < lam.size(); ++j) {
    if (!(lam(j) > 0)) throw SingularInput("pi_hat: singular input");
    p(j) = -0.5 * std::log(lam(j));
  }
  return p;  // non-increasing
}

namespace {

Vec eig_general(const Mat& A) {
  Eigen::ComplexEigenSolver<Mat> es(A, false);
  return es.eigenvalues();
}

// spectral certificates of the duality exchange
void spectral_exchange_residuals(const PointP& pt, const PointPhat& hat,
                              const Coupling& c, const ToleranceConfig& tol,
                              double* res_l, double* res_lhat) {
  const int n = pt.n();
  Vec eigL = eig_general(lax_rs(pt, c, tol));
  RVec reL(n), target(n);
  double imag_res = 0;
  for (int j = 0; j < n; ++j) {
    reL(j) = eigL(j).real();
    imag_res = std::max(imag_res, std::abs(eigL(j).imag()));
    target(j) = std::exp(2.0 * hat.pHat(j));
  }
  *res_l = std::max(multiset_residual_positive(reL, target),
                    imag_res / std::max(1.0, target.maxCoeff()));
  Vec eigLhat = eig_general(lax_dual(hat, c, tol));
  Vec circ(n);
  for (int j = 0; j < n; ++j) circ(j) = std::exp(2.0 * iu * pt.q(j));
  *res_lhat = multiset_residual_unimodular(eigLhat, circ);
}

// gauge-equivalence certificate: spectra of the unitary factor and of the
// positive moment-type matrix must match
double orbit_match_residual(const Mat& A, const Mat& B,
                            const ToleranceConfig& tol) {
  IwasawaBundle ia = xi_maps(A, tol), ib = xi_maps(B, tol);
  double r1 = multiset_residual_unimodular(eig_general(ia.gR), eig_general(ib.gR));
  Eigen::SelfAdjointEigenSolver<Mat> ea(ia.bR * ia.bR.adjoint(),
                                        Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> eb(ib.bR * ib.bR.adjoint(),
                                        Eigen::EigenvaluesOnly);
  double r2 = multiset_residual_positive(ea.eigenvalues(), eb.eigenvalues());
  return std::max(r1, r2);
}

}  // namespace

ForwardResult duality_forward(const PointP& pt, const Coupling& c,
                              const ToleranceConfig& tol) {
  Mat K = itilde(pt, c, tol);
  CartanTriple ct = cartan_modified(K, tol);
  if (!in_chamber_open(ct.pHat, c.x, -1e-9))
    throw ChamberViolation("duality_forward: image on a chamber face");
  RMat th = theta(c, ct.pHat, tol);
  const int n = pt.n();
  ForwardResult out;
  out.pt.pHat = ct.pHat;
  out.pt.qHat = RVec(n);
  for (int j = 0; j < n; ++j) {
    if (std::abs(th(j, j)) < 1e-12)
      throw DegenerateSpectrum("duality_forward: diagonal extraction degenerate");
    out.pt.qHat(j) = wrap_2pi(std::arg(ct.kR(j, j) / th(j, j)));
  }
  spectral_exchange_residuals(pt, out.pt, c, tol, &out.res_spec_l,
                           &out.res_spec_lhat);
  double orbit = orbit_match_residual(k_x_map(out.pt, c, tol), K, tol);
  if (std::max({out.res_spec_l, out.res_spec_lhat, orbit}) > 1e-6)
    throw DomainError("duality_forward: certification failed");
  return out;
}

InverseResult duality_inverse(const PointPhat& pt, const Coupling& c,
                              const ToleranceConfig& tol) {
  Mat K = k_x_map(pt, c, tol);
  ReduceResult rr = reduce_to_slice(K, c, tol);
  InverseResult out;
  out.pt = rr.pt;
  out.gauge = rr.gauge;
  spectral_exchange_residuals(out.pt, pt, c, tol, &out.res_spec_l,
                           &out.res_spec_lhat);
  if (std::max(out.res_spec_l, out.res_spec_lhat) > 1e-6)
    throw DomainError("duality_inverse: certification failed");
  return out;
}

ForwardCompletedResult duality_forward_completed(const PointP& pt,
                                                 const Coupling& c,
                                                 const ToleranceConfig& tol) {
  const int n = pt.n();
  const double face_tol = 1e-7;
  Mat K = itilde(pt, c, tol);
  CartanTriple ct = cartan_modified(K, tol);
  bool interior = true;
  for (int j = 0; j + 1 < n; ++j)
    if (ct.pHat(j) - ct.pHat(j + 1) - std::abs(c.x) / 2 < face_tol)
      interior = false;

  ForwardCompletedResult out;
  if (interior) {
    ForwardResult fw = duality_forward(pt, c, tol);
    out.pc = zx_embed(fw.pt, c);
    out.boundary = false;
    out.certification_residual =
        orbit_match_residual(ihat(out.pc, c, tol), K, tol);
    return out;
  }

  out.boundary = true;
  RMat th = theta(c, ct.pHat, tol);
  const Mat& kR = ct.kR;
  // per-index phases phi_j with kR = dl * theta * dr, phi_j = dl_j dr_j.
  // On chamber faces theta entries vanish, so anchor on usable diagonal
  // entries, propagate through usable (j,k)/(k,j) products, and sweep the
  // genuinely undetermined remainder (those phases do not affect the
  // completed point; the certification picks a consistent choice).
  const double use_tol = 1e-6;
  // bipartite potential assignment: node j is the row phase psi_j, node n+k
  // the column phase chi_k; each usable entry fixes psi_j chi_k. Within a
  // connected component the potentials are determined up to one unit lambda
  // (psi -> lambda psi, chi -> chi / lambda), so
  //   phi_j = psi_j chi_j = pot_j pot_{n+j} lambda_{comp(j)} / lambda_{comp(n+j)}
  // and only cross-component lambdas remain free.
  auto usable = [&](int j, int k) { return std::abs(th(j, k)) > use_tol; };
  auto entry_phase = [&](int j, int k) {
    cxd v = kR(j, k) / th(j, k);
    return v / std::abs(v);
  };
  std::vector<int> comp(2 * n, -1);
  std::vector<cxd> pot(2 * n, cxd(1, 0));
  int ncomp = 0;
  for (int root = 0; root < 2 * n; ++root) {
    if (comp[root] != -1) continue;
    comp[root] = ncomp;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (u < n) {
        for (int k = 0; k < n; ++k)
          if (usable(u, k) && comp[n + k] == -1) {
            comp[n + k] = ncomp;
            pot[n + k] = entry_phase(u, k) / pot[u];
            stack.push_back(n + k);
          }
      } else {
        for (int j = 0; j < n; ++j)
          if (usable(j, u - n) && comp[j] == -1) {
            comp[j] = ncomp;
            pot[j] = entry_phase(j, u - n) / pot[u];
            stack.push_back(j);
          }
      }
    }
    ++ncomp;
  }

  // sweep only the lambdas that actually enter some phi_j
  std::vector<char> relevant(ncomp, 0);
  for (int j = 0; j < n; ++j)
    if (comp[j] != comp[n + j]) {
      relevant[comp[j]] = 1;
      relevant[comp[n + j]] = 1;
    }
  std::vector<int> free_comps;
  bool first_rel = true;
  for (int cmp = 0; cmp < ncomp; ++cmp)
    if (relevant[cmp]) {
      if (first_rel)
        first_rel = false;  // fix one lambda, only ratios matter
      else
        free_comps.push_back(cmp);
    }

  const int sweep = 8;
  long combos = 1;
  for (size_t r = 0; r < free_comps.size(); ++r) combos *= sweep;
  if (combos > 40000)
    throw DomainError("duality_forward_completed: too many undetermined phases");

  double best = 1e300;
  PointPhatC best_pc;
  std::vector<cxd> lambda(ncomp, cxd(1, 0));
  for (long cmb = 0; cmb < combos; ++cmb) {
    long rem = cmb;
    for (int cmp : free_comps) {
      lambda[cmp] = std::exp(iu * (2 * M_PI * (rem % sweep) / sweep));
      rem /= sweep;
    }
    PointPhat hat;
    hat.pHat = ct.pHat;
    hat.qHat = RVec(n);
    for (int j = 0; j < n; ++j) {
      cxd phij = pot[j] * pot[n + j] * lambda[comp[j]] / lambda[comp[n + j]];
      hat.qHat(j) = wrap_2pi(std::arg(phij));
    }
    PointPhatC pc = zx_embed(hat, c, true);
    double res = orbit_match_residual(ihat(pc, c, tol), K, tol);
    if (res < best) {
      best = res;
      best_pc = pc;
    }
  }
  if (best > 10 * tol.boundary_recover_tol)
    throw DomainError("duality_forward_completed: certification failed");
  out.pc = best_pc;
  out.certification_residual = best;
  return out;
}

RVec dual_flow_spectral(const PointPhatC& start, const HamiltonianSelector& sel,
                        double t, const Coupling& c,
                        const ToleranceConfig& tol) {
  (void)tol;
  const int n = start.n();
  HatBundle hb = hat_bundle(start, c);
  Vec xiR(n);
  RVec e2p(n);
  for (int j = 0; j < n; ++j) {
    xiR(j) = std::conj(phase(hb.Delta(j)));
    e2p(j) = std::norm(hb.Delta(j));  // e^{-2 pHat_j}
  }
  Mat M = hb.thetaHat * xiR.asDiagonal();  // unitary
  Mat H = iu * dphi(sel, M);               // Hermitian
  Eigen::SelfAdjointEigenSolver<Mat> hs(H, Eigen::EigenvaluesOnly);
  if (hs.eigenvalues().cwiseAbs().maxCoeff() * 2 * std::abs(t) > 300)
    throw OverflowGuard("dual_flow_spectral: exponent beyond double range");
  Mat W = exp_hermitian(H, t);  // = exp(t H), so W A W ~ A exp(2 t H)
  Mat S = W * e2p.cast<cxd>().asDiagonal() * W;
  Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
  RVec p(n);
  for (int j = 0; j < n; ++j) {
    double lam = es.eigenvalues()(j);  // ascending
    if (!(lam > 0)) throw SingularInput("dual_flow_spectral: spectrum not positive");
    p(j) = -0.5 * std::log(lam);
  }
  return p;  // non-increasing
}

namespace {

Mat poly_eval(const std::vector<cxd>& coeff, const Mat& M) {
  const int n = (int)M.rows();
  Mat acc = Mat::Zero(n, n);
  for (int m = (int)coeff.size() - 1; m >= 0; --m)
    acc = M * (coeff[m] * Mat::Identity(n, n) + acc);
  return acc;
}

std::vector<cxd> psi_coeffs(const HamiltonianSelector& sel) {
  if (sel.family == HamiltonianSelector::Family::Chi) return sel.psi;
  int m = std::abs(sel.k);
  std::vector<cxd> coeff(m, cxd(0, 0));
  coeff[m - 1] = sel.k > 0 ? cxd(0.5, 0) : cxd(1.0) / (2.0 * iu);
  return coeff;
}

}  // namespace

RVec dual_flow_spectral(const PointPhat& start, const HamiltonianSelector& sel,
                        double t, const Coupling& c,
                        const ToleranceConfig& tol) {
  const int n = start.n();
  Mat Lhat = lax_dual(start, c, tol);
  std::vector<cxd> coeff = psi_coeffs(sel);
  std::vector<cxd> coeff_conj(coeff);
  for (auto& v : coeff_conj) v = std::conj(v);
  Mat G = poly_eval(coeff, Lhat) - poly_eval(coeff_conj, Mat(Lhat.inverse()));
  Mat E = (2.0 * iu * t * G).exp();
  Vec e2p(n);
  for (int j = 0; j < n; ++j) e2p(j) = std::exp(-2.0 * start.pHat(j));
  Vec lam = eig_general(e2p.asDiagonal() * E);
  RVec p(n);
  double imag_res = 0;
  for (int j = 0; j < n; ++j) {
    imag_res = std::max(imag_res, std::abs(lam(j).imag()));
    if (!(lam(j).real() > 0))
      throw SingularInput("dual_flow_spectral: spectrum not positive");
    p(j) = -0.5 * std::log(lam(j).real());
  }
  if (imag_res > 1e-8 * (1.0 + e2p.cwiseAbs().maxCoeff()))
    throw DomainError("dual_flow_spectral: spectrum unexpectedly complex");
  std::sort(p.data(), p.data() + n, std::greater<double>());
  return p;
}

PointP original_flow_reduced(const PointP& pt, const HamiltonianSelector& sel,
                             double t, const Coupling& c,
                             const ToleranceConfig& tol) {
  Mat K = itilde(pt, c, tol);
  Mat Kt = flow_lambda(K, sel, t, tol);
  return reduce_to_slice(Kt, c, tol).pt;
}

}  // namespace rsdual
