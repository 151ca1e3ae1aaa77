#include "rsdual/rs_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsdual {

bool in_chamber_open(const RVec& pHat, double x, double slack) {
  for (int j = 0; j + 1 < pHat.size(); ++j)
    if (!(pHat(j) - pHat(j + 1) > std::abs(x) / 2 - slack)) return false;
  return true;
}

bool in_chamber_closed(const RVec& pHat, double x, double slack) {
  for (int j = 0; j + 1 < pHat.size(); ++j)
    if (!(pHat(j) - pHat(j + 1) >= std::abs(x) / 2 - slack)) return false;
  return true;
}

double weight_w(double x, double dq) {
  double s = std::sin(dq);
  double sh = std::sinh(x / 2);
  return std::sqrt(1.0 + sh * sh / (s * s));
}

namespace {

void check_regular(const PointP& pt, double min_gap) {
  const int n = pt.n();
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(std::sin(pt.q(j) - pt.q(k))) < min_gap)
        throw DomainError("angle collision: |sin(q_j - q_k)| below threshold");
}

// products of the quarter-power interaction factors for the compact model
RVec quarter_products_rs(const PointP& pt, double x) {
  const int n = pt.n();
  RVec out(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double s = std::sin(pt.q(j) - pt.q(m));
      double sh = std::sinh(x / 2);
      double brk = 1.0 + sh * sh / (s * s);
      prod *= std::pow(brk, 0.25);
    }
    out(j) = prod;
  }
  return out;
}

RVec quarter_products_dual(const PointPhat& pt, double x) {
  const int n = pt.n();
  RVec out(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double sh = std::sinh(pt.pHat(j) - pt.pHat(m));
      double shx = std::sinh(x / 2);
      double brk = 1.0 - shx * shx / (sh * sh);
      if (!(brk > 0.0))
        throw ChamberViolation("dual interaction radicand not positive");
      prod *= std::pow(brk, 0.25);
    }
    out(j) = prod;
  }
  return out;
}

}  // namespace

Mat lax_rs(const PointP& pt, const Coupling& c, const ToleranceConfig& tol) {
  (void)tol;
  check_regular(pt, 1e-6);
  const int n = pt.n();
  const double x = c.x;
  RVec qp = quarter_products_rs(pt, x);
  Mat L(n, n);
  cxd shx = std::sinh(cxd(x / 2, 0.0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cxd den = std::sinh(iu * (pt.q(j) - pt.q(k)) + cxd(x / 2, 0.0));
      L(j, k) = std::exp(pt.p(k)) * (shx / den) * qp(j) * qp(k);
    }
  return L;
}

Mat lax_dual(const PointPhat& pt, const Coupling& c, const ToleranceConfig& tol) {
  (void)tol;
  const int n = pt.n();
  const double x = c.x;
  if (!in_chamber_open(pt.pHat, x))
    throw ChamberViolation("dual point not strictly inside the chamber");
  RVec qp = quarter_products_dual(pt, x);
  Mat L(n, n);
  double shx = std::sinh(-x / 2);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double den = (j == k) ? shx : std::sinh(pt.pHat(j) - pt.pHat(k) - x / 2);
      L(j, k) = std::exp(iu * pt.qHat(k)) * (shx / den) * qp(j) * qp(k);
    }
  return L;
}

double ham_rs(const PointP& pt, const Coupling& c, const ToleranceConfig& tol) {
  (void)tol;
  check_regular(pt, 1e-6);
  const int n = pt.n();
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m)
      if (m != j) prod *= weight_w(c.x, pt.q(j) - pt.q(m));
    sum += std::cosh(pt.p(j)) * prod;
  }
  return sum;
}

double ham_dual(const PointPhat& pt, const Coupling& c,
                const ToleranceConfig& tol) {
  (void)tol;
  const int n = pt.n();
  double shx = std::sinh(c.x / 2);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double sh = std::sinh(pt.pHat(j) - pt.pHat(m));
      double brk = 1.0 - shx * shx / (sh * sh);
      if (!(brk > 0.0))
        throw ChamberViolation("dual interaction radicand not positive");
      prod *= std::sqrt(brk);
    }
    sum += std::cos(pt.qHat(j)) * prod;
  }
  return sum;
}

RVec dual_lax_conjugator(double x, const RVec& pHat) {
  const int n = (int)pHat.size();
  RVec d(n);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int m = 0; m < n; ++m) {
      if (m == j) continue;
      double ratio = std::sinh(pHat(j) - pHat(m) + x / 2) /
                     std::sinh(pHat(j) - pHat(m) - x / 2);
      if (!(ratio > 0.0))
        throw ChamberViolation("conjugator radicand not positive");
      prod *= std::pow(ratio, 0.25);
    }
    d(j) = prod;
  }
  return d;
}

PointP sn_act(const std::vector<int>& sigma, const PointP& pt) {
  const int n = pt.n();
  if ((int)sigma.size() != n) throw MalformedInput("sn_act: bad permutation");
  PointP out;
  out.q = RVec(n);
  out.p = RVec(n);
  for (int j = 0; j < n; ++j) {
    out.q(j) = pt.q(sigma[j]);
    out.p(j) = pt.p(sigma[j]);
  }
  return out;
}

std::pair<PointP, std::vector<int>> canonicalize(const PointP& pt,
                                                 const ToleranceConfig& tol) {
  const int n = pt.n();
  PointP red = pt;
  for (int j = 0; j < n; ++j) {
    double q = std::fmod(red.q(j), M_PI);
    if (q < 0) q += M_PI;
    red.q(j) = q;
  }
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return red.q(a) > red.q(b); });
  PointP out = sn_act(idx, red);
  for (int j = 0; j + 1 < n; ++j)
    if (out.q(j) - out.q(j + 1) < tol.degeneracy_tol)
      throw DomainError("canonicalize: coincident angles");
  return {out, idx};
}

}  // namespace rsdual
