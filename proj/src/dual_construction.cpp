#include "rsdual/dual_construction.hpp"

#include <cmath>

namespace rsdual {

namespace {

double lsinh_abs(double t) {
  double a = std::abs(t);
  return a - std::log(2.0) + std::log1p(-std::exp(-2.0 * a));
}

// sinh(a)/sinh(b), stable for large arguments
double sinh_ratio(double a, double b) {
  if (a == 0.0) return 0.0;
  if (std::max(std::abs(a), std::abs(b)) < 25.0) return std::sinh(a) / std::sinh(b);
  double s = ((a > 0) == (b > 0)) ? 1.0 : -1.0;
  return s * std::exp(lsinh_abs(a) - lsinh_abs(b));
}

// clamps tiny negative radicands produced by roundoff at chamber faces
double clamp_radicand(double f, const char* who) {
  if (f < -1e-9) throw DomainError(std::string(who) + ": negative radicand");
  return f < 0 ? 0.0 : f;
}

void check_chamber(const RVec& pHat, double x, double slack, const char* who) {
  if (!in_chamber_closed(pHat, x, slack))
    throw ChamberViolation(std::string(who) + ": point outside the closed chamber");
}

}  // namespace

RMat theta(const Coupling& c, const RVec& pHat, const ToleranceConfig& tol) {
  const int n = (int)pHat.size();
  const double x = c.x;
  check_chamber(pHat, x, tol.chamber_tol, "theta");
  RMat th(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        double prod = 1.0;
        for (int m = 0; m < n; ++m) {
          if (m == j) continue;
          double d = pHat(j) - pHat(m);
          double f = sinh_ratio(d - x / 2, d) * sinh_ratio(d + x / 2, d);
          prod *= clamp_radicand(f, "theta");
        }
        th(j, j) = std::sqrt(prod);
      } else {
        double pref = sinh_ratio(x / 2, pHat(k) - pHat(j));
        double prod = 1.0;
        for (int m = 0; m < n; ++m) {
          if (m == j || m == k) continue;
          double dj = pHat(j) - pHat(m), dk = pHat(k) - pHat(m);
          double f = clamp_radicand(sinh_ratio(dj - x / 2, dj), "theta") *
                     clamp_radicand(sinh_ratio(dk + x / 2, dk), "theta");
          prod *= f;
        }
        th(j, k) = pref * std::sqrt(prod);
      }
    }
  return th;
}

namespace {

// (1 - e^{2d - x}) / (1 - e^{2d}), stable for large |d|
double exp_gap_ratio(double d, double x) {
  if (d > 0)
    return (std::exp(-2 * d) - std::exp(-x)) / (std::exp(-2 * d) - 1.0);
  return (1.0 - std::exp(2 * d - x)) / (1.0 - std::exp(2 * d));
}

}  // namespace

RVec r_vec_dual(const Coupling& c, const RVec& pHat) {
  const int n = (int)pHat.size();
  const double x = c.x;
  double pref = (1.0 - std::exp(-x)) / (1.0 - std::exp(-n * x));
  RVec r(n);
  for (int j = 0; j < n; ++j) {
    double prod = pref;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      prod *= clamp_radicand(exp_gap_ratio(pHat(j) - pHat(k), x), "r_vec_dual");
    }
    r(j) = std::sqrt(prod);
  }
  return r;
}

RVec xi_vec(const Coupling& c, const RVec& pHat) {
  const int n = (int)pHat.size();
  const double x = c.x;
  double pref = std::sqrt((std::exp(n * x) - 1.0) / (std::exp(x) - 1.0));
  RVec r = r_vec_dual(c, pHat);
  RVec xi(n);
  for (int j = 0; j < n; ++j) xi(j) = pref * std::exp(pHat(j)) * r(j);
  return xi;
}

namespace {

// rotation sending the special basis vector e_a to the unit vector r
RMat special_rotation(const RVec& r, int a) {
  const int n = (int)r.size();
  RMat Z = RMat::Zero(n, n);
  Z(a, a) = r(a);
  for (int i = 0; i < n; ++i) {
    if (i == a) continue;
    Z(i, a) = r(i);
    Z(a, i) = -r(i);
    for (int j = 0; j < n; ++j) {
      if (j == a) continue;
      Z(i, j) = (i == j ? 1.0 : 0.0) - r(i) * r(j) / (1.0 + r(a));
    }
  }
  return Z;
}

}  // namespace

RMat zeta(const Coupling& c, const RVec& pHat, const ToleranceConfig& tol) {
  const int n = (int)pHat.size();
  check_chamber(pHat, c.x, tol.chamber_tol, "zeta");
  RVec r = r_vec_dual(c, pHat);
  int a = c.x > 0 ? n - 1 : 0;
  RMat Z = special_rotation(r, a);
  if ((Z * Z.transpose() - RMat::Identity(n, n)).norm() > 1e-8 * n)
    throw DomainError("zeta: orthogonality lost (ill-conditioned input)");
  return Z;
}

RMat kappa_l(const Coupling& c, int n) {
  RVec v = v_vec(c, n) / std::sqrt((double)n);
  int a = c.x > 0 ? n - 1 : 0;
  return special_rotation(v, a);
}

RMat kappa_r(const Coupling& c, int n) {
  RMat M = RMat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) M(i, i + 1) = 1.0;
  M(n - 1, 0) = 1.0;
  return c.x > 0 ? M : RMat(M.transpose());
}

Vec tau_sub(const Coupling& c, const Vec& tau) {
  const int n = (int)tau.size();
  Vec out(n);
  if (c.x > 0) {
    for (int j = 0; j + 1 < n; ++j) out(j) = tau(j + 1);
    out(n - 1) = 1.0;
  } else {
    out(0) = 1.0;
    for (int j = 1; j < n; ++j) out(j) = tau(j - 1);
  }
  return out;
}

Vec tau_sub_tilde(const Coupling& c, const Vec& tau) {
  const int n = (int)tau.size();
  Vec out = tau;
  if (c.x > 0)
    out(0) = 1.0;
  else
    out(n - 1) = 1.0;
  return out;
}

Vec aleph(const Coupling& c, const Vec& tau) {
  const int n = (int)tau.size();
  Vec out(n);
  if (c.x > 0) {
    cxd acc = 1.0;
    for (int j = n - 1; j >= 0; --j) {
      acc /= tau(j);
      out(j) = acc;
    }
  } else {
    cxd acc = 1.0;
    for (int j = 0; j < n; ++j) {
      acc /= tau(j);
      out(j) = acc;
    }
  }
  return out;
}

Mat K_x(const Mat& h, const Vec& tau, const RVec& pHat, const Coupling& c,
        const ToleranceConfig& tol) {
  const int n = (int)pHat.size();
  RMat ze = zeta(c, pHat, tol);
  RMat th = theta(c, pHat, tol);
  Vec tx = tau_sub(c, tau);
  Mat g1 = h * kappa_l(c, n).cast<cxd>() * tx.asDiagonal() *
           ze.transpose().cast<cxd>();
  Vec diag(n);
  for (int j = 0; j < n; ++j) diag(j) = std::exp(-pHat(j)) * tau(j) / tx(j);
  Mat A = diag.asDiagonal() * th.transpose().cast<cxd>();
  return quasi_adjoint(g1, A, tol);
}

Mat k_x_map(const PointPhat& pt, const Coupling& c, const ToleranceConfig& tol) {
  const int n = pt.n();
  Vec eiq(n);
  for (int j = 0; j < n; ++j) eiq(j) = std::exp(iu * pt.qHat(j));
  return K_x(Mat::Identity(n, n), aleph(c, eiq), pt.pHat, c, tol);
}

PointPhatC zx_embed(const PointPhat& pt, const Coupling& c, bool allow_boundary) {
  const int n = pt.n();
  const double x = c.x;
  double slack = allow_boundary ? 1e-6 : 0.0;
  if (!in_chamber_closed(pt.pHat, x, slack) ||
      (!allow_boundary && !in_chamber_open(pt.pHat, x)))
    throw ChamberViolation("zx_embed: point outside the admissible chamber");
  PointPhatC pc;
  pc.z = Vec(n - 1);
  if (x > 0) {
    for (int j = 0; j + 1 < n; ++j) {
      double rad = pt.pHat(j) - pt.pHat(j + 1) - x / 2;
      if (rad < 0) rad = 0.0;  // boundary clamp
      cxd ph = 1.0;
      for (int k = j + 1; k < n; ++k) ph *= std::exp(-iu * pt.qHat(k));
      pc.z(j) = std::sqrt(rad) * ph;
    }
    cxd ph = 1.0;
    for (int k = 0; k < n; ++k) ph *= std::exp(-iu * pt.qHat(k));
    pc.Z = std::exp(-pt.pHat(0)) * ph;
  } else {
    for (int j = 0; j + 1 < n; ++j) {
      double rad = pt.pHat(j) - pt.pHat(j + 1) + x / 2;
      if (rad < 0) rad = 0.0;
      cxd ph = 1.0;
      for (int k = 0; k <= j; ++k) ph *= std::exp(-iu * pt.qHat(k));
      pc.z(j) = std::sqrt(rad) * ph;
    }
    cxd ph = 1.0;
    for (int k = 0; k < n; ++k) ph *= std::exp(-iu * pt.qHat(k));
    pc.Z = std::exp(-pt.pHat(n - 1)) * ph;
  }
  return pc;
}

PointPhat zx_invert(const PointPhatC& pc, const Coupling& c) {
  const int n = pc.n();
  const double x = c.x;
  for (int j = 0; j + 1 < n; ++j)
    if (std::abs(pc.z(j)) == 0.0)
      throw DomainError("zx_invert: boundary point (vanishing oscillator variable)");
  if (!(std::abs(pc.Z) > 1e-300))
    throw MalformedInput("zx_invert: Z must be nonzero");
  PointPhat pt;
  pt.qHat = RVec(n);
  pt.pHat = RVec(n);
  auto wrap = [](double a) {
    a = std::fmod(a, 2 * M_PI);
    if (a < 0) a += 2 * M_PI;
    return a;
  };
  if (n == 1) {
    pt.pHat(0) = -std::log(std::abs(pc.Z));
    pt.qHat(0) = wrap(-std::arg(pc.Z));
    return pt;
  }
  if (x > 0) {
    pt.pHat(0) = -std::log(std::abs(pc.Z));
    for (int j = 0; j + 1 < n; ++j)
      pt.pHat(j + 1) = pt.pHat(j) - x / 2 - std::norm(pc.z(j));
    // phases: z_j carries the product of e^{-i qHat_k} for k > j
    pt.qHat(n - 1) = wrap(-std::arg(pc.z(n - 2)));
    for (int j = n - 2; j >= 1; --j)
      pt.qHat(j) = wrap(-std::arg(pc.z(j - 1) / pc.z(j)));
    pt.qHat(0) = wrap(-std::arg(pc.Z / pc.z(0)));
  } else {
    pt.pHat(n - 1) = -std::log(std::abs(pc.Z));
    for (int j = n - 2; j >= 0; --j)
      pt.pHat(j) = pt.pHat(j + 1) + std::norm(pc.z(j)) - x / 2;
    pt.qHat(0) = wrap(-std::arg(pc.z(0)));
    for (int j = 1; j + 1 < n; ++j)
      pt.qHat(j) = wrap(-std::arg(pc.z(j) / pc.z(j - 1)));
    pt.qHat(n - 1) = wrap(-std::arg(pc.Z / pc.z(n - 2)));
  }
  return pt;
}

namespace {

double j_fun(double y) {
  if (y < 1e-4) return 1.0 + y * y / 12.0;
  return std::sqrt(std::sinh(y) / y);
}

// Q factor, 0-based indices j != k; the gap multiple enters with |x|/2 while
// the half-step shift keeps the sign of x, which makes every radicand positive
double q_fun(double x, const RVec& y, int j, int k) {
  if (j > k) return q_fun(-x, y, k, j);
  double S = 0.0;
  for (int l = j; l < k; ++l) S += y(l);
  double m = double(k - j);
  double num = S + m * std::abs(x) / 2 - x / 2;
  double den = S + m * std::abs(x) / 2;
  return std::sqrt(clamp_radicand(sinh_ratio(num, den), "q_fun"));
}

Mat zetahat(double x, const Vec& z) {
  const int n = (int)z.size() + 1;
  RVec y(n - 1);
  for (int l = 0; l < n - 1; ++l) y(l) = std::norm(z(l));
  double pref = std::sqrt(sinh_ratio(x / 2, n * x / 2.0));
  int a = x > 0 ? n - 1 : 0;
  Mat zh = Mat::Zero(n, n);
  {
    cxd prod = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != a) prod *= q_fun(x, y, a, l);
    zh(a, a) = pref * prod;
  }
  for (int j = 0; j < n; ++j) {
    if (j == a) continue;
    cxd prod = 1.0;
    if (x > 0) {
      for (int l = 0; l < n; ++l)
        if (l != j && l != j + 1) prod *= q_fun(x, y, j, l);
      zh(j, a) = pref * z(j) * j_fun(y(j)) /
                 std::sqrt(std::sinh(y(j) + x / 2)) * prod;
    } else {
      for (int l = 0; l < n; ++l)
        if (l != j - 1 && l != j) prod *= q_fun(x, y, j, l);
      zh(j, a) = pref * z(j - 1) * j_fun(y(j - 1)) /
                 std::sqrt(std::sinh(y(j - 1) - x / 2)) * prod;
    }
    zh(a, j) = -std::conj(zh(j, a));
  }
  for (int j = 0; j < n; ++j) {
    if (j == a) continue;
    for (int k = 0; k < n; ++k) {
      if (k == a) continue;
      zh(j, k) = (j == k ? 1.0 : 0.0) + zh(j, a) * zh(a, k) / (1.0 + zh(a, a));
    }
  }
  return zh;
}

Mat thetahat(double x, const Vec& z) {
  if (x < 0) return thetahat(-x, z).adjoint();
  const int n = (int)z.size() + 1;
  RVec y(n - 1);
  for (int l = 0; l < n - 1; ++l) y(l) = std::norm(z(l));
  Mat zp = zetahat(x, z);
  Mat zm = zetahat(-x, z);
  double shn = std::sinh(n * x / 2.0);
  Mat th(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (k == j + 1) {
        cxd prod = 1.0;
        for (int l = 0; l < n; ++l)
          if (l != j && l != j + 1)
            prod *= q_fun(x, y, j, l) * q_fun(-x, y, j + 1, l);
        th(j, k) = -std::sinh(x / 2) / std::sinh(y(j) + x / 2) * prod;
      } else {
        double S = 0.0;
        for (int l = std::min(j, k); l < std::max(j, k); ++l) S += y(l);
        double sgn = (k - j - 1) > 0 ? 1.0 : -1.0;
        double den = std::sinh(S + std::abs(k - j - 1) * x / 2.0);
        // the special-row factor enters through the -conjugate convention for
        // every column, including the special one
        th(j, k) = shn * sgn * zp(j, n - 1) * (-std::conj(zm(k, 0))) / den;
      }
    }
  return th;
}

}  // namespace

HatBundle hat_bundle(const PointPhatC& pc, const Coupling& c) {
  const int n = pc.n();
  const double x = c.x;
  HatBundle hb;
  hb.zetaHat = zetahat(x, pc.z);
  hb.thetaHat = thetahat(x, pc.z);
  hb.Delta = Vec(n);
  RVec y(n - 1);
  for (int l = 0; l < n - 1; ++l) y(l) = std::norm(pc.z(l));
  double aZ = std::abs(pc.Z);
  if (x > 0) {
    hb.Delta(0) = pc.Z;
    double acc = 0.0;
    for (int j = 1; j < n; ++j) {
      acc += y(j - 1);
      hb.Delta(j) = aZ * std::exp(acc + j * x / 2.0);
    }
  } else {
    hb.Delta(n - 1) = pc.Z;
    for (int j = 0; j + 1 < n; ++j) {
      double acc = 0.0;
      for (int l = j; l < n - 1; ++l) acc += y(l);
      hb.Delta(j) = aZ * std::exp(-acc + (n - 1 - j) * x / 2.0);
    }
  }
  return hb;
}

Mat ihat(const PointPhatC& pc, const Coupling& c, const ToleranceConfig& tol) {
  const int n = pc.n();
  HatBundle hb = hat_bundle(pc, c);
  Mat g1 = kappa_l(c, n).cast<cxd>() * hb.zetaHat.adjoint();
  Mat A = hb.Delta.asDiagonal() * hb.thetaHat.adjoint();
  return quasi_adjoint(g1, A, tol);
}

double omega_hat_c(const PointPhatC& pc, const Vec& dz1, cxd dZ1,
                   const Vec& dz2, cxd dZ2, const Coupling& c) {
  double val = std::imag(std::conj(dZ1) * dZ2) / std::norm(pc.Z);
  double zsec = 0.0;
  for (int j = 0; j < dz1.size(); ++j)
    zsec += 2.0 * std::imag(std::conj(dz1(j)) * dz2(j));
  return val + (c.x > 0 ? 1.0 : -1.0) * zsec;
}

}  // namespace rsdual
