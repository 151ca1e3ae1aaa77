#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsdual/verify.hpp"

using namespace rsdual;

namespace {
RVec interior_point(Rng& rng, int n, const Coupling& c) {
  return rng.random_point_phat(n, c).pHat;
}
}  // namespace

TEST_CASE("interaction matrix: orthogonality and coupling-flip inverse") {
  Rng rng(3);
  for (double x : {0.8, -1.2}) {
    Coupling c(x), mc(-x);
    RVec p = interior_point(rng, 4, c);
    RMat th = theta(c, p);
    CHECK((th * th.transpose() - RMat::Identity(4, 4)).norm() < 1e-11);
    CHECK((theta(mc, p) * th - RMat::Identity(4, 4)).norm() < 1e-11);
  }
}

TEST_CASE("interaction matrix is smooth onto the closed chamber faces") {
  Coupling c(1.0);
  RVec p(3);
  p << 1.0, 0.5, 0.0;  // both gaps exactly at the wall
  RMat th = theta(c, p);
  CHECK(th.allFinite());
  CHECK((th * th.transpose() - RMat::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("rank-one dressing identity") {
  Rng rng(8);
  Coupling c(0.7);
  RVec p = interior_point(rng, 3, c);
  RMat th = theta(c, p);
  RVec xi = xi_vec(c, p);
  RMat lhs = th *
             RVec((2 * p.array() + c.x / 2).exp()).asDiagonal() *
             th.transpose();
  RMat rhs = RMat(RVec((2 * p.array() - c.x / 2).exp()).asDiagonal()) +
             2 * std::sinh(c.x / 2) * xi * xi.transpose();
  CHECK((lhs - rhs).norm() / (1 + rhs.norm()) < 1e-11);
}

TEST_CASE("rotations: orthogonality and the distinguished column") {
  Rng rng(13);
  for (double x : {0.9, -0.6}) {
    Coupling c(x);
    int n = 4;
    RVec p = interior_point(rng, n, c);
    RMat ze = zeta(c, p);
    CHECK((ze * ze.transpose() - RMat::Identity(n, n)).norm() < 1e-10);
    RMat kl = kappa_l(c, n), kr = kappa_r(c, n);
    CHECK((kl * kl.transpose() - RMat::Identity(n, n)).norm() < 1e-13);
    CHECK((kr * kr.transpose() - RMat::Identity(n, n)).norm() < 1e-13);
    // kappa_L rotates the defining vector onto a coordinate axis
    RVec kv = kl.transpose() * v_vec(c, n);
    RVec target = RVec::Zero(n);
    target(x > 0 ? n - 1 : 0) = std::sqrt((double)n);
    CHECK((kv - target).norm() < 1e-11);
  }
}

TEST_CASE("diagonal shuffle and cumulative-product bijection") {
  Rng rng(21);
  Coupling c(0.8);
  int n = 4;
  Vec tau = rng.random_diag_unitary(n);
  Vec al = aleph(c, tau);
  for (int j = 0; j < n; ++j) CHECK(std::abs(std::abs(al(j)) - 1.0) < 1e-13);
  Vec als = tau_sub(c, al);
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(al(j) / als(j) - 1.0 / tau(j)) < 1e-12);
}

TEST_CASE("completed coordinates: embed and invert") {
  Rng rng(29);
  for (double x : {0.8, -1.2}) {
    Coupling c(x);
    for (int n : {1, 2, 4}) {
      PointPhat pt = rng.random_point_phat(n, c);
      PointPhatC pc = zx_embed(pt, c);
      CHECK(std::abs(pc.Z) > 0);
      PointPhat back = zx_invert(pc, c);
      CHECK((back.pHat - pt.pHat).cwiseAbs().maxCoeff() < 1e-11);
      for (int j = 0; j < n; ++j) {
        double d = std::remainder(back.qHat(j) - pt.qHat(j), 2 * M_PI);
        CHECK(std::abs(d) < 1e-11);
      }
    }
  }
}

TEST_CASE("embedding rejects wall points unless the boundary is allowed") {
  Coupling c(1.0);
  PointPhat pt;
  pt.pHat = RVec(2);
  pt.pHat << 0.25, -0.25;  // gap exactly |x|/2
  pt.qHat = RVec(2);
  pt.qHat << 0.3, 5.1;
  CHECK_THROWS_AS(zx_embed(pt, c), ChamberViolation);
  PointPhatC pc = zx_embed(pt, c, true);
  CHECK(std::abs(pc.z(0)) == 0.0);
}

TEST_CASE("hat factors are unitary and the section hits the surface") {
  Rng rng(37);
  for (double x : {0.8, -1.2}) {
    Coupling c(x);
    PointPhatC pc = rng.random_point_phatc(3, c);
    HatBundle hb = hat_bundle(pc, c);
    CHECK(is_unitary(hb.zetaHat));
    CHECK(is_unitary(hb.thetaHat));
    Mat K = ihat(pc, c);
    CHECK((moment(K) - nu(c, 3)).norm() < 1e-9);
  }
}

TEST_CASE("completed two-form: antisymmetry and bilinearity") {
  Rng rng(41);
  Coupling c(0.8);
  PointPhatC pc = rng.random_point_phatc(3, c);
  Vec d1(2), d2(2);
  d1 << cxd(0.3, -0.2), cxd(0.1, 0.4);
  d2 << cxd(-0.5, 0.1), cxd(0.2, 0.2);
  cxd Z1(0.2, 0.3), Z2(-0.1, 0.15);
  double ab = omega_hat_c(pc, d1, Z1, d2, Z2, c);
  double ba = omega_hat_c(pc, d2, Z2, d1, Z1, c);
  CHECK(ab == doctest::Approx(-ba).epsilon(1e-12));
  double twice = omega_hat_c(pc, Vec(2 * d1), cxd(2.0) * Z1, d2, Z2, c);
  CHECK(twice == doctest::Approx(2 * ab).epsilon(1e-12));
}
