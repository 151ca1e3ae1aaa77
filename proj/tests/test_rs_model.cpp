#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsdual/verify.hpp"

using namespace rsdual;

TEST_CASE("coupling guards against the free limit") {
  CHECK_THROWS_AS(Coupling(1e-9), MalformedInput);
  CHECK_NOTHROW(Coupling(-0.5));
}

TEST_CASE("interaction weight closed form") {
  for (double x : {0.4, -1.1}) {
    for (double dq : {0.3, 1.2, 2.9}) {
      double s = std::sinh(x / 2) / std::sin(dq);
      CHECK(weight_w(x, dq) ==
            doctest::Approx(std::sqrt(1 + s * s)).epsilon(1e-14));
    }
  }
}

TEST_CASE("chamber predicates") {
  RVec p(3);
  p << 1.0, 0.4, -0.3;
  CHECK(in_chamber_open(p, 1.0));       // gaps 0.6, 0.7 > 0.5
  CHECK_FALSE(in_chamber_open(p, 1.2)); // 0.6 == |x|/2 exactly
  CHECK(in_chamber_closed(p, 1.2));
  CHECK_FALSE(in_chamber_closed(p, 1.5));
  CHECK(in_chamber_closed(p, 1.5, 0.2));
}

TEST_CASE("compact lax matrix has a positive spectrum tied to the energy") {
  Rng rng(12);
  Coupling c(0.8);
  PointP pt = rng.random_point_p(3, c);
  Mat L = lax_rs(pt, c);
  Eigen::ComplexEigenSolver<Mat> es(L);
  for (int j = 0; j < 3; ++j) {
    CHECK(std::abs(es.eigenvalues()(j).imag()) < 1e-10);
    CHECK(es.eigenvalues()(j).real() > 0);
  }
  // Hamiltonian = mean of the two symmetrized spectral sums
  double tr = (L.trace().real() + L.inverse().trace().real()) / 2;
  CHECK(ham_rs(pt, c) == doctest::Approx(tr).epsilon(1e-10));
}

TEST_CASE("dual lax matrix is conjugate to a unitary weighted form") {
  Rng rng(18);
  Coupling c(-1.2);
  PointPhat pt = rng.random_point_phat(3, c);
  Mat Lh = lax_dual(pt, c);
  RVec d = dual_lax_conjugator(c.x, pt.pHat);
  CHECK(d.minCoeff() > 0);
  Mat core = theta(c, pt.pHat).cast<cxd>() *
             Mat(Vec((iu * pt.qHat.cast<cxd>().array()).exp()).asDiagonal());
  CHECK(is_unitary(core));
  Mat rec = d.cast<cxd>().asDiagonal() * core *
            d.cwiseInverse().cast<cxd>().asDiagonal();
  CHECK((Lh - rec).norm() / (1 + Lh.norm()) < 1e-10);
  Eigen::ComplexEigenSolver<Mat> es(Lh);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(std::abs(es.eigenvalues()(j)) - 1.0) < 1e-10);
}

TEST_CASE("dual Hamiltonian equals the hyperbolic spectral sum") {
  Rng rng(25);
  Coupling c(0.6);
  PointPhat pt = rng.random_point_phat(2, c);
  double s = 0;
  for (int j = 0; j < 2; ++j) s += std::cosh(2 * pt.pHat(j));
  // independent route through the exchanged compact point
  InverseResult inv = duality_inverse(pt, c);
  CHECK(ham_rs(inv.pt, c) == doctest::Approx(s).epsilon(1e-8));
}

TEST_CASE("permutation action and canonical representative") {
  PointP pt;
  pt.q = RVec(3);
  pt.p = RVec(3);
  pt.q << 0.5, 2.8, 1.6;
  pt.p << 1.0, -2.0, 3.0;
  PointP s = sn_act({2, 0, 1}, pt);
  CHECK(s.q(0) == 1.6);
  CHECK(s.p(0) == 3.0);
  CHECK(s.q(2) == 2.8);
  auto [can, sigma] = canonicalize(pt);
  for (int j = 0; j < 3; ++j) {
    CHECK(can.q(j) >= 0.0);
    CHECK(can.q(j) < M_PI);
    if (j + 1 < 3) CHECK(can.q(j) >= can.q(j + 1));
    CHECK(can.q(j) == pt.q(sigma[j]));
    CHECK(can.p(j) == pt.p(sigma[j]));
  }
}
