#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsdual/verify.hpp"

using namespace rsdual;

TEST_CASE("one-particle duality closed form") {
  Coupling c(0.7);
  PointP pt;
  pt.q = RVec::Constant(1, 0.9);
  pt.p = RVec::Constant(1, -0.35);
  ForwardResult f = duality_forward(pt, c);
  CHECK(f.pt.pHat(0) == doctest::Approx(pt.p(0) / 2).epsilon(1e-12));
  double dq = std::remainder(f.pt.qHat(0) - 2 * pt.q(0), 2 * M_PI);
  CHECK(std::abs(dq) < 1e-12);
  InverseResult inv = duality_inverse(f.pt, c);
  CHECK(inv.pt.q(0) == doctest::Approx(pt.q(0)).epsilon(1e-12));
  CHECK(inv.pt.p(0) == doctest::Approx(pt.p(0)).epsilon(1e-12));
}

TEST_CASE("spectra are exchanged both ways") {
  Rng rng(9);
  for (double x : {0.8, -1.2}) {
    Coupling c(x);
    for (int n : {2, 3, 4}) {
      PointP pt = rng.random_point_p(n, c);
      ForwardResult f = duality_forward(pt, c);
      CHECK(f.res_spec_l < 1e-8);
      CHECK(f.res_spec_lhat < 1e-8);
      // direct re-derivation: eig of the compact lax vs e^{2 pHat}
      Eigen::ComplexEigenSolver<Mat> es(lax_rs(pt, c));
      RVec got = es.eigenvalues().real();
      RVec want = (2 * f.pt.pHat.array()).exp();
      CHECK(multiset_residual_positive(got, want) < 1e-8);
    }
  }
}

TEST_CASE("round trips in both directions") {
  Rng rng(15);
  Coupling c(-0.9);
  for (int n : {2, 3}) {
    PointP pt = rng.random_point_p(n, c);
    ForwardResult f = duality_forward(pt, c);
    InverseResult inv = duality_inverse(f.pt, c);
    CHECK((inv.pt.q - pt.q).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((inv.pt.p - pt.p).cwiseAbs().maxCoeff() < 1e-9);
    PointPhat ph = rng.random_point_phat(n, c);
    ForwardResult f2 = duality_forward(duality_inverse(ph, c).pt, c);
    CHECK((f2.pt.pHat - ph.pHat).cwiseAbs().maxCoeff() < 1e-9);
    for (int j = 0; j < n; ++j)
      CHECK(std::abs(std::remainder(f2.pt.qHat(j) - ph.qHat(j), 2 * M_PI)) <
            1e-8);
  }
}

TEST_CASE("invariant dual position is a gauge-orbit function") {
  Rng rng(23);
  Coupling c(0.8);
  PointP pt = rng.random_point_p(3, c);
  Mat K = itilde(pt, c);
  RVec ph = pi_hat(K);
  CHECK(in_chamber_closed(ph, c.x, 1e-9));
  Mat K2 = quasi_adjoint(rng.random_gauge(3, c), K);
  CHECK((pi_hat(K2) - ph).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("completed forward map agrees with the interior embedding") {
  Rng rng(31);
  Coupling c(0.8);
  PointP pt = rng.random_point_p(3, c);
  ForwardResult f = duality_forward(pt, c);
  ForwardCompletedResult fc = duality_forward_completed(pt, c);
  CHECK_FALSE(fc.boundary);
  PointPhatC want = zx_embed(f.pt, c);
  CHECK((fc.pc.z - want.z).norm() < 1e-8);
  CHECK(std::abs(fc.pc.Z - want.Z) < 1e-8);
}

TEST_CASE("completed forward map recovers a constructed boundary point") {
  Rng rng(99);
  for (double x : {0.8, -1.2}) {
    Coupling c(x);
    PointPhatC pc = rng.random_point_phatc(3, c);
    pc.z(1) = 0.0;  // park one oscillator on the wall
    ReduceResult rr = reduce_to_slice(ihat(pc, c), c);
    ForwardCompletedResult fc = duality_forward_completed(rr.pt, c);
    CHECK(fc.boundary);
    CHECK(fc.certification_residual < 1e-6);
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(fc.pc.z(j)) ==
            doctest::Approx(std::abs(pc.z(j))).epsilon(1e-7));
    CHECK(std::abs(fc.pc.Z) == doctest::Approx(std::abs(pc.Z)).epsilon(1e-8));
  }
}

TEST_CASE("spectral dual flow overloads agree on interior points") {
  Rng rng(41);
  Coupling c(-1.2);
  PointPhat pt = rng.random_point_phat(3, c);
  HamiltonianSelector sel = HamiltonianSelector::phi(1);
  RVec a = dual_flow_spectral(pt, sel, 0.4, c);
  RVec b = dual_flow_spectral(zx_embed(pt, c), sel, 0.4, c);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("reduced flow conserves the model energy") {
  Rng rng(47);
  Coupling c(0.8);
  PointP pt = rng.random_point_p(2, c);
  HamiltonianSelector sel = HamiltonianSelector::f(1);
  double e0 = ham_rs(pt, c);
  PointP pt1 = original_flow_reduced(pt, sel, 0.7, c);
  CHECK(ham_rs(pt1, c) == doctest::Approx(e0).epsilon(1e-8));
}

TEST_CASE("multiset residuals") {
  RVec a(3), b(3);
  a << 3.0, 1.0, 2.0;
  b << 1.0, 2.0, 3.0;
  CHECK(multiset_residual_positive(a, b) < 1e-15);
  b(0) = 1.5;
  CHECK(multiset_residual_positive(a, b) > 0.1);
  Vec u(2), v(2);
  u << std::exp(iu * 0.3), std::exp(iu * 2.0);
  v << std::exp(iu * 2.0), std::exp(iu * 0.3);
  CHECK(multiset_residual_unimodular(u, v) < 1e-15);
}
