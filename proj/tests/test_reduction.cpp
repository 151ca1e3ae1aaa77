#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsdual/verify.hpp"

using namespace rsdual;

TEST_CASE("constraint value: triangular profile") {
  Coupling c(0.9);
  Mat N = nu(c, 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(std::abs(N(k, k) - cxd(1, 0)) < 1e-15);
    for (int l = 0; l < k; ++l) CHECK(std::abs(N(k, l)) == 0.0);
    for (int l = k + 1; l < 4; ++l) {
      double want = (1 - std::exp(-c.x)) * std::exp((l - k) * c.x / 2);
      CHECK(std::abs(N(k, l) - cxd(want, 0)) < 1e-14);
    }
  }
}

TEST_CASE("defining vector and gauge group membership") {
  Coupling c(-0.7);
  int n = 3;
  RVec v = v_vec(c, n);
  CHECK(v.minCoeff() > 0);
  CHECK(v.squaredNorm() == doctest::Approx((double)n).epsilon(1e-12));
  Rng rng(6);
  Mat g = rng.random_gauge(n, c);
  CHECK(is_gauge_element(g, c));
  // a generic unitary moves the ray
  CHECK_FALSE(is_gauge_element(rng.random_unitary(n), c));
  // central phases are allowed
  CHECK(is_gauge_element(Mat(std::exp(iu * 1.3) * Mat::Identity(n, n)), c));
}

TEST_CASE("slice embedding lands on the constraint surface") {
  Rng rng(14);
  for (double x : {0.8, -1.2}) {
    Coupling c(x);
    PointP pt = rng.random_point_p(3, c);
    Mat K = itilde(pt, c);
    CHECK((moment(K) - nu(c, 3)).norm() < 1e-10);
  }
}

TEST_CASE("slice diagonal matches the embedded triangular factor") {
  Rng rng(19);
  Coupling c(0.5);
  PointP pt = rng.random_point_p(3, c);
  RVec d = slice_diagonal(pt, c);
  Mat bL = iwasawa_left(itilde(pt, c)).bL;
  for (int j = 0; j < 3; ++j)
    CHECK(bL(j, j).real() == doctest::Approx(d(j)).epsilon(1e-10));
}

TEST_CASE("reduction recovers the embedded point and kills the gauge motion") {
  Rng rng(27);
  Coupling c(0.8);
  PointP pt = rng.random_point_p(3, c);
  Mat K = itilde(pt, c);
  ReduceResult rr = reduce_to_slice(K, c);
  CHECK((rr.pt.q - pt.q).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((rr.pt.p - pt.p).cwiseAbs().maxCoeff() < 1e-9);
  // same orbit, different representative
  Mat K2 = quasi_adjoint(rng.random_gauge(3, c), K);
  ReduceResult r2 = reduce_to_slice(K2, c);
  CHECK((r2.pt.q - pt.q).cwiseAbs().maxCoeff() < 1e-8);
  CHECK((r2.pt.p - pt.p).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(is_gauge_element(r2.gauge, c, 1e-8));
}

TEST_CASE("adjacent exchange on the slice") {
  Rng rng(33);
  Coupling c(-0.9);
  PointP pt = rng.random_point_p(3, c);
  ResidualGaugeResult rg = residual_gauge(1, pt, c);
  CHECK(rg.swapped.q(1) == pt.q(2));
  CHECK(rg.swapped.q(2) == pt.q(1));
  CHECK(rg.swapped.p(1) == pt.p(2));
  CHECK(is_gauge_element(rg.gauge, c, 1e-9));
  Mat lhs = quasi_adjoint(rg.gauge, itilde(pt, c));
  Mat rhs = itilde(rg.swapped, c);
  CHECK((lhs - rhs).norm() / (1 + rhs.norm()) < 1e-8);
}

TEST_CASE("moment differential has full traceless rank on the surface") {
  Rng rng(44);
  for (int n : {2, 3}) {
    Coupling c(0.8);
    PointP pt = rng.random_point_p(n, c);
    CHECK(moment_rank(itilde(pt, c), c) == n * n - 1);
  }
}
