#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rsdual/verify.hpp"

using namespace rsdual;

namespace {
double frob(const Mat& A) { return A.norm(); }
}  // namespace

TEST_CASE("iwasawa 1x1 closed form") {
  Mat K(1, 1);
  K(0, 0) = cxd(1.2, -0.7);
  double r = std::abs(K(0, 0));
  IwasawaLeft fl = iwasawa_left(K);
  CHECK(std::abs(fl.bL(0, 0) - r) < 1e-14);
  CHECK(std::abs(fl.gR(0, 0) - std::conj(K(0, 0)) / r) < 1e-14);
  IwasawaRight fr = iwasawa_right(K);
  CHECK(std::abs(fr.gL(0, 0) - K(0, 0) / r) < 1e-14);
  CHECK(std::abs(fr.bR(0, 0) - 1.0 / r) < 1e-14);
}

TEST_CASE("iwasawa factors: types and reconstruction") {
  Rng rng(42);
  for (int n : {2, 3, 5}) {
    Mat K = rng.random_invertible(n);
    IwasawaLeft fl = iwasawa_left(K);
    IwasawaRight fr = iwasawa_right(K);
    CHECK(is_b_element(fl.bL));
    CHECK(is_unitary(fl.gR));
    CHECK(is_unitary(fr.gL));
    CHECK(is_b_element(fr.bR));
    CHECK(frob(fl.bL * fl.gR.inverse() - K) / frob(K) < 1e-12);
    CHECK(frob(fr.gL * fr.bR.inverse() - K) / frob(K) < 1e-12);
  }
}

TEST_CASE("iwasawa rejects singular input") {
  Mat K = Mat::Zero(2, 2);
  K(0, 0) = 1.0;
  CHECK_THROWS_AS(iwasawa_left(K), SingularInput);
  CHECK_THROWS_AS(iwasawa_right(K), SingularInput);
}

TEST_CASE("cartan triple reconstructs through the twisted action") {
  Rng rng(7);
  for (int n : {1, 2, 4}) {
    Mat K = rng.random_invertible(n);
    CartanTriple ct = cartan_modified(K);
    CHECK(is_unitary(ct.kL));
    CHECK(is_unitary(ct.kR));
    for (int j = 0; j + 1 < n; ++j) CHECK(ct.pHat(j) >= ct.pHat(j + 1));
    Mat mid = Mat((-ct.pHat).array().exp().matrix().cast<cxd>().asDiagonal()) *
              ct.kR.adjoint();
    Mat rec = quasi_adjoint(ct.kL, mid);
    CHECK(frob(rec - K) / (1 + frob(K)) < 1e-11);
  }
}

TEST_CASE("cartan of a unitary matrix has zero exponents and flags degeneracy") {
  Rng rng(11);
  Mat g = rng.random_unitary(3);
  CartanTriple ct = cartan_modified(g);
  CHECK(ct.pHat.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(ct.degenerate);  // all gaps vanish
}

TEST_CASE("cartan left factor phase convention") {
  Rng rng(13);
  Mat K = rng.random_invertible(4);
  CartanTriple ct = cartan_modified(K);
  // last nonzero entry of each kL column is real positive
  for (int j = 0; j < 4; ++j) {
    int last = 3;
    while (last > 0 && std::abs(ct.kL(last, j)) < 1e-12) --last;
    CHECK(ct.kL(last, j).imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ct.kL(last, j).real() > 0);
  }
}

TEST_CASE("unitary eigendecomposition: window, order, reconstruction") {
  Rng rng(5);
  for (int n : {1, 3, 5}) {
    Mat g = rng.random_unitary(n);
    UnitaryEig ue = unitary_eig(g);
    for (int j = 0; j < n; ++j) {
      CHECK(ue.angles(j) >= 0.0);
      CHECK(ue.angles(j) < 2 * M_PI);
      if (j + 1 < n) CHECK(ue.angles(j) >= ue.angles(j + 1));
    }
    Mat D = Mat::Zero(n, n);
    for (int j = 0; j < n; ++j) D(j, j) = std::exp(iu * ue.angles(j));
    CHECK(frob(ue.u * D * ue.u.adjoint() - g) < 1e-12 * n);
  }
}

TEST_CASE("hermitian exponential against the scalar and unitary cases") {
  Mat H(2, 2);
  H << cxd(0.3, 0), cxd(0.1, 0.2), cxd(0.1, -0.2), cxd(-0.5, 0);
  Mat E = exp_hermitian(H);
  // eigen-decomposition route vs 14-term Taylor series
  Mat S = Mat::Identity(2, 2), term = Mat::Identity(2, 2);
  for (int m = 1; m < 14; ++m) {
    term = term * H / double(m);
    S += term;
  }
  CHECK(frob(E - S) < 1e-13);
  Mat U = exp_hermitian(H, iu);
  CHECK(is_unitary(U));
}

TEST_CASE("reversal permutation is an involution") {
  Mat J = reversal(5);
  CHECK(frob(J * J - Mat::Identity(5, 5)) == 0.0);
}
