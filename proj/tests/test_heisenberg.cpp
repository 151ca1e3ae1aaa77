#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "rsdual/verify.hpp"

using namespace rsdual;

TEST_CASE("imaginary trace pairing against an explicit double loop") {
  Rng rng(2);
  Mat X = rng.random_matrix(3), Y = rng.random_matrix(3);
  double acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += (X(i, j) * Y(j, i)).imag();
  CHECK(pairing_im_trace(X, Y) == doctest::Approx(acc).epsilon(1e-14));
}

TEST_CASE("lie algebra splitting") {
  Rng rng(4);
  Mat X = rng.random_matrix(4);
  Mat a = pi_g(X), b = pi_b(X);
  CHECK((a + b - X).norm() < 1e-14);
  CHECK((a + a.adjoint()).norm() < 1e-13);  // anti-Hermitian part
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(b(i, i).imag()) < 1e-14);  // real diagonal
    for (int j = 0; j < i; ++j) CHECK(std::abs(b(i, j)) < 1e-14);
  }
}

TEST_CASE("twisted action: identity, composition, central triviality") {
  Rng rng(8);
  Mat K = rng.random_invertible(3);
  CHECK((quasi_adjoint(Mat::Identity(3, 3), K) - K).norm() < 1e-13);
  Mat g = rng.random_unitary(3), h = rng.random_unitary(3);
  Mat lhs = quasi_adjoint(Mat(g * h), K);
  Mat rhs = quasi_adjoint(g, quasi_adjoint(h, K));
  CHECK((lhs - rhs).norm() / (1 + K.norm()) < 1e-11);
  Mat z = std::exp(iu * 0.77) * Mat::Identity(3, 3);
  CHECK((quasi_adjoint(z, K) - K).norm() / (1 + K.norm()) < 1e-11);
}

TEST_CASE("moment value of one-sided points is trivial") {
  Rng rng(16);
  CHECK((moment(rng.random_unitary(4)) - Mat::Identity(4, 4)).norm() < 1e-12);
  CHECK((moment(rng.random_b(4)) - Mat::Identity(4, 4)).norm() < 1e-11);
}

TEST_CASE("moment equivariance under dressing") {
  Rng rng(21);
  Mat K = rng.random_invertible(3);
  Mat g = rng.random_unitary(3);
  Mat lhs = moment(quasi_adjoint(g, K));
  Mat rhs = dress(g, moment(K));
  CHECK((lhs - rhs).norm() / (1 + rhs.norm()) < 1e-10);
}

TEST_CASE("positive-family Hamiltonian on a diagonal point") {
  Mat K = Mat::Zero(3, 3);
  K(0, 0) = 2.0;
  K(1, 1) = 0.5;
  K(2, 2) = 3.0;
  for (int k : {1, 2, 3}) {
    double oracle = 0;
    for (double d : {2.0, 0.5, 3.0}) oracle += std::pow(d, -2 * k);
    oracle /= 2 * k;
    CHECK(ham_value(HamiltonianSelector::f(k), K) ==
          doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("hamiltonian families are invariant along the orbits they generate") {
  Rng rng(31);
  Mat K = rng.random_invertible(3);
  HamiltonianSelector sel = HamiltonianSelector::phi(2);
  double h0 = ham_value(sel, K);
  Mat Kt = flow(K, sel, 0.37);
  CHECK(ham_value(sel, Kt) == doctest::Approx(h0).epsilon(1e-9));
}

TEST_CASE("gradient pair matches a directional finite difference") {
  Rng rng(55);
  Mat K = rng.random_invertible(2);
  HamiltonianSelector sel = HamiltonianSelector::f(1);
  GradientPair gp = grad_pair(sel, K);
  Mat V = rng.random_matrix(2);  // right-translated direction: K -> K e^{sV}
  double h = 1e-5;
  auto at = [&](double s) { return ham_value(sel, Mat(K * (s * V).exp())); };
  double fd = (at(h) - at(-h)) / (2 * h);
  double fd2 = (at(h / 2) - at(-h / 2)) / h;
  fd = (4 * fd2 - fd) / 3.0;
  CHECK(pairing_im_trace(V, gp.right) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("brackets vanish inside each family") {
  Rng rng(61);
  Mat bm = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    bm(i, i) = std::exp(0.3 * rng.uniform(-1, 1));
    for (int j = i + 1; j < 3; ++j) bm(i, j) = 0.25 * rng.gaussian_c();
  }
  Mat K = bm * rng.random_unitary(3);
  CHECK(std::abs(poisson_plus(HamiltonianSelector::f(1),
                              HamiltonianSelector::f(2), K)) < 1e-10);
  CHECK(std::abs(poisson_plus(HamiltonianSelector::phi(1),
                              HamiltonianSelector::phi(-2), K)) < 1e-10);
}

TEST_CASE("unreduced lax matrices: symmetry classes and invariance") {
  Rng rng(71);
  Mat K = rng.random_invertible(3);
  UnreducedLax ul = unreduced_lax(K);
  CHECK((ul.calL - ul.calL.adjoint()).norm() < 1e-12);
  CHECK(is_unitary(ul.calLhat));
  CHECK((ul.calL - Mat(K.inverse() * K.adjoint().inverse())).norm() /
            (1 + ul.calL.norm()) <
        1e-11);
}
