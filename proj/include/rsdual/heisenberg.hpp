#pragma once

#include <vector>

#include "rsdual/matcore.hpp"

namespace rsdual {

// Selector for the commuting Hamiltonian families on the double.
//  F(k)   : spectral invariant of the positive Lax matrix, degree k >= 1
//  Phi(k) : trig spectral invariant of the unitary Lax matrix, k != 0
//           (k > 0 the even combination's partner pair: k -> cos-type via
//           negative index, sin-type via positive index; see dphi())
//  Chi    : finite power series psi(w) = sum_m psi_m w^m defining the
//           anti-Hermitian generator psi(g) - psi(g)^dag
struct HamiltonianSelector {
  enum class Family { F, Phi, Chi };
  Family family = Family::F;
  int k = 1;
  std::vector<cxd> psi;  // Chi only: psi[m-1] multiplies w^m

  static HamiltonianSelector f(int k);
  static HamiltonianSelector phi(int k);
  static HamiltonianSelector chi(std::vector<cxd> coeffs);
};

struct IwasawaBundle {
  Mat gL, gR;  // unitary
  Mat bL, bR;  // triangular factors: K = bL gR^{-1} = gL bR^{-1}
};

IwasawaBundle xi_maps(const Mat& K, const ToleranceConfig& tol = {});

// splitting of gl(n,C) into anti-Hermitian + (upper triangular, real diagonal)
Mat pi_b(const Mat& X);
Mat pi_g(const Mat& X);

// g |> K = g K Xi_R(g Lambda_L(K))
Mat quasi_adjoint(const Mat& g, const Mat& K, const ToleranceConfig& tol = {});
// Dress_g(b) = Lambda_L(g b)
Mat dress(const Mat& g, const Mat& b, const ToleranceConfig& tol = {});
// Lambda(K) = Lambda_L(K) Lambda_R(K), the moment map value
Mat moment(const Mat& K, const ToleranceConfig& tol = {});

// symplectic form on tangents (V, W at base K), finite differences with one
// Richardson step
double omega_plus(const Mat& K, const Mat& V, const Mat& W,
                  const ToleranceConfig& tol = {}, double h = 1e-5);

// psi(g) = sum_m psi_m g^m for the selector's series (Phi maps to a monomial)
Mat psi_eval(const HamiltonianSelector& sel, const Mat& g);
// the anti-Hermitian derivative matrix psi(g) - psi(g)^dag
Mat dphi(const HamiltonianSelector& sel, const Mat& g);
// i (b^dag b)^k for the F family
Mat drf(const HamiltonianSelector& sel, const Mat& b);

// value of the selected Hamiltonian at K
double ham_value(const HamiltonianSelector& sel, const Mat& K,
                 const ToleranceConfig& tol = {});

struct GradientPair {
  Mat left, right;
};

GradientPair grad_pair(const HamiltonianSelector& sel, const Mat& K,
                       const ToleranceConfig& tol = {});

double poisson_plus(const HamiltonianSelector& h1, const HamiltonianSelector& h2,
                    const Mat& K, const ToleranceConfig& tol = {});

struct UnreducedLax {
  Mat calL;     // Hermitian positive: bR bR^dag = K^{-1} K^{-dag}
  Mat calLhat;  // unitary: gR
};

UnreducedLax unreduced_lax(const Mat& K, const ToleranceConfig& tol = {});

}  // namespace rsdual
