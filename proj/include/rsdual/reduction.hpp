#pragma once

#include "rsdual/heisenberg.hpp"
#include "rsdual/rs_model.hpp"

namespace rsdual {

// triangular constraint value: unit diagonal, (1 - e^{-x}) e^{(l-k)x/2} above
Mat nu(const Coupling& c, int n);
// positive vector with g nu nu^dag g^dag determined by its ray; ||v||^2 = n
RVec v_vec(const Coupling& c, int n);

// true if g is unitary and fixes the ray of v(x) (gauge-group membership)
bool is_gauge_element(const Mat& g, const Coupling& c, double tol = 1e-10);

// unit-diagonal upper-triangular slice factor built from a regular diagonal
// unitary T
Mat calN(const Vec& T, const Coupling& c);

// slice embedding of a covering point: returns the constraint-surface matrix
Mat itilde(const PointP& pt, const Coupling& c,
           const ToleranceConfig& tol = {});

// diagonal of the positive triangular part of the slice point (entrywise)
RVec slice_diagonal(const PointP& pt, const Coupling& c);

struct ResidualGaugeResult {
  PointP swapped;  // covering point with entries k, k+1 exchanged
  Mat gauge;       // unitary realizing the exchange on the slice
};

// adjacent-transposition action on the slice together with its gauge element
ResidualGaugeResult residual_gauge(int k, const PointP& pt, const Coupling& c,
                                   const ToleranceConfig& tol = {});

struct ReduceResult {
  PointP pt;   // canonical representative
  Mat gauge;   // unitary g with quasi_adjoint(g, K) on the slice
};

ReduceResult reduce_to_slice(const Mat& K, const Coupling& c,
                             const ToleranceConfig& tol = {});

// numerical rank of the real-linear differential of the moment map at K
int moment_rank(const Mat& K, const Coupling& c,
                const ToleranceConfig& tol = {});

}  // namespace rsdual
