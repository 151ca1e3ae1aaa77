#pragma once

#include "rsdual/dual_construction.hpp"
#include "rsdual/flows.hpp"

namespace rsdual {

// invariant dual position: K K^dag is similar to e^{-2 pHat}, non-increasing
RVec pi_hat(const Mat& K, const ToleranceConfig& tol = {});

struct ForwardResult {
  PointPhat pt;
  double res_spec_l = 0;     // eig L(q,p) vs e^{2 pHat}
  double res_spec_lhat = 0;  // eig dual Lax vs e^{2iq}
};

struct InverseResult {
  PointP pt;
  Mat gauge;
  double res_spec_l = 0;
  double res_spec_lhat = 0;
};

struct ForwardCompletedResult {
  PointPhatC pc;
  bool boundary = false;
  double certification_residual = 0;
};

ForwardResult duality_forward(const PointP& pt, const Coupling& c,
                              const ToleranceConfig& tol = {});
InverseResult duality_inverse(const PointPhat& pt, const Coupling& c,
                              const ToleranceConfig& tol = {});
ForwardCompletedResult duality_forward_completed(const PointP& pt,
                                                 const Coupling& c,
                                                 const ToleranceConfig& tol = {});

// dual momenta after flowing by the unitary-family Hamiltonian, computed
// spectrally from the completed start
RVec dual_flow_spectral(const PointPhatC& start, const HamiltonianSelector& sel,
                        double t, const Coupling& c,
                        const ToleranceConfig& tol = {});
// same on ordinary dual coordinates via the dual Lax matrix
RVec dual_flow_spectral(const PointPhat& start, const HamiltonianSelector& sel,
                        double t, const Coupling& c,
                        const ToleranceConfig& tol = {});

// projection of the exactly integrated positive-family flow back to the slice
PointP original_flow_reduced(const PointP& pt, const HamiltonianSelector& sel,
                             double t, const Coupling& c,
                             const ToleranceConfig& tol = {});

// multiset residuals used for certification
double multiset_residual_positive(const RVec& a, const RVec& b);
double multiset_residual_unimodular(const Vec& a, const Vec& b);

}  // namespace rsdual
