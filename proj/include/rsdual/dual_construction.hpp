#pragma once

#include "rsdual/reduction.hpp"

namespace rsdual {

// completed dual coordinates: n-1 complex oscillator variables plus one
// nonzero complex scale
struct PointPhatC {
  Vec z;
  cxd Z;
  int n() const { return (int)z.size() + 1; }
};

// real orthogonal interaction matrix on the closed chamber
RMat theta(const Coupling& c, const RVec& pHat, const ToleranceConfig& tol = {});

// unit vector entering the rank-one dressing identity
RVec r_vec_dual(const Coupling& c, const RVec& pHat);

// column vector with theta e^{2pHat} e^{x/2} theta^T
//   = e^{2pHat} e^{-x/2} + 2 sinh(x/2) Xi Xi^T
RVec xi_vec(const Coupling& c, const RVec& pHat);

// orthogonal rotation taking the special basis vector to r
RMat zeta(const Coupling& c, const RVec& pHat, const ToleranceConfig& tol = {});

// fixed orthogonal rotations independent of pHat
RMat kappa_l(const Coupling& c, int n);
RMat kappa_r(const Coupling& c, int n);  // cyclic; equal-spacing solution only

// index shuffles of a diagonal unitary used throughout the slice algebra
Vec tau_sub(const Coupling& c, const Vec& tau);        // tau_(x)
Vec tau_sub_tilde(const Coupling& c, const Vec& tau);  // the companion shuffle
// aleph(x, tau): cumulative-product bijection with
// aleph * (aleph shuffled)^{-1} = tau^{-1}
Vec aleph(const Coupling& c, const Vec& tau);

// parametrization of the constraint surface from gauge freedom (h), a
// diagonal unitary and a chamber point
Mat K_x(const Mat& h, const Vec& tau, const RVec& pHat, const Coupling& c,
        const ToleranceConfig& tol = {});

// the dual slice map on ordinary dual coordinates
Mat k_x_map(const PointPhat& pt, const Coupling& c,
            const ToleranceConfig& tol = {});

// embedding of the ordinary dual phase space into the completed one; with
// allow_boundary, chamber faces map to z_j = 0
PointPhatC zx_embed(const PointPhat& pt, const Coupling& c,
                    bool allow_boundary = false);
PointPhat zx_invert(const PointPhatC& pc, const Coupling& c);

struct HatBundle {
  Mat zetaHat;   // unitary
  Mat thetaHat;  // unitary
  Vec Delta;     // diagonal entries
};

HatBundle hat_bundle(const PointPhatC& pc, const Coupling& c);

// global cross section of the constraint surface over the completed space
Mat ihat(const PointPhatC& pc, const Coupling& c,
         const ToleranceConfig& tol = {});

// symplectic form on the completed space, evaluated on two tangents
double omega_hat_c(const PointPhatC& pc, const Vec& dz1, cxd dZ1,
                   const Vec& dz2, cxd dZ2, const Coupling& c);

}  // namespace rsdual
