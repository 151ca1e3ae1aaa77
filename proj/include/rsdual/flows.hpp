#pragma once

#include "rsdual/heisenberg.hpp"

namespace rsdual {

// exact flow of the positive-family Hamiltonian: the unitary factor moves,
// both triangular factors stay fixed
Mat flow_lambda(const Mat& K0, const HamiltonianSelector& sel, double t,
                const ToleranceConfig& tol = {});

// exact flow of the unitary-family Hamiltonian via the triangular-unitary
// factorization of a positive-definite exponential; time-chunked
Mat flow_xi(const Mat& K0, const HamiltonianSelector& sel, double t,
            const ToleranceConfig& tol = {});

// K(t) K(t)^dag computed directly without factorizing, as
// bL(0) exp(2it Dphi(gR(0))) bL(0)^dag
Mat cartan_invariant_flow(const Mat& K0, const HamiltonianSelector& sel,
                          double t, const ToleranceConfig& tol = {});

// dispatch on selector family
Mat flow(const Mat& K0, const HamiltonianSelector& sel, double t,
         const ToleranceConfig& tol = {});

}  // namespace rsdual
