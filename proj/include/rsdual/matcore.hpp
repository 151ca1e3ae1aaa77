#pragma once

#include "rsdual/common.hpp"
#include "rsdual/tolerances.hpp"

namespace rsdual {

// Im tr(XY)
double pairing_im_trace(const Mat& X, const Mat& Y);

bool is_b_element(const Mat& b, double tol = 1e-10);
bool is_unitary(const Mat& u, double tol_per_n = 1e-11);

struct IwasawaLeft {
  Mat bL;  // upper triangular, positive diagonal
  Mat gR;  // unitary; K = bL * gR^{-1}
};
struct IwasawaRight {
  Mat gL;  // unitary
  Mat bR;  // K = gL * bR^{-1}
};

IwasawaLeft iwasawa_left(const Mat& K,
                         const ToleranceConfig& tol = ToleranceConfig{});
IwasawaRight iwasawa_right(const Mat& K,
                           const ToleranceConfig& tol = ToleranceConfig{});

struct CartanTriple {
  Mat kL;      // unitary
  RVec pHat;   // non-increasing
  Mat kR;      // unitary
  bool degenerate = false;  // adjacent pHat gap below degeneracy_tol
};

// K = kL |> (e^{-pHat} kR^{-1}) with the quasi-adjoint action; built from the
// SVD with singular values sigma = e^{-pHat} ascending. Torus ambiguity fixed
// by making the last nonzero entry of each left-factor column real positive.
CartanTriple cartan_modified(const Mat& K,
                             const ToleranceConfig& tol = ToleranceConfig{});

struct UnitaryEig {
  Mat u;        // orthonormal columns
  RVec angles;  // in [0, 2pi), descending; g = u diag(e^{i angles}) u^dag
};

UnitaryEig unitary_eig(const Mat& g,
                       const ToleranceConfig& tol = ToleranceConfig{});

}  // namespace rsdual
