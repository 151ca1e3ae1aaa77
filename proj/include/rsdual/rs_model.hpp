#pragma once

#include <vector>

#include "rsdual/common.hpp"
#include "rsdual/tolerances.hpp"

namespace rsdual {

struct Coupling {
  double x;
  explicit Coupling(double x_) : x(x_) {
    if (std::abs(x) < 1e-6) throw MalformedInput("coupling too close to zero");
  }
};

// point of the compact model: angles q (period pi, descending canonical
// representative in [0, pi)) and momenta p
struct PointP {
  RVec q, p;
  int n() const { return (int)q.size(); }
};

// point of the dual model: angles qHat in [0, 2pi) and ordered momenta pHat
struct PointPhat {
  RVec qHat, pHat;
  int n() const { return (int)qHat.size(); }
};

// pHat gap condition: open chamber has all consecutive gaps > |x|/2, the
// closed one allows equality (within slack)
bool in_chamber_open(const RVec& pHat, double x, double slack = 0.0);
bool in_chamber_closed(const RVec& pHat, double x, double slack = 0.0);

// interaction weight sqrt(1 + sinh^2(x/2)/sin^2(dq))
double weight_w(double x, double dq);

Mat lax_rs(const PointP& pt, const Coupling& c,
           const ToleranceConfig& tol = {});
Mat lax_dual(const PointPhat& pt, const Coupling& c,
             const ToleranceConfig& tol = {});

double ham_rs(const PointP& pt, const Coupling& c,
              const ToleranceConfig& tol = {});
double ham_dual(const PointPhat& pt, const Coupling& c,
                const ToleranceConfig& tol = {});

// positive conjugator d with lax_dual = diag(d) * theta * e^{i qHat} * diag(d)^{-1}
RVec dual_lax_conjugator(double x, const RVec& pHat);

// simultaneous permutation of (q, p) on the covering space
PointP sn_act(const std::vector<int>& sigma, const PointP& pt);

// sort angles into the canonical descending window [0, pi); returns the
// permutation applied (dst index -> src index)
std::pair<PointP, std::vector<int>> canonicalize(const PointP& pt,
                                                 const ToleranceConfig& tol = {});

}  // namespace rsdual
