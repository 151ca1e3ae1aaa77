#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rsdual/duality.hpp"

namespace rsdual {

struct CheckRecord {
  std::string id;
  int n = 0;
  double x = 0;
  std::uint64_t seed = 0;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  bool pass = true;
  double seconds = 0;
  double max_residual = 0;

  void add(const std::string& id, int n, double x, std::uint64_t seed,
           double residual, double tolerance);
};

// seedable sampler; all suite randomness flows through one of these
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a, double b);
  double exponential(double cap = 8.0);
  cxd gaussian_c();
  Mat random_matrix(int n);       // complex Gaussian entries
  Mat random_invertible(int n);   // rejection on smallest singular value
  Mat random_unitary(int n);      // QR of a complex Gaussian matrix
  Mat random_b(int n);            // positive-diagonal triangular
  Vec random_diag_unitary(int n);
  Mat random_gauge(int n, const Coupling& c);  // stabilizer of the ray of v
  PointP random_point_p(int n, const Coupling& c);
  PointPhat random_point_phat(int n, const Coupling& c, double gap_cap = 8.0);
  PointPhatC random_point_phatc(int n, const Coupling& c);

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

const std::vector<std::string>& suite_names();

VerificationReport run_suite(const std::string& name, int n_min, int n_max,
                             const std::vector<double>& xs, int trials,
                             std::uint64_t seed, const ToleranceConfig& tol);

// worst relative residual of the symplectic-form pullback for one of the
// slice/embedding maps ("itilde", "ihat", "kx", "zx")
double pullback_check(const std::string& map_id, int n, double x,
                      std::uint64_t seed, const ToleranceConfig& tol);

using HamFn = std::function<double(const RVec& q, const RVec& p)>;

struct OdeTrajectory {
  std::vector<double> t;
  std::vector<RVec> q, p;
};

// adaptive Runge-Kutta (Dormand-Prince 5(4)) integration of the canonical
// equations for the given Hamiltonian; independent of the exact flows
OdeTrajectory ode_oracle(const HamFn& H, const RVec& q0, const RVec& p0,
                         double t1, int samples, double rtol = 1e-10,
                         double atol = 1e-12);

}  // namespace rsdual
