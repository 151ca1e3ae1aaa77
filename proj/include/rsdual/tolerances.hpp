#pragma once

#include <string>

namespace rsdual {

// Central numeric tolerance configuration. Every residual check in the library
// reads from one of these values; the env var RS_TOL_OVERRIDES (a JSON object
// keyed by field name) merges over the defaults.
struct ToleranceConfig {
  double singularity_tol = 1e-12;  // smallest singular value admitted as invertible
  double unitarity_tol = 1e-11;    // per-dimension: ||U U^dag - 1||_F <= unitarity_tol * n
  double recon_tol = 1e-11;        // factorization residual, relative to 1 + ||K||_F
  double degeneracy_tol = 1e-8;    // adjacent spectral gaps below this flag degeneracy
  double fd_tol = 1e-6;            // finite-difference 2-form checks (relative)
  double constraint_tol = 1e-9;    // moment constraint residual (Frobenius)
  double duality_tol = 1e-8;       // spectral exchange / round-trip residuals
  double chamber_tol = 1e-9;       // admitted slack below chamber walls
  double rank_tol = 1e-6;          // singular values > rank_tol * sigma_max count
  double gauge_tol = 1e-10;        // residual of gauge-correction solves
  double cross_check_tol = 1e-11;  // dual-route formula agreement
  double boundary_recover_tol = 1e-7;  // boundary construct-reduce-recover
  double zeta_cond_max = 1e8;      // conditioning flag for orthogonal-matrix solves

  // defaults merged with RS_TOL_OVERRIDES from the environment
  static ToleranceConfig from_env();
  // merge a JSON object string over *this; unknown keys are an error
  void merge_json(const std::string& json_text);
};

}  // namespace rsdual
