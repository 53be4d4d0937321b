#pragma once

#include <string>

#include "pld/optimizer.hpp"
#include "pld/run_config.hpp"

namespace pld::experiments {

// Locale-free shortest round-trip formatting ("nan" for NaN).
std::string format_double(double value);

// Full-grid sweep of eve's distortion: rows `n_m,n_k,d_eve,feasible_flag`
// over (1..n_m_max)^2 under the configured strategies and alpha.
std::string surface_csv(const RunConfig& cfg);

// One row per optimization round: `t,eve_strategy,bob_strategy,alpha_o,
// n_m,n_k,d_eve,d_bob`. A truncated run ends with a row whose distortions
// are nan.
std::string iterate_csv(const RunConfig& cfg);

struct OptimizeReport {
  std::string text;
  std::string csv;  // header + one row for the closed-form corner
  AllocationResult closed;
  BruteForceResult oracle;
  bool feasible = false;
  bool match = false;  // corners identical and distortions within 1e-9
};
// Computes the closed-form initial allocation and cross-checks it against
// the exhaustive grid search.
OptimizeReport optimize_report(const RunConfig& cfg);

struct MonteCarloReport {
  std::string text;
  bool all_pass = false;  // every strategy within 4 standard errors
};
// Compares analytic distortion with a channel simulation for all three
// strategies at the configured error levels.
MonteCarloReport montecarlo_report(const RunConfig& cfg);

struct VerifyReport {
  std::string text;
  bool pass = false;
};
// Independent checks: tail-probability deviation against the quadrature
// reference on [-8, 8], plus the closed-form/oracle corner comparison.
VerifyReport verify_report(const RunConfig& cfg);

}  // namespace pld::experiments
