#pragma once

#include <functional>

namespace pld::oracle {

/// Integer search window plus the resolution of the companion alpha grid.
struct GridSpec {
  int n_lo = 1;
  int n_hi = 128;
  int alpha_points = 101;

  bool is_valid() const { return n_lo >= 1 && n_hi >= n_lo && alpha_points >= 2; }
};

/// Gaussian tail probability computed by adaptive Simpson quadrature of the
/// normal density over [x, 40]. Independent of the erfc-backed primary so the
/// two routes cross-check each other.
double q_function_reference(double x);

/// Result of a dense line search over alpha in [0,1].
struct LineSearchResult {
  double alpha;
  double value;
};

/// Evaluates `objective` on a uniform grid of `points` values spanning [0,1]
/// and returns the maximizer. Ties resolve to the smallest alpha.
LineSearchResult alpha_line_search(
    const std::function<double(double)>& objective, int points);

}  // namespace pld::oracle
