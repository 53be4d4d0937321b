#pragma once

#include <string>
#include <vector>

#include "pld/distortion.hpp"
#include "pld/fbl.hpp"

namespace pld {

/// Error-probability and distortion thresholds bounding the allocation
/// problem. d_bob_th constrains the always-decrypting receiver model,
/// d_bob_tilde_th the opportunistic one; both must sit below the loss
/// distortion or no allocation can help.
struct Constraints {
  double eps_bob_m_th = 0.5;
  double eps_bob_k_th = 0.5;
  double eps_eve_m_th = 0.5;
  double eps_eve_k_th = 0.5;
  double d_bob_th = 0.01;
  double d_bob_tilde_th = 0.01;
  int n_m_max = 128;

  bool is_valid(const Codebook& cb) const;
};

/// Full problem instance: both receivers' channels, payload sizes for the
/// message and key packets, codebook + base ciphering probability, and the
/// constraint set.
struct Scenario {
  ChannelParams bob;
  ChannelParams eve;
  int d_m = 16;
  int d_k = 16;
  DistortionParams dp;
  Constraints cons;

  double eps_bob_m(double n_m) const {
    return packet_error_probability(n_m, d_m, bob);
  }
  double eps_bob_k(double n_k) const {
    return packet_error_probability(n_k, d_k, bob);
  }
  double eps_eve_m(double n_m) const {
    return packet_error_probability(n_m, d_m, eve);
  }
  double eps_eve_k(double n_k) const {
    return packet_error_probability(n_k, d_k, eve);
  }
};

struct Allocation {
  int n_m = 1;
  int n_k = 1;

  bool operator==(const Allocation&) const = default;
};

/// Upper bounds on Bob's two error probabilities implied by his distortion
/// threshold (already intersected with the plain error thresholds).
struct EpsCaps {
  double bob_m = 0.0;
  double bob_k = 0.0;
  bool feasible = true;
  std::string violated;  // which bound is unreachable when infeasible
  std::string warning;   // degenerate-case fallbacks worth surfacing
};

/// Caps for the always-decrypting receiver model (threshold d_bob_th).
/// alpha = 0 removes the key-side distortion term, leaving the plain error
/// threshold as the only key cap.
EpsCaps initial_eps_caps(const Scenario& s);

/// Caps for the opportunistic receiver playing one fixed strategy
/// (threshold d_bob_tilde_th). A binary codebook makes the Exclusion key
/// bound vacuous (its error term has coefficient zero), so the plain
/// threshold is used and a warning recorded.
EpsCaps strategy_eps_caps(Strategy bob_strategy, double alpha_o,
                          const Scenario& s);

/// Smallest blocklengths satisfying the caps plus the eavesdropper message
/// threshold; n_m_min combines its two lower bounds by max since both
/// constraints bound n_m from below.
struct BlocklengthBounds {
  bool feasible = true;
  int n_m_min = 1;
  int n_k_min = 1;
  std::string violated;
  std::string warning;
};

BlocklengthBounds initial_blocklength_bounds(const Scenario& s);
BlocklengthBounds bob_blocklength_bounds(Strategy bob_strategy, double alpha_o,
                                         const Scenario& s);

/// Largest n_k keeping the eavesdropper's key error above its floor
/// (eps_eve_k decreases in n_k, so the floor caps n_k from above).
int max_key_blocklength(const Scenario& s);

struct AllocationResult {
  bool feasible = false;
  Allocation alloc;
  double d_eve = 0.0;
  std::string violated;
  std::string warning;
};

/// Boundary optimum of the always-decrypting model: n_k at its minimum,
/// n_m at max or min depending on whether alpha clears
/// D_loss / (eps_eve_k(n_k_min) * D_conf). Uses s.dp.alpha.
AllocationResult allocate_initial(const Scenario& s);

/// Ciphering probability optimizing Eve's distortion subject to Bob's
/// opportunistic threshold, at fixed Bob error probabilities. Eve-Perception
/// pushes alpha up (her distortion grows with it); Dropping/Exclusion push
/// it down. Result clamped to [0, 1].
double optimal_alpha(Strategy eve_strategy, Strategy bob_strategy,
                     double eps_bob_m, double eps_bob_k, const Scenario& s);

/// Boundary optimum of Eve's strategy-specific distortion under Bob's
/// strategy-specific feasibility bounds at ciphering probability alpha_o.
AllocationResult adaptive_allocate(Strategy eve_strategy,
                                   Strategy bob_strategy, double alpha_o,
                                   const Scenario& s);

struct IterationRecord {
  int t = 0;
  Strategy eve_strategy = Strategy::kPerception;
  Strategy bob_strategy = Strategy::kPerception;
  double alpha_o = 0.0;
  Allocation alloc;
  double d_eve = 0.0;
  double d_bob = 0.0;
  bool feasible = false;
  std::string violated;
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  bool completed = false;  // false when truncated by infeasibility
};

/// Iterative best-response loop: each round predicts both receivers'
/// strategies at the previous operating point, re-optimizes alpha, then
/// reallocates. Round 1 uses the Perception/Perception initialization at
/// s.dp.alpha. Runs exactly t_max rounds (no convergence test) unless an
/// infeasible round truncates the trace; the truncating record carries NaN
/// distortions. d_bob records the receiver's best-response distortion at
/// the new operating point.
IterationTrace run_alternating_optimization(const Scenario& s, int t_max,
                                            double alpha_init);

struct GridRange {
  int lo = 1;
  int hi = 128;
};

/// Which cap family defines grid feasibility: the always-decrypting model's
/// caps or the strategy-specific opportunistic caps.
enum class CapKind { kInitial, kStrategy };

struct BruteForceResult {
  bool feasible = false;
  Allocation alloc;
  double d_eve = 0.0;
};

/// Exhaustive reference maximizer of Eve's strategy-specific distortion
/// over the feasible integer grid. Evaluates error probabilities forward
/// (never through the blocklength inversion) so it cross-checks the closed
/// forms. Ties resolve to smallest n_k, then smallest n_m. Grid rows may be
/// evaluated in parallel; the merge is ordered, so the result is
/// independent of worker count.
BruteForceResult brute_force_optimum(const Scenario& s, Strategy eve_strategy,
                                     Strategy bob_strategy, double alpha,
                                     GridRange range,
                                     CapKind caps = CapKind::kStrategy);

/// Single-threaded reference path; bitwise-identical results.
BruteForceResult brute_force_optimum_serial(const Scenario& s,
                                            Strategy eve_strategy,
                                            Strategy bob_strategy,
                                            double alpha, GridRange range,
                                            CapKind caps = CapKind::kStrategy);

}  // namespace pld
