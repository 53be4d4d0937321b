#pragma once

#include <array>
#include <string>

#include "pld/codebook.hpp"

namespace pld {

/// The opportunistic decryptor's three options when the key is missing:
/// keep the raw ciphertext (Perception), discard the packet (Dropping), or
/// substitute a different codeword (Exclusion).
enum class Strategy { kPerception = 0, kDropping = 1, kExclusion = 2 };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

/// Probability weights over the three strategies for one receiver.
struct StrategyProfile {
  std::array<double, 3> beta{1.0, 0.0, 0.0};

  static StrategyProfile pure(Strategy s) {
    StrategyProfile p;
    p.beta = {0.0, 0.0, 0.0};
    p.beta[static_cast<int>(s)] = 1.0;
    return p;
  }

  double operator[](Strategy s) const { return beta[static_cast<int>(s)]; }

  bool is_valid() const;
};

/// Codebook plus the transmitter's ciphering probability.
struct DistortionParams {
  Codebook cb;
  double alpha = 1.0;

  bool is_valid() const {
    return cb.is_valid() && alpha >= 0.0 && alpha <= 1.0;
  }
};

/// Expected distortion of each strategy branch, conditioned on message
/// success; the key-failure probabilities are already folded in.
struct StrategyDeltas {
  double perception;
  double dropping;
  double exclusion;

  double operator[](Strategy s) const {
    return s == Strategy::kPerception ? perception
           : s == Strategy::kDropping ? dropping
                                      : exclusion;
  }
};

/// Distortion of a receiver that always decrypts (or passes through when no
/// cipher is applied): eps_m * D_loss + alpha * (1 - eps_m) * eps_k * D_conf.
double deterministic_distortion(double eps_m, double eps_k,
                                const DistortionParams& dp);

/// Branch distortions for the opportunistic decryptor:
///   Perception: eps_k * alpha * D_conf
///   Dropping:   (eps_k * alpha + 1 - alpha) * D_loss
///   Exclusion:  (eps_k * alpha * (S-2)/(S-1) + 1 - alpha) * D_conf
StrategyDeltas strategy_deltas(double eps_k, const DistortionParams& dp);

/// Opportunistic-decryptor distortion under a strategy profile:
/// eps_m * D_loss + (1 - eps_m) * sum_k beta_k * Delta_k.
double opportunistic_distortion(double eps_m, double eps_k,
                                const StrategyProfile& profile,
                                const DistortionParams& dp);

struct OptimalStrategy {
  StrategyProfile profile;
  Strategy choice;
  double min_distortion;
};

/// Pure profile minimizing the opportunistic distortion. Ties resolve in
/// the fixed order Perception, Dropping, Exclusion.
OptimalStrategy optimal_strategy(double eps_m, double eps_k,
                                 const DistortionParams& dp);

}  // namespace pld
