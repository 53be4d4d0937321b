#pragma once

#include <cstdint>

#include "pld/codebook.hpp"
#include "pld/distortion.hpp"
#include "pld/random.hpp"

namespace pld {

/// Erasure behavior of one transport channel. The message (primary) channel
/// erases any symbol to kNullSymbol with probability erasure_prob. The key
/// (secondary) channel is Z-shaped: a valid key is erased to kNullKey with
/// probability erasure_prob, while kNullKey itself always arrives intact.
struct TransportChannel {
  double erasure_prob = 0.0;

  bool is_valid() const { return erasure_prob >= 0.0 && erasure_prob < 1.0; }

  /// P(received = output | sent = input) for the message channel over the
  /// alphabet {0..S-1} plus kNullSymbol.
  double message_pmf(int input, int output, const Codebook& cb) const;

  /// P(received = output | sent = input) for the key channel over the
  /// alphabet {kNullKey, 1..S-1}.
  double key_pmf(int input, int output, const Codebook& cb) const;

  /// Samples the message channel.
  int transmit_message(int symbol, RandomSource& rng) const {
    return rng.bernoulli(erasure_prob) ? kNullSymbol : symbol;
  }

  /// Samples the key channel (Z-shape: kNullKey passes through unchanged).
  int transmit_key(int key, RandomSource& rng) const {
    if (key == kNullKey) return kNullKey;
    return rng.bernoulli(erasure_prob) ? kNullKey : key;
  }
};

struct SimConfig {
  Codebook codebook;
  double alpha = 1.0;
  double eps_m = 0.0;
  double eps_k = 0.0;
  StrategyProfile strategy;
  long long num_samples = 1;
  std::uint64_t rng_seed = 0;

  bool is_valid() const {
    return codebook.is_valid() && alpha >= 0.0 && alpha <= 1.0 &&
           eps_m >= 0.0 && eps_m <= 1.0 && eps_k >= 0.0 && eps_k <= 1.0 &&
           strategy.is_valid() && num_samples >= 1;
  }
};

struct SimResult {
  double mean = 0.0;
  double std_error = 0.0;
  long long samples = 0;
};

/// Estimates the end-to-end semantic distortion by sampling independent
/// transmission episodes: uniform plaintext, ciphering with probability
/// alpha, erasure channels for message and key, then the receiver's
/// strategy draw when no key arrives. Samples are processed in fixed-size
/// shards with sub-seeds derived from rng_seed, so the result is
/// bit-identical for a given config regardless of worker count.
SimResult simulate_distortion(const SimConfig& cfg);

/// Single-threaded reference path sharing the per-shard kernel; returns
/// bitwise-identical results to simulate_distortion.
SimResult simulate_distortion_serial(const SimConfig& cfg);

}  // namespace pld
