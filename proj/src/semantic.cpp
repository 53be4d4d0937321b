#include "pld/semantic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pld {

namespace {

constexpr long long kShardSize = 32768;

struct ShardMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

Strategy draw_strategy(const StrategyProfile& profile, RandomSource& rng) {
  const double u = rng.next_real();
  if (u < profile.beta[0]) return Strategy::kPerception;
  if (u < profile.beta[0] + profile.beta[1]) return Strategy::kDropping;
  return Strategy::kExclusion;
}

double run_episode(const SimConfig& cfg, RandomSource& rng) {
  const Codebook& cb = cfg.codebook;
  const int s = cb.cardinality;
  const TransportChannel message_channel{cfg.eps_m};
  const TransportChannel key_channel{cfg.eps_k};

  const int plaintext = static_cast<int>(rng.uniform_below(s));
  int sent = plaintext;
  int sent_key = kNullKey;
  if (rng.bernoulli(cfg.alpha)) {
    sent_key = 1 + static_cast<int>(rng.uniform_below(s - 1));
    sent = encrypt(plaintext, sent_key, cb);
  }

  const int received = message_channel.transmit_message(sent, rng);
  if (received == kNullSymbol) return cb.loss_distortion;

  const int received_key = key_channel.transmit_key(sent_key, rng);
  if (received_key != kNullKey) {
    return distortion_between(plaintext, decrypt(received, received_key, cb),
                              cb);
  }

  // No key arrived: the receiver cannot tell an erased key from an
  // unciphered packet and falls back on its strategy draw.
  switch (draw_strategy(cfg.strategy, rng)) {
    case Strategy::kPerception:
      return distortion_between(plaintext, received, cb);
    case Strategy::kDropping:
      return cb.loss_distortion;
    case Strategy::kExclusion: {
      // Uniform over the S-1 codewords other than the received one.
      const int draw = static_cast<int>(rng.uniform_below(s - 1));
      const int guess = draw >= received ? draw + 1 : draw;
      return distortion_between(plaintext, guess, cb);
    }
  }
  throw std::logic_error("run_episode: unreachable");
}

ShardMoments run_shard(const SimConfig& cfg, long long shard_index) {
  RandomSource rng(derive_subseed(cfg.rng_seed,
                                  static_cast<std::uint64_t>(shard_index)));
  const long long begin = shard_index * kShardSize;
  long long count = cfg.num_samples - begin;
  if (count > kShardSize) count = kShardSize;
  ShardMoments m;
  for (long long i = 0; i < count; ++i) {
    const double d = run_episode(cfg, rng);
    m.sum += d;
    m.sum_sq += d * d;
  }
  return m;
}

SimResult merge_shards(const SimConfig& cfg,
                       const std::vector<ShardMoments>& shards) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const ShardMoments& m : shards) {
    sum += m.sum;
    sum_sq += m.sum_sq;
  }
  const double n = static_cast<double>(cfg.num_samples);
  SimResult r;
  r.samples = cfg.num_samples;
  r.mean = sum / n;
  if (cfg.num_samples > 1) {
    double var = (sum_sq - n * r.mean * r.mean) / (n - 1.0);
    if (var < 0.0) var = 0.0;  // roundoff on constant samples
    r.std_error = std::sqrt(var / n);
  }
  return r;
}

long long shard_count(const SimConfig& cfg) {
  return (cfg.num_samples + kShardSize - 1) / kShardSize;
}

}  // namespace

double TransportChannel::message_pmf(int input, int output,
                                     const Codebook& cb) const {
  if (input < 0 || input >= cb.cardinality) {
    throw std::invalid_argument("message_pmf: input outside codebook");
  }
  if (output == kNullSymbol) return erasure_prob;
  if (output == input) return 1.0 - erasure_prob;
  return 0.0;
}

double TransportChannel::key_pmf(int input, int output,
                                 const Codebook& cb) const {
  if (input < 0 || input >= cb.cardinality) {
    throw std::invalid_argument("key_pmf: input outside key alphabet");
  }
  if (input == kNullKey) return output == kNullKey ? 1.0 : 0.0;
  if (output == kNullKey) return erasure_prob;
  if (output == input) return 1.0 - erasure_prob;
  return 0.0;
}

SimResult simulate_distortion(const SimConfig& cfg) {
  if (!cfg.is_valid()) {
    throw std::invalid_argument("simulate_distortion: invalid config");
  }
  const long long shards = shard_count(cfg);
  std::vector<ShardMoments> moments(shards);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < shards; ++i) {
    moments[i] = run_shard(cfg, i);
  }
  return merge_shards(cfg, moments);
}

SimResult simulate_distortion_serial(const SimConfig& cfg) {
  if (!cfg.is_valid()) {
    throw std::invalid_argument("simulate_distortion: invalid config");
  }
  const long long shards = shard_count(cfg);
  std::vector<ShardMoments> moments(shards);
  for (long long i = 0; i < shards; ++i) {
    moments[i] = run_shard(cfg, i);
  }
  return merge_shards(cfg, moments);
}

}  // namespace pld
