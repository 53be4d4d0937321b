#include "pld/distortion.hpp"

#include <cmath>
#include <stdexcept>

namespace pld {

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::kPerception:
      return "perception";
    case Strategy::kDropping:
      return "dropping";
    case Strategy::kExclusion:
      return "exclusion";
  }
  throw std::logic_error("to_string: bad strategy value");
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "perception") return Strategy::kPerception;
  if (name == "dropping") return Strategy::kDropping;
  if (name == "exclusion") return Strategy::kExclusion;
  throw std::invalid_argument("unknown strategy: " + name);
}

bool StrategyProfile::is_valid() const {
  double sum = 0.0;
  for (double b : beta) {
    if (!(b >= 0.0) || !(b <= 1.0)) return false;
    sum += b;
  }
  return std::fabs(sum - 1.0) <= 1e-12;
}

double deterministic_distortion(double eps_m, double eps_k,
                                const DistortionParams& dp) {
  return eps_m * dp.cb.loss_distortion +
         dp.alpha * (1.0 - eps_m) * eps_k * dp.cb.confusion_distortion;
}

StrategyDeltas strategy_deltas(double eps_k, const DistortionParams& dp) {
  const double s = static_cast<double>(dp.cb.cardinality);
  const double a = dp.alpha;
  return {
      eps_k * a * dp.cb.confusion_distortion,
      (eps_k * a + (1.0 - a)) * dp.cb.loss_distortion,
      (eps_k * a * (s - 2.0) / (s - 1.0) + (1.0 - a)) *
          dp.cb.confusion_distortion,
  };
}

double opportunistic_distortion(double eps_m, double eps_k,
                                const StrategyProfile& profile,
                                const DistortionParams& dp) {
  const StrategyDeltas d = strategy_deltas(eps_k, dp);
  const double branch = profile.beta[0] * d.perception +
                        profile.beta[1] * d.dropping +
                        profile.beta[2] * d.exclusion;
  return eps_m * dp.cb.loss_distortion + (1.0 - eps_m) * branch;
}

OptimalStrategy optimal_strategy(double eps_m, double eps_k,
                                 const DistortionParams& dp) {
  const StrategyDeltas d = strategy_deltas(eps_k, dp);
  Strategy best = Strategy::kPerception;
  double best_delta = d.perception;
  if (d.dropping < best_delta) {
    best = Strategy::kDropping;
    best_delta = d.dropping;
  }
  if (d.exclusion < best_delta) {
    best = Strategy::kExclusion;
    best_delta = d.exclusion;
  }
  const StrategyProfile profile = StrategyProfile::pure(best);
  return {profile, best,
          eps_m * dp.cb.loss_distortion + (1.0 - eps_m) * best_delta};
}

}  // namespace pld
