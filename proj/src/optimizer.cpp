#include "pld/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pld {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int min_blocklength(double eps_cap, int payload, const ChannelParams& ch) {
  return ceil_blocklength(blocklength_for(eps_cap, payload, ch));
}

}  // namespace

bool Constraints::is_valid(const Codebook& cb) const {
  const auto prob_ok = [](double p) { return p > 0.0 && p < 1.0; };
  return prob_ok(eps_bob_m_th) && prob_ok(eps_bob_k_th) &&
         prob_ok(eps_eve_m_th) && prob_ok(eps_eve_k_th) && d_bob_th > 0.0 &&
         d_bob_th < cb.loss_distortion && d_bob_tilde_th > 0.0 &&
         d_bob_tilde_th < cb.loss_distortion && n_m_max >= 1;
}

EpsCaps initial_eps_caps(const Scenario& s) {
  const Constraints& c = s.cons;
  const Codebook& cb = s.dp.cb;
  EpsCaps caps;
  caps.bob_m = std::min(c.eps_bob_m_th, c.d_bob_th / cb.loss_distortion);
  if (s.dp.alpha > 0.0 && cb.confusion_distortion > 0.0) {
    caps.bob_k = std::min(c.eps_bob_k_th,
                          c.d_bob_th / (s.dp.alpha * cb.confusion_distortion));
  } else {
    // No ciphering (or no confusion penalty): the distortion carries no key
    // term, so only the plain error threshold binds.
    caps.bob_k = c.eps_bob_k_th;
  }
  return caps;
}

EpsCaps strategy_eps_caps(Strategy bob_strategy, double alpha_o,
                          const Scenario& s) {
  const Constraints& c = s.cons;
  const double loss = s.dp.cb.loss_distortion;
  const double conf = s.dp.cb.confusion_distortion;
  const double th = c.d_bob_tilde_th;
  const double size = static_cast<double>(s.dp.cb.cardinality);

  EpsCaps caps;
  double raw_m = kInf;
  double raw_k = kInf;
  switch (bob_strategy) {
    case Strategy::kPerception:
      raw_m = th / loss;
      if (alpha_o > 0.0 && conf > 0.0) raw_k = th / (alpha_o * conf);
      break;
    case Strategy::kDropping:
      if (alpha_o <= 0.0) {
        // Without ciphering the dropping branch always loses the packet.
        caps.feasible = false;
        caps.violated = "bob distortion bound (dropping strategy)";
        return caps;
      }
      raw_m = 1.0 - (loss - th) / (alpha_o * loss);
      raw_k = (th + (alpha_o - 1.0) * loss) / (alpha_o * loss);
      break;
    case Strategy::kExclusion: {
      const double residual = (1.0 - alpha_o) * conf;
      if (loss - residual <= 0.0) {
        // Residual confusion from the unciphered branch already exceeds the
        // loss scale: no error probability can rescue the bound.
        caps.feasible = false;
        caps.violated = "bob distortion bound (exclusion strategy)";
        return caps;
      }
      raw_m = (th - residual) / (loss - residual);
      if (s.dp.cb.cardinality == 2) {
        // The exclusion branch's key-error term has coefficient zero for a
        // binary codebook: any key error rate satisfies the bound.
        caps.warning =
            "binary codebook leaves the exclusion key bound vacuous; "
            "using the plain key error threshold";
      } else if (alpha_o > 0.0 && conf > 0.0) {
        raw_k = (th - (1.0 - alpha_o) * (size - 1.0) * conf) /
                (alpha_o * (size - 2.0) * conf);
      }
      break;
    }
  }

  caps.bob_m = std::min(raw_m, c.eps_bob_m_th);
  caps.bob_k = std::min(raw_k, c.eps_bob_k_th);
  if (caps.bob_m <= 0.0) {
    caps.feasible = false;
    caps.violated = "bob distortion bound (message error cap nonpositive)";
  } else if (caps.bob_k <= 0.0) {
    caps.feasible = false;
    caps.violated = "bob distortion bound (key error cap nonpositive)";
  }
  return caps;
}

namespace {

BlocklengthBounds bounds_from_caps(const EpsCaps& caps, const Scenario& s) {
  BlocklengthBounds b;
  b.warning = caps.warning;
  if (!caps.feasible) {
    b.feasible = false;
    b.violated = caps.violated;
    return b;
  }
  // Both the Bob-side cap and the Eve-side decodability threshold bound n_m
  // from below; the binding one is the larger.
  const int from_bob = min_blocklength(caps.bob_m, s.d_m, s.bob);
  const int from_eve = min_blocklength(s.cons.eps_eve_m_th, s.d_m, s.eve);
  b.n_m_min = std::max(from_bob, from_eve);
  b.n_k_min = min_blocklength(caps.bob_k, s.d_k, s.bob);
  return b;
}

}  // namespace

BlocklengthBounds initial_blocklength_bounds(const Scenario& s) {
  return bounds_from_caps(initial_eps_caps(s), s);
}

BlocklengthBounds bob_blocklength_bounds(Strategy bob_strategy, double alpha_o,
                                         const Scenario& s) {
  return bounds_from_caps(strategy_eps_caps(bob_strategy, alpha_o, s), s);
}

int max_key_blocklength(const Scenario& s) {
  return floor_blocklength(blocklength_for(s.cons.eps_eve_k_th, s.d_k, s.eve));
}

namespace {

// Region checks shared by both allocators; returns the violated-constraint
// label, or empty when the corner set is nonempty.
std::string check_region(const BlocklengthBounds& b, const Scenario& s) {
  if (b.n_m_min > s.cons.n_m_max) return "message blocklength budget n_m_max";
  if (b.n_k_min > max_key_blocklength(s)) return "eve key error threshold";
  return {};
}

}  // namespace

AllocationResult allocate_initial(const Scenario& s) {
  const BlocklengthBounds b = initial_blocklength_bounds(s);
  AllocationResult r;
  r.warning = b.warning;
  if (!b.feasible) {
    r.violated = b.violated;
    return r;
  }
  r.violated = check_region(b, s);
  if (!r.violated.empty()) return r;

  const double conf = s.dp.cb.confusion_distortion;
  const double eps_ek_max = s.eps_eve_k(b.n_k_min);
  // Eve's distortion grows with n_m iff alpha clears this threshold (her
  // message-error term then hurts more than the key term helps her).
  const double threshold = (eps_ek_max > 0.0 && conf > 0.0)
                               ? s.dp.cb.loss_distortion / (eps_ek_max * conf)
                               : kInf;
  const int n_m = s.dp.alpha >= threshold ? s.cons.n_m_max : b.n_m_min;
  r.feasible = true;
  r.alloc = {n_m, b.n_k_min};
  r.d_eve = deterministic_distortion(s.eps_eve_m(n_m), eps_ek_max, s.dp);
  return r;
}

double optimal_alpha(Strategy eve_strategy, Strategy bob_strategy,
                     double eps_bob_m, double eps_bob_k, const Scenario& s) {
  const double loss = s.dp.cb.loss_distortion;
  const double conf = s.dp.cb.confusion_distortion;
  const double th = s.cons.d_bob_tilde_th;
  const double size = static_cast<double>(s.dp.cb.cardinality);

  double a;
  if (eve_strategy == Strategy::kPerception) {
    // Eve's perception distortion grows with alpha: push it to the largest
    // value Bob's bound tolerates.
    if (bob_strategy == Strategy::kPerception) {
      const double den = (1.0 - eps_bob_m) * eps_bob_k * conf;
      a = den > 0.0 ? (th - eps_bob_m * loss) / den : 1.0;
    } else {
      a = 1.0;  // dropping/exclusion bounds loosen as alpha grows
    }
  } else {
    // Dropping and exclusion distortions shrink with alpha: push it to the
    // smallest value Bob's bound tolerates.
    if (bob_strategy == Strategy::kPerception) {
      a = 0.0;
    } else if (bob_strategy == Strategy::kDropping) {
      const double den = (1.0 - eps_bob_k) * (1.0 - eps_bob_m) * loss;
      a = den > 0.0 ? (loss - th) / den : 1.0;
    } else {
      const double den =
          ((size - 2.0) * eps_bob_k - (size - 1.0)) * (1.0 - eps_bob_m) * conf;
      if (den < 0.0) {
        a = (size - 1.0) * (th - eps_bob_m * loss - (1.0 - eps_bob_m) * conf) /
            den;
      } else {
        // Degenerate (eps_bob_m = 1 or conf = 0): the bound is independent
        // of alpha — satisfied by alpha = 0 or by nothing at all.
        a = th - eps_bob_m * loss >= 0.0 ? 0.0 : 1.0;
      }
    }
  }
  return std::clamp(a, 0.0, 1.0);
}

AllocationResult adaptive_allocate(Strategy eve_strategy,
                                   Strategy bob_strategy, double alpha_o,
                                   const Scenario& s) {
  const BlocklengthBounds b = bob_blocklength_bounds(bob_strategy, alpha_o, s);
  AllocationResult r;
  r.warning = b.warning;
  if (!b.feasible) {
    r.violated = b.violated;
    return r;
  }
  r.violated = check_region(b, s);
  if (!r.violated.empty()) return r;

  const double loss = s.dp.cb.loss_distortion;
  const double conf = s.dp.cb.confusion_distortion;
  const double size = static_cast<double>(s.dp.cb.cardinality);
  const double eps_ek_max = s.eps_eve_k(b.n_k_min);

  int n_m = b.n_m_min;
  switch (eve_strategy) {
    case Strategy::kPerception: {
      const double threshold = (eps_ek_max > 0.0 && conf > 0.0)
                                   ? loss / (eps_ek_max * conf)
                                   : kInf;
      n_m = alpha_o >= threshold ? s.cons.n_m_max : b.n_m_min;
      break;
    }
    case Strategy::kDropping:
      n_m = b.n_m_min;  // her distortion decreases in both blocklengths
      break;
    case Strategy::kExclusion: {
      const double den =
          conf * (1.0 - eps_ek_max * (size - 2.0) / (size - 1.0));
      const double threshold = den > 0.0 ? (conf - loss) / den : -kInf;
      n_m = alpha_o >= threshold ? b.n_m_min : s.cons.n_m_max;
      break;
    }
  }

  r.feasible = true;
  r.alloc = {n_m, b.n_k_min};
  const DistortionParams dp_o{s.dp.cb, alpha_o};
  r.d_eve = opportunistic_distortion(s.eps_eve_m(n_m), eps_ek_max,
                                     StrategyProfile::pure(eve_strategy), dp_o);
  return r;
}

IterationTrace run_alternating_optimization(const Scenario& s, int t_max,
                                            double alpha_init) {
  if (t_max < 1) {
    throw std::invalid_argument(
        "run_alternating_optimization: t_max must be >= 1");
  }
  if (!(alpha_init > 0.0) || alpha_init > 1.0) {
    throw std::invalid_argument(
        "run_alternating_optimization: alpha_init must lie in (0,1]");
  }

  IterationTrace trace;
  trace.records.reserve(static_cast<std::size_t>(t_max));

  const BlocklengthBounds init =
      bob_blocklength_bounds(Strategy::kPerception, alpha_init, s);
  Allocation prev{init.feasible ? init.n_m_min : 1,
                  init.feasible ? init.n_k_min : 1};
  double alpha_prev = alpha_init;

  for (int t = 1; t <= t_max; ++t) {
    Strategy eve_t = Strategy::kPerception;
    Strategy bob_t = Strategy::kPerception;
    if (t > 1) {
      const DistortionParams dp_prev{s.dp.cb, alpha_prev};
      eve_t = optimal_strategy(s.eps_eve_m(prev.n_m), s.eps_eve_k(prev.n_k),
                               dp_prev)
                  .choice;
      bob_t = optimal_strategy(s.eps_bob_m(prev.n_m), s.eps_bob_k(prev.n_k),
                               dp_prev)
                  .choice;
    }

    const double alpha_o = optimal_alpha(
        eve_t, bob_t, s.eps_bob_m(prev.n_m), s.eps_bob_k(prev.n_k), s);
    const AllocationResult ar = adaptive_allocate(eve_t, bob_t, alpha_o, s);

    IterationRecord rec;
    rec.t = t;
    rec.eve_strategy = eve_t;
    rec.bob_strategy = bob_t;
    rec.alpha_o = alpha_o;
    if (!ar.feasible) {
      rec.alloc = prev;
      rec.d_eve = kNaN;
      rec.d_bob = kNaN;
      rec.feasible = false;
      rec.violated = ar.violated;
      trace.records.push_back(rec);
      return trace;  // truncated
    }
    rec.alloc = ar.alloc;
    rec.d_eve = ar.d_eve;
    const DistortionParams dp_o{s.dp.cb, alpha_o};
    rec.d_bob = optimal_strategy(s.eps_bob_m(ar.alloc.n_m),
                                 s.eps_bob_k(ar.alloc.n_k), dp_o)
                    .min_distortion;
    rec.feasible = true;
    trace.records.push_back(rec);

    prev = ar.alloc;
    alpha_prev = alpha_o;
  }
  trace.completed = true;
  return trace;
}

namespace {

BruteForceResult grid_search(const Scenario& s, Strategy eve_strategy,
                             Strategy bob_strategy, double alpha,
                             GridRange range, CapKind cap_kind,
                             bool parallel) {
  if (range.lo < 1 || range.hi < range.lo) {
    throw std::invalid_argument("brute_force_optimum: bad grid range");
  }
  BruteForceResult best;
  EpsCaps caps;
  if (cap_kind == CapKind::kInitial) {
    Scenario with_alpha = s;  // the initial caps read alpha from the scenario
    with_alpha.dp.alpha = alpha;
    caps = initial_eps_caps(with_alpha);
  } else {
    caps = strategy_eps_caps(bob_strategy, alpha, s);
  }
  if (!caps.feasible) return best;

  const int count = range.hi - range.lo + 1;
  std::vector<char> m_ok(count), k_ok(count);
  std::vector<double> eps_em(count), eps_ek(count);
  for (int i = 0; i < count; ++i) {
    const int n = range.lo + i;
    eps_em[i] = s.eps_eve_m(n);
    eps_ek[i] = s.eps_eve_k(n);
    m_ok[i] = n <= s.cons.n_m_max && s.eps_bob_m(n) <= caps.bob_m &&
              eps_em[i] <= s.cons.eps_eve_m_th;
    k_ok[i] = s.eps_bob_k(n) <= caps.bob_k &&
              eps_ek[i] >= s.cons.eps_eve_k_th;
  }

  const StrategyProfile eve_profile = StrategyProfile::pure(eve_strategy);
  const DistortionParams dp{s.dp.cb, alpha};

  // Row bests are computed independently, then merged in row order with a
  // strict comparison, so ties resolve to the smallest n_k / n_m no matter
  // how rows were scheduled.
  std::vector<BruteForceResult> rows(count);
#pragma omp parallel for schedule(static) if (parallel)
  for (int ki = 0; ki < count; ++ki) {
    if (!k_ok[ki]) continue;
    BruteForceResult row_best;
    for (int mi = 0; mi < count; ++mi) {
      if (!m_ok[mi]) continue;
      const double d =
          opportunistic_distortion(eps_em[mi], eps_ek[ki], eve_profile, dp);
      if (!row_best.feasible || d > row_best.d_eve) {
        row_best.feasible = true;
        row_best.alloc = {range.lo + mi, range.lo + ki};
        row_best.d_eve = d;
      }
    }
    rows[ki] = row_best;
  }
  for (int ki = 0; ki < count; ++ki) {
    if (rows[ki].feasible && (!best.feasible || rows[ki].d_eve > best.d_eve)) {
      best = rows[ki];
    }
  }
  return best;
}

}  // namespace

BruteForceResult brute_force_optimum(const Scenario& s, Strategy eve_strategy,
                                     Strategy bob_strategy, double alpha,
                                     GridRange range, CapKind caps) {
  return grid_search(s, eve_strategy, bob_strategy, alpha, range, caps, true);
}

BruteForceResult brute_force_optimum_serial(const Scenario& s,
                                            Strategy eve_strategy,
                                            Strategy bob_strategy,
                                            double alpha, GridRange range,
                                            CapKind caps) {
  return grid_search(s, eve_strategy, bob_strategy, alpha, range, caps, false);
}

}  // namespace pld
