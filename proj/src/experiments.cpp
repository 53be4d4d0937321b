#include "pld/experiments.hpp"

#include <charconv>
#include <cmath>
#include <vector>

#include "pld/oracle.hpp"
#include "pld/semantic.hpp"

namespace pld::experiments {

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

namespace {

void append_row(std::string& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const std::string& cell : cells) {
    if (!first) out += ',';
    out += cell;
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string surface_csv(const RunConfig& cfg) {
  const Scenario s = cfg.to_scenario();
  const Strategy eve_s = strategy_from_string(cfg.eve_strategy);
  const Strategy bob_s = strategy_from_string(cfg.bob_strategy);
  const EpsCaps caps = strategy_eps_caps(bob_s, s.dp.alpha, s);
  const StrategyProfile profile = StrategyProfile::pure(eve_s);

  const int hi = s.cons.n_m_max;
  std::vector<double> eps_em(hi), eps_ek(hi);
  std::vector<char> m_ok(hi), k_ok(hi);
  for (int i = 0; i < hi; ++i) {
    const int n = i + 1;
    eps_em[i] = s.eps_eve_m(n);
    eps_ek[i] = s.eps_eve_k(n);
    m_ok[i] = caps.feasible && s.eps_bob_m(n) <= caps.bob_m &&
              eps_em[i] <= s.cons.eps_eve_m_th;
    k_ok[i] = caps.feasible && s.eps_bob_k(n) <= caps.bob_k &&
              eps_ek[i] >= s.cons.eps_eve_k_th;
  }

  std::string out = "n_m,n_k,d_eve,feasible_flag\n";
  out.reserve(out.size() + static_cast<std::size_t>(hi) * hi * 32);
  for (int mi = 0; mi < hi; ++mi) {
    for (int ki = 0; ki < hi; ++ki) {
      const double d =
          opportunistic_distortion(eps_em[mi], eps_ek[ki], profile, s.dp);
      append_row(out, {std::to_string(mi + 1), std::to_string(ki + 1),
                       format_double(d), (m_ok[mi] && k_ok[ki]) ? "1" : "0"});
    }
  }
  return out;
}

std::string iterate_csv(const RunConfig& cfg) {
  const Scenario s = cfg.to_scenario();
  const IterationTrace trace =
      run_alternating_optimization(s, cfg.iterations, cfg.alpha);
  std::string out = "t,eve_strategy,bob_strategy,alpha_o,n_m,n_k,d_eve,d_bob\n";
  for (const IterationRecord& r : trace.records) {
    append_row(out, {std::to_string(r.t), to_string(r.eve_strategy),
                     to_string(r.bob_strategy), format_double(r.alpha_o),
                     std::to_string(r.alloc.n_m), std::to_string(r.alloc.n_k),
                     format_double(r.d_eve), format_double(r.d_bob)});
  }
  return out;
}

OptimizeReport optimize_report(const RunConfig& cfg) {
  const Scenario s = cfg.to_scenario();
  OptimizeReport rep;
  rep.closed = allocate_initial(s);
  rep.oracle = brute_force_optimum(s, Strategy::kPerception,
                                   Strategy::kPerception, s.dp.alpha,
                                   GridRange{1, s.cons.n_m_max},
                                   CapKind::kInitial);
  rep.feasible = rep.closed.feasible;
  rep.csv = "n_m,n_k,d_eve\n";
  if (!rep.closed.feasible) {
    rep.match = !rep.oracle.feasible;
    rep.text = "infeasible: " + rep.closed.violated + "\n";
    if (!rep.match) rep.text += "oracle disagrees: grid search found a feasible cell\n";
    return rep;
  }
  rep.match = rep.oracle.feasible &&
              rep.closed.alloc.n_m == rep.oracle.alloc.n_m &&
              rep.closed.alloc.n_k == rep.oracle.alloc.n_k &&
              std::abs(rep.closed.d_eve - rep.oracle.d_eve) <= 1e-9;
  rep.text = "closed form: n_m=" + std::to_string(rep.closed.alloc.n_m) +
             " n_k=" + std::to_string(rep.closed.alloc.n_k) +
             " d_eve=" + format_double(rep.closed.d_eve) + "\n";
  if (rep.oracle.feasible) {
    rep.text += "grid search: n_m=" + std::to_string(rep.oracle.alloc.n_m) +
                " n_k=" + std::to_string(rep.oracle.alloc.n_k) +
                " d_eve=" + format_double(rep.oracle.d_eve) + "\n";
  } else {
    rep.text += "grid search: infeasible\n";
  }
  rep.text += rep.match ? "agreement: yes\n" : "agreement: NO\n";
  rep.csv += std::to_string(rep.closed.alloc.n_m) + "," +
             std::to_string(rep.closed.alloc.n_k) + "," +
             format_double(rep.closed.d_eve) + "\n";
  return rep;
}

MonteCarloReport montecarlo_report(const RunConfig& cfg) {
  const Codebook cb{cfg.cardinality, cfg.loss_distortion,
                    cfg.confusion_distortion};
  MonteCarloReport rep;
  rep.all_pass = true;
  rep.text =
      "strategy,analytic,simulated,std_error,abs_diff,verdict\n";
  for (const Strategy st :
       {Strategy::kPerception, Strategy::kDropping, Strategy::kExclusion}) {
    const double analytic = opportunistic_distortion(
        cfg.eps_m, cfg.eps_k, StrategyProfile::pure(st),
        DistortionParams{cb, cfg.alpha});
    SimConfig sim;
    sim.codebook = cb;
    sim.alpha = cfg.alpha;
    sim.eps_m = cfg.eps_m;
    sim.eps_k = cfg.eps_k;
    sim.strategy = StrategyProfile::pure(st);
    sim.num_samples = cfg.num_samples;
    sim.rng_seed = cfg.rng_seed + static_cast<unsigned long long>(st);
    const SimResult result = simulate_distortion(sim);
    const double diff = std::abs(result.mean - analytic);
    const bool pass = diff <= 4.0 * result.std_error + 1e-12;
    rep.all_pass = rep.all_pass && pass;
    rep.text += to_string(st);
    rep.text += "," + format_double(analytic) + "," +
                format_double(result.mean) + "," +
                format_double(result.std_error) + "," + format_double(diff) +
                "," + (pass ? "pass" : "FAIL") + "\n";
  }
  return rep;
}

VerifyReport verify_report(const RunConfig& cfg) {
  VerifyReport rep;
  double worst = 0.0;
  for (int i = -32; i <= 32; ++i) {
    const double x = i * 0.25;
    const double dev = std::abs(q_function(x) - oracle::q_function_reference(x));
    if (dev > worst) worst = dev;
  }
  const bool q_pass = worst < 1e-9;
  rep.text = "tail probability vs quadrature on [-8,8]: max deviation " +
             format_double(worst) + (q_pass ? " (pass)\n" : " (FAIL)\n");

  const OptimizeReport corner = optimize_report(cfg);
  rep.text += corner.text;
  rep.pass = q_pass && corner.match;
  rep.text += rep.pass ? "verify: pass\n" : "verify: FAIL\n";
  return rep;
}

}  // namespace pld::experiments
