// Times the OpenMP kernels against their single-threaded reference paths and
// verifies the results agree bitwise. Informational only: the host may expose
// a single core, so no speedup is asserted — the point is that enabling the
// parallel path never changes the numbers.
#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pld/optimizer.hpp"
#include "pld/semantic.hpp"

using namespace pld;

namespace {

template <typename F>
double best_of(int repeats, F&& body) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs < best) best = secs;
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("threads available: %d\n\n", threads);
  std::printf("%-44s %10s %10s %10s\n", "kernel", "serial", "parallel",
              "identical");

  bool all_identical = true;

  {
    SimConfig sim;
    sim.codebook = Codebook{16, 1.0, 10.0};
    sim.alpha = 0.9;
    sim.eps_m = 0.1;
    sim.eps_k = 0.3;
    sim.strategy = StrategyProfile::pure(Strategy::kExclusion);
    sim.num_samples = 2000000;
    sim.rng_seed = 99;

    SimResult serial{}, parallel{};
    const double t_serial =
        best_of(3, [&] { serial = simulate_distortion_serial(sim); });
    const double t_parallel =
        best_of(3, [&] { parallel = simulate_distortion(sim); });
    const bool same = serial.mean == parallel.mean &&
                      serial.std_error == parallel.std_error &&
                      serial.samples == parallel.samples;
    all_identical = all_identical && same;
    std::printf("%-44s %8.4f s %8.4f s %10s\n",
                "monte carlo simulator (2e6 samples)", t_serial, t_parallel,
                same ? "yes" : "NO");
  }

  {
    Scenario s{ChannelParams::from_db(0.0), ChannelParams::from_db(-10.0)};
    s.d_m = 16;
    s.d_k = 16;
    s.dp.cb = Codebook{16, 1.0, 10.0};
    s.dp.alpha = 0.9;
    s.cons = Constraints{};
    s.cons.n_m_max = 512;  // widen the grid so the sweep is measurable
    const GridRange range{1, 512};

    BruteForceResult serial{}, parallel{};
    const double t_serial = best_of(5, [&] {
      serial = brute_force_optimum_serial(s, Strategy::kPerception,
                                          Strategy::kPerception, 0.9, range,
                                          CapKind::kStrategy);
    });
    const double t_parallel = best_of(5, [&] {
      parallel =
          brute_force_optimum(s, Strategy::kPerception, Strategy::kPerception,
                              0.9, range, CapKind::kStrategy);
    });
    const bool same = serial.feasible == parallel.feasible &&
                      serial.alloc == parallel.alloc &&
                      serial.d_eve == parallel.d_eve;
    all_identical = all_identical && same;
    std::printf("%-44s %8.4f s %8.4f s %10s\n",
                "grid search maximizer (512x512 cells)", t_serial, t_parallel,
                same ? "yes" : "NO");
  }

  if (!all_identical) {
    std::printf("\nerror: parallel and serial results diverge\n");
    return 1;
  }
  return 0;
}
