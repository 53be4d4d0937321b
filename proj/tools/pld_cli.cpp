#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "pld/experiments.hpp"
#include "pld/run_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitConfigError = 3;

int write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write output file: " << path << "\n";
    return kExitConfigError;
  }
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "write failed: " << path << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

// CSV payloads go to --out when given, stdout otherwise.
int emit_payload(const pld::RunConfig& cfg, const std::string& content) {
  if (cfg.out.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return kExitOk;
  }
  return write_file(cfg.out, content);
}

// Reports always print; --out additionally captures the machine-readable part.
int emit_report(const pld::RunConfig& cfg, const std::string& text,
                const std::string& file_part) {
  std::fwrite(text.data(), 1, text.size(), stdout);
  if (!cfg.out.empty()) return write_file(cfg.out, file_part);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semantic-distortion model for physical-layer deception: "
               "grid sweeps, closed-form optima with oracle cross-checks, "
               "alternating optimization traces, channel simulation"};
  app.require_subcommand(1);
  app.fallthrough(true);

  std::string config_path;
  pld::RunConfig flags;
  app.add_option("--config", config_path, "key = value configuration file");
  const auto* opt_alpha =
      app.add_option("--alpha", flags.alpha,
                     "ciphering probability (initial value for iterate)");
  const auto* opt_bob = app.add_option("--snr-bob-db", flags.snr_bob_db,
                                       "legitimate channel SNR in dB");
  const auto* opt_eve = app.add_option("--snr-eve-db", flags.snr_eve_db,
                                       "eavesdropper channel SNR in dB");
  const auto* opt_card =
      app.add_option("--cardinality", flags.cardinality, "codebook size");
  const auto* opt_iter = app.add_option("--iterations", flags.iterations,
                                        "optimization rounds for iterate");
  const auto* opt_seed =
      app.add_option("--seed", flags.rng_seed, "simulation seed");
  const auto* opt_out =
      app.add_option("--out", flags.out, "output file (default: stdout)");
  const auto* opt_eps_m = app.add_option(
      "--eps-m", flags.eps_m, "message erasure probability (montecarlo)");
  const auto* opt_eps_k = app.add_option(
      "--eps-k", flags.eps_k, "key erasure probability (montecarlo)");
  const auto* opt_samples =
      app.add_option("--samples", flags.num_samples, "sample count");

  auto* cmd_surface = app.add_subcommand(
      "surface", "sweep eve's distortion over the full blocklength grid");
  auto* cmd_optimize = app.add_subcommand(
      "optimize", "closed-form initial allocation with grid cross-check");
  auto* cmd_iterate = app.add_subcommand(
      "iterate", "alternating optimization trace as CSV");
  auto* cmd_montecarlo = app.add_subcommand(
      "montecarlo", "channel simulation vs analytic distortion");
  auto* cmd_verify =
      app.add_subcommand("verify", "numerical self-checks against oracles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  pld::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = pld::load_config_file(config_path);
    if (opt_alpha->count() > 0) cfg.alpha = flags.alpha;
    if (opt_bob->count() > 0) cfg.snr_bob_db = flags.snr_bob_db;
    if (opt_eve->count() > 0) cfg.snr_eve_db = flags.snr_eve_db;
    if (opt_card->count() > 0) cfg.cardinality = flags.cardinality;
    if (opt_iter->count() > 0) cfg.iterations = flags.iterations;
    if (opt_seed->count() > 0) cfg.rng_seed = flags.rng_seed;
    if (opt_out->count() > 0) cfg.out = flags.out;
    if (opt_eps_m->count() > 0) cfg.eps_m = flags.eps_m;
    if (opt_eps_k->count() > 0) cfg.eps_k = flags.eps_k;
    if (opt_samples->count() > 0) cfg.num_samples = flags.num_samples;

    if (cmd_surface->parsed()) {
      return emit_payload(cfg, pld::experiments::surface_csv(cfg));
    }
    if (cmd_optimize->parsed()) {
      const auto rep = pld::experiments::optimize_report(cfg);
      const int io = emit_report(cfg, rep.text, rep.csv);
      if (io != kExitOk) return io;
      if (!rep.feasible) return kExitInfeasible;
      return rep.match ? kExitOk : kExitMismatch;
    }
    if (cmd_iterate->parsed()) {
      const std::string csv = pld::experiments::iterate_csv(cfg);
      const int io = emit_payload(cfg, csv);
      if (io != kExitOk) return io;
      const auto trace = pld::run_alternating_optimization(
          cfg.to_scenario(), cfg.iterations, cfg.alpha);
      return trace.completed ? kExitOk : kExitInfeasible;
    }
    if (cmd_montecarlo->parsed()) {
      const auto rep = pld::experiments::montecarlo_report(cfg);
      return emit_report(cfg, rep.text, rep.text);
    }
    if (cmd_verify->parsed()) {
      const auto rep = pld::experiments::verify_report(cfg);
      const int io = emit_report(cfg, rep.text, rep.text);
      if (io != kExitOk) return io;
      return rep.pass ? kExitOk : kExitMismatch;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;  // unreachable: a subcommand is required
}
