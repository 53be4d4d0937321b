#pragma once

#include <string>

#include "pld/optimizer.hpp"

namespace pld {

// Flat run configuration with the reference defaults pre-populated. Loadable
// from a plain-text `key = value` file; every field can be overridden.
struct RunConfig {
  double snr_bob_db = 0.0;
  double snr_eve_db = -10.0;
  int d_m = 16;
  int d_k = 16;
  double loss_distortion = 1.0;
  double confusion_distortion = 10.0;
  int cardinality = 16;
  double eps_bob_m_th = 0.5;
  double eps_bob_k_th = 0.5;
  double eps_eve_m_th = 0.5;
  double eps_eve_k_th = 0.5;
  double d_bob_th = 0.01;
  double d_bob_tilde_th = 0.01;
  int n_m_max = 128;
  double alpha = 0.9;  // ciphering probability; doubles as alpha_init
  int iterations = 100;
  long long num_samples = 1000000;
  unsigned long long rng_seed = 1;
  double eps_m = 0.1;  // channel error levels for the Monte-Carlo command
  double eps_k = 0.3;
  std::string eve_strategy = "perception";
  std::string bob_strategy = "perception";
  std::string out;  // output path; empty means stdout

  // Builds the scenario, converting dB gains to linear exactly once.
  // Throws std::invalid_argument if any field is out of range.
  Scenario to_scenario() const;
};

// Applies one key=value assignment to cfg. Throws std::invalid_argument on
// an unknown key or an unparseable value.
void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value);

// Parses a config file: one `key = value` per line, `#` starts a comment,
// blank lines ignored. Throws std::runtime_error if the file is unreadable
// and std::invalid_argument on malformed content.
RunConfig load_config_file(const std::string& path);

}  // namespace pld
