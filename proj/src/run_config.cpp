#include "pld/run_config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "pld/distortion.hpp"

namespace pld {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return text.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not a number: " + value);
  }
}

long long parse_integer(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not an integer: " + value);
  }
}

unsigned long long parse_unsigned(const std::string& key,
                                  const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config value for '" + key +
                                "' is not an unsigned integer: " + value);
  }
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "snr_bob_db") {
    cfg.snr_bob_db = parse_real(key, value);
  } else if (key == "snr_eve_db") {
    cfg.snr_eve_db = parse_real(key, value);
  } else if (key == "d_m") {
    cfg.d_m = static_cast<int>(parse_integer(key, value));
  } else if (key == "d_k") {
    cfg.d_k = static_cast<int>(parse_integer(key, value));
  } else if (key == "loss_distortion") {
    cfg.loss_distortion = parse_real(key, value);
  } else if (key == "confusion_distortion") {
    cfg.confusion_distortion = parse_real(key, value);
  } else if (key == "cardinality") {
    cfg.cardinality = static_cast<int>(parse_integer(key, value));
  } else if (key == "eps_bob_m_th") {
    cfg.eps_bob_m_th = parse_real(key, value);
  } else if (key == "eps_bob_k_th") {
    cfg.eps_bob_k_th = parse_real(key, value);
  } else if (key == "eps_eve_m_th") {
    cfg.eps_eve_m_th = parse_real(key, value);
  } else if (key == "eps_eve_k_th") {
    cfg.eps_eve_k_th = parse_real(key, value);
  } else if (key == "d_bob_th") {
    cfg.d_bob_th = parse_real(key, value);
  } else if (key == "d_bob_tilde_th") {
    cfg.d_bob_tilde_th = parse_real(key, value);
  } else if (key == "n_m_max") {
    cfg.n_m_max = static_cast<int>(parse_integer(key, value));
  } else if (key == "alpha") {
    cfg.alpha = parse_real(key, value);
  } else if (key == "iterations") {
    cfg.iterations = static_cast<int>(parse_integer(key, value));
  } else if (key == "num_samples") {
    cfg.num_samples = parse_integer(key, value);
  } else if (key == "rng_seed") {
    cfg.rng_seed = parse_unsigned(key, value);
  } else if (key == "eps_m") {
    cfg.eps_m = parse_real(key, value);
  } else if (key == "eps_k") {
    cfg.eps_k = parse_real(key, value);
  } else if (key == "eve_strategy") {
    cfg.eve_strategy = value;
  } else if (key == "bob_strategy") {
    cfg.bob_strategy = value;
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": empty key");
    }
    apply_config_entry(cfg, key, value);
  }
  return cfg;
}

Scenario RunConfig::to_scenario() const {
  if (!std::isfinite(snr_bob_db) || !std::isfinite(snr_eve_db)) {
    throw std::invalid_argument("channel gains must be finite dB values");
  }
  if (d_m < 1 || d_k < 1) {
    throw std::invalid_argument("payload sizes must be positive");
  }
  Scenario s{ChannelParams::from_db(snr_bob_db),
             ChannelParams::from_db(snr_eve_db)};
  s.d_m = d_m;
  s.d_k = d_k;
  s.dp.cb = Codebook{cardinality, loss_distortion, confusion_distortion};
  s.dp.alpha = alpha;
  if (!s.dp.is_valid()) {
    throw std::invalid_argument(
        "invalid codebook or ciphering probability (need cardinality >= 2, "
        "nonnegative distortions, alpha in [0,1])");
  }
  s.cons.eps_bob_m_th = eps_bob_m_th;
  s.cons.eps_bob_k_th = eps_bob_k_th;
  s.cons.eps_eve_m_th = eps_eve_m_th;
  s.cons.eps_eve_k_th = eps_eve_k_th;
  s.cons.d_bob_th = d_bob_th;
  s.cons.d_bob_tilde_th = d_bob_tilde_th;
  s.cons.n_m_max = n_m_max;
  if (!s.cons.is_valid(s.dp.cb)) {
    throw std::invalid_argument(
        "invalid constraints (error thresholds must lie in (0,1), distortion "
        "bounds in (0, loss_distortion), n_m_max >= 1)");
  }
  strategy_from_string(eve_strategy);  // validates; throws on bad names
  strategy_from_string(bob_strategy);
  return s;
}

}  // namespace pld
