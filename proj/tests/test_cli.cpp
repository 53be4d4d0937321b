#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "pld/experiments.hpp"
#include "pld/run_config.hpp"
#include "pld/semantic.hpp"

using namespace pld;
using namespace pld::experiments;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(',', start);
    if (end == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

std::string write_temp_config(const std::string& name,
                              const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << body;
  out.close();
  return path.string();
}

}  // namespace

TEST_CASE("run configuration defaults") {
  const RunConfig cfg;
  CHECK(cfg.snr_bob_db == 0.0);
  CHECK(cfg.snr_eve_db == -10.0);
  CHECK(cfg.d_m == 16);
  CHECK(cfg.d_k == 16);
  CHECK(cfg.loss_distortion == 1.0);
  CHECK(cfg.confusion_distortion == 10.0);
  CHECK(cfg.cardinality == 16);
  CHECK(cfg.eps_bob_m_th == 0.5);
  CHECK(cfg.eps_eve_k_th == 0.5);
  CHECK(cfg.d_bob_th == 0.01);
  CHECK(cfg.d_bob_tilde_th == 0.01);
  CHECK(cfg.n_m_max == 128);
  CHECK(cfg.alpha == 0.9);
  CHECK(cfg.iterations == 100);
  CHECK(cfg.num_samples == 1000000);
  CHECK(cfg.rng_seed == 1);
  CHECK(cfg.eve_strategy == "perception");
  CHECK(cfg.bob_strategy == "perception");
  CHECK(cfg.out.empty());

  const Scenario s = cfg.to_scenario();
  CHECK(s.bob.gamma() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.eve.gamma() == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(s.dp.alpha == 0.9);
  CHECK(s.dp.cb.cardinality == 16);
  CHECK(s.cons.n_m_max == 128);
}

TEST_CASE("config entries update fields and reject junk") {
  RunConfig cfg;
  apply_config_entry(cfg, "alpha", "0.25");
  CHECK(cfg.alpha == 0.25);
  apply_config_entry(cfg, "snr_eve_db", "-3.5");
  CHECK(cfg.snr_eve_db == -3.5);
  apply_config_entry(cfg, "cardinality", "8");
  CHECK(cfg.cardinality == 8);
  apply_config_entry(cfg, "iterations", "7");
  CHECK(cfg.iterations == 7);
  apply_config_entry(cfg, "num_samples", "2500000");
  CHECK(cfg.num_samples == 2500000);
  apply_config_entry(cfg, "rng_seed", "42");
  CHECK(cfg.rng_seed == 42);
  apply_config_entry(cfg, "eve_strategy", "dropping");
  CHECK(cfg.eve_strategy == "dropping");
  apply_config_entry(cfg, "out", "result.csv");
  CHECK(cfg.out == "result.csv");

  CHECK_THROWS_AS(apply_config_entry(cfg, "not_a_key", "1"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "alpha", "fast"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "iterations", "3.7"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(cfg, "n_m_max", ""),
                  std::invalid_argument);
}

TEST_CASE("config files accept comments, spacing, and blank lines") {
  const std::string path = write_temp_config("pld_test_ok.cfg",
                                             "# reference setup\n"
                                             "\n"
                                             "alpha = 0.5\n"
                                             "  snr_eve_db=-3\n"
                                             "eps_k = 0.2  # high key noise\n"
                                             "bob_strategy = exclusion\n");
  const RunConfig cfg = load_config_file(path);
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.snr_eve_db == -3.0);
  CHECK(cfg.eps_k == 0.2);
  CHECK(cfg.bob_strategy == "exclusion");
  CHECK(cfg.n_m_max == 128);  // untouched fields keep their defaults
  std::filesystem::remove(path);

  const std::string bad = write_temp_config("pld_test_bad.cfg",
                                            "alpha = 0.5\n"
                                            "this line has no equals\n");
  CHECK_THROWS(load_config_file(bad));
  std::filesystem::remove(bad);

  CHECK_THROWS_AS(load_config_file("no-such-file-anywhere.cfg"),
                  std::runtime_error);
}

TEST_CASE("scenario construction validates ranges") {
  RunConfig cfg;
  cfg.alpha = 1.5;
  CHECK_THROWS_AS(cfg.to_scenario(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.d_m = 0;
  CHECK_THROWS_AS(cfg.to_scenario(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.eve_strategy = "bogus";
  CHECK_THROWS(cfg.to_scenario());
  cfg = RunConfig{};
  cfg.n_m_max = 0;
  CHECK_THROWS_AS(cfg.to_scenario(), std::invalid_argument);
  cfg = RunConfig{};
  cfg.cardinality = 1;
  CHECK_THROWS_AS(cfg.to_scenario(), std::invalid_argument);
}

TEST_CASE("doubles format as shortest round-trip strings") {
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(0.0) == "0");
  for (const double v : {0.1, 5.7253859554464439, 1e-300, -3.25,
                         0.00088917997452982514}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("surface export covers the full grid and matches the filters") {
  const RunConfig cfg;  // reference setup, perception/perception, alpha 0.9
  const std::string csv = surface_csv(cfg);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 1 + 128 * 128);
  CHECK(lines[0] == "n_m,n_k,d_eve,feasible_flag");

  const Scenario s = cfg.to_scenario();
  const EpsCaps caps = strategy_eps_caps(Strategy::kPerception, 0.9, s);
  REQUIRE(caps.feasible);
  const StrategyProfile profile = StrategyProfile::pure(Strategy::kPerception);
  const double d_hi = std::max(s.dp.cb.loss_distortion,
                               s.dp.cb.confusion_distortion);

  // every row well formed, ordered, and in distortion range
  std::vector<char> flag(128 * 128);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 4);
    const int n_m = std::stoi(fields[0]);
    const int n_k = std::stoi(fields[1]);
    CHECK(n_m == static_cast<int>((i - 1) / 128) + 1);
    CHECK(n_k == static_cast<int>((i - 1) % 128) + 1);
    const double d = std::stod(fields[2]);
    CHECK(d >= 0.0);
    CHECK(d <= d_hi);
    REQUIRE((fields[3] == "0" || fields[3] == "1"));
    flag[static_cast<std::size_t>(n_m - 1) * 128 + (n_k - 1)] =
        fields[3] == "1" ? 1 : 0;
  }

  // known feasibility corners
  auto at = [&](int n_m, int n_k) {
    return flag[static_cast<std::size_t>(n_m - 1) * 128 + (n_k - 1)];
  };
  CHECK(at(117, 41) == 1);
  CHECK(at(116, 41) == 0);  // eve reads the message too reliably
  CHECK(at(117, 40) == 0);  // bob's key error above its cap
  CHECK(at(128, 116) == 1);
  CHECK(at(128, 117) == 0);  // eve's key error below its floor

  // spot-check random cells against the per-cell filters and objective
  std::mt19937 rng(7u);
  std::uniform_int_distribution<int> pick(1, 128);
  for (int trial = 0; trial < 100; ++trial) {
    const int n_m = pick(rng);
    const int n_k = pick(rng);
    const bool ok = s.eps_bob_m(n_m) <= caps.bob_m &&
                    s.eps_eve_m(n_m) <= s.cons.eps_eve_m_th &&
                    s.eps_bob_k(n_k) <= caps.bob_k &&
                    s.eps_eve_k(n_k) >= s.cons.eps_eve_k_th;
    CHECK(at(n_m, n_k) == (ok ? 1 : 0));
    const auto fields =
        split_fields(lines[1 + static_cast<std::size_t>(n_m - 1) * 128 +
                           (n_k - 1)]);
    const double expected = opportunistic_distortion(
        s.eps_eve_m(n_m), s.eps_eve_k(n_k), profile, s.dp);
    CHECK(std::stod(fields[2]) == expected);
  }

  CHECK(surface_csv(cfg) == csv);  // byte-identical on repeat
}

TEST_CASE("surface export handles a one-cell grid") {
  RunConfig cfg;
  cfg.n_m_max = 1;
  const std::string csv = surface_csv(cfg);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  const auto fields = split_fields(lines[1]);
  REQUIRE(fields.size() == 4);
  CHECK(fields[0] == "1");
  CHECK(fields[1] == "1");
  CHECK(fields[3] == "0");  // one-symbol codes can't meet the error caps
}

TEST_CASE("iteration export reproduces the reference trace") {
  const RunConfig cfg;
  const std::string csv = iterate_csv(cfg);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "t,eve_strategy,bob_strategy,alpha_o,n_m,n_k,d_eve,d_bob");

  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    rows.push_back(split_fields(lines[i]));
    REQUIRE(rows.back().size() == 8);
    CHECK(rows.back()[0] == std::to_string(i));
  }

  CHECK(rows[0][1] == "perception");
  CHECK(rows[0][2] == "perception");
  CHECK(rows[0][3] == "1");
  CHECK(rows[0][4] == "128");
  CHECK(rows[0][5] == "41");
  CHECK(std::stod(rows[0][6]) == doctest::Approx(6.3163219640585506));

  CHECK(rows[1][1] == "dropping");
  CHECK(rows[1][2] == "dropping");
  CHECK(rows[2][1] == "dropping");
  CHECK(rows[2][2] == "perception");

  CHECK(rows[3][1] == "perception");
  CHECK(rows[3][2] == "perception");
  CHECK(rows[3][4] == "117");
  CHECK(rows[3][5] == "16");

  // settles into a fixed point: rows 4..100 repeat row 4 except the counter
  for (std::size_t i = 4; i < rows.size(); ++i) {
    for (std::size_t f = 1; f < 8; ++f) CHECK(rows[i][f] == rows[3][f]);
  }

  // bob stays inside the distortion budget on every completed round
  for (const auto& row : rows) {
    const double d_bob = std::stod(row[7]);
    REQUIRE(std::isfinite(d_bob));
    CHECK(d_bob <= cfg.d_bob_tilde_th + 1e-9);
  }

  CHECK(iterate_csv(cfg) == csv);  // byte-identical on repeat
}

TEST_CASE("iteration export marks a truncated run with nan") {
  RunConfig cfg;
  cfg.snr_bob_db = 5.0;
  cfg.snr_eve_db = 0.0;
  cfg.cardinality = 2;
  const std::string csv = iterate_csv(cfg);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  const auto fields = split_fields(lines[1]);
  REQUIRE(fields.size() == 8);
  CHECK(fields[0] == "1");
  CHECK(fields[1] == "perception");
  CHECK(fields[2] == "perception");
  CHECK(fields[3] == "1");
  CHECK(fields[4] == "16");
  CHECK(fields[5] == "17");
  CHECK(fields[6] == "nan");
  CHECK(fields[7] == "nan");
}

TEST_CASE("iteration export honors the round budget") {
  RunConfig cfg;
  cfg.iterations = 1;
  const std::string csv = iterate_csv(cfg);
  const std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  const auto fields = split_fields(lines[1]);
  CHECK(fields[0] == "1");
  CHECK(fields[1] == "perception");
  CHECK(fields[2] == "perception");
}

TEST_CASE("optimize report cross-checks the closed form") {
  RunConfig cfg;
  OptimizeReport rep = optimize_report(cfg);
  CHECK(rep.feasible);
  CHECK(rep.match);
  CHECK(rep.text.find("agreement: yes") != std::string::npos);
  CHECK(rep.closed.alloc.n_m == 128);
  CHECK(rep.closed.alloc.n_k == 41);
  const std::vector<std::string> lines = split_lines(rep.csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n_m,n_k,d_eve");
  const auto fields = split_fields(lines[1]);
  REQUIRE(fields.size() == 3);
  CHECK(fields[0] == "128");
  CHECK(fields[1] == "41");
  CHECK(std::stod(fields[2]) == doctest::Approx(5.7253859554464439));

  cfg.alpha = 0.1;
  rep = optimize_report(cfg);
  CHECK(rep.match);
  CHECK(rep.closed.alloc.n_m == 117);
  CHECK(rep.closed.alloc.n_k == 33);

  cfg = RunConfig{};
  cfg.n_m_max = 116;  // below the reachable eve-side message floor
  rep = optimize_report(cfg);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.match);  // grid search agrees there is nothing to find
  CHECK(rep.text.find("infeasible: message blocklength budget n_m_max") !=
        std::string::npos);
}

TEST_CASE("monte carlo report agrees with the analytic model") {
  RunConfig cfg;
  cfg.num_samples = 200000;
  const MonteCarloReport rep = montecarlo_report(cfg);
  CHECK(rep.all_pass);
  const std::vector<std::string> lines = split_lines(rep.text);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "strategy,analytic,simulated,std_error,abs_diff,verdict");
  const char* names[] = {"perception", "dropping", "exclusion"};
  for (int i = 0; i < 3; ++i) {
    const auto fields = split_fields(lines[1 + i]);
    REQUIRE(fields.size() == 6);
    CHECK(fields[0] == names[i]);
    CHECK(fields[5] == "pass");
    const double analytic = std::stod(fields[1]);
    const double simulated = std::stod(fields[2]);
    const double se = std::stod(fields[3]);
    CHECK(std::abs(simulated - analytic) <= 4.0 * se + 1e-12);
  }

  // deterministic for a fixed seed
  const MonteCarloReport again = montecarlo_report(cfg);
  CHECK(again.text == rep.text);
}

TEST_CASE("monte carlo report is exact when every message is lost") {
  RunConfig cfg;
  cfg.eps_m = 1.0;
  cfg.num_samples = 50000;
  const MonteCarloReport rep = montecarlo_report(cfg);
  CHECK(rep.all_pass);
  const std::vector<std::string> lines = split_lines(rep.text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    CHECK(std::stod(fields[1]) == 1.0);  // analytic collapses to the loss term
    CHECK(std::stod(fields[2]) == 1.0);
    CHECK(std::stod(fields[3]) == 0.0);
    CHECK(std::stod(fields[4]) == 0.0);
  }
}

TEST_CASE("verify report passes on the reference setup") {
  const RunConfig cfg;
  const VerifyReport rep = verify_report(cfg);
  CHECK(rep.pass);
  CHECK(rep.text.find("verify: pass") != std::string::npos);
  CHECK(rep.text.find("agreement: yes") != std::string::npos);
  CHECK(rep.text.find("FAIL") == std::string::npos);
}
