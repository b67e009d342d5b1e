// Copyright 2026 The relayalloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relayalloc/experiment.hpp"

using namespace relayalloc;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec spec;
  spec.n_values = {2, 4};
  spec.snr_db_values = {4, 18};
  spec.schemes = {ExperimentScheme::parse("proposed"), ExperimentScheme::parse("conventional-df"),
                  ExperimentScheme::parse("ep-no-sp")};
  spec.trials = 24;
  spec.root_seed = 99;
  return spec;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("SNR and power conversions") {
  CHECK(snr_db_to_total_power(10, 4, 1.0) == doctest::Approx(40.0));
  CHECK(snr_db_to_total_power(0, 8, 0.5) == doctest::Approx(4.0));
  CHECK(total_power_to_snr_db(40, 4, 1.0) == doctest::Approx(10.0));
}

TEST_CASE("pairwise_sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{1, 2, 3}) == 6.0);
}

TEST_CASE("a single trial reproduces the scheme directly") {
  ExperimentSpec spec;
  spec.n_values = {4};
  spec.total_power_values = {10};
  spec.schemes = {ExperimentScheme::parse("proposed")};
  spec.trials = 1;
  spec.root_seed = 5;
  const auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 1);
  const auto ch = generate_realization(spec.geometry, spec.noise, 4, trial_seed(5, 0));
  SolverConfig cfg;
  cfg.total_power = 10;
  const auto rep = solve(ch, cfg);
  CHECK(rows[0].mean_rate == rep.primal_rate);
  CHECK(rows[0].stderr_rate == 0.0);
  CHECK(rows[0].mean_iterations == rep.iterations);
  CHECK(rows[0].snr_db == doctest::Approx(total_power_to_snr_db(10, 4, 1.0)));
}

TEST_CASE("experiments are deterministic and thread-count independent") {
  const auto spec = small_spec();
  const auto a = run_experiment(spec, 1);
  const auto b = run_experiment(spec, 3);
  const auto c = run_experiment_serial(spec);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(results_to_csv(spec, a) == results_to_csv(spec, c));

  auto other = spec;
  other.root_seed = 100;
  CHECK_FALSE(run_experiment(other) == a);
}

TEST_CASE("rows are sorted and proposed dominates conventional per cell") {
  const auto spec = small_spec();
  const auto rows = run_experiment(spec);
  CHECK(rows.size() == 3 * 2 * 2);
  CHECK(std::is_sorted(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.scheme, a.N, a.snr_db) < std::tie(b.scheme, b.N, b.snr_db);
  }));
  for (const auto& p : rows) {
    if (p.scheme != "proposed") continue;
    for (const auto& c : rows)
      if (c.scheme == "conventional-df" && c.N == p.N && c.snr_db == p.snr_db)
        CHECK(p.mean_rate >= c.mean_rate * (1 - 1e-9));
  }
}

TEST_CASE("CSV schema") {
  const auto spec = small_spec();
  const auto lines = lines_of(results_to_csv(spec, run_experiment(spec)));
  REQUIRE(lines.size() == 3 + 12);
  CHECK(lines[0].rfind("# ", 0) == 0);
  CHECK(lines[1].find("snr_dB = 10*log10(P_t / (N * sigma_r^2))") != std::string::npos);
  CHECK(lines[2] == "scheme,N,snr_dB,P_t,mean_rate,stderr_rate,mean_iterations,trials");
  for (std::size_t i = 3; i < lines.size(); ++i) CHECK(std::count(lines[i].begin(), lines[i].end(), ',') == 7);
}

TEST_CASE("experiment spec parsing") {
  const auto spec = parse_experiment_spec(R"({
    // comments are allowed
    "geometry": {"num_users": 3, "source_relay_distance": 8},
    "noise": {"noise_power": 0.5},
    "N_values": [4, 8],
    "snr_dB_values": [0, 10],
    "schemes": ["proposed", "oracle"],
    "trials": 10,
    "root_seed": 7,
    "solver": {"epsilon": 1e-3, "max_iter": 50},
    "oracle": {"max_N": 8, "max_K": 3, "max_configurations": 1e18}
  })");
  CHECK(spec.geometry.num_users() == 3);
  CHECK(spec.geometry.source_relay_distance == 8.0);
  CHECK(spec.noise.relay_noise_power == 0.5);
  CHECK(spec.n_values == std::vector<std::size_t>{4, 8});
  CHECK(spec.schemes.size() == 2);
  CHECK(spec.schemes[1].oracle);
  CHECK(spec.solver.epsilon == 1e-3);
  CHECK(spec.solver.max_iter == 50);
  CHECK(spec.trials == 10);

  CHECK_THROWS_WITH_AS(parse_experiment_spec(R"({"schemes": ["bogus"], "P_t_values": [1]})"),
                       doctest::Contains("unknown scheme 'bogus'"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_experiment_spec(R"({"schemes": ["proposed"], "P_t_values": [1], "extra": 1})"),
                       doctest::Contains("unknown key 'extra'"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"schemes": ["proposed"], "P_t_values": [1], "snr_dB_values": [1]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"schemes": ["proposed"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"schemes": [], "P_t_values": [1]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec("[1, 2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment_spec(R"({"trials": "many"})"), std::invalid_argument);
}

TEST_CASE("oracle cells beyond the limits are refused up front") {
  CHECK_THROWS_AS(parse_experiment_spec(R"({"schemes": ["oracle"], "N_values": [8], "P_t_values": [1]})"),
                  OracleTooLarge);
  ExperimentSpec spec;
  spec.n_values = {3};
  spec.total_power_values = {10};
  spec.schemes = {ExperimentScheme::parse("oracle"), ExperimentScheme::parse("proposed")};
  spec.geometry = SystemGeometry::uniform(2);
  spec.noise = NoiseModel::uniform(2);
  spec.trials = 4;
  const auto rows = run_experiment(spec);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].scheme == "oracle");
  CHECK(rows[0].mean_rate >= rows[1].mean_rate * (1 - 1e-9));
}

TEST_CASE("convergence trace") {
  SUBCASE("CSV columns") {
    const auto ch = generate_realization(SystemGeometry::uniform(4), NoiseModel::uniform(4), 4, 3);
    const auto rows = convergence_trace(ch, SolverConfig{});
    const auto lines = lines_of(trace_to_csv(rows));
    CHECK(lines[0] == "iteration,lambda,consumed_power,g_lambda,restored_rate,lambda_change");
    CHECK(lines.size() == rows.size() + 1);
    for (const auto& r : rows) CHECK(r.g_lambda >= r.restored_rate - 1e-12);
  }
  SUBCASE("epsilon = 1 yields one row") {
    const auto ch = generate_realization(SystemGeometry::uniform(4), NoiseModel::uniform(4), 4, 3);
    CHECK(convergence_trace(ch, SolverConfig{.epsilon = 1.0}).size() == 1);
  }
  SUBCASE("budget residual shrinks after burn-in") {
    // Median over seeds of |P_t - consumed| / P_t at fixed iteration counts, on
    // instances run without early stopping at a budget where iterations matter.
    const std::size_t seeds = 60;
    const std::vector<int> checkpoints{5, 50, 500};
    std::vector<std::vector<double>> residual(checkpoints.size());
    for (std::size_t s = 0; s < seeds; ++s) {
      const auto ch = generate_realization(SystemGeometry::uniform(4), NoiseModel::uniform(4), 4, s);
      const auto rows = convergence_trace(ch, SolverConfig{.total_power = 4000, .epsilon = 1e-300, .max_iter = 500});
      for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        const auto& r = rows[static_cast<std::size_t>(checkpoints[c]) - 1];
        residual[c].push_back(std::abs(4000 - r.consumed_power) / 4000);
      }
    }
    std::vector<double> med;
    for (auto& v : residual) {
      std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
      med.push_back(v[v.size() / 2]);
    }
    CHECK(med[1] <= med[0]);
    CHECK(med[2] <= med[1]);
  }
}

TEST_CASE("certify on a small run") {
  CertifyOptions o;
  o.trials = 20;
  const auto s = certify(o, 2);
  CHECK(s.instances.size() == 20);
  CHECK(s.all_budgets_hold);
  CHECK(s.all_dual_bounds_hold);
  CHECK(s.passed);

  o.K = 4;
  CHECK_THROWS_AS(certify(o), OracleTooLarge);
}
