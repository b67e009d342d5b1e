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

#include <cmath>
#include <numeric>

#include "relayalloc/baselines.hpp"
#include "relayalloc/oracle.hpp"
#include "relayalloc/waterfill.hpp"
#include "test_support.hpp"

using namespace relayalloc;
using relayalloc::testing::Gen;

TEST_CASE("enumeration size") {
  CHECK(oracle_enumeration_size(1, 1) == 2);
  CHECK(oracle_enumeration_size(3, 2) == 6 * 8 * 8);
  CHECK(oracle_enumeration_size(4, 3) == 24 * 81 * 16);
  CHECK(oracle_enumeration_size(40, 40) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("bisection water-filling agrees with the sorted algorithm") {
  Gen gen(61);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen.index(8);
    std::vector<double> g(n);
    for (auto& x : g) x = gen.log_uniform(1e-3, 1e2);
    const double budget = gen.log_uniform(1e-2, 1e3);
    const auto a = waterfill_bisection(g, budget);
    const auto b = waterfill_exact(g, budget);
    CHECK(std::accumulate(a.powers.begin(), a.powers.end(), 0.0) == doctest::Approx(budget).epsilon(1e-12));
    double rate = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(a.powers[i] == doctest::Approx(b.powers[i]).epsilon(1e-8).scale(budget * 1e-9));
      rate += 0.5 * std::log2(1 + g[i] * b.powers[i]);
    }
    CHECK(a.rate == doctest::Approx(rate).epsilon(1e-9));
  }
}

TEST_CASE("oracle on a single pair by hand") {
  ChannelRealization ch;
  ch.num_subcarriers = 1;
  ch.num_users = 1;
  ch.gamma_sr = {2.0};
  ch.gamma_sd1 = GainMatrix(1, 1, 1.0);
  ch.gamma_rd = GainMatrix(1, 1, 6.0);
  ch.gamma_sd2 = GainMatrix(1, 1, 1.0);
  // Relaying at effective gain 12/7 beats idle (rate 1) at P = 2.
  const auto r = oracle_solve(ch, 2.0);
  CHECK(r.solution.mode_of_pair[0] == Mode::kRelaying);
  CHECK(r.primal_rate == doctest::Approx(0.5 * std::log2(1 + 24.0 / 7.0)));
  CHECK(r.powers.relay_power[0] == doctest::Approx(2.0));

  ch.gamma_sd2(0, 0) = 4.0;  // idle now wins: water-fill 2 over gains {1, 4}
  const auto idle = oracle_solve(ch, 2.0);
  CHECK(idle.solution.mode_of_pair[0] == Mode::kIdle);
  // level: (2 + 1 + 0.25) / 2 = 1.625 -> powers 0.625, 1.375
  CHECK(idle.powers.first_phase_power[0] == doctest::Approx(0.625));
  CHECK(idle.powers.second_phase_power[0] == doctest::Approx(1.375));
  CHECK(idle.primal_rate == doctest::Approx(0.5 * std::log2(1.625) + 0.5 * std::log2(1 + 4 * 1.375)));
}

TEST_CASE("oracle refuses oversized instances") {
  Gen gen(62);
  const auto big = gen.realization(5, 2);
  CHECK_THROWS_AS(oracle_solve(big, 1.0), OracleTooLarge);
  try {
    oracle_solve(big, 1.0);
  } catch (const OracleTooLarge& e) {
    CHECK(std::string(e.what()).find(std::to_string(oracle_enumeration_size(5, 2))) != std::string::npos);
  }
  CHECK_THROWS_AS(oracle_solve(gen.realization(2, 4), 1.0), OracleTooLarge);
  CHECK_THROWS_AS(oracle_solve(gen.realization(3, 2), 1.0, OracleLimits{.max_configurations = 10}), OracleTooLarge);
  CHECK_NOTHROW(oracle_solve(gen.realization(5, 1), 1.0, OracleLimits{.max_N = 5}));
}

TEST_CASE("oracle dominates every scheme and matches its own report") {
  Gen gen(63);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t N = 1 + gen.index(3), K = 1 + gen.index(3);
    const auto ch = gen.realization(N, K);
    const SolverConfig cfg{.total_power = gen.log_uniform(0.5, 50)};
    const auto o = oracle_solve(ch, cfg.total_power);
    CHECK(o.powers.total() == doctest::Approx(cfg.total_power).epsilon(1e-9));
    CHECK(o.primal_rate == doctest::Approx(sum_rate(ch, o.solution, o.powers)).epsilon(1e-9));
    CHECK(o.converged);
    for (Scheme s : {Scheme::kProposed, Scheme::kEpNoSp, Scheme::kOpaNoSp, Scheme::kEpWithSp,
                     Scheme::kConventionalDf})
      CHECK(run_scheme(s, ch, cfg).primal_rate <= o.primal_rate * (1 + 1e-9));
    const auto p = solve(ch, cfg);
    CHECK(p.dual_value >= o.primal_rate * (1 - 1e-9));
    CHECK(oracle_solve(ch, cfg.total_power, {}, IdleModel::kConventional).primal_rate <= o.primal_rate * (1 + 1e-12));
  }
}

TEST_CASE("oracle value is invariant to relabelling users") {
  Gen gen(64);
  for (int trial = 0; trial < 40; ++trial) {
    const auto ch = gen.realization(3, 3);
    auto swapped = ch;
    for (std::size_t j = 0; j < 3; ++j) {
      std::swap(swapped.gamma_sd1(0, j), swapped.gamma_sd1(2, j));
      std::swap(swapped.gamma_rd(0, j), swapped.gamma_rd(2, j));
      std::swap(swapped.gamma_sd2(0, j), swapped.gamma_sd2(2, j));
    }
    CHECK(oracle_solve(swapped, 5.0).primal_rate == doctest::Approx(oracle_solve(ch, 5.0).primal_rate).epsilon(1e-12));
  }
}

TEST_CASE("parallel oracle equals the serial reference") {
  Gen gen(65);
  for (int trial = 0; trial < 10; ++trial) {
    const auto ch = gen.realization(4, 2);
    const auto a = oracle_solve(ch, 7.0);
    const auto b = oracle_solve_serial(ch, 7.0);
    CHECK(a.primal_rate == b.primal_rate);
    CHECK(a.solution == b.solution);
    CHECK(a.powers.relay_power == b.powers.relay_power);
    CHECK(a.powers.first_phase_power == b.powers.first_phase_power);
  }
}
