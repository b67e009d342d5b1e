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

#include "relayalloc/rate_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace relayalloc {

namespace {

// 0.5 log2(1 + x), accurate for the small x typical of path-loss gains.
double half_log2_1p(double x) { return 0.5 * std::log1p(x) / std::numbers::ln2; }

}  // namespace

bool PairGains::valid() const {
  for (double x : {g_sd1, g_sr, g_rd, g_sd2})
    if (!std::isfinite(x) || x < 0.0) return false;
  return true;
}

PairGains pair_gains(const ChannelRealization& ch, std::size_t k, std::size_t m, std::size_t n) {
  return PairGains{ch.gamma_sd1(k, m), ch.gamma_sr[m], ch.gamma_rd(k, n), ch.gamma_sd2(k, n)};
}

RelaySplit relay_split(const PairGains& g) {
  RelaySplit s;
  if (g.g_sr == g.g_sd1 && g.g_rd > 0.0) {
    // Boundary: all pooled power stays at the source and relaying degenerates
    // to the direct link; still reported unavailable.
    s.source_fraction = 1.0;
    s.effective_gain = g.g_sr;
    return s;
  }
  if (!(g.g_sr > g.g_sd1)) return s;
  const double excess = g.g_sr - g.g_sd1;
  const double denom = g.g_rd + excess;  // > 0 since excess > 0
  s.feasible = true;
  s.source_fraction = g.g_rd / denom;
  s.relay_fraction = excess / denom;
  s.effective_gain = g.g_sr * g.g_rd / denom;
  return s;
}

double rate_relaying(const PairGains& g, double pooled_power) {
  const RelaySplit s = relay_split(g);
  if (!s.feasible) throw ContractViolation("rate_relaying: relaying unavailable (g_sr <= g_sd1)");
  if (pooled_power < 0.0) throw std::invalid_argument("rate_relaying: negative power");
  return half_log2_1p(s.effective_gain * pooled_power);
}

RelayBranchRates relay_branch_rates(const PairGains& g, double source_power, double relay_power) {
  return {half_log2_1p(source_power * g.g_sr), half_log2_1p(source_power * g.g_sd1 + relay_power * g.g_rd)};
}

double rate_idle(const PairGains& g, double p_first, double p_second) {
  if (p_first < 0.0 || p_second < 0.0) throw std::invalid_argument("rate_idle: negative power");
  return half_log2_1p(g.g_sd1 * p_first) + half_log2_1p(g.g_sd2 * p_second);
}

double PowerAllocation::total() const {
  double t = 0.0;
  for (std::size_t m = 0; m < size(); ++m)
    t += relay_power[m] + first_phase_power[m] + second_phase_power[m];
  return t;
}

void check_consistent(const ChannelRealization& ch, const AssignmentSolution& sol,
                      const PowerAllocation& pw) {
  const std::size_t N = ch.num_subcarriers;
  auto fail = [](const std::string& what) { throw std::invalid_argument("allocation: " + what); };
  if (sol.pairing.size() != N || sol.user_of_pair.size() != N || sol.mode_of_pair.size() != N)
    fail("solution dimensions do not match N = " + std::to_string(N));
  if (pw.size() != N || pw.first_phase_power.size() != N || pw.second_phase_power.size() != N)
    fail("power dimensions do not match N = " + std::to_string(N));
  if (!sol.pairing.is_permutation()) fail("pairing is not a permutation");
  for (std::size_t m = 0; m < N; ++m) {
    const std::size_t k = sol.user_of_pair[m];
    if (k >= ch.num_users) fail("pair " + std::to_string(m) + " assigned to unknown user");
    const double p[3] = {pw.relay_power[m], pw.first_phase_power[m], pw.second_phase_power[m]};
    for (double x : p)
      if (!(x >= 0.0) || !std::isfinite(x)) fail("pair " + std::to_string(m) + " has an invalid power");
    if (sol.mode_of_pair[m] == Mode::kRelaying) {
      if (!relay_split(pair_gains(ch, k, m, sol.pairing.perm[m])).feasible)
        fail("pair " + std::to_string(m) + " relays where relaying is unavailable");
      if (p[1] != 0.0 || p[2] != 0.0) fail("pair " + std::to_string(m) + " has idle power in relaying mode");
    } else if (p[0] != 0.0) {
      fail("pair " + std::to_string(m) + " has relaying power in idle mode");
    }
  }
}

std::vector<double> pair_rates(const ChannelRealization& ch, const AssignmentSolution& sol,
                               const PowerAllocation& pw) {
  check_consistent(ch, sol, pw);
  std::vector<double> rates(ch.num_subcarriers);
  for (std::size_t m = 0; m < rates.size(); ++m) {
    const PairGains g = pair_gains(ch, sol.user_of_pair[m], m, sol.pairing.perm[m]);
    rates[m] = sol.mode_of_pair[m] == Mode::kRelaying
                   ? rate_relaying(g, pw.relay_power[m])
                   : rate_idle(g, pw.first_phase_power[m], pw.second_phase_power[m]);
  }
  return rates;
}

double sum_rate(const ChannelRealization& ch, const AssignmentSolution& sol,
                const PowerAllocation& pw) {
  double total = 0.0;
  for (double r : pair_rates(ch, sol, pw)) total += r;
  return total;
}

}  // namespace relayalloc
