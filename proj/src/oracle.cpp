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

#include "relayalloc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace relayalloc {

std::uint64_t oracle_enumeration_size(std::size_t N, std::size_t K) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  auto times = [&](std::uint64_t f) {
    if (f != 0 && count > kMax / f) count = kMax;
    else count *= f;
  };
  for (std::size_t i = 2; i <= N; ++i) times(i);
  for (std::size_t i = 0; i < N; ++i) times(K);
  for (std::size_t i = 0; i < N; ++i) times(2);
  return count;
}

BisectionWaterfill waterfill_bisection(std::span<const double> gains, double budget) {
  BisectionWaterfill out;
  out.powers.assign(gains.size(), 0.0);
  if (gains.empty()) return out;

  double max_floor = 0.0;
  bool any = false;
  for (double g : gains) {
    if (g > 0.0) {
      max_floor = std::max(max_floor, 1.0 / g);
      any = true;
    }
  }
  if (!any) {
    std::fill(out.powers.begin(), out.powers.end(), budget / static_cast<double>(gains.size()));
    return out;
  }

  auto spent = [&](double level) {
    double s = 0.0;
    for (double g : gains)
      if (g > 0.0) s += std::max(0.0, level - 1.0 / g);
    return s;
  };
  double lo = 0.0;
  double hi = budget + max_floor;  // spends at least the budget
  for (int it = 0; it < 4096; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (spent(mid) < budget ? lo : hi) = mid;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (gains[i] > 0.0) out.powers[i] = std::max(0.0, hi - 1.0 / gains[i]);
    total += out.powers[i];
  }
  if (total > 0.0) {
    for (double& p : out.powers) p *= budget / total;
  }
  for (std::size_t i = 0; i < gains.size(); ++i) out.rate += 0.5 * std::log1p(gains[i] * out.powers[i]) / std::numbers::ln2;
  return out;
}

namespace {

struct Candidate {
  double rate = -1.0;
  AssignmentSolution solution;
  PowerAllocation powers;
};

void check_limits(const ChannelRealization& ch, const OracleLimits& limits) {
  const std::uint64_t count = oracle_enumeration_size(ch.num_subcarriers, ch.num_users);
  if (ch.num_subcarriers > limits.max_N || ch.num_users > limits.max_K ||
      count > limits.max_configurations) {
    throw OracleTooLarge("oracle: N=" + std::to_string(ch.num_subcarriers) +
                         ", K=" + std::to_string(ch.num_users) + " needs " + std::to_string(count) +
                         " configurations (limits: N<=" + std::to_string(limits.max_N) +
                         ", K<=" + std::to_string(limits.max_K) + ", " +
                         std::to_string(limits.max_configurations) + " configurations)");
  }
}

std::vector<Pairing> all_pairings(std::size_t N) {
  std::vector<Pairing> out;
  Pairing p = Pairing::identity(N);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.perm.begin(), p.perm.end()));
  return out;
}

// Best user map and mode vector for one fixed pairing.
Candidate best_for_pairing(const ChannelRealization& ch, const Pairing& pairing, double total_power,
                           IdleModel model) {
  const std::size_t N = ch.num_subcarriers;
  const std::size_t K = ch.num_users;
  Candidate best;

  std::vector<std::size_t> users(N, 0);
  std::vector<double> gains;
  gains.reserve(2 * N);
  std::vector<double> effective(N);
  for (;;) {
    unsigned relay_feasible = 0;
    for (std::size_t m = 0; m < N; ++m) {
      const RelaySplit s = relay_split(pair_gains(ch, users[m], m, pairing.perm[m]));
      effective[m] = s.effective_gain;
      if (s.feasible) relay_feasible |= 1u << (N - 1 - m);
    }
    for (unsigned mask = 0; mask < (1u << N); ++mask) {
      if ((mask & ~relay_feasible) != 0) continue;
      gains.clear();
      for (std::size_t m = 0; m < N; ++m) {
        if (mask & (1u << (N - 1 - m))) {
          gains.push_back(effective[m]);
        } else {
          gains.push_back(ch.gamma_sd1(users[m], m));
          if (model == IdleModel::kImproved) gains.push_back(ch.gamma_sd2(users[m], pairing.perm[m]));
        }
      }
      const BisectionWaterfill wf = waterfill_bisection(gains, total_power);
      if (wf.rate > best.rate) {
        best.rate = wf.rate;
        best.solution.pairing = pairing;
        best.solution.user_of_pair = users;
        best.solution.mode_of_pair.assign(N, Mode::kIdle);
        best.powers = PowerAllocation(N);
        std::size_t slot = 0;
        for (std::size_t m = 0; m < N; ++m) {
          if (mask & (1u << (N - 1 - m))) {
            best.solution.mode_of_pair[m] = Mode::kRelaying;
            best.powers.relay_power[m] = wf.powers[slot++];
          } else {
            best.powers.first_phase_power[m] = wf.powers[slot++];
            if (model == IdleModel::kImproved) best.powers.second_phase_power[m] = wf.powers[slot++];
          }
        }
      }
    }
    // Odometer over user maps, subcarrier 0 most significant.
    std::size_t pos = N;
    while (pos > 0) {
      --pos;
      if (++users[pos] < K) break;
      users[pos] = 0;
      if (pos == 0) return best;
    }
    if (N == 0) return best;
  }
}

AllocationReport to_report(Candidate&& c) {
  AllocationReport r;
  r.solution = std::move(c.solution);
  r.powers = std::move(c.powers);
  r.primal_rate = c.rate;
  r.dual_value = c.rate;
  r.iterations = 0;
  r.converged = true;
  return r;
}

}  // namespace

AllocationReport oracle_solve(const ChannelRealization& ch, double total_power,
                              const OracleLimits& limits, IdleModel model) {
  ch.validate();
  check_limits(ch, limits);
  const std::vector<Pairing> pairings = all_pairings(ch.num_subcarriers);
  std::vector<Candidate> per_pairing(pairings.size());
  const auto count = static_cast<std::ptrdiff_t>(pairings.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    per_pairing[static_cast<std::size_t>(i)] = best_for_pairing(ch, pairings[static_cast<std::size_t>(i)], total_power, model);
  }
  // Ordered reduction keeps the enumeration-order tie-break.
  std::size_t best = 0;
  for (std::size_t i = 1; i < per_pairing.size(); ++i)
    if (per_pairing[i].rate > per_pairing[best].rate) best = i;
  return to_report(std::move(per_pairing[best]));
}

AllocationReport oracle_solve_serial(const ChannelRealization& ch, double total_power,
                                     const OracleLimits& limits, IdleModel model) {
  ch.validate();
  check_limits(ch, limits);
  Candidate best;
  for (const Pairing& p : all_pairings(ch.num_subcarriers)) {
    Candidate c = best_for_pairing(ch, p, total_power, model);
    if (c.rate > best.rate) best = std::move(c);
  }
  return to_report(std::move(best));
}

}  // namespace relayalloc
