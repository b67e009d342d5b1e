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

#include "relayalloc/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "relayalloc/waterfill.hpp"

namespace relayalloc {

void SolverConfig::validate() const {
  if (!(total_power > 0.0) || !std::isfinite(total_power))
    throw std::invalid_argument("solver: total_power must be > 0");
  if (lambda_init && !(*lambda_init > 0.0)) throw std::invalid_argument("solver: lambda_init must be > 0");
  if (!(step_scale > 0.0)) throw std::invalid_argument("solver: step_scale must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("solver: epsilon must be > 0");
  if (max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
  if (!(lambda_floor > 0.0)) throw std::invalid_argument("solver: lambda_floor must be > 0");
}

RateContributions rate_contributions(const PairGains& g, double lambda, IdleModel model) {
  RateContributions c;
  const RelaySplit split = relay_split(g);
  if (split.feasible) {
    const double s = waterfill_power(split.effective_gain, lambda);
    c.relaying = channel_lagrangian(split.effective_gain, s, lambda);
  }
  const double s1 = waterfill_power(g.g_sd1, lambda);
  c.idle = channel_lagrangian(g.g_sd1, s1, lambda);
  if (model == IdleModel::kImproved) {
    const double s2 = waterfill_power(g.g_sd2, lambda);
    c.idle += channel_lagrangian(g.g_sd2, s2, lambda);
  }
  return c;
}

UserChoice select_user(const ChannelRealization& ch, std::size_t m, std::size_t n, double lambda,
                       IdleModel model) {
  UserChoice best;
  for (std::size_t k = 0; k < ch.num_users; ++k) {
    const RateContributions c = rate_contributions(pair_gains(ch, k, m, n), lambda, model);
    const bool relay = select_mode(c.relaying, c.idle);
    const double profit = relay ? c.relaying : c.idle;
    if (k == 0 || profit > best.profit) best = {k, profit, relay ? Mode::kRelaying : Mode::kIdle};
  }
  return best;
}

namespace {

ProfitTable empty_table(std::size_t N) {
  ProfitTable t;
  t.profit = ProfitMatrix(N);
  t.user.assign(N * N, 0);
  t.mode.assign(N * N, Mode::kIdle);
  return t;
}

// Below this many (m, n, k) evaluations a parallel region costs more than it saves.
constexpr std::size_t kParallelProfitWork = 2048;

}  // namespace

ProfitTable build_profit_table_serial(const ChannelRealization& ch, double lambda, IdleModel model) {
  const std::size_t N = ch.num_subcarriers;
  ProfitTable t = empty_table(N);
  for (std::size_t m = 0; m < N; ++m) {
    for (std::size_t n = 0; n < N; ++n) {
      const UserChoice c = select_user(ch, m, n, lambda, model);
      t.profit(m, n) = c.profit;
      t.user[m * N + n] = c.user;
      t.mode[m * N + n] = c.mode;
    }
  }
  return t;
}

ProfitTable build_profit_table(const ChannelRealization& ch, double lambda, IdleModel model) {
  const std::size_t N = ch.num_subcarriers;
  ProfitTable t = empty_table(N);
  const auto cells = static_cast<std::ptrdiff_t>(N * N);
  const bool parallel = N * N * ch.num_users >= kParallelProfitWork;
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t cell = 0; cell < cells; ++cell) {
    const auto m = static_cast<std::size_t>(cell) / N;
    const auto n = static_cast<std::size_t>(cell) % N;
    const UserChoice c = select_user(ch, m, n, lambda, model);
    t.profit(m, n) = c.profit;
    t.user[m * N + n] = c.user;
    t.mode[m * N + n] = c.mode;
  }
  return t;
}

DualInnerResult dual_inner_solve(const ChannelRealization& ch, double lambda, double total_power,
                                 IdleModel model, PairingPolicy pairing) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dual_inner_solve: lambda must be > 0");
  const std::size_t N = ch.num_subcarriers;
  const ProfitTable table = build_profit_table(ch, lambda, model);

  DualInnerResult r;
  r.solution.pairing = pairing == PairingPolicy::kOptimal ? hungarian_max(table.profit).pairing
                                                          : Pairing::identity(N);
  r.solution.user_of_pair.resize(N);
  r.solution.mode_of_pair.resize(N);
  r.powers = PowerAllocation(N);

  double profit_sum = 0.0;
  for (std::size_t m = 0; m < N; ++m) {
    const std::size_t n = r.solution.pairing.perm[m];
    const std::size_t k = table.user[m * N + n];
    const Mode mode = table.mode[m * N + n];
    r.solution.user_of_pair[m] = k;
    r.solution.mode_of_pair[m] = mode;
    profit_sum += table.profit(m, n);

    const PairGains g = pair_gains(ch, k, m, n);
    if (mode == Mode::kRelaying) {
      r.powers.relay_power[m] = waterfill_power(relay_split(g).effective_gain, lambda);
    } else {
      r.powers.first_phase_power[m] = waterfill_power(g.g_sd1, lambda);
      if (model == IdleModel::kImproved) r.powers.second_phase_power[m] = waterfill_power(g.g_sd2, lambda);
    }
  }
  r.consumed_power = r.powers.total();
  r.g_lambda = (profit_sum + lambda * total_power) / std::numbers::ln2;
  return r;
}

PowerAllocation restore_feasibility(const ChannelRealization& ch, const AssignmentSolution& sol,
                                    double total_power, IdleModel model) {
  const std::size_t N = ch.num_subcarriers;
  if (sol.size() != N || sol.user_of_pair.size() != N || sol.mode_of_pair.size() != N)
    throw std::invalid_argument("restore_feasibility: solution dimensions do not match the channel");

  // Channel slot layout: relaying pairs own one slot, idle pairs one or two.
  struct Slot {
    std::size_t pair;
    int which;  // 0 relay, 1 first phase, 2 second phase
  };
  std::vector<double> gains;
  std::vector<Slot> slots;
  gains.reserve(2 * N);
  slots.reserve(2 * N);
  for (std::size_t m = 0; m < N; ++m) {
    const PairGains g = pair_gains(ch, sol.user_of_pair.at(m), m, sol.pairing.perm.at(m));
    if (sol.mode_of_pair[m] == Mode::kRelaying) {
      const RelaySplit split = relay_split(g);
      if (!split.feasible)
        throw std::invalid_argument("restore_feasibility: relaying selected where it is unavailable");
      gains.push_back(split.effective_gain);
      slots.push_back({m, 0});
    } else {
      gains.push_back(g.g_sd1);
      slots.push_back({m, 1});
      if (model == IdleModel::kImproved) {
        gains.push_back(g.g_sd2);
        slots.push_back({m, 2});
      }
    }
  }

  const WaterfillResult wf = waterfill_exact(gains, total_power);
  PowerAllocation pw(N);
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Slot& s = slots[i];
    (s.which == 0   ? pw.relay_power
     : s.which == 1 ? pw.first_phase_power
                    : pw.second_phase_power)[s.pair] = wf.powers[i];
  }
  return pw;
}

double initial_lambda(const ChannelRealization& ch, double total_power, IdleModel model) {
  const std::size_t N = ch.num_subcarriers;
  std::vector<double> reference;
  reference.reserve(2 * N);
  for (std::size_t m = 0; m < N; ++m) {
    double best = 0.0;
    for (std::size_t k = 0; k < ch.num_users; ++k) {
      const PairGains g = pair_gains(ch, k, m, m);
      best = std::max({best, g.g_sd1, relay_split(g).effective_gain});
    }
    reference.push_back(best);
  }
  if (model == IdleModel::kImproved) {
    for (std::size_t n = 0; n < N; ++n) {
      double best = 0.0;
      for (std::size_t k = 0; k < ch.num_users; ++k) best = std::max(best, ch.gamma_sd2(k, n));
      reference.push_back(best);
    }
  }
  const double level = waterfill_exact(reference, total_power).water_level;
  if (!(level > 0.0)) return static_cast<double>(N) / (2.0 * total_power);
  return 1.0 / (2.0 * level);
}

AllocationReport solve(const ChannelRealization& ch, const SolverConfig& cfg,
                       const SolveOptions& options, std::vector<TraceRow>* trace) {
  cfg.validate();
  ch.validate();
  const double pt = cfg.total_power;
  double lambda = cfg.lambda_init.value_or(initial_lambda(ch, pt, options.model));

  AllocationReport report;
  report.primal_rate = -1.0;
  AssignmentSolution last_solution;
  double last_rate = 0.0;

  for (int i = 1; i <= cfg.max_iter; ++i) {
    const DualInnerResult inner = dual_inner_solve(ch, lambda, pt, options.model, options.pairing);
    report.dual_value = std::min(report.dual_value, inner.g_lambda);

    // Consecutive iterates often share a discrete solution; restore once.
    if (i == 1 || !(inner.solution == last_solution)) {
      const PowerAllocation pw = restore_feasibility(ch, inner.solution, pt, options.model);
      last_rate = sum_rate(ch, inner.solution, pw);
      last_solution = inner.solution;
      if (last_rate > report.primal_rate) {
        report.primal_rate = last_rate;
        report.solution = inner.solution;
        report.powers = pw;
      }
    }

    // Subgradient step on the budget residual, taken relative to lambda and
    // P_t so the schedule a_i = a0 / sqrt(i) is independent of gain scale.
    const double step = cfg.step_scale / std::sqrt(static_cast<double>(i));
    const double residual = std::clamp((pt - inner.consumed_power) / pt, -1.0, 1.0);
    const double next = std::max(cfg.lambda_floor, lambda * (1.0 - step * residual));
    const double change = std::abs(next - lambda) / std::abs(next);

    if (trace) trace->push_back({i, lambda, inner.consumed_power, inner.g_lambda, last_rate, change});
    report.iterations = i;
    report.lambda_final = lambda;
    if (change < cfg.epsilon) {
      report.converged = true;
      break;
    }
    lambda = next;
  }
  return report;
}

}  // namespace relayalloc
