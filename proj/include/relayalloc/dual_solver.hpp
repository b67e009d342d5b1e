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

// Lagrangian dual decomposition for joint pairing, user assignment, mode
// selection and power allocation under one total power budget.
//
// For a fixed multiplier lambda the problem separates: each candidate
// (user, pair, mode) water-fills its own channels, each pair (m, n) keeps
// its best user and mode, and the pairing is a square assignment over those
// per-pair profits. The multiplier is driven by a diminishing-step
// subgradient on the budget residual. Each visited discrete solution is made
// exactly budget-feasible by re-water-filling, and the best one is reported.

#ifndef RELAYALLOC_DUAL_SOLVER_HPP_
#define RELAYALLOC_DUAL_SOLVER_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "relayalloc/assignment.hpp"
#include "relayalloc/channel.hpp"
#include "relayalloc/rate_model.hpp"

namespace relayalloc {

struct SolverConfig {
  double total_power = 10.0;
  /// Starting multiplier; when unset it is derived from the channel (see
  /// initial_lambda).
  std::optional<double> lambda_init;
  /// a0 in the step schedule a_i = a0 / sqrt(i).
  double step_scale = 0.01;
  /// Stop when |lambda_{i+1} - lambda_i| / |lambda_{i+1}| < epsilon.
  double epsilon = 1e-4;
  int max_iter = 2000;
  double lambda_floor = 1e-12;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// Lagrangian contributions (nats) of one candidate pair at multiplier
/// lambda, each at its water-filled power. `relaying` is -infinity when
/// relaying is unavailable for these gains.
struct RateContributions {
  double relaying = -std::numeric_limits<double>::infinity();
  double idle = 0.0;
};

RateContributions rate_contributions(const PairGains& g, double lambda,
                                     IdleModel model = IdleModel::kImproved);

/// True (relaying) iff relaying is strictly better; ties go to idle.
inline bool select_mode(double relaying, double idle) { return relaying > idle; }

struct UserChoice {
  std::size_t user = 0;
  double profit = 0.0;  // best contribution over modes, nats
  Mode mode = Mode::kIdle;
};

/// Best user for pair (m, n); ties go to the smallest user index.
UserChoice select_user(const ChannelRealization& ch, std::size_t m, std::size_t n, double lambda,
                       IdleModel model = IdleModel::kImproved);

/// Per-pair best user/mode and the resulting profit matrix.
struct ProfitTable {
  ProfitMatrix profit;
  std::vector<std::size_t> user;  // row-major N x N
  std::vector<Mode> mode;         // row-major N x N
};

/// OpenMP-parallel over (m, n).
ProfitTable build_profit_table(const ChannelRealization& ch, double lambda, IdleModel model);
/// Single-threaded reference; must agree bit-for-bit with build_profit_table.
ProfitTable build_profit_table_serial(const ChannelRealization& ch, double lambda, IdleModel model);

enum class PairingPolicy : unsigned char { kOptimal, kIdentity };

struct DualInnerResult {
  AssignmentSolution solution;
  PowerAllocation powers;   // water-filled at lambda, not budget-feasible
  double consumed_power = 0.0;
  double g_lambda = 0.0;    // dual function value, bits/s/Hz
};

/// Evaluates the dual function at lambda and returns its maximizer.
DualInnerResult dual_inner_solve(const ChannelRealization& ch, double lambda, double total_power,
                                 IdleModel model = IdleModel::kImproved,
                                 PairingPolicy pairing = PairingPolicy::kOptimal);

/// Powers for a frozen discrete solution: exact water-filling of
/// total_power over the selected channels (one effective channel per
/// relaying pair, one or two direct channels per idle pair).
PowerAllocation restore_feasibility(const ChannelRealization& ch, const AssignmentSolution& sol,
                                    double total_power, IdleModel model = IdleModel::kImproved);

struct AllocationReport {
  AssignmentSolution solution;
  PowerAllocation powers;
  double primal_rate = 0.0;                                       // bits/s/Hz
  double dual_value = std::numeric_limits<double>::infinity();    // bits/s/Hz
  int iterations = 0;
  double lambda_final = 0.0;
  bool converged = false;
};

struct TraceRow {
  int iteration = 0;
  double lambda = 0.0;
  double consumed_power = 0.0;
  double g_lambda = 0.0;
  double restored_rate = 0.0;
  double lambda_change = 0.0;  // |lambda_{i+1} - lambda_i| / |lambda_{i+1}|
};

struct SolveOptions {
  IdleModel model = IdleModel::kImproved;
  PairingPolicy pairing = PairingPolicy::kOptimal;
};

/// Multiplier whose water level spends total_power on a reference channel
/// set (each subcarrier's strongest channel); scales with the gains.
double initial_lambda(const ChannelRealization& ch, double total_power, IdleModel model);

/// Runs the subgradient iteration to the relative-lambda stopping rule.
/// When `trace` is non-null one row per iteration is appended.
AllocationReport solve(const ChannelRealization& ch, const SolverConfig& cfg,
                       const SolveOptions& options = {}, std::vector<TraceRow>* trace = nullptr);

}  // namespace relayalloc

#endif  // RELAYALLOC_DUAL_SOLVER_HPP_
