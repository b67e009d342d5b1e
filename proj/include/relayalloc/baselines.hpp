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

// Comparison schemes. Each one is a restriction of the joint problem, so the
// proposed solver dominates all of them on optimal solutions:
//
//   ep-no-sp         identity pairing, P_t/N per pair, best (user, mode) at
//                    that fixed power, idle pairs split their share evenly
//                    across the two phases
//   opa-no-sp        dual solver with the pairing fixed to identity
//   ep-sp            equal per-pair power, pairing by assignment over the
//                    per-pair best rates
//   conventional-df  dual solver where idle pairs do not use the
//                    second-phase direct link

#ifndef RELAYALLOC_BASELINES_HPP_
#define RELAYALLOC_BASELINES_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "relayalloc/channel.hpp"
#include "relayalloc/dual_solver.hpp"

namespace relayalloc {

enum class BaselineKind { kEpNoSp, kOpaNoSp, kEpWithSp, kConventionalDf };

/// Every scheme the experiment runner can select, including the proposed one.
enum class Scheme { kProposed, kEpNoSp, kOpaNoSp, kEpWithSp, kConventionalDf };

std::string_view scheme_name(Scheme s);
/// Parses "proposed", "ep-no-sp", "opa-no-sp", "ep-sp", "conventional-df".
std::optional<Scheme> parse_scheme(std::string_view name);

/// Best (user, mode) rate of pair (m, n) at a fixed pooled power; idle pairs
/// split the power evenly across the two phases.
struct FixedPowerChoice {
  std::size_t user = 0;
  Mode mode = Mode::kIdle;
  double rate = 0.0;
};
FixedPowerChoice best_at_fixed_power(const ChannelRealization& ch, std::size_t m, std::size_t n,
                                     double pair_power);

AllocationReport run_baseline(BaselineKind kind, const ChannelRealization& ch, const SolverConfig& cfg);

AllocationReport run_scheme(Scheme scheme, const ChannelRealization& ch, const SolverConfig& cfg);

}  // namespace relayalloc

#endif  // RELAYALLOC_BASELINES_HPP_
