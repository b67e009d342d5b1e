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

// Exhaustive reference solver for desk-scale instances: every pairing, every
// pair-to-user map and every feasible mode vector, each with its exact
// optimal power split found by bisection on the water level.

#ifndef RELAYALLOC_ORACLE_HPP_
#define RELAYALLOC_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "relayalloc/channel.hpp"
#include "relayalloc/dual_solver.hpp"

namespace relayalloc {

struct OracleLimits {
  std::size_t max_N = 4;
  std::size_t max_K = 3;
  std::uint64_t max_configurations = 10'000'000;
};

/// N! * K^N * 2^N, saturating at UINT64_MAX.
std::uint64_t oracle_enumeration_size(std::size_t N, std::size_t K);

class OracleTooLarge : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Optimal powers for channels 0.5*log2(1 + g_i p_i) under sum p_i = budget,
/// by bisection on the water level. Independent of waterfill_exact.
struct BisectionWaterfill {
  std::vector<double> powers;
  double rate = 0.0;  // bits/s/Hz
};
BisectionWaterfill waterfill_bisection(std::span<const double> gains, double budget);

/// Parallel over pairings. Ties resolve to the first configuration in
/// enumeration order (lexicographic pairing, then user map with subcarrier
/// 0 most significant, then mode mask).
AllocationReport oracle_solve(const ChannelRealization& ch, double total_power,
                              const OracleLimits& limits = {},
                              IdleModel model = IdleModel::kImproved);

/// Single-threaded reference for oracle_solve.
AllocationReport oracle_solve_serial(const ChannelRealization& ch, double total_power,
                                     const OracleLimits& limits = {},
                                     IdleModel model = IdleModel::kImproved);

}  // namespace relayalloc

#endif  // RELAYALLOC_ORACLE_HPP_
