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

// Water-filling for channels whose rate is 0.5 * log(1 + gain * power).
//
// The Lagrangian is measured in nats: for multiplier lambda, the per-channel
// term 0.5 * ln(1 + g * s) - lambda * s is maximized at
// s = [1 / (2 lambda) - 1 / g]^+, i.e. the water level is 1 / (2 lambda).

#ifndef RELAYALLOC_WATERFILL_HPP_
#define RELAYALLOC_WATERFILL_HPP_

#include <span>
#include <vector>

namespace relayalloc {

/// max{0, 1/(2 lambda) - 1/gain}; 0 when gain == 0. Throws
/// std::invalid_argument if lambda <= 0.
double waterfill_power(double gain, double lambda);

/// 0.5 * ln(1 + gain * power) - lambda * power.
double channel_lagrangian(double gain, double power, double lambda);

struct WaterfillResult {
  std::vector<double> powers;
  double water_level = 0.0;  // 1 / (2 lambda)
};

/// Exact water-filling: powers [w - 1/g_i]^+ summing to `budget`, found by
/// sorting the inverse gains. Zero-gain channels get no power unless every
/// gain is zero, in which case the budget is spread evenly (the rate is zero
/// either way).
WaterfillResult waterfill_exact(std::span<const double> gains, double budget);

}  // namespace relayalloc

#endif  // RELAYALLOC_WATERFILL_HPP_
