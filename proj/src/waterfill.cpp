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

#include "relayalloc/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace relayalloc {

double waterfill_power(double gain, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("waterfill_power: lambda must be > 0");
  if (!(gain > 0.0)) return 0.0;
  return std::max(0.0, 1.0 / (2.0 * lambda) - 1.0 / gain);
}

double channel_lagrangian(double gain, double power, double lambda) {
  return 0.5 * std::log1p(gain * power) - lambda * power;
}

WaterfillResult waterfill_exact(std::span<const double> gains, double budget) {
  if (budget < 0.0) throw std::invalid_argument("waterfill_exact: negative budget");
  WaterfillResult out;
  out.powers.assign(gains.size(), 0.0);
  if (gains.empty()) return out;

  std::vector<std::size_t> order;
  order.reserve(gains.size());
  for (std::size_t i = 0; i < gains.size(); ++i)
    if (gains[i] > 0.0) order.push_back(i);
  if (order.empty()) {
    const double share = budget / static_cast<double>(gains.size());
    std::fill(out.powers.begin(), out.powers.end(), share);
    return out;
  }
  // Strongest channel first; channel j is active iff its floor 1/g_j lies
  // below the water level.
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gains[a] > gains[b] || (gains[a] == gains[b] && a < b);
  });

  double inverse_sum = 0.0;
  std::size_t active = 0;
  double level = 0.0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    const double floor_j = 1.0 / gains[order[j]];
    // Candidate level with channels 0..j active.
    const double candidate = (budget + inverse_sum + floor_j) / static_cast<double>(j + 1);
    if (j > 0 && candidate <= floor_j) break;
    inverse_sum += floor_j;
    active = j + 1;
    level = candidate;
  }
  double total = 0.0;
  for (std::size_t j = 0; j < active; ++j) {
    const std::size_t i = order[j];
    out.powers[i] = std::max(0.0, level - 1.0 / gains[i]);
    total += out.powers[i];
  }
  // level - 1/g cancels badly when the budget is tiny next to 1/g; rescale
  // the active powers so the budget holds to rounding.
  if (total > 0.0 && total != budget) {
    const double scale = budget / total;
    for (std::size_t j = 0; j < active; ++j) out.powers[order[j]] *= scale;
  }
  out.water_level = level;
  return out;
}

}  // namespace relayalloc
