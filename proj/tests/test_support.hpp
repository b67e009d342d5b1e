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

// Generators and independent reference computations shared by the tests.
// Nothing here calls into the code paths it is used to check.

#ifndef RELAYALLOC_TESTS_TEST_SUPPORT_HPP_
#define RELAYALLOC_TESTS_TEST_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "relayalloc/channel.hpp"
#include "relayalloc/rate_model.hpp"

namespace relayalloc::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// Gains spread over four decades so both regimes of every formula show up.
  PairGains gains() {
    return {log_uniform(1e-3, 10), log_uniform(1e-3, 10), log_uniform(1e-3, 10), log_uniform(1e-3, 10)};
  }
  PairGains feasible_gains() {
    PairGains g = gains();
    if (g.g_sr <= g.g_sd1) std::swap(g.g_sr, g.g_sd1);
    if (g.g_sr == g.g_sd1) g.g_sr *= 2.0;
    return g;
  }

  /// A realization with unit-scale gains, independent of generate_realization.
  ChannelRealization realization(std::size_t N, std::size_t K) {
    ChannelRealization ch;
    ch.num_subcarriers = N;
    ch.num_users = K;
    ch.gamma_sr.resize(N);
    ch.gamma_sd1 = GainMatrix(K, N);
    ch.gamma_rd = GainMatrix(K, N);
    ch.gamma_sd2 = GainMatrix(K, N);
    for (auto& g : ch.gamma_sr) g = log_uniform(0.05, 5);
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t j = 0; j < N; ++j) {
        ch.gamma_sd1(k, j) = log_uniform(0.02, 2);
        ch.gamma_rd(k, j) = log_uniform(0.05, 10);
        ch.gamma_sd2(k, j) = log_uniform(0.02, 2);
      }
    }
    return ch;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Relaying rate evaluated straight from the decode-and-forward min with the
/// balanced powers written out by hand.
inline double naive_relay_rate(const PairGains& g, double pooled) {
  const double denom = g.g_rd + g.g_sr - g.g_sd1;
  const double ps = pooled * g.g_rd / denom;
  const double pr = pooled - ps;
  return 0.5 * std::min(std::log2(1 + ps * g.g_sr), std::log2(1 + ps * g.g_sd1 + pr * g.g_rd));
}

}  // namespace relayalloc::testing

#endif  // RELAYALLOC_TESTS_TEST_SUPPORT_HPP_
