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

#include "relayalloc/baselines.hpp"

#include <array>
#include <utility>

namespace relayalloc {

namespace {

constexpr std::array<std::pair<Scheme, std::string_view>, 5> kSchemeNames{{
    {Scheme::kProposed, "proposed"},
    {Scheme::kEpNoSp, "ep-no-sp"},
    {Scheme::kOpaNoSp, "opa-no-sp"},
    {Scheme::kEpWithSp, "ep-sp"},
    {Scheme::kConventionalDf, "conventional-df"},
}};

// Equal power per pair; pairing either fixed to identity or chosen by
// assignment over the per-pair best rates.
AllocationReport equal_power(const ChannelRealization& ch, double total_power, bool optimize_pairing) {
  const std::size_t N = ch.num_subcarriers;
  const double share = total_power / static_cast<double>(N);

  AllocationReport r;
  if (optimize_pairing) {
    ProfitMatrix rates(N);
    for (std::size_t m = 0; m < N; ++m)
      for (std::size_t n = 0; n < N; ++n) rates(m, n) = best_at_fixed_power(ch, m, n, share).rate;
    r.solution.pairing = hungarian_max(rates).pairing;
  } else {
    r.solution.pairing = Pairing::identity(N);
  }
  r.solution.user_of_pair.resize(N);
  r.solution.mode_of_pair.resize(N);
  r.powers = PowerAllocation(N);
  for (std::size_t m = 0; m < N; ++m) {
    const FixedPowerChoice c = best_at_fixed_power(ch, m, r.solution.pairing.perm[m], share);
    r.solution.user_of_pair[m] = c.user;
    r.solution.mode_of_pair[m] = c.mode;
    if (c.mode == Mode::kRelaying) {
      r.powers.relay_power[m] = share;
    } else {
      r.powers.first_phase_power[m] = 0.5 * share;
      r.powers.second_phase_power[m] = share - 0.5 * share;
    }
  }
  r.primal_rate = sum_rate(ch, r.solution, r.powers);
  r.dual_value = r.primal_rate;  // no dual certificate for a fixed rule
  r.converged = true;
  return r;
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  for (const auto& [scheme, name] : kSchemeNames)
    if (scheme == s) return name;
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (const auto& [scheme, n] : kSchemeNames)
    if (n == name) return scheme;
  return std::nullopt;
}

FixedPowerChoice best_at_fixed_power(const ChannelRealization& ch, std::size_t m, std::size_t n,
                                     double pair_power) {
  FixedPowerChoice best;
  best.rate = -1.0;
  for (std::size_t k = 0; k < ch.num_users; ++k) {
    const PairGains g = pair_gains(ch, k, m, n);
    const double idle = rate_idle(g, 0.5 * pair_power, pair_power - 0.5 * pair_power);
    double rate = idle;
    Mode mode = Mode::kIdle;
    if (relay_split(g).feasible) {
      const double relay = rate_relaying(g, pair_power);
      if (relay > idle) {
        rate = relay;
        mode = Mode::kRelaying;
      }
    }
    if (rate > best.rate) best = {k, mode, rate};
  }
  return best;
}

AllocationReport run_baseline(BaselineKind kind, const ChannelRealization& ch, const SolverConfig& cfg) {
  cfg.validate();
  ch.validate();
  switch (kind) {
    case BaselineKind::kEpNoSp:
      return equal_power(ch, cfg.total_power, false);
    case BaselineKind::kEpWithSp:
      return equal_power(ch, cfg.total_power, true);
    case BaselineKind::kOpaNoSp:
      return solve(ch, cfg, {IdleModel::kImproved, PairingPolicy::kIdentity});
    case BaselineKind::kConventionalDf:
      return solve(ch, cfg, {IdleModel::kConventional, PairingPolicy::kOptimal});
  }
  throw std::invalid_argument("run_baseline: unknown kind");
}

AllocationReport run_scheme(Scheme scheme, const ChannelRealization& ch, const SolverConfig& cfg) {
  switch (scheme) {
    case Scheme::kProposed:
      return solve(ch, cfg);
    case Scheme::kEpNoSp:
      return run_baseline(BaselineKind::kEpNoSp, ch, cfg);
    case Scheme::kOpaNoSp:
      return run_baseline(BaselineKind::kOpaNoSp, ch, cfg);
    case Scheme::kEpWithSp:
      return run_baseline(BaselineKind::kEpWithSp, ch, cfg);
    case Scheme::kConventionalDf:
      return run_baseline(BaselineKind::kConventionalDf, ch, cfg);
  }
  throw std::invalid_argument("run_scheme: unknown scheme");
}

}  // namespace relayalloc
