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

// Per-pair rate algebra for a subcarrier pair (m, n) serving user k.
//
// Relaying mode: the source sends on m in the first phase, the relay decodes
// and forwards on n in the second phase, and the user combines both copies.
// Idle mode: the relay stays silent on n and the source sends independent
// symbols to the user on m (first phase) and n (second phase). Under the
// conventional scheme the second-phase direct link is not used.
//
// All rates are in bits/s/Hz and carry the 1/2 factor of the two-phase
// protocol.

#ifndef RELAYALLOC_RATE_MODEL_HPP_
#define RELAYALLOC_RATE_MODEL_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "relayalloc/assignment.hpp"
#include "relayalloc/channel.hpp"

namespace relayalloc {

struct PairGains {
  double g_sd1 = 0.0;  // source -> user, subcarrier m
  double g_sr = 0.0;   // source -> relay, subcarrier m
  double g_rd = 0.0;   // relay -> user, subcarrier n
  double g_sd2 = 0.0;  // source -> user, subcarrier n

  bool valid() const;
};

PairGains pair_gains(const ChannelRealization& ch, std::size_t k, std::size_t m, std::size_t n);

/// Rate-balancing split of a pooled relaying power between source and relay.
struct RelaySplit {
  double effective_gain = 0.0;
  double source_fraction = 0.0;
  double relay_fraction = 0.0;
  bool feasible = false;
};

/// Feasible iff g_sr > g_sd1; otherwise the balanced split would need a
/// negative relay power and relaying is unavailable.
RelaySplit relay_split(const PairGains& g);

/// Thrown when relaying is evaluated on a pair where it is unavailable.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// 0.5 * log2(1 + effective_gain * pooled_power).
double rate_relaying(const PairGains& g, double pooled_power);

/// The two arguments of the decode-and-forward min (source->relay and
/// combined user rate) at explicit source/relay powers, halved.
struct RelayBranchRates {
  double relay_link = 0.0;
  double user_link = 0.0;
};
RelayBranchRates relay_branch_rates(const PairGains& g, double source_power, double relay_power);

double rate_idle(const PairGains& g, double p_first, double p_second);

enum class Mode : unsigned char { kIdle = 0, kRelaying = 1 };

/// Whether idle pairs may use the second-phase direct link.
enum class IdleModel : unsigned char { kImproved, kConventional };

/// Discrete decisions: pairing t, pair-to-user map pi, and mode bits phi,
/// all indexed by first-phase subcarrier m.
struct AssignmentSolution {
  Pairing pairing;
  std::vector<std::size_t> user_of_pair;
  std::vector<Mode> mode_of_pair;

  std::size_t size() const { return pairing.size(); }
  friend bool operator==(const AssignmentSolution&, const AssignmentSolution&) = default;
};

/// Powers per first-phase subcarrier m (pair (m, perm[m])). Relaying pairs
/// use relay_power (pooled source+relay); idle pairs use the direct powers.
struct PowerAllocation {
  std::vector<double> relay_power;
  std::vector<double> first_phase_power;
  std::vector<double> second_phase_power;

  explicit PowerAllocation(std::size_t n = 0)
      : relay_power(n, 0.0), first_phase_power(n, 0.0), second_phase_power(n, 0.0) {}

  std::size_t size() const { return relay_power.size(); }
  double total() const;
};

/// Checks dimensions, that the pairing is a permutation, that users are in
/// range, that relaying is only selected on feasible pairs, and that powers
/// are nonnegative and only present on the selected mode. Throws
/// std::invalid_argument naming the first problem found.
void check_consistent(const ChannelRealization& ch, const AssignmentSolution& sol,
                      const PowerAllocation& pw);

/// Per-pair rates, indexed by first-phase subcarrier.
std::vector<double> pair_rates(const ChannelRealization& ch, const AssignmentSolution& sol,
                               const PowerAllocation& pw);

/// End-to-end sum rate of a complete allocation.
double sum_rate(const ChannelRealization& ch, const AssignmentSolution& sol,
                const PowerAllocation& pw);

}  // namespace relayalloc

#endif  // RELAYALLOC_RATE_MODEL_HPP_
