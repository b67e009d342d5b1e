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

// Square linear assignment (maximization) for subcarrier pairing.

#ifndef RELAYALLOC_ASSIGNMENT_HPP_
#define RELAYALLOC_ASSIGNMENT_HPP_

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace relayalloc {

/// N x N profits; entry (m, n) is the value of pairing first-phase
/// subcarrier m with second-phase subcarrier n.
class ProfitMatrix {
 public:
  ProfitMatrix() = default;
  explicit ProfitMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  ProfitMatrix(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t size() const { return n_; }
  double operator()(std::size_t m, std::size_t n) const { return data_[m * n_ + n]; }
  double& operator()(std::size_t m, std::size_t n) { return data_[m * n_ + n]; }
  const std::vector<double>& data() const { return data_; }

  /// Throws std::invalid_argument if empty, ragged or non-finite.
  void validate() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
  bool ragged_ = false;
};

/// perm[m] = n means first-phase subcarrier m is paired with n.
struct Pairing {
  std::vector<std::size_t> perm;

  static Pairing identity(std::size_t n);
  bool is_permutation() const;
  std::size_t size() const { return perm.size(); }

  friend bool operator==(const Pairing&, const Pairing&) = default;
};

struct PairingResult {
  Pairing pairing;
  double total = 0.0;
};

/// Sum of p(m, perm[m]).
double pairing_value(const ProfitMatrix& p, const Pairing& pairing);

/// O(N^3) Hungarian method (shortest augmenting paths with potentials).
PairingResult hungarian_max(const ProfitMatrix& p);

inline constexpr std::size_t kBruteForcePairingLimit = 9;

/// Exhaustive permutation search; ties go to the lexicographically smallest
/// permutation. Refuses N > kBruteForcePairingLimit.
PairingResult brute_force_pairing(const ProfitMatrix& p);

}  // namespace relayalloc

#endif  // RELAYALLOC_ASSIGNMENT_HPP_
