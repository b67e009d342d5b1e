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

#include "relayalloc/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace relayalloc {

ProfitMatrix::ProfitMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) ragged_ = true;
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

void ProfitMatrix::validate() const {
  if (n_ == 0) throw std::invalid_argument("profit matrix is empty");
  if (ragged_ || data_.size() != n_ * n_) throw std::invalid_argument("profit matrix is not square");
  for (double x : data_)
    if (!std::isfinite(x)) throw std::invalid_argument("profit matrix has a non-finite entry");
}

Pairing Pairing::identity(std::size_t n) {
  Pairing p;
  p.perm.resize(n);
  std::iota(p.perm.begin(), p.perm.end(), std::size_t{0});
  return p;
}

bool Pairing::is_permutation() const {
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t n : perm) {
    if (n >= perm.size() || seen[n]) return false;
    seen[n] = 1;
  }
  return true;
}

double pairing_value(const ProfitMatrix& p, const Pairing& pairing) {
  double total = 0.0;
  for (std::size_t m = 0; m < pairing.size(); ++m) total += p(m, pairing.perm[m]);
  return total;
}

PairingResult hungarian_max(const ProfitMatrix& p) {
  p.validate();
  const std::size_t n = p.size();

  // Minimize cost = max_entry - profit, which is nonnegative.
  double max_entry = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) max_entry = std::max(max_entry, p(i, j));
  auto cost = [&](std::size_t i, std::size_t j) { return max_entry - p(i, j); };

  // 1-based potentials; row_of[j] is the row matched to column j, 0 = none.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  PairingResult result;
  result.pairing.perm.resize(n);
  for (std::size_t j = 1; j <= n; ++j) result.pairing.perm[row_of[j] - 1] = j - 1;
  result.total = pairing_value(p, result.pairing);
  return result;
}

PairingResult brute_force_pairing(const ProfitMatrix& p) {
  if (p.size() > kBruteForcePairingLimit) {
    throw std::invalid_argument("brute_force_pairing: N = " + std::to_string(p.size()) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kBruteForcePairingLimit));
  }
  p.validate();
  Pairing current = Pairing::identity(p.size());
  PairingResult best{current, pairing_value(p, current)};
  // next_permutation walks in lexicographic order, so strict '>' keeps the
  // smallest permutation among ties.
  while (std::next_permutation(current.perm.begin(), current.perm.end())) {
    const double v = pairing_value(p, current);
    if (v > best.total) best = {current, v};
  }
  return best;
}

}  // namespace relayalloc
