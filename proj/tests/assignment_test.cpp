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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "relayalloc/assignment.hpp"
#include "test_support.hpp"

using namespace relayalloc;
using relayalloc::testing::Gen;

namespace {

ProfitMatrix random_matrix(Gen& gen, std::size_t n, double lo = -5, double hi = 5) {
  ProfitMatrix p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = gen.uniform(lo, hi);
  return p;
}

}  // namespace

TEST_CASE("hungarian_max small cases") {
  const auto r = hungarian_max({{1, 2}, {3, 1}});
  CHECK(r.pairing.perm == std::vector<std::size_t>{1, 0});
  CHECK(r.total == 5.0);

  ProfitMatrix dominant(5, 0.0);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) dominant(i, j) = static_cast<double>(i + j) * 0.1;
    dominant(i, i) = 10.0 + static_cast<double>(i);
  }
  CHECK(hungarian_max(dominant).pairing == Pairing::identity(5));

  CHECK(hungarian_max({{-3.5}}).total == -3.5);
}

TEST_CASE("hungarian_max rejects bad matrices") {
  CHECK_THROWS_AS(hungarian_max(ProfitMatrix{}), std::invalid_argument);
  CHECK_THROWS_AS(hungarian_max({{1, 2}, {3}}), std::invalid_argument);
  CHECK_THROWS_AS(hungarian_max({{1, std::numeric_limits<double>::quiet_NaN()}, {3, 4}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(hungarian_max({{1, std::numeric_limits<double>::infinity()}, {3, 4}}),
                  std::invalid_argument);
}

TEST_CASE("hungarian_max equals permutation brute force on 7x7") {
  Gen gen(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const ProfitMatrix p = random_matrix(gen, 7);
    const auto h = hungarian_max(p);
    const auto b = brute_force_pairing(p);
    REQUIRE(h.pairing.is_permutation());
    CHECK(h.total == b.total);
  }
}

TEST_CASE("hungarian_max handles ties and integer profits") {
  Gen gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + gen.index(5);
    ProfitMatrix p(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(i, j) = static_cast<double>(gen.index(3));
    CHECK(hungarian_max(p).total == brute_force_pairing(p).total);
  }
}

TEST_CASE("brute_force_pairing contracts") {
  const auto one = brute_force_pairing({{4.25}});
  CHECK(one.pairing.perm == std::vector<std::size_t>{0});
  CHECK(one.total == 4.25);

  // Both permutations are optimal; the lexicographically smaller one wins.
  const auto tie = brute_force_pairing({{1, 1}, {1, 1}});
  CHECK(tie.pairing.perm == std::vector<std::size_t>{0, 1});
  const auto tie3 = brute_force_pairing({{0, 2, 2}, {2, 0, 2}, {2, 2, 0}});
  CHECK(tie3.pairing.perm == std::vector<std::size_t>{1, 2, 0});

  CHECK_THROWS_WITH_AS(brute_force_pairing(ProfitMatrix(10)), doctest::Contains("limit of 9"),
                       std::invalid_argument);
}

TEST_CASE("brute force agrees with hungarian on 5x5") {
  Gen gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    const ProfitMatrix p = random_matrix(gen, 5);
    CHECK(brute_force_pairing(p).total == hungarian_max(p).total);
  }
}

TEST_CASE("row and column shifts move the optimum by the shift") {
  Gen gen(24);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + gen.index(6);
    const ProfitMatrix p = random_matrix(gen, n);
    const auto base = hungarian_max(p);

    ProfitMatrix shifted = p;
    const double c = gen.uniform(-3, 3);
    const bool row = gen.uniform(0, 1) < 0.5;
    const std::size_t line = gen.index(n);
    for (std::size_t j = 0; j < n; ++j) (row ? shifted(line, j) : shifted(j, line)) += c;

    const auto moved = hungarian_max(shifted);
    CHECK(moved.total == doctest::Approx(base.total + c).epsilon(1e-12));
    // The old optimum is still optimal after the shift.
    CHECK(pairing_value(shifted, base.pairing) == doctest::Approx(moved.total).epsilon(1e-12));
  }
}

TEST_CASE("Pairing helpers") {
  CHECK(Pairing::identity(3).perm == std::vector<std::size_t>{0, 1, 2});
  CHECK(Pairing{{2, 0, 1}}.is_permutation());
  CHECK_FALSE(Pairing{{2, 2, 1}}.is_permutation());
  CHECK_FALSE(Pairing{{0, 3, 1}}.is_permutation());
}
