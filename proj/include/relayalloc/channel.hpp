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

#ifndef RELAYALLOC_CHANNEL_HPP_
#define RELAYALLOC_CHANNEL_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace relayalloc {

/// Row-major K x N gain table: entry (k, j) is user k on subcarrier j.
class GainMatrix {
 public:
  GainMatrix() = default;
  GainMatrix(std::size_t users, std::size_t subcarriers, double fill = 0.0)
      : users_(users), subcarriers_(subcarriers), data_(users * subcarriers, fill) {}

  std::size_t users() const { return users_; }
  std::size_t subcarriers() const { return subcarriers_; }

  double operator()(std::size_t k, std::size_t j) const { return data_[k * subcarriers_ + j]; }
  double& operator()(std::size_t k, std::size_t j) { return data_[k * subcarriers_ + j]; }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const GainMatrix&, const GainMatrix&) = default;

 private:
  std::size_t users_ = 0;
  std::size_t subcarriers_ = 0;
  std::vector<double> data_;
};

/// Source and relay sit on a horizontal line; users sit on the right
/// semicircle of radius relay_user_radius centred at the relay.
struct SystemGeometry {
  double source_relay_distance = 10.0;
  double relay_user_radius = 5.0;
  std::vector<double> user_angles;  // radians in [-pi/2, pi/2]
  double path_loss_exponent = 3.0;

  std::size_t num_users() const { return user_angles.size(); }

  /// K users equally spaced over the semicircle (midpoints of K equal arcs).
  static SystemGeometry uniform(std::size_t num_users, double source_relay_distance = 10.0,
                                double relay_user_radius = 5.0, double path_loss_exponent = 3.0);

  /// Law of cosines; the relay-to-source direction is opposite angle 0.
  double source_user_distance(std::size_t k) const;

  /// Throws std::invalid_argument on an invalid geometry.
  void validate() const;
};

struct NoiseModel {
  double relay_noise_power = 1.0;
  std::vector<double> user_noise_powers;

  static NoiseModel uniform(std::size_t num_users, double power = 1.0);
  void validate(std::size_t num_users) const;
};

/// All normalized gains |h|^2 / sigma^2 for one two-phase period.
struct ChannelRealization {
  std::size_t num_subcarriers = 0;
  std::size_t num_users = 0;
  std::uint64_t seed = 0;
  std::vector<double> gamma_sr;  // source -> relay, first phase
  GainMatrix gamma_sd1;          // source -> user, first phase
  GainMatrix gamma_rd;           // relay -> user, second phase
  GainMatrix gamma_sd2;          // source -> user, second phase

  /// Checks shapes and that every gain is finite and >= 0.
  void validate() const;

  friend bool operator==(const ChannelRealization&, const ChannelRealization&) = default;
};

/// splitmix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);

/// Seed for Monte Carlo trial `trial` under `root_seed`.
inline std::uint64_t trial_seed(std::uint64_t root_seed, std::uint64_t trial) {
  return mix_seed(root_seed + trial);
}

/// Rayleigh block fading with mean gain d^-alpha / sigma^2 on every link.
ChannelRealization generate_realization(const SystemGeometry& geometry, const NoiseModel& noise,
                                        std::size_t num_subcarriers, std::uint64_t seed);

/// Failure while reading a channel dump; field() names the offending key.
class ChannelParseError : public std::runtime_error {
 public:
  ChannelParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

std::string realization_to_json(const ChannelRealization& r);
ChannelRealization realization_from_json(const std::string& text);

void save_realization(const ChannelRealization& r, const std::filesystem::path& path);
ChannelRealization load_realization(const std::filesystem::path& path);

}  // namespace relayalloc

#endif  // RELAYALLOC_CHANNEL_HPP_
