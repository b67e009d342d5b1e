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

#include "relayalloc/channel.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace relayalloc {

SystemGeometry SystemGeometry::uniform(std::size_t num_users, double source_relay_distance,
                                       double relay_user_radius, double path_loss_exponent) {
  SystemGeometry g;
  g.source_relay_distance = source_relay_distance;
  g.relay_user_radius = relay_user_radius;
  g.path_loss_exponent = path_loss_exponent;
  g.user_angles.resize(num_users);
  const double arc = std::numbers::pi / static_cast<double>(num_users);
  for (std::size_t k = 0; k < num_users; ++k) {
    g.user_angles[k] = -std::numbers::pi / 2 + (static_cast<double>(k) + 0.5) * arc;
  }
  return g;
}

double SystemGeometry::source_user_distance(std::size_t k) const {
  const double a = source_relay_distance;
  const double b = relay_user_radius;
  return std::sqrt(a * a + b * b + 2.0 * a * b * std::cos(user_angles.at(k)));
}

void SystemGeometry::validate() const {
  if (user_angles.empty()) throw std::invalid_argument("geometry: need at least one user");
  if (!(source_relay_distance > 0.0) || !std::isfinite(source_relay_distance))
    throw std::invalid_argument("geometry: source_relay_distance must be > 0");
  if (!(relay_user_radius > 0.0) || !std::isfinite(relay_user_radius))
    throw std::invalid_argument("geometry: relay_user_radius must be > 0");
  if (!(path_loss_exponent > 0.0) || !std::isfinite(path_loss_exponent))
    throw std::invalid_argument("geometry: path_loss_exponent must be > 0");
  constexpr double kHalfPi = std::numbers::pi / 2;
  for (double a : user_angles) {
    if (!(a >= -kHalfPi - 1e-12 && a <= kHalfPi + 1e-12))
      throw std::invalid_argument("geometry: user angle outside [-pi/2, pi/2]");
  }
}

NoiseModel NoiseModel::uniform(std::size_t num_users, double power) {
  return NoiseModel{power, std::vector<double>(num_users, power)};
}

void NoiseModel::validate(std::size_t num_users) const {
  if (!(relay_noise_power > 0.0)) throw std::invalid_argument("noise: relay noise power must be > 0");
  if (user_noise_powers.size() != num_users)
    throw std::invalid_argument("noise: need one noise power per user");
  for (double s : user_noise_powers)
    if (!(s > 0.0)) throw std::invalid_argument("noise: user noise power must be > 0");
}

namespace {

void check_gains(const std::vector<double>& v, const char* field) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ChannelParseError(field, "invariant violation: gain not finite");
    if (x < 0.0) throw ChannelParseError(field, "invariant violation: gain < 0");
  }
}

void check_matrix(const GainMatrix& m, std::size_t k, std::size_t n, const char* field) {
  if (m.users() != k || m.subcarriers() != n || m.data().size() != k * n) {
    throw ChannelParseError(field, "shape error: expected " + std::to_string(k) + "x" +
                                       std::to_string(n));
  }
  check_gains(m.data(), field);
}

// Unit-mean exponential from 53 random bits; identical on every platform.
double unit_exponential(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return -std::log1p(-u);
}

}  // namespace

void ChannelRealization::validate() const {
  if (num_subcarriers == 0) throw ChannelParseError("N", "must be >= 1");
  if (num_users == 0) throw ChannelParseError("K", "must be >= 1");
  if (gamma_sr.size() != num_subcarriers)
    throw ChannelParseError("gamma_SR", "shape error: expected length " + std::to_string(num_subcarriers));
  check_gains(gamma_sr, "gamma_SR");
  check_matrix(gamma_sd1, num_users, num_subcarriers, "gamma_SD1");
  check_matrix(gamma_sd2, num_users, num_subcarriers, "gamma_SD2");
  check_matrix(gamma_rd, num_users, num_subcarriers, "gamma_RD");
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ChannelRealization generate_realization(const SystemGeometry& geometry, const NoiseModel& noise,
                                        std::size_t num_subcarriers, std::uint64_t seed) {
  if (num_subcarriers == 0) throw std::invalid_argument("generate_realization: N must be >= 1");
  geometry.validate();
  const std::size_t K = geometry.num_users();
  noise.validate(K);

  const double alpha = geometry.path_loss_exponent;
  const double mean_sr = std::pow(geometry.source_relay_distance, -alpha) / noise.relay_noise_power;
  const double rd_loss = std::pow(geometry.relay_user_radius, -alpha);

  ChannelRealization r;
  r.num_subcarriers = num_subcarriers;
  r.num_users = K;
  r.seed = seed;
  r.gamma_sr.resize(num_subcarriers);
  r.gamma_sd1 = GainMatrix(K, num_subcarriers);
  r.gamma_rd = GainMatrix(K, num_subcarriers);
  r.gamma_sd2 = GainMatrix(K, num_subcarriers);

  // Draw order is part of the reproducibility contract: SR, SD1, RD, SD2.
  std::mt19937_64 rng(seed);
  for (auto& g : r.gamma_sr) g = mean_sr * unit_exponential(rng);
  std::vector<double> mean_sd(K);
  for (std::size_t k = 0; k < K; ++k) {
    mean_sd[k] = std::pow(geometry.source_user_distance(k), -alpha) / noise.user_noise_powers[k];
  }
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t m = 0; m < num_subcarriers; ++m) r.gamma_sd1(k, m) = mean_sd[k] * unit_exponential(rng);
  for (std::size_t k = 0; k < K; ++k) {
    const double mean_rd = rd_loss / noise.user_noise_powers[k];
    for (std::size_t n = 0; n < num_subcarriers; ++n) r.gamma_rd(k, n) = mean_rd * unit_exponential(rng);
  }
  for (std::size_t k = 0; k < K; ++k)
    for (std::size_t n = 0; n < num_subcarriers; ++n) r.gamma_sd2(k, n) = mean_sd[k] * unit_exponential(rng);
  return r;
}

namespace {

void append_number(std::string& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void append_vector(std::string& out, const double* first, std::size_t count) {
  out += '[';
  for (std::size_t i = 0; i < count; ++i) {
    if (i) out += ',';
    append_number(out, first[i]);
  }
  out += ']';
}

void append_matrix(std::string& out, const GainMatrix& m) {
  out += '[';
  for (std::size_t k = 0; k < m.users(); ++k) {
    if (k) out += ',';
    append_vector(out, m.data().data() + k * m.subcarriers(), m.subcarriers());
  }
  out += ']';
}

using nlohmann::json;

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ChannelParseError(field, "missing field");
  return *it;
}

std::vector<double> read_vector(const json& j, const char* field) {
  if (!j.is_array()) throw ChannelParseError(field, "expected an array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw ChannelParseError(field, "expected a number");
    v.push_back(x.get<double>());
  }
  return v;
}

GainMatrix read_matrix(const json& doc, const char* field, std::size_t K, std::size_t N) {
  const json& j = require(doc, field);
  if (!j.is_array() || j.size() != K)
    throw ChannelParseError(field, "shape error: expected " + std::to_string(K) + " rows");
  GainMatrix m(K, N);
  for (std::size_t k = 0; k < K; ++k) {
    const auto row = read_vector(j[k], field);
    if (row.size() != N) {
      throw ChannelParseError(field, "shape error: row " + std::to_string(k) + " has " +
                                         std::to_string(row.size()) + " entries, expected " +
                                         std::to_string(N));
    }
    for (std::size_t n = 0; n < N; ++n) m(k, n) = row[n];
  }
  return m;
}

std::size_t read_count(const json& doc, const char* field) {
  const json& j = require(doc, field);
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
    throw ChannelParseError(field, "expected a positive integer");
  return j.get<std::size_t>();
}

}  // namespace

std::string realization_to_json(const ChannelRealization& r) {
  std::string out = "{\"N\":" + std::to_string(r.num_subcarriers) +
                    ",\"K\":" + std::to_string(r.num_users) + ",\"seed\":" + std::to_string(r.seed) +
                    ",\"gamma_SR\":";
  append_vector(out, r.gamma_sr.data(), r.gamma_sr.size());
  out += ",\"gamma_SD1\":";
  append_matrix(out, r.gamma_sd1);
  out += ",\"gamma_SD2\":";
  append_matrix(out, r.gamma_sd2);
  out += ",\"gamma_RD\":";
  append_matrix(out, r.gamma_rd);
  out += "}\n";
  return out;
}

ChannelRealization realization_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ChannelParseError("<document>", e.what());
  }
  if (!doc.is_object()) throw ChannelParseError("<document>", "expected a JSON object");

  ChannelRealization r;
  r.num_subcarriers = read_count(doc, "N");
  r.num_users = read_count(doc, "K");
  const json& seed = require(doc, "seed");
  if (!seed.is_number_unsigned()) throw ChannelParseError("seed", "expected an unsigned 64-bit integer");
  r.seed = seed.get<std::uint64_t>();
  r.gamma_sr = read_vector(require(doc, "gamma_SR"), "gamma_SR");
  r.gamma_sd1 = read_matrix(doc, "gamma_SD1", r.num_users, r.num_subcarriers);
  r.gamma_sd2 = read_matrix(doc, "gamma_SD2", r.num_users, r.num_subcarriers);
  r.gamma_rd = read_matrix(doc, "gamma_RD", r.num_users, r.num_subcarriers);
  r.validate();
  return r;
}

void save_realization(const ChannelRealization& r, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << realization_to_json(r);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ChannelRealization load_realization(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return realization_from_json(buf.str());
}

}  // namespace relayalloc
