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

// Monte Carlo experiment runner behind the relaysim CLI.
//
// Trial t of every cell uses the realization seeded by
// trial_seed(root_seed, t), so schemes and SNR points are compared on
// identical channels. SNR is per-subcarrier: P_t = N * sigma^2 * 10^(SNR/10)
// with sigma^2 the relay noise power.

#ifndef RELAYALLOC_EXPERIMENT_HPP_
#define RELAYALLOC_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "relayalloc/baselines.hpp"
#include "relayalloc/channel.hpp"
#include "relayalloc/dual_solver.hpp"
#include "relayalloc/oracle.hpp"

namespace relayalloc {

inline constexpr const char* kResultCsvHeader =
    "scheme,N,snr_dB,P_t,mean_rate,stderr_rate,mean_iterations,trials";

/// Experiment scheme: one of the run_scheme schemes or the exhaustive oracle.
struct ExperimentScheme {
  bool oracle = false;
  Scheme scheme = Scheme::kProposed;

  std::string name() const;
  static ExperimentScheme parse(const std::string& name);  // throws std::invalid_argument
};

struct ExperimentSpec {
  SystemGeometry geometry = SystemGeometry::uniform(4);
  NoiseModel noise = NoiseModel::uniform(4);
  std::vector<std::size_t> n_values{4};
  /// Exactly one of snr_db_values / total_power_values is non-empty.
  std::vector<double> snr_db_values;
  std::vector<double> total_power_values;
  std::vector<ExperimentScheme> schemes;
  std::size_t trials = 2000;
  std::uint64_t root_seed = 1;
  SolverConfig solver;  // total_power is overwritten per cell
  OracleLimits oracle_limits;

  void validate() const;
};

/// Reads the JSON experiment file format (see README).
ExperimentSpec parse_experiment_spec(const std::string& json_text);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

struct ResultRow {
  std::string scheme;
  std::size_t N = 0;
  double snr_db = 0.0;
  double total_power = 0.0;
  double mean_rate = 0.0;
  double stderr_rate = 0.0;
  double mean_iterations = 0.0;
  std::size_t trials = 0;

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

double snr_db_to_total_power(double snr_db, std::size_t N, double noise_power);
double total_power_to_snr_db(double total_power, std::size_t N, double noise_power);

/// Pairwise (cascade) summation; the result depends only on the order of
/// `values`, not on how they were produced.
double pairwise_sum(std::span<const double> values);

/// Trials run in parallel (threads <= 0 keeps the OpenMP default).
/// Rows are sorted by (scheme, N, snr_dB).
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads = 0);
/// Single-threaded reference; output is identical to run_experiment.
std::vector<ResultRow> run_experiment_serial(const ExperimentSpec& spec);

/// CSV with '#' comment lines describing the setup, then kResultCsvHeader.
std::string results_to_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows);

/// Per-iteration telemetry of the proposed solver.
std::vector<TraceRow> convergence_trace(const ChannelRealization& ch, const SolverConfig& cfg);
std::string trace_to_csv(const std::vector<TraceRow>& rows);

struct CertifyOptions {
  std::size_t N = 3;
  std::size_t K = 2;
  std::size_t trials = 200;
  double total_power = 10.0;
  std::uint64_t root_seed = 1;
  SolverConfig solver;
  OracleLimits oracle_limits;
  double rate_ratio = 0.98;           // primal >= ratio * oracle ...
  double required_fraction = 0.95;    // ... in at least this fraction of instances
  double dual_tolerance = 1e-4;       // dual >= oracle * (1 - tol) on every instance
  double budget_tolerance = 1e-9;     // |consumed - P_t| / P_t
};

struct CertifyInstance {
  std::uint64_t seed = 0;
  double oracle_rate = 0.0;
  double primal_rate = 0.0;
  double dual_value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool ratio_ok = false;
  bool dual_ok = false;
  bool budget_ok = false;
};

struct CertifySummary {
  std::vector<CertifyInstance> instances;
  double fraction_within_ratio = 0.0;
  bool all_dual_bounds_hold = false;
  bool all_budgets_hold = false;
  bool passed = false;
};

/// Oracle-gap certification of the proposed solver on seeded instances drawn
/// from the default geometry with K users.
CertifySummary certify(const CertifyOptions& options, int threads = 0);

/// Relative budget error |consumed - P_t| / P_t.
double budget_error(const PowerAllocation& pw, double total_power);

}  // namespace relayalloc

#endif  // RELAYALLOC_EXPERIMENT_HPP_
