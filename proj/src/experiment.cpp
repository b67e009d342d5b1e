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

#include "relayalloc/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace relayalloc {

std::string ExperimentScheme::name() const {
  return oracle ? std::string("oracle") : std::string(scheme_name(scheme));
}

ExperimentScheme ExperimentScheme::parse(const std::string& name) {
  if (name == "oracle") return {true, Scheme::kProposed};
  if (auto s = parse_scheme(name)) return {false, *s};
  throw std::invalid_argument("unknown scheme '" + name +
                              "' (expected proposed, ep-no-sp, opa-no-sp, ep-sp, conventional-df or oracle)");
}

void ExperimentSpec::validate() const {
  geometry.validate();
  noise.validate(geometry.num_users());
  if (trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (schemes.empty()) throw std::invalid_argument("experiment: at least one scheme is required");
  if (n_values.empty()) throw std::invalid_argument("experiment: N_values is empty");
  for (std::size_t n : n_values)
    if (n < 1) throw std::invalid_argument("experiment: every N must be >= 1");
  if (snr_db_values.empty() == total_power_values.empty())
    throw std::invalid_argument("experiment: give exactly one of snr_dB_values or P_t_values");
  for (double p : total_power_values)
    if (!(p > 0.0)) throw std::invalid_argument("experiment: every P_t must be > 0");
  for (double s : snr_db_values)
    if (!std::isfinite(s)) throw std::invalid_argument("experiment: SNR values must be finite");
  SolverConfig probe = solver;
  probe.total_power = 1.0;
  probe.validate();
  for (const auto& s : schemes) {
    if (!s.oracle) continue;
    for (std::size_t n : n_values) {
      const std::uint64_t count = oracle_enumeration_size(n, geometry.num_users());
      if (n > oracle_limits.max_N || geometry.num_users() > oracle_limits.max_K ||
          count > oracle_limits.max_configurations) {
        throw OracleTooLarge("experiment: oracle requested for N=" + std::to_string(n) + ", K=" +
                             std::to_string(geometry.num_users()) + " (" + std::to_string(count) +
                             " configurations) beyond its limits");
      }
    }
  }
}

namespace {

using nlohmann::json;

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(where) + "." + key + ": " + e.what());
  }
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) == known.end())
      throw std::invalid_argument(std::string(where) + ": unknown key '" + key + "'");
  }
}

}  // namespace

ExperimentSpec parse_experiment_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("experiment spec: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("experiment spec: expected a JSON object");
  reject_unknown(doc,
                 {"geometry", "noise", "N_values", "snr_dB_values", "P_t_values", "schemes", "trials",
                  "root_seed", "solver", "oracle"},
                 "experiment spec");

  ExperimentSpec spec;
  std::size_t K = 4;
  double d_sr = 10.0, d_rd = 5.0, alpha = 3.0;
  std::vector<double> angles;
  if (doc.contains("geometry")) {
    const json& g = doc["geometry"];
    reject_unknown(g, {"source_relay_distance", "relay_user_radius", "num_users", "path_loss_exponent",
                       "user_angles"},
                   "geometry");
    if (g.contains("num_users")) K = get_field<std::size_t>(g, "num_users", "geometry");
    if (g.contains("source_relay_distance")) d_sr = get_field<double>(g, "source_relay_distance", "geometry");
    if (g.contains("relay_user_radius")) d_rd = get_field<double>(g, "relay_user_radius", "geometry");
    if (g.contains("path_loss_exponent")) alpha = get_field<double>(g, "path_loss_exponent", "geometry");
    if (g.contains("user_angles")) angles = get_field<std::vector<double>>(g, "user_angles", "geometry");
  }
  if (K == 0) throw std::invalid_argument("geometry.num_users must be >= 1");
  spec.geometry = SystemGeometry::uniform(angles.empty() ? K : angles.size(), d_sr, d_rd, alpha);
  if (!angles.empty()) {
    if (doc["geometry"].contains("num_users") && angles.size() != K)
      throw std::invalid_argument("geometry: user_angles length differs from num_users");
    spec.geometry.user_angles = angles;
  }
  K = spec.geometry.num_users();

  spec.noise = NoiseModel::uniform(K);
  if (doc.contains("noise")) {
    const json& n = doc["noise"];
    reject_unknown(n, {"noise_power", "relay_noise_power", "user_noise_powers"}, "noise");
    if (n.contains("noise_power")) spec.noise = NoiseModel::uniform(K, get_field<double>(n, "noise_power", "noise"));
    if (n.contains("relay_noise_power"))
      spec.noise.relay_noise_power = get_field<double>(n, "relay_noise_power", "noise");
    if (n.contains("user_noise_powers"))
      spec.noise.user_noise_powers = get_field<std::vector<double>>(n, "user_noise_powers", "noise");
  }

  if (doc.contains("N_values")) spec.n_values = get_field<std::vector<std::size_t>>(doc, "N_values", "spec");
  if (doc.contains("snr_dB_values"))
    spec.snr_db_values = get_field<std::vector<double>>(doc, "snr_dB_values", "spec");
  if (doc.contains("P_t_values"))
    spec.total_power_values = get_field<std::vector<double>>(doc, "P_t_values", "spec");
  if (doc.contains("schemes")) {
    for (const auto& name : get_field<std::vector<std::string>>(doc, "schemes", "spec"))
      spec.schemes.push_back(ExperimentScheme::parse(name));
  }
  if (doc.contains("trials")) spec.trials = get_field<std::size_t>(doc, "trials", "spec");
  if (doc.contains("root_seed")) spec.root_seed = get_field<std::uint64_t>(doc, "root_seed", "spec");
  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    reject_unknown(s, {"lambda_init", "step_scale", "epsilon", "max_iter", "lambda_floor"}, "solver");
    if (s.contains("lambda_init")) spec.solver.lambda_init = get_field<double>(s, "lambda_init", "solver");
    if (s.contains("step_scale")) spec.solver.step_scale = get_field<double>(s, "step_scale", "solver");
    if (s.contains("epsilon")) spec.solver.epsilon = get_field<double>(s, "epsilon", "solver");
    if (s.contains("max_iter")) spec.solver.max_iter = get_field<int>(s, "max_iter", "solver");
    if (s.contains("lambda_floor")) spec.solver.lambda_floor = get_field<double>(s, "lambda_floor", "solver");
  }
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    reject_unknown(o, {"max_N", "max_K", "max_configurations"}, "oracle");
    if (o.contains("max_N")) spec.oracle_limits.max_N = get_field<std::size_t>(o, "max_N", "oracle");
    if (o.contains("max_K")) spec.oracle_limits.max_K = get_field<std::size_t>(o, "max_K", "oracle");
    if (o.contains("max_configurations"))
      spec.oracle_limits.max_configurations = get_field<std::uint64_t>(o, "max_configurations", "oracle");
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_spec(buf.str());
}

double snr_db_to_total_power(double snr_db, std::size_t N, double noise_power) {
  return static_cast<double>(N) * noise_power * std::pow(10.0, snr_db / 10.0);
}

double total_power_to_snr_db(double total_power, std::size_t N, double noise_power) {
  return 10.0 * std::log10(total_power / (static_cast<double>(N) * noise_power));
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double budget_error(const PowerAllocation& pw, double total_power) {
  return std::abs(pw.total() - total_power) / total_power;
}

namespace {

AllocationReport run_experiment_scheme(const ExperimentScheme& s, const ChannelRealization& ch,
                                       const SolverConfig& cfg, const OracleLimits& limits) {
  if (s.oracle) return oracle_solve_serial(ch, cfg.total_power, limits);
  return run_scheme(s.scheme, ch, cfg);
}

struct Point {
  double snr_db;
  double total_power;
};

std::vector<ResultRow> run_impl(const ExperimentSpec& spec, bool parallel, int threads) {
  spec.validate();
  const double sigma2 = spec.noise.relay_noise_power;
  const std::size_t S = spec.schemes.size();
  const auto trials = static_cast<std::ptrdiff_t>(spec.trials);
  const int nthreads = parallel ? (threads > 0 ? threads : omp_get_max_threads()) : 1;

  std::vector<ResultRow> rows;
  for (std::size_t N : spec.n_values) {
    std::vector<Point> points;
    for (double snr : spec.snr_db_values) points.push_back({snr, snr_db_to_total_power(snr, N, sigma2)});
    for (double pt : spec.total_power_values) points.push_back({total_power_to_snr_db(pt, N, sigma2), pt});

    const std::size_t cells = S * points.size();
    std::vector<std::vector<double>> rates(cells, std::vector<double>(spec.trials));
    std::vector<std::vector<double>> iters(cells, std::vector<double>(spec.trials));
    std::exception_ptr failure;
    std::mutex failure_mutex;

#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (parallel)
    for (std::ptrdiff_t t = 0; t < trials; ++t) {
      try {
        const ChannelRealization ch = generate_realization(
            spec.geometry, spec.noise, N, trial_seed(spec.root_seed, static_cast<std::uint64_t>(t)));
        for (std::size_t p = 0; p < points.size(); ++p) {
          SolverConfig cfg = spec.solver;
          cfg.total_power = points[p].total_power;
          for (std::size_t s = 0; s < S; ++s) {
            const AllocationReport r = run_experiment_scheme(spec.schemes[s], ch, cfg, spec.oracle_limits);
            rates[s * points.size() + p][static_cast<std::size_t>(t)] = r.primal_rate;
            iters[s * points.size() + p][static_cast<std::size_t>(t)] = r.iterations;
          }
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t p = 0; p < points.size(); ++p) {
        const auto& x = rates[s * points.size() + p];
        const double n = static_cast<double>(x.size());
        const double mean = pairwise_sum(x) / n;
        std::vector<double> dev(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) dev[i] = (x[i] - mean) * (x[i] - mean);
        const double var = x.size() > 1 ? pairwise_sum(dev) / (n - 1.0) : 0.0;
        ResultRow row;
        row.scheme = spec.schemes[s].name();
        row.N = N;
        row.snr_db = points[p].snr_db;
        row.total_power = points[p].total_power;
        row.mean_rate = mean;
        row.stderr_rate = std::sqrt(var / n);
        row.mean_iterations = pairwise_sum(iters[s * points.size() + p]) / n;
        row.trials = spec.trials;
        rows.push_back(std::move(row));
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.scheme, a.N, a.snr_db) < std::tie(b.scheme, b.N, b.snr_db);
  });
  return rows;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int threads) {
  return run_impl(spec, true, threads);
}

std::vector<ResultRow> run_experiment_serial(const ExperimentSpec& spec) {
  return run_impl(spec, false, 1);
}

std::string results_to_csv(const ExperimentSpec& spec, const std::vector<ResultRow>& rows) {
  std::string out;
  out += "# relayalloc experiment: K=" + std::to_string(spec.geometry.num_users()) +
         " d_SR=" + format_double(spec.geometry.source_relay_distance) +
         " d_RD=" + format_double(spec.geometry.relay_user_radius) +
         " alpha=" + format_double(spec.geometry.path_loss_exponent) +
         " trials=" + std::to_string(spec.trials) + " root_seed=" + std::to_string(spec.root_seed) + "\n";
  out += "# snr_dB = 10*log10(P_t / (N * sigma_r^2)), sigma_r^2 = " +
         format_double(spec.noise.relay_noise_power) + "\n";
  out += kResultCsvHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += r.scheme + "," + std::to_string(r.N) + "," + format_double(r.snr_db) + "," +
           format_double(r.total_power) + "," + format_double(r.mean_rate) + "," +
           format_double(r.stderr_rate) + "," + format_double(r.mean_iterations) + "," +
           std::to_string(r.trials) + "\n";
  }
  return out;
}

std::vector<TraceRow> convergence_trace(const ChannelRealization& ch, const SolverConfig& cfg) {
  std::vector<TraceRow> rows;
  solve(ch, cfg, {}, &rows);
  return rows;
}

std::string trace_to_csv(const std::vector<TraceRow>& rows) {
  std::string out = "iteration,lambda,consumed_power,g_lambda,restored_rate,lambda_change\n";
  for (const auto& r : rows) {
    out += std::to_string(r.iteration) + "," + format_double(r.lambda) + "," +
           format_double(r.consumed_power) + "," + format_double(r.g_lambda) + "," +
           format_double(r.restored_rate) + "," + format_double(r.lambda_change) + "\n";
  }
  return out;
}

CertifySummary certify(const CertifyOptions& o, int threads) {
  if (o.trials < 1) throw std::invalid_argument("certify: trials must be >= 1");
  const SystemGeometry geometry = SystemGeometry::uniform(o.K);
  const NoiseModel noise = NoiseModel::uniform(o.K);
  SolverConfig cfg = o.solver;
  cfg.total_power = o.total_power;
  cfg.validate();
  if (o.N > o.oracle_limits.max_N || o.K > o.oracle_limits.max_K ||
      oracle_enumeration_size(o.N, o.K) > o.oracle_limits.max_configurations) {
    throw OracleTooLarge("certify: N=" + std::to_string(o.N) + ", K=" + std::to_string(o.K) +
                         " needs " + std::to_string(oracle_enumeration_size(o.N, o.K)) +
                         " oracle configurations, beyond its limits");
  }

  CertifySummary summary;
  summary.instances.resize(o.trials);
  const auto trials = static_cast<std::ptrdiff_t>(o.trials);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (std::ptrdiff_t t = 0; t < trials; ++t) {
    CertifyInstance& inst = summary.instances[static_cast<std::size_t>(t)];
    inst.seed = trial_seed(o.root_seed, static_cast<std::uint64_t>(t));
    const ChannelRealization ch = generate_realization(geometry, noise, o.N, inst.seed);
    const AllocationReport oracle = oracle_solve_serial(ch, o.total_power, o.oracle_limits);
    const AllocationReport dual = solve(ch, cfg);
    inst.oracle_rate = oracle.primal_rate;
    inst.primal_rate = dual.primal_rate;
    inst.dual_value = dual.dual_value;
    inst.iterations = dual.iterations;
    inst.converged = dual.converged;
    inst.ratio_ok = dual.primal_rate >= o.rate_ratio * oracle.primal_rate;
    inst.dual_ok = dual.dual_value >= oracle.primal_rate * (1.0 - o.dual_tolerance);
    inst.budget_ok = budget_error(dual.powers, o.total_power) <= o.budget_tolerance &&
                     budget_error(oracle.powers, o.total_power) <= o.budget_tolerance;
  }

  std::size_t within = 0;
  summary.all_dual_bounds_hold = true;
  summary.all_budgets_hold = true;
  for (const auto& inst : summary.instances) {
    within += inst.ratio_ok;
    summary.all_dual_bounds_hold = summary.all_dual_bounds_hold && inst.dual_ok;
    summary.all_budgets_hold = summary.all_budgets_hold && inst.budget_ok;
  }
  summary.fraction_within_ratio = static_cast<double>(within) / static_cast<double>(o.trials);
  summary.passed = summary.fraction_within_ratio >= o.required_fraction && summary.all_dual_bounds_hold &&
                   summary.all_budgets_hold;
  return summary;
}

}  // namespace relayalloc
