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

// relaysim: experiment runner for the relay resource allocator.
//
//   relaysim simulate --spec exp.json [--out results.csv] [--threads 4]
//   relaysim trace --seed 7 --n 4 --k 4 --pt 10 [--channel dump.json]
//   relaysim certify --trials 200 --n 3 --k 2 [--pt 10] [--ratio 0.98] [--out certify.csv]
//
// Exit status: 0 on success, 1 on bad input, 2 when certify finds a failure.

#include <omp.h>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "relayalloc/channel.hpp"
#include "relayalloc/experiment.hpp"

namespace {

using namespace relayalloc;

constexpr int kExitBadInput = 1;
constexpr int kExitCertifyFailed = 2;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
  out << text;
}

struct SolverFlags {
  double step_scale = SolverConfig{}.step_scale;
  double epsilon = SolverConfig{}.epsilon;
  int max_iter = SolverConfig{}.max_iter;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--step-scale", step_scale, "subgradient step scale a0")->check(CLI::PositiveNumber);
    cmd->add_option("--epsilon", epsilon, "relative lambda stopping tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", max_iter, "iteration cap")->check(CLI::PositiveNumber);
  }
  SolverConfig config(double total_power) const {
    SolverConfig cfg;
    cfg.total_power = total_power;
    cfg.step_scale = step_scale;
    cfg.epsilon = epsilon;
    cfg.max_iter = max_iter;
    return cfg;
  }
};

std::string format(const char* fmt, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, a);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint pairing, user assignment and power allocation for an OFDM decode-and-forward relay"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  int threads = 0;
  app.add_option("--out", out_path, "write output here instead of stdout");
  app.add_option("--threads", threads, "worker threads (default: OpenMP default)")->check(CLI::NonNegativeNumber);

  auto* simulate = app.add_subcommand("simulate", "run a Monte Carlo experiment from a JSON spec");
  std::string spec_path;
  simulate->add_option("--spec", spec_path, "experiment spec file")->required()->check(CLI::ExistingFile);

  auto* trace = app.add_subcommand("trace", "per-iteration telemetry of the dual solver");
  std::uint64_t trace_seed = 1;
  std::size_t trace_n = 4, trace_k = 4;
  double trace_pt = 10.0;
  std::string channel_path;
  SolverFlags trace_flags;
  trace->add_option("--seed", trace_seed, "channel seed");
  trace->add_option("--n", trace_n, "subcarriers")->check(CLI::PositiveNumber);
  trace->add_option("--k", trace_k, "users")->check(CLI::PositiveNumber);
  trace->add_option("--pt", trace_pt, "total power budget")->check(CLI::PositiveNumber);
  trace->add_option("--channel", channel_path, "load the channel from a JSON dump instead")
      ->check(CLI::ExistingFile);
  trace_flags.add_to(trace);

  auto* cert = app.add_subcommand("certify", "compare the dual solver with the exhaustive oracle");
  CertifyOptions cert_opts;
  std::string dump_dir;
  SolverFlags cert_flags;
  cert->add_option("--trials", cert_opts.trials, "instances")->check(CLI::PositiveNumber);
  cert->add_option("--n", cert_opts.N, "subcarriers")->check(CLI::PositiveNumber);
  cert->add_option("--k", cert_opts.K, "users")->check(CLI::PositiveNumber);
  cert->add_option("--pt", cert_opts.total_power, "total power budget")->check(CLI::PositiveNumber);
  cert->add_option("--seed", cert_opts.root_seed, "root seed");
  cert->add_option("--max-k", cert_opts.oracle_limits.max_K, "oracle user limit");
  cert->add_option("--max-n", cert_opts.oracle_limits.max_N, "oracle subcarrier limit");
  cert->add_option("--ratio", cert_opts.rate_ratio, "required primal / oracle rate ratio")
      ->check(CLI::PositiveNumber);
  cert->add_option("--fraction", cert_opts.required_fraction, "required fraction of instances meeting --ratio")
      ->check(CLI::Range(0.0, 1.0));
  cert->add_option("--dump-dir", dump_dir, "write channel dumps of failing instances here");
  cert_flags.add_to(cert);

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*simulate) {
      const ExperimentSpec spec = load_experiment_spec(spec_path);
      const auto rows = run_experiment(spec, threads);
      emit(results_to_csv(spec, rows), out_path);
      return 0;
    }

    if (*trace) {
      const ChannelRealization ch =
          channel_path.empty()
              ? generate_realization(SystemGeometry::uniform(trace_k), NoiseModel::uniform(trace_k), trace_n,
                                     trace_seed)
              : load_realization(channel_path);
      const auto rows = convergence_trace(ch, trace_flags.config(trace_pt));
      emit("# N=" + std::to_string(ch.num_subcarriers) + " K=" + std::to_string(ch.num_users) +
               " seed=" + std::to_string(ch.seed) + " P_t=" + format("%.17g", trace_pt) + "\n" +
               trace_to_csv(rows),
           out_path);
      return 0;
    }

    if (*cert) {
      cert_opts.solver = cert_flags.config(cert_opts.total_power);
      const CertifySummary summary = certify(cert_opts, threads);
      std::string csv =
          "# certify N=" + std::to_string(cert_opts.N) + " K=" + std::to_string(cert_opts.K) +
          " P_t=" + format("%.17g", cert_opts.total_power) + " trials=" + std::to_string(cert_opts.trials) +
          "\nseed,oracle_rate,primal_rate,dual_value,iterations,converged,ratio_ok,dual_ok,budget_ok\n";
      for (const auto& i : summary.instances) {
        csv += std::to_string(i.seed) + "," + format("%.17g", i.oracle_rate) + "," +
               format("%.17g", i.primal_rate) + "," + format("%.17g", i.dual_value) + "," +
               std::to_string(i.iterations) + "," + std::to_string(i.converged) + "," +
               std::to_string(i.ratio_ok) + "," + std::to_string(i.dual_ok) + "," + std::to_string(i.budget_ok) +
               "\n";
        if (!dump_dir.empty() && !(i.ratio_ok && i.dual_ok && i.budget_ok)) {
          std::filesystem::create_directories(dump_dir);
          const auto ch = generate_realization(SystemGeometry::uniform(cert_opts.K),
                                               NoiseModel::uniform(cert_opts.K), cert_opts.N, i.seed);
          save_realization(ch, std::filesystem::path(dump_dir) / ("seed-" + std::to_string(i.seed) + ".json"));
        }
      }
      emit(csv, out_path);
      std::fprintf(stderr,
                   "certify: %.1f%% of instances within %.0f%% of the oracle (need %.0f%%); "
                   "dual bound %s; budget %s -> %s\n",
                   100.0 * summary.fraction_within_ratio, 100.0 * cert_opts.rate_ratio,
                   100.0 * cert_opts.required_fraction, summary.all_dual_bounds_hold ? "holds" : "VIOLATED",
                   summary.all_budgets_hold ? "exact" : "VIOLATED", summary.passed ? "PASS" : "FAIL");
      return summary.passed ? 0 : kExitCertifyFailed;
    }
  } catch (const OracleTooLarge& e) {
    std::fprintf(stderr, "relaysim: %s\n", e.what());
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "relaysim: %s\n", e.what());
    return kExitBadInput;
  }
  return 0;
}
