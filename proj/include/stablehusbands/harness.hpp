// Copyright 2026 The stablehusbands Authors.
//
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "stablehusbands/instance.hpp"

namespace sh::harness {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { theorem, equivalence, lemma_audit, acceptance_dist, coupon };

/// How husband counts are produced in a theorem experiment.
enum class Method {
  /// Deterministic enumeration on a freshly drawn uniform instance.
  enumeration,
  /// The randomized proposal process run to its natural stop.
  process,
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::theorem;
  std::vector<Index> sizes{64};
  std::uint64_t trials = 100;
  std::uint64_t master_seed = 1;
  Index girl = 0;
  Method method = Method::enumeration;
  double c = 0.3;
  double big_c = 2.0;
  double delta = 0.45;
  double epsilon = 0.05;
  /// Proposals per simulated girl (acceptance_dist).
  std::uint64_t m = 10'000;
  double tv_threshold = 0.05;
  /// Minimum in-envelope fraction (theorem).
  double min_fraction = 0.95;
  /// Allowed relative gap between mean first-output time and n H_n.
  double coupon_tolerance = 0.15;
  unsigned workers = 1;
  std::filesystem::path output_dir;
  bool plot_data = false;
};

/// Throws ConfigError on unknown keys' values, bad ranges or an infeasible
/// theorem parameter set.
ExperimentConfig parse_config(const nlohmann::json& doc);
void validate(const ExperimentConfig& config);
std::string to_string(ExperimentKind kind);

struct TrialResult {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  /// Husband (output) count; for acceptance_dist, the acceptance count.
  std::int64_t husband_count = 0;
  std::int64_t first_output_time = -1;
  std::int64_t accept_pre_output = 0;
  std::int64_t elapsed_us = 0;
  std::string error;
};

struct Summary {
  std::size_t count = 0;
  double mean = 0;
  double variance = 0;
  double min = 0;
  double max = 0;
  double p5 = 0;
  double p50 = 0;
  double p95 = 0;
  std::map<std::int64_t, std::size_t> histogram;
  double in_envelope_fraction = 0;
};

/// Statistics of husband_count over `results`; the envelope is inclusive.
/// Order-independent. Throws std::invalid_argument on empty input.
Summary summarize(std::span<const TrialResult> results, double lower, double upper);

/// Linear-interpolation quantile of sorted data.
double quantile(std::span<const double> sorted, double q);

/// Total-variation distance between two empirical distributions of counts.
double total_variation(const std::map<std::int64_t, std::size_t>& a,
                       const std::map<std::int64_t, std::size_t>& b);

struct SizeRun {
  Index n = 0;
  /// Named sample groups, e.g. "enumeration" and "process" for the
  /// equivalence experiment; a single "trials" group otherwise.
  std::vector<std::pair<std::string, std::vector<TrialResult>>> groups;
};

struct ExperimentResult {
  /// Deterministic given the config: no timings or worker counts.
  nlohmann::json report;
  std::vector<SizeRun> runs;
  bool gate_passed = false;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes report.json, trials.csv (trials_n<N>.csv per size for sweeps) and,
/// if requested, counts_n<N>.tsv into `dir`.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                   const std::filesystem::path& dir);

inline constexpr const char* kCsvHeader =
    "trial,seed,husband_count,first_output_time,accept_pre_output,elapsed_us";

/// Runs `count` independent work items on `workers` threads; results land in
/// index order.
template <typename Fn>
auto run_parallel(std::uint64_t count, unsigned workers, Fn&& fn)
    -> std::vector<decltype(fn(std::uint64_t{}))>;

}  // namespace sh::harness

#include "stablehusbands/detail/parallel.hpp"
