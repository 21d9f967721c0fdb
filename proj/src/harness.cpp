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

#include "stablehusbands/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>

#include "stablehusbands/bounds.hpp"
#include "stablehusbands/json_io.hpp"
#include "stablehusbands/matching.hpp"
#include "stablehusbands/oracle.hpp"
#include "stablehusbands/random_model.hpp"
#include "stablehusbands/rng.hpp"

namespace sh::harness {

using nlohmann::json;

namespace {

constexpr Index kOracleCheckLimit = 7;

const std::vector<std::pair<std::string, ExperimentKind>> kKinds = {
    {"theorem", ExperimentKind::theorem},
    {"equivalence", ExperimentKind::equivalence},
    {"lemma_audit", ExperimentKind::lemma_audit},
    {"acceptance_dist", ExperimentKind::acceptance_dist},
    {"coupon", ExperimentKind::coupon},
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

std::uint64_t stream_seed(const ExperimentConfig& config, Index n,
                          std::uint64_t group, std::uint64_t trial) {
  const std::uint64_t stream =
      (static_cast<std::uint64_t>(config.kind) << 56) ^
      (static_cast<std::uint64_t>(n) << 8) ^ group;
  return derive_seed(derive_seed(config.master_seed, stream), trial);
}

template <typename Fn>
TrialResult timed_trial(std::uint64_t trial, std::uint64_t seed, Fn&& body) {
  TrialResult r;
  r.trial = trial;
  r.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

json summary_json(const Summary& s) {
  json hist = json::array();
  for (const auto& [value, count] : s.histogram) hist.push_back({value, count});
  return {{"count", s.count},       {"mean", s.mean},
          {"variance", s.variance}, {"min", s.min},
          {"max", s.max},           {"p5", s.p5},
          {"p50", s.p50},           {"p95", s.p95},
          {"histogram", hist},      {"in_envelope_fraction", s.in_envelope_fraction}};
}

std::map<std::int64_t, std::size_t> histogram_of(const std::vector<TrialResult>& rs) {
  std::map<std::int64_t, std::size_t> h;
  for (const auto& r : rs)
    if (r.error.empty()) ++h[r.husband_count];
  return h;
}

std::size_t error_count(const std::vector<TrialResult>& rs) {
  return static_cast<std::size_t>(
      std::count_if(rs.begin(), rs.end(), [](const TrialResult& r) { return !r.error.empty(); }));
}

json errors_json(const std::vector<TrialResult>& rs) {
  json out = json::array();
  for (const auto& r : rs)
    if (!r.error.empty()) out.push_back({{"trial", r.trial}, {"error", r.error}});
  return out;
}

std::vector<TrialResult> successful(const std::vector<TrialResult>& rs) {
  std::vector<TrialResult> out;
  std::copy_if(rs.begin(), rs.end(), std::back_inserter(out),
               [](const TrialResult& r) { return r.error.empty(); });
  return out;
}

// Husband count of one uniform instance by enumeration.
void enumeration_trial(TrialResult& r, Index n, Index girl, bool oracle_check,
                       std::size_t& mismatch) {
  const auto instance = generate_uniform(n, r.seed);
  const auto e = stable_husbands(instance, girl);
  r.husband_count = static_cast<std::int64_t>(e.husbands.size());
  r.first_output_time = static_cast<std::int64_t>(e.first_output_time);
  r.accept_pre_output = static_cast<std::int64_t>(e.acceptances_before_first_output);
  if (oracle_check) {
    const auto stable = oracle::enumerate_stable(instance);
    const auto& truth = oracle::husband_set(stable, girl);
    const std::set<Index> found(e.husbands.begin(), e.husbands.end());
    if (found != truth) mismatch = 1;
  }
}

void process_trial(TrialResult& r, Index n, Index girl, model::ProposalMode mode) {
  model::RunOptions options;
  options.stop = model::StopRule::natural;
  options.mode = mode;
  options.track_pairs = false;
  const auto result = model::run(n, girl, r.seed, options);
  r.husband_count = static_cast<std::int64_t>(result.outputs.size());
  r.first_output_time = result.stats.first_output_time
                            ? static_cast<std::int64_t>(*result.stats.first_output_time)
                            : -1;
  r.accept_pre_output =
      static_cast<std::int64_t>(result.stats.acceptances_by_g_before_first_output);
}

struct SizeOutcome {
  json report;
  SizeRun run;
  bool passed = true;
};

SizeOutcome run_theorem(const ExperimentConfig& config, Index n) {
  SizeOutcome out;
  out.run.n = n;
  const auto envelope =
      bounds::theorem_envelope(n, config.c, config.big_c, config.delta, config.epsilon);
  const bool oracle_check = config.method == Method::enumeration && n <= kOracleCheckLimit;
  struct Row {
    TrialResult result;
    std::size_t mismatch = 0;
  };
  auto rows = run_parallel(config.trials, config.workers, [&](std::uint64_t i) {
    Row row;
    row.result = timed_trial(i, stream_seed(config, n, 0, i), [&](TrialResult& r) {
      if (config.method == Method::enumeration) {
        enumeration_trial(r, n, config.girl, oracle_check, row.mismatch);
      } else {
        process_trial(r, n, config.girl, model::ProposalMode::amnesia);
      }
    });
    return row;
  });
  std::vector<TrialResult> trials;
  std::size_t mismatches = 0;
  for (auto& row : rows) {
    mismatches += row.mismatch;
    trials.push_back(std::move(row.result));
  }
  const auto ok = successful(trials);
  const double ln = std::log(static_cast<double>(n));
  const double median_lo = 0.5 * ln - 2.0;
  const double median_hi = ln + 2.0;

  json r{{"n", n}, {"envelope", envelope_json(envelope)}};
  bool passed = !ok.empty() && error_count(trials) == 0 && mismatches == 0;
  if (!ok.empty()) {
    const Summary s = summarize(ok, envelope.lower, envelope.upper);
    const Summary strict = summarize(ok, envelope.strict_lower, envelope.strict_upper);
    r["summary"] = summary_json(s);
    r["strict_in_envelope_fraction"] = strict.in_envelope_fraction;
    r["median_window"] = {median_lo, median_hi};
    const bool fraction_ok = s.in_envelope_fraction >= config.min_fraction;
    const bool median_ok = s.p50 >= median_lo && s.p50 <= median_hi;
    r["gates"] = {{"in_envelope_fraction", fraction_ok}, {"median", median_ok}};
    passed = passed && fraction_ok && median_ok;
  }
  if (oracle_check) r["oracle_mismatches"] = mismatches;
  r["trial_errors"] = errors_json(trials);
  r["passed"] = passed;
  out.report = std::move(r);
  out.passed = passed;
  out.run.groups.emplace_back("trials", std::move(trials));
  return out;
}

SizeOutcome run_equivalence(const ExperimentConfig& config, Index n) {
  SizeOutcome out;
  out.run.n = n;
  const std::vector<std::string> names = {"enumeration", "process", "process_memory"};
  std::vector<std::map<std::int64_t, std::size_t>> hists;
  json r{{"n", n}};
  bool passed = true;
  for (std::uint64_t group = 0; group < names.size(); ++group) {
    auto trials = run_parallel(config.trials, config.workers, [&](std::uint64_t i) {
      return timed_trial(i, stream_seed(config, n, group, i), [&](TrialResult& t) {
        std::size_t unused = 0;
        if (group == 0) {
          enumeration_trial(t, n, config.girl, false, unused);
        } else {
          process_trial(t, n, config.girl,
                        group == 1 ? model::ProposalMode::amnesia
                                   : model::ProposalMode::memory);
        }
      });
    });
    hists.push_back(histogram_of(trials));
    passed = passed && error_count(trials) == 0;
    json h = json::array();
    for (const auto& [value, count] : hists.back()) h.push_back({value, count});
    r["histograms"][names[group]] = std::move(h);
    r["trial_errors"][names[group]] = errors_json(trials);
    out.run.groups.emplace_back(names[group], std::move(trials));
  }
  const double tv_ab = total_variation(hists[0], hists[1]);
  const double tv_am = total_variation(hists[0], hists[2]);
  const double tv_bm = total_variation(hists[1], hists[2]);
  r["tv"] = {{"enumeration_vs_process", tv_ab},
             {"enumeration_vs_process_memory", tv_am},
             {"process_vs_process_memory", tv_bm}};
  r["tv_threshold"] = config.tv_threshold;
  passed = passed && tv_ab <= config.tv_threshold && tv_am <= config.tv_threshold &&
           tv_bm <= config.tv_threshold;
  r["passed"] = passed;
  out.report = std::move(r);
  out.passed = passed;
  return out;
}

SizeOutcome run_lemma_audit(const ExperimentConfig& config, Index n) {
  SizeOutcome out;
  out.run.n = n;
  const std::uint64_t cap = model::time_window(n, config.delta);
  struct Row {
    TrialResult result;
    model::AuditReport audit;
  };
  auto rows = run_parallel(config.trials, config.workers, [&](std::uint64_t i) {
    Row row;
    row.result = timed_trial(i, stream_seed(config, n, 0, i), [&](TrialResult& t) {
      model::RunOptions options;
      options.stop = model::StopRule::time_cap;
      options.max_proposals = cap;
      const auto result = model::run(n, config.girl, t.seed, options);
      t.husband_count = static_cast<std::int64_t>(result.outputs.size());
      t.first_output_time = result.stats.first_output_time
                                ? static_cast<std::int64_t>(*result.stats.first_output_time)
                                : -1;
      t.accept_pre_output =
          static_cast<std::int64_t>(result.stats.acceptances_by_g_before_first_output);
      row.audit = model::lemma_audit(result.stats, n, config.delta);
    });
    return row;
  });

  json r{{"n", n}, {"delta", config.delta}, {"cap", cap}};
  std::vector<TrialResult> trials;
  bool passed = true;
  std::map<std::string, std::size_t> pass_counts;
  json first_failure = nullptr;
  for (auto& row : rows) {
    if (!row.result.error.empty()) {
      passed = false;
    } else {
      for (const auto& check : row.audit.checks) pass_counts[check.id] += check.passed ? 1 : 0;
      if (!row.audit.passed()) {
        passed = false;
        if (first_failure.is_null()) {
          first_failure = audit_json(row.audit);
          first_failure["trial"] = row.result.trial;
        }
      }
    }
    trials.push_back(std::move(row.result));
  }
  json rates = json::object();
  for (const auto& [id, count] : pass_counts)
    rates[id] = static_cast<double>(count) / static_cast<double>(config.trials);
  r["pass_rates"] = std::move(rates);
  r["first_failure"] = std::move(first_failure);
  r["trial_errors"] = errors_json(trials);
  r["passed"] = passed;
  out.report = std::move(r);
  out.passed = passed;
  out.run.groups.emplace_back("trials", std::move(trials));
  return out;
}

SizeOutcome run_acceptance_dist(const ExperimentConfig& config) {
  SizeOutcome out;
  out.run.n = 0;
  const std::uint64_t m = config.m;
  auto trials = run_parallel(config.trials, config.workers, [&](std::uint64_t i) {
    return timed_trial(i, stream_seed(config, 0, 0, i), [&](TrialResult& t) {
      Rng rng(t.seed);
      std::int64_t accepted = 0;
      for (std::uint64_t k = 1; k <= m; ++k) {
        if (rng.uniform01() < 1.0 / static_cast<double>(k)) ++accepted;
      }
      t.husband_count = accepted;
    });
  });
  const auto ok = successful(trials);
  json r{{"m", m}};
  bool passed = error_count(trials) == 0 && ok.size() > 1;
  if (ok.size() > 1) {
    const double r_threshold = (1.0 + config.epsilon) * std::log(static_cast<double>(m));
    const Summary s = summarize(ok, 0.0, r_threshold);
    const double h = bounds::harmonic(m);
    const double var = h - bounds::harmonic2(m);
    const double stderr_mean = std::sqrt(s.variance / static_cast<double>(s.count));
    const auto tail_hits = std::count_if(ok.begin(), ok.end(), [&](const TrialResult& t) {
      return static_cast<double>(t.husband_count) >= r_threshold;
    });
    const double tail_freq = static_cast<double>(tail_hits) / static_cast<double>(ok.size());
    const auto bound = bounds::optimize_tail(bounds::RisingProduct{m}, bounds::Tail::upper,
                                             r_threshold);
    const bool mean_ok = std::abs(s.mean - h) <= 3.0 * stderr_mean;
    const bool tail_ok = tail_freq <= bound.value;
    r["summary"] = summary_json(s);
    r["expected_mean"] = h;
    r["expected_variance"] = var;
    r["stderr"] = stderr_mean;
    r["z_score"] = stderr_mean > 0 ? (s.mean - h) / stderr_mean : 0.0;
    r["tail_threshold"] = r_threshold;
    r["tail_frequency"] = tail_freq;
    r["tail_bound"] = tail_bound_json(bound);
    r["gates"] = {{"mean_within_3_stderr", mean_ok}, {"tail_below_bound", tail_ok}};
    passed = passed && mean_ok && tail_ok;
  }
  r["trial_errors"] = errors_json(trials);
  r["passed"] = passed;
  out.report = std::move(r);
  out.passed = passed;
  out.run.groups.emplace_back("trials", std::move(trials));
  return out;
}

SizeOutcome run_coupon(const ExperimentConfig& config, Index n) {
  SizeOutcome out;
  out.run.n = n;
  auto trials = run_parallel(config.trials, config.workers, [&](std::uint64_t i) {
    return timed_trial(i, stream_seed(config, n, 0, i), [&](TrialResult& t) {
      model::RunOptions options;
      options.stop = model::StopRule::first_output;
      options.track_pairs = false;
      const auto result = model::run(n, config.girl, t.seed, options);
      t.husband_count = static_cast<std::int64_t>(result.outputs.size());
      t.first_output_time = static_cast<std::int64_t>(*result.stats.first_output_time);
      t.accept_pre_output =
          static_cast<std::int64_t>(result.stats.acceptances_by_g_before_first_output);
    });
  });
  const auto ok = successful(trials);
  const double ln = std::log(static_cast<double>(n));
  const double lnln = n > 2 ? std::log(ln) : 0.0;
  const auto window = static_cast<std::uint64_t>(std::floor(n * ln * lnln));
  const double expected = static_cast<double>(n) * bounds::harmonic(n);
  json r{{"n", n}, {"window", window}, {"expected_mean", expected}};
  bool passed = error_count(trials) == 0 && !ok.empty();
  if (!ok.empty()) {
    std::vector<TrialResult> times = ok;
    for (auto& t : times) t.husband_count = t.first_output_time;
    const Summary s = summarize(times, 0.0, static_cast<double>(window));
    const double rel = std::abs(s.mean - expected) / expected;
    const bool mean_ok = rel <= config.coupon_tolerance;
    r["first_output_time"] = {{"mean", s.mean}, {"variance", s.variance},
                              {"min", s.min},   {"max", s.max},
                              {"p5", s.p5},     {"p50", s.p50},
                              {"p95", s.p95}};
    r["within_window_fraction"] = s.in_envelope_fraction;
    r["relative_error"] = rel;
    r["gates"] = {{"mean_near_nHn", mean_ok}};
    passed = passed && mean_ok;
  }
  r["trial_errors"] = errors_json(trials);
  r["passed"] = passed;
  out.report = std::move(r);
  out.passed = passed;
  out.run.groups.emplace_back("trials", std::move(trials));
  return out;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : kKinds)
    if (k == kind) return name;
  return "unknown";
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    const std::string kind = lower(doc.at("kind").get<std::string>());
    auto it = std::find_if(kKinds.begin(), kKinds.end(),
                           [&](const auto& entry) { return entry.first == kind; });
    if (it == kKinds.end()) throw ConfigError("unknown experiment kind '" + kind + "'");
    config.kind = it->second;
    if (doc.contains("sizes")) {
      config.sizes = doc["sizes"].get<std::vector<Index>>();
    } else if (doc.contains("n")) {
      config.sizes = {doc["n"].get<Index>()};
    }
    config.trials = doc.value("trials", config.trials);
    config.master_seed = doc.value("master_seed", config.master_seed);
    config.girl = doc.value("girl", config.girl);
    if (doc.contains("method")) {
      const std::string method = lower(doc["method"].get<std::string>());
      if (method == "enumeration" || method == "a") {
        config.method = Method::enumeration;
      } else if (method == "process" || method == "b") {
        config.method = Method::process;
      } else {
        throw ConfigError("unknown method '" + method + "'");
      }
    }
    config.c = doc.value("c", config.c);
    config.big_c = doc.value("C", config.big_c);
    config.delta = doc.value("delta", config.delta);
    config.epsilon = doc.value("epsilon", config.epsilon);
    config.m = doc.value("m", config.m);
    config.tv_threshold = doc.value("tv_threshold", config.tv_threshold);
    config.min_fraction = doc.value("min_fraction", config.min_fraction);
    config.coupon_tolerance = doc.value("coupon_tolerance", config.coupon_tolerance);
    config.workers = doc.value("workers", config.workers);
    if (doc.contains("output")) {
      const auto& o = doc["output"];
      if (o.is_string()) {
        config.output_dir = o.get<std::string>();
      } else {
        config.output_dir = o.value("dir", std::string{});
        config.plot_data = o.value("plot_data", false);
      }
    }
    config.plot_data = doc.value("plot_data", config.plot_data);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment config: ") + e.what());
  }
  validate(config);
  return config;
}

void validate(const ExperimentConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be at least 1");
  if (config.kind != ExperimentKind::acceptance_dist) {
    if (config.sizes.empty()) throw ConfigError("at least one size n is required");
    for (Index n : config.sizes) {
      if (n < 1) throw ConfigError("sizes must be positive");
      if (config.girl >= n) throw ConfigError("designated girl outside [0, n)");
    }
  }
  if (config.kind == ExperimentKind::theorem) {
    for (Index n : config.sizes) {
      try {
        bounds::theorem_envelope(n, config.c, config.big_c, config.delta, config.epsilon);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }
  if (config.kind == ExperimentKind::lemma_audit &&
      !(config.delta > 0.0 && config.delta < 0.5)) {
    throw ConfigError("delta must satisfy 0 < delta < 1/2");
  }
  if (config.kind == ExperimentKind::acceptance_dist && config.m < 1) {
    throw ConfigError("m must be at least 1");
  }
  if (!(config.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

double quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const TrialResult> results, double lower, double upper) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  std::vector<double> values;
  values.reserve(results.size());
  Summary s;
  std::size_t inside = 0;
  for (const auto& r : results) {
    const auto v = static_cast<double>(r.husband_count);
    values.push_back(v);
    ++s.histogram[r.husband_count];
    if (v >= lower && v <= upper) ++inside;
  }
  std::sort(values.begin(), values.end());
  s.count = values.size();
  const double count = static_cast<double>(s.count);
  // Summing sorted values keeps the result independent of input order.
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = s.count > 1 ? ss / (count - 1.0) : 0.0;
  s.min = values.front();
  s.max = values.back();
  s.p5 = quantile(values, 0.05);
  s.p50 = quantile(values, 0.5);
  s.p95 = quantile(values, 0.95);
  s.in_envelope_fraction = static_cast<double>(inside) / count;
  return s;
}

double total_variation(const std::map<std::int64_t, std::size_t>& a,
                       const std::map<std::int64_t, std::size_t>& b) {
  auto total = [](const auto& h) {
    std::size_t t = 0;
    for (const auto& [k, v] : h) t += v;
    return static_cast<double>(t);
  };
  const double ta = total(a);
  const double tb = total(b);
  if (ta == 0 || tb == 0) throw std::invalid_argument("total_variation: empty sample");
  std::set<std::int64_t> keys;
  for (const auto& [k, v] : a) keys.insert(k);
  for (const auto& [k, v] : b) keys.insert(k);
  double sum = 0.0;
  for (auto k : keys) {
    const double pa = a.count(k) ? static_cast<double>(a.at(k)) / ta : 0.0;
    const double pb = b.count(k) ? static_cast<double>(b.at(k)) / tb : 0.0;
    sum += std::abs(pa - pb);
  }
  return 0.5 * sum;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate(config);
  ExperimentResult result;
  json report{{"kind", to_string(config.kind)},
              {"master_seed", config.master_seed},
              {"trials", config.trials}};
  switch (config.kind) {
    case ExperimentKind::theorem:
      report["method"] = config.method == Method::enumeration ? "enumeration" : "process";
      report["parameters"] = {{"c", config.c},
                              {"C", config.big_c},
                              {"delta", config.delta},
                              {"epsilon", config.epsilon},
                              {"min_fraction", config.min_fraction}};
      break;
    case ExperimentKind::lemma_audit:
      report["parameters"] = {{"delta", config.delta}};
      break;
    case ExperimentKind::acceptance_dist:
      report["parameters"] = {{"m", config.m}, {"epsilon", config.epsilon}};
      break;
    case ExperimentKind::coupon:
      report["parameters"] = {{"coupon_tolerance", config.coupon_tolerance}};
      break;
    case ExperimentKind::equivalence:
      report["parameters"] = {{"tv_threshold", config.tv_threshold}};
      break;
  }
  if (config.kind != ExperimentKind::acceptance_dist) report["girl"] = config.girl;

  bool passed = true;
  json sections = json::array();
  auto absorb = [&](SizeOutcome outcome) {
    passed = passed && outcome.passed;
    sections.push_back(std::move(outcome.report));
    result.runs.push_back(std::move(outcome.run));
  };
  if (config.kind == ExperimentKind::acceptance_dist) {
    absorb(run_acceptance_dist(config));
  } else {
    for (Index n : config.sizes) {
      switch (config.kind) {
        case ExperimentKind::theorem: absorb(run_theorem(config, n)); break;
        case ExperimentKind::equivalence: absorb(run_equivalence(config, n)); break;
        case ExperimentKind::lemma_audit: absorb(run_lemma_audit(config, n)); break;
        case ExperimentKind::coupon: absorb(run_coupon(config, n)); break;
        case ExperimentKind::acceptance_dist: break;
      }
    }
  }
  report["results"] = std::move(sections);
  report["gate_passed"] = passed;
  result.report = std::move(report);
  result.gate_passed = passed;
  return result;
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& config,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    out << result.report.dump(2) << '\n';
  }
  const bool sweep = result.runs.size() > 1;
  for (const SizeRun& run : result.runs) {
    const std::string suffix = sweep ? "_n" + std::to_string(run.n) : "";
    std::ofstream csv(dir / ("trials" + suffix + ".csv"));
    csv << kCsvHeader << '\n';
    // Groups are laid end to end: trial = group * trials + index.
    std::uint64_t offset = 0;
    for (const auto& [name, trials] : run.groups) {
      for (const auto& t : trials) {
        csv << offset + t.trial << ',' << t.seed << ',' << t.husband_count << ','
            << t.first_output_time << ',' << t.accept_pre_output << ',' << t.elapsed_us
            << '\n';
      }
      offset += trials.size();
    }
    if (config.plot_data) {
      for (const auto& [name, trials] : run.groups) {
        const std::string group = run.groups.size() > 1 ? "_" + name : "";
        std::ofstream tsv(dir / ("counts_n" + std::to_string(run.n) + group + ".tsv"));
        const auto hist = histogram_of(trials);
        std::size_t total = 0;
        for (const auto& [k, v] : hist) total += v;
        for (const auto& [k, v] : hist) {
          tsv << k << '\t' << static_cast<double>(v) / static_cast<double>(total) << '\n';
        }
      }
    }
  }
}

}  // namespace sh::harness
