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

#include "stablehusbands/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "stablehusbands/bounds.hpp"
#include "stablehusbands/harness.hpp"
#include "stablehusbands/instance.hpp"
#include "stablehusbands/json_io.hpp"
#include "stablehusbands/matching.hpp"
#include "stablehusbands/oracle.hpp"
#include "stablehusbands/random_model.hpp"

namespace sh::cli {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

bounds::Pgf parse_pgf(const std::vector<std::string>& spec) {
  auto number = [&](std::size_t i) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(spec.at(i), &used);
      if (used != spec[i].size()) throw std::invalid_argument("");
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("--pgf expects 'binom n N' or 'accept m'");
    }
  };
  if (spec.size() == 3 && spec[0] == "binom") {
    const auto n = number(1);
    if (n == 0) throw std::invalid_argument("binom pgf needs n >= 1");
    return bounds::BinomialPower{n, number(2)};
  }
  if (spec.size() == 2 && spec[0] == "accept") return bounds::RisingProduct{number(1)};
  throw std::invalid_argument("--pgf expects 'binom n N' or 'accept m'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stable husbands: enumeration, random model and tail bounds", "stablehusbands"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Write a uniform random instance");
  Index gen_n = 4;
  std::uint64_t gen_seed = 1;
  bool gen_fixture = false;
  generate->add_option("--n", gen_n, "Players per side")->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Generator seed");
  generate->add_flag("--fixture", gen_fixture, "Emit the 4x4 worked example instead");

  // husbands
  auto* husbands = app.add_subcommand("husbands", "Enumerate one girl's stable husbands");
  std::string instance_path;
  Index girl = 0;
  bool trace = false;
  husbands->add_option("--instance", instance_path, "Instance JSON")->required();
  husbands->add_option("--girl", girl, "Designated girl index")->required();
  husbands->add_flag("--trace", trace, "Include the proposal trace");

  // check
  auto* check = app.add_subcommand("check", "List blocking pairs of a matching");
  std::string matching_path;
  check->add_option("--instance", instance_path, "Instance JSON")->required();
  check->add_option("--matching", matching_path, "Matching JSON")->required();

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Brute-force all stable matchings");
  Index limit = oracle::kDefaultLimit;
  enumerate->add_option("--instance", instance_path, "Instance JSON")->required();
  enumerate->add_option("--limit", limit, "Largest n accepted");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run the randomized proposal process");
  Index sim_n = 0;
  Index sim_girl = 0;
  std::uint64_t sim_seed = 1;
  std::optional<std::uint64_t> cap;
  bool natural = false;
  std::optional<double> delta;
  bool audit = false;
  simulate->add_option("--n", sim_n, "Players per side")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--girl", sim_girl, "Designated girl");
  simulate->add_option("--seed", sim_seed, "Generator seed");
  auto* cap_opt = simulate->add_option("--cap", cap, "Stop after this many proposals");
  auto* natural_opt =
      simulate->add_flag("--natural", natural, "Stop when the proposer has tried every girl");
  cap_opt->excludes(natural_opt);
  simulate->add_option("--delta", delta, "Window exponent: cap = floor(n^(1+delta))");
  simulate->add_flag("--audit", audit, "Audit the run against the lemma bounds");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "Tail bound from a pgf");
  std::vector<std::string> pgf_spec;
  std::string tail = "upper";
  double r = 0;
  std::optional<double> x;
  bool optimize = false;
  bounds_cmd->add_option("--pgf", pgf_spec, "binom n N | accept m")->required()->expected(2, 3);
  bounds_cmd->add_option("--tail", tail, "lower | upper")
      ->check(CLI::IsMember({"lower", "upper"}));
  bounds_cmd->add_option("--r", r, "Threshold")->required();
  auto* x_opt = bounds_cmd->add_option("--x", x, "Evaluation point");
  auto* opt_opt = bounds_cmd->add_flag("--optimize", optimize, "Minimize over x");
  x_opt->excludes(opt_opt);

  // envelope
  auto* envelope = app.add_subcommand("envelope", "Growth envelope for size n");
  double env_n = 0, env_c = 0, env_big_c = 0, env_delta = 0, env_eps = 0;
  envelope->add_option("--n", env_n)->required();
  envelope->add_option("--c", env_c)->required();
  envelope->add_option("--C", env_big_c)->required();
  envelope->add_option("--delta", env_delta)->required();
  envelope->add_option("--eps", env_eps)->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo campaign");
  std::string config_path;
  std::string kind;
  std::vector<Index> sizes;
  std::optional<std::uint64_t> trials, master_seed, m;
  std::optional<std::string> method;
  std::optional<double> c, big_c, exp_delta, eps;
  std::optional<unsigned> workers;
  std::optional<Index> exp_girl;
  std::string out_dir;
  bool plot_data = false;
  experiment->add_option("--config", config_path, "Experiment config JSON");
  experiment->add_option("--kind", kind,
                         "theorem | equivalence | lemma_audit | acceptance_dist | coupon");
  experiment->add_option("--n", sizes, "Size (repeatable for a sweep)");
  experiment->add_option("--trials", trials);
  experiment->add_option("--seed", master_seed, "Master seed");
  experiment->add_option("--girl", exp_girl);
  experiment->add_option("--method", method, "enumeration | process");
  experiment->add_option("--c", c);
  experiment->add_option("--C", big_c);
  experiment->add_option("--delta", exp_delta);
  experiment->add_option("--eps", eps);
  experiment->add_option("--m", m, "Proposals per girl (acceptance_dist)");
  experiment->add_option("--workers", workers);
  experiment->add_option("--out", out_dir, "Output directory");
  experiment->add_flag("--plot-data", plot_data, "Also write count/frequency TSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*generate) {
      const auto instance = gen_fixture ? worked_example() : generate_uniform(gen_n, gen_seed);
      save(instance, out);
    } else if (*husbands) {
      const auto instance = load(instance_path);
      const auto result = stable_husbands(instance, girl, trace);
      out << enumeration_json(result, is_worked_example(instance)).dump(2) << '\n';
    } else if (*check) {
      const auto instance = load(instance_path);
      const auto matching = matching_from_json(read_json(matching_path), instance.size());
      const auto pairs = find_blocking_pairs(instance, matching);
      out << json{{"stable", pairs.empty() && matching.complete()},
                  {"blocking_pairs", blocking_pairs_json(pairs)}}
                 .dump(2)
          << '\n';
    } else if (*enumerate) {
      const auto instance = load(instance_path);
      out << stable_set_json(oracle::enumerate_stable(instance, limit)).dump(2) << '\n';
    } else if (*simulate) {
      if (sim_girl >= sim_n) throw std::invalid_argument("--girl must be below --n");
      model::RunOptions options;
      if (natural) {
        options.stop = model::StopRule::natural;
        if (delta) options.max_proposals = model::time_window(sim_n, *delta);
      } else {
        options.stop = model::StopRule::time_cap;
        if (cap) {
          options.max_proposals = *cap;
        } else if (delta) {
          options.max_proposals = model::time_window(sim_n, *delta);
        } else {
          options.stop = model::StopRule::natural;
        }
      }
      if (audit && (options.stop != model::StopRule::time_cap || !delta)) {
        throw std::invalid_argument("--audit needs a time-capped run with --delta");
      }
      const auto result = model::run(sim_n, sim_girl, sim_seed, options);
      json doc;
      json outputs = json::array();
      for (const auto& o : result.outputs) outputs.push_back({{"boy", o.boy}, {"time", o.time}});
      doc["outputs"] = std::move(outputs);
      doc["husband_count"] = result.outputs.size();
      doc["first_output_time"] = result.stats.first_output_time
                                     ? json(*result.stats.first_output_time)
                                     : json(nullptr);
      doc["stopped_by"] = result.stopped_by == model::StopRule::natural      ? "natural"
                          : result.stopped_by == model::StopRule::time_cap ? "time_cap"
                                                                           : "first_output";
      doc["stats"] = stats_summary_json(result.stats);
      int code = kOk;
      if (audit) {
        const auto report = model::lemma_audit(result.stats, sim_n, *delta);
        doc["audit"] = audit_json(report);
        if (!report.passed()) code = kGateFailed;
      }
      out << doc.dump(2) << '\n';
      return code;
    } else if (*bounds_cmd) {
      const auto pgf = parse_pgf(pgf_spec);
      const auto direction = tail == "lower" ? bounds::Tail::lower : bounds::Tail::upper;
      bounds::TailBound b;
      if (optimize || !x) {
        b = bounds::optimize_tail(pgf, direction, r);
      } else {
        b = bounds::tail_bound(pgf, direction, r, *x);
      }
      out << tail_bound_json(b).dump(2) << '\n';
    } else if (*envelope) {
      const auto e = bounds::theorem_envelope(env_n, env_c, env_big_c, env_delta, env_eps);
      out << envelope_json(e).dump(2) << '\n';
    } else if (*experiment) {
      harness::ExperimentConfig config;
      try {
        json doc = config_path.empty() ? json::object() : read_json(config_path);
        if (!kind.empty()) doc["kind"] = kind;
        if (!doc.contains("kind")) throw harness::ConfigError("--kind or --config is required");
        if (!sizes.empty()) doc["sizes"] = sizes;
        if (trials) doc["trials"] = *trials;
        if (master_seed) doc["master_seed"] = *master_seed;
        if (exp_girl) doc["girl"] = *exp_girl;
        if (method) doc["method"] = *method;
        if (c) doc["c"] = *c;
        if (big_c) doc["C"] = *big_c;
        if (exp_delta) doc["delta"] = *exp_delta;
        if (eps) doc["epsilon"] = *eps;
        if (m) doc["m"] = *m;
        if (workers) doc["workers"] = *workers;
        config = harness::parse_config(doc);
        if (!out_dir.empty()) config.output_dir = out_dir;
        if (plot_data) config.plot_data = true;
      } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kBadInput;
      }
      const auto result = harness::run_experiment(config);
      if (!config.output_dir.empty()) harness::write_outputs(result, config, config.output_dir);
      out << result.report.dump(2) << '\n';
      return result.gate_passed ? kOk : kGateFailed;
    }
  } catch (const InstanceError& e) {
    err << "instance error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}

}  // namespace sh::cli
