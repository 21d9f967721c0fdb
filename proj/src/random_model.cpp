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

#include "stablehusbands/random_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sh::model {

ProcessState ProcessState::empty(Index n, Index girl) {
  if (n == 0) throw std::invalid_argument("process needs n >= 1");
  if (girl >= n) throw std::out_of_range("designated girl out of range");
  ProcessState s;
  s.n = n;
  s.girl = girl;
  s.proposed.assign(n, std::vector<bool>(n, false));
  s.proposed_count.assign(n, 0);
  s.best_offer.assign(n, kNone);
  s.offers.assign(n, 0);
  return s;
}

void ProcessState::mark_proposed(Index boy, Index g) {
  if (!proposed[boy][g]) {
    proposed[boy][g] = true;
    ++proposed_count[boy];
  }
}

RunStats::RunStats(Index n)
    : proposals_per_girl(n, 0),
      nonredundant_per_girl(n, 0),
      runs_per_boy(n, 0),
      proposals_per_boy(n, 0) {}

std::uint32_t RunStats::pair_count(Index boy, Index girl) const {
  const auto n = static_cast<std::uint64_t>(proposals_per_girl.size());
  auto it = proposals_boy_to_girl.find(boy * n + girl);
  return it == proposals_boy_to_girl.end() ? 0 : it->second;
}

Process::Process(Index n, Index girl, ProposalMode mode, bool track_pairs)
    : Process(ProcessState::empty(n, girl), mode, track_pairs) {}

Process::Process(ProcessState state, ProposalMode mode, bool track_pairs)
    : state_(std::move(state)), stats_(state_.n), mode_(mode) {
  stats_.pairs_tracked = track_pairs;
  if (mode_ == ProposalMode::memory) untried_.resize(state_.n);
  if (state_.proposer == kNone) {
    dispatch();
  } else {
    begin_run(state_.proposer);
  }
}

void Process::begin_run(Index boy) {
  ++stats_.runs_per_boy[boy];
  run_length_ = 0;
  run_nonredundant_ = 0;
}

// Promote the next fresh boy, or once every boy is in play, output the
// designated girl's current best offer and let him propose again.
void Process::dispatch() {
  if (state_.promoted < state_.n) {
    state_.proposer = state_.promoted++;
  } else {
    const Index s = state_.best_offer[state_.girl];
    if (state_.outputs.empty()) stats_.first_output_time = state_.time;
    state_.outputs.push_back({s, state_.time});
    state_.proposer = s;
  }
  begin_run(state_.proposer);
}

Index Process::draw_memory(Rng& rng) {
  const Index p = state_.proposer;
  auto& pool = untried_[p];
  if (pool.empty()) {
    for (Index j = 0; j < state_.n; ++j)
      if (!state_.proposed[p][j]) pool.push_back(j);
  }
  if (pool.empty()) {
    throw std::logic_error("proposer has already tried every girl");
  }
  const auto j = static_cast<std::size_t>(rng.uniform_below(pool.size()));
  const Index h = pool[j];
  pool[j] = pool.back();
  pool.pop_back();
  return h;
}

StepEvent Process::step(Rng& rng) {
  StepEvent event;
  const Index p = state_.proposer;
  const Index n = state_.n;
  const Index h = mode_ == ProposalMode::amnesia
                      ? static_cast<Index>(rng.uniform_below(n))
                      : draw_memory(rng);
  ++state_.time;
  state_.last_girl = h;
  event.proposer = p;
  event.girl = h;

  ++stats_.total_proposals;
  ++stats_.proposals_per_girl[h];
  ++stats_.proposals_per_boy[p];
  if (stats_.pairs_tracked) {
    ++stats_.proposals_boy_to_girl[static_cast<std::uint64_t>(p) * n + h];
  }
  ++run_length_;

  if (state_.proposed[p][h]) {
    event.redundant = true;
    return event;
  }
  state_.mark_proposed(p, h);
  ++stats_.nonredundant_per_girl[h];
  ++run_nonredundant_;

  const std::uint64_t k = ++state_.offers[h];
  const double u = rng.uniform01();
  if (!(u < 1.0 / static_cast<double>(k))) return event;

  event.accepted = true;
  stats_.run_lengths.push_back({p, run_length_, run_nonredundant_});
  const bool after_output = !state_.outputs.empty();
  if (h == state_.girl) {
    ++stats_.acceptances_by_g;
    if (!after_output) ++stats_.acceptances_by_g_before_first_output;
  }
  const Index displaced = state_.best_offer[h];
  state_.best_offer[h] = p;
  if (displaced == kNone || (h == state_.girl && after_output)) {
    const std::size_t before = state_.outputs.size();
    dispatch();
    if (state_.outputs.size() > before) event.output = state_.outputs.back().boy;
  } else {
    state_.proposer = displaced;
    begin_run(displaced);
  }
  return event;
}

RunStats Process::finish() const {
  RunStats out = stats_;
  if (run_length_ > 0) {
    out.run_lengths.push_back({state_.proposer, run_length_, run_nonredundant_});
  }
  return out;
}

RunResult run(Index n, Index girl, std::uint64_t seed,
              const RunOptions& options) {
  if (options.max_proposals == 0) {
    throw std::invalid_argument("max_proposals must be at least 1");
  }
  Process process(n, girl, options.mode, options.track_pairs);
  Rng rng(seed);
  RunResult result;
  for (;;) {
    const ProcessState& s = process.state();
    if (process.exhausted() && (options.stop == StopRule::natural ||
                                options.mode == ProposalMode::memory)) {
      result.stopped_by = StopRule::natural;
      break;
    }
    if (options.stop == StopRule::first_output && !s.outputs.empty()) {
      result.stopped_by = StopRule::first_output;
      break;
    }
    if (s.time >= options.max_proposals) {
      result.stopped_by = StopRule::time_cap;
      break;
    }
    process.step(rng);
  }
  result.outputs = process.state().outputs;
  result.stats = process.finish();
  return result;
}

std::uint64_t time_window(Index n, double delta) {
  const double x = std::pow(static_cast<double>(n), 1.0 + delta);
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * x) return static_cast<std::uint64_t>(nearest);
  return static_cast<std::uint64_t>(std::floor(x));
}

bool AuditReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const LemmaCheck& c) { return c.passed; });
}

namespace {

constexpr std::size_t kMaxListed = 20;

// Thresholds below 1 are raised to 1; n = 1 makes log-divided thresholds
// meaningless, and they are taken as 1 as well.
double clamp_threshold(double x) { return std::isfinite(x) ? std::max(x, 1.0) : 1.0; }

LemmaCheck make_check(std::string id, std::string statement) {
  LemmaCheck check;
  check.id = std::move(id);
  check.statement = std::move(statement);
  return check;
}

void flag(LemmaCheck& check, std::string what) {
  check.passed = false;
  if (check.violations.size() < kMaxListed) check.violations.push_back(std::move(what));
  ++check.violation_count;
}

}  // namespace

AuditReport lemma_audit(const RunStats& stats, Index n, double delta) {
  if (n == 0 || stats.proposals_per_girl.size() != n) {
    throw std::invalid_argument("lemma_audit: statistics are not for n=" +
                                std::to_string(n));
  }
  AuditReport report;
  report.n = n;
  report.delta = delta;
  report.cap = time_window(n, delta);
  if (stats.total_proposals != report.cap) {
    throw std::invalid_argument(
        "lemma_audit: run made " + std::to_string(stats.total_proposals) +
        " proposals but the window for n=" + std::to_string(n) +
        ", delta=" + std::to_string(delta) + " is " + std::to_string(report.cap));
  }
  if (!stats.pairs_tracked) {
    throw std::invalid_argument("lemma_audit: run was made without pair tracking");
  }

  const double nd = std::pow(static_cast<double>(n), delta);
  const double ln = std::log(static_cast<double>(n));
  const double ln2 = ln * ln;

  LemmaCheck l1 = make_check("L1", "every girl receives between n^d/2 and 2n^d proposals");
  l1.lower = clamp_threshold(0.5 * nd);
  l1.upper = clamp_threshold(2.0 * nd);
  for (Index j = 0; j < n; ++j) {
    const auto v = static_cast<double>(stats.proposals_per_girl[j]);
    if (v < l1.lower || v > l1.upper)
      flag(l1, "girl " + std::to_string(j) + ": " +
                   std::to_string(stats.proposals_per_girl[j]) + " proposals");
  }

  LemmaCheck l2 = make_check("L2", "every boy begins at most 2n^d runs");
  l2.upper = clamp_threshold(2.0 * nd);
  for (Index b = 0; b < n; ++b) {
    if (static_cast<double>(stats.runs_per_boy[b]) > l2.upper)
      flag(l2, "boy " + std::to_string(b) + ": " +
                   std::to_string(stats.runs_per_boy[b]) + " runs");
  }

  LemmaCheck l3 = make_check("L3", "every run has at most n^d (ln n)^2 non-redundant proposals");
  LemmaCheck l5 = make_check("L5", "every run has at most n^d (ln n)^2 proposals");
  l3.upper = l5.upper = clamp_threshold(nd * ln2);
  for (std::size_t i = 0; i < stats.run_lengths.size(); ++i) {
    const RunLength& r = stats.run_lengths[i];
    if (static_cast<double>(r.nonredundant) > l3.upper)
      flag(l3, "run " + std::to_string(i) + " of boy " + std::to_string(r.boy) +
                   ": " + std::to_string(r.nonredundant) + " non-redundant");
    if (static_cast<double>(r.length) > l5.upper)
      flag(l5, "run " + std::to_string(i) + " of boy " + std::to_string(r.boy) +
                   ": " + std::to_string(r.length) + " proposals");
  }

  LemmaCheck l6 = make_check("L6", "every boy makes at most 2n^(2d) (ln n)^2 proposals");
  l6.upper = clamp_threshold(2.0 * nd * nd * ln2);
  for (Index b = 0; b < n; ++b) {
    if (static_cast<double>(stats.proposals_per_boy[b]) > l6.upper)
      flag(l6, "boy " + std::to_string(b) + ": " +
                   std::to_string(stats.proposals_per_boy[b]) + " proposals");
  }

  LemmaCheck l7 = make_check("L7", "no boy proposes to one girl more than ln n times");
  l7.upper = clamp_threshold(ln);
  {
    // Sorted so that the listed offenders do not depend on hash order.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs(
        stats.proposals_boy_to_girl.begin(), stats.proposals_boy_to_girl.end());
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [key, count] : pairs) {
      if (static_cast<double>(count) > l7.upper)
        flag(l7, "boy " + std::to_string(key / n) + " -> girl " +
                     std::to_string(key % n) + ": " + std::to_string(count) +
                     " proposals");
    }
  }

  LemmaCheck l8 = make_check("L8", "every girl receives at least n^d / (2 ln n) non-redundant proposals");
  l8.lower = clamp_threshold(0.5 * nd / ln);
  for (Index j = 0; j < n; ++j) {
    if (static_cast<double>(stats.nonredundant_per_girl[j]) < l8.lower)
      flag(l8, "girl " + std::to_string(j) + ": " +
                   std::to_string(stats.nonredundant_per_girl[j]) +
                   " non-redundant proposals");
  }

  report.checks = {l1, l2, l3, l5, l6, l7, l8};
  return report;
}

}  // namespace sh::model
