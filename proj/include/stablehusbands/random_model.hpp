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
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stablehusbands/instance.hpp"
#include "stablehusbands/rng.hpp"

namespace sh::model {

/// How a proposer picks the next girl.
enum class ProposalMode {
  /// Uniform over all n girls; repeats are redundant and always rejected.
  amnesia,
  /// Uniform over the girls he has not tried yet.
  memory,
};

enum class StopRule {
  /// The proposer has tried every girl, the point at which the
  /// deterministic enumeration would terminate.
  natural,
  /// Stop after max_proposals proposals, whatever happens.
  time_cap,
  /// Stop as soon as the first output has been produced.
  first_output,
};

struct Output {
  Index boy;
  /// Proposals made before the output.
  std::uint64_t time;
  friend bool operator==(const Output&, const Output&) = default;
};

/// Live state of the branching process.
struct ProcessState {
  Index n = 0;
  Index girl = 0;
  /// proposed[b][j]: boy b has proposed to girl j.
  std::vector<std::vector<bool>> proposed;
  std::vector<Index> proposed_count;
  /// Boys promoted to proposer so far (they are promoted in index order).
  Index promoted = 0;
  Index proposer = kNone;
  Index last_girl = kNone;
  /// Boy who made each girl's best offer so far.
  std::vector<Index> best_offer;
  /// Non-redundant proposals received by each girl.
  std::vector<std::uint64_t> offers;
  std::uint64_t time = 0;
  std::vector<Output> outputs;

  /// Empty state with nobody promoted yet.
  static ProcessState empty(Index n, Index girl);
  void mark_proposed(Index boy, Index girl);
};

struct RunLength {
  Index boy;
  std::uint64_t length;
  std::uint64_t nonredundant;
};

struct RunStats {
  std::vector<std::uint64_t> proposals_per_girl;
  std::vector<std::uint64_t> nonredundant_per_girl;
  std::vector<std::uint64_t> runs_per_boy;
  std::vector<std::uint64_t> proposals_per_boy;
  std::vector<RunLength> run_lengths;
  /// Keyed by boy * n + girl. Left empty when pair tracking is off.
  std::unordered_map<std::uint64_t, std::uint32_t> proposals_boy_to_girl;
  bool pairs_tracked = true;
  std::optional<std::uint64_t> first_output_time;
  std::uint64_t acceptances_by_g = 0;
  std::uint64_t acceptances_by_g_before_first_output = 0;
  std::uint64_t total_proposals = 0;

  explicit RunStats(Index n = 0);
  std::uint32_t pair_count(Index boy, Index girl) const;
};

struct StepEvent {
  Index proposer = kNone;
  Index girl = kNone;
  bool redundant = false;
  bool accepted = false;
  /// Set when the step ended in an output.
  std::optional<Index> output;
};

/// Stepper for the randomized proposal process. Preferences are never
/// materialized: each proposal goes to a fresh uniform girl, and the girl
/// accepts her k-th non-redundant proposal with probability 1/k.
class Process {
 public:
  Process(Index n, Index girl, ProposalMode mode = ProposalMode::amnesia,
          bool track_pairs = true);
  /// Resumes from an arbitrary state. Statistics start from zero.
  explicit Process(ProcessState state, ProposalMode mode = ProposalMode::amnesia,
                   bool track_pairs = true);

  /// One proposal. Draws one uniform integer for the girl and, when the
  /// proposal is not redundant, one uniform real for the accept test.
  StepEvent step(Rng& rng);

  /// The current proposer has tried every girl.
  bool exhausted() const {
    return state_.proposed_count[state_.proposer] == state_.n;
  }

  const ProcessState& state() const noexcept { return state_; }
  const RunStats& stats() const noexcept { return stats_; }

  /// Statistics with the open run, if non-empty, appended.
  RunStats finish() const;

 private:
  void dispatch();
  void begin_run(Index boy);
  Index draw_memory(Rng& rng);

  ProcessState state_;
  RunStats stats_;
  ProposalMode mode_;
  std::uint64_t run_length_ = 0;
  std::uint64_t run_nonredundant_ = 0;
  // Per-boy untried girls, built lazily in memory mode.
  std::vector<std::vector<Index>> untried_;
};

struct RunOptions {
  std::uint64_t max_proposals = UINT64_MAX;
  StopRule stop = StopRule::natural;
  ProposalMode mode = ProposalMode::amnesia;
  bool track_pairs = true;
};

struct RunResult {
  std::vector<Output> outputs;
  RunStats stats;
  StopRule stopped_by = StopRule::natural;
};

RunResult run(Index n, Index girl, std::uint64_t seed, const RunOptions& options);

/// floor(n^(1 + delta)), the proposal window used by the lemma audits.
std::uint64_t time_window(Index n, double delta);

struct LemmaCheck {
  std::string id;
  std::string statement;
  double lower = 0;
  double upper = 0;
  bool passed = true;
  std::uint64_t violation_count = 0;
  /// First few offending entities, e.g. "girl 17: 3 proposals".
  std::vector<std::string> violations;
};

struct AuditReport {
  Index n = 0;
  double delta = 0;
  std::uint64_t cap = 0;
  std::vector<LemmaCheck> checks;
  bool passed() const;
};

/// Compares a time-capped run's statistics with the per-entity bounds of
/// the proposal-count lemmas (natural logs, thresholds below 1 raised to
/// 1). Throws std::invalid_argument if the run did not last exactly
/// time_window(n, delta) proposals.
AuditReport lemma_audit(const RunStats& stats, Index n, double delta);

}  // namespace sh::model
