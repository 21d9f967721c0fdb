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

#include <cstddef>
#include <string>
#include <vector>

#include "stablehusbands/instance.hpp"

namespace sh {

/// A possibly partial pairing. Absent partners are kNone.
struct Matching {
  std::vector<Index> husband_of;
  std::vector<Index> wife_of;

  Matching() = default;
  explicit Matching(Index n) : husband_of(n, kNone), wife_of(n, kNone) {}

  /// Builds the matching from a husband-per-girl list.
  static Matching from_husbands(std::vector<Index> husbands);

  Index size() const noexcept { return static_cast<Index>(husband_of.size()); }
  bool complete() const;
  /// husband_of and wife_of describe the same pairs and no index repeats.
  bool consistent() const;

  void pair(Index girl, Index boy) {
    husband_of[girl] = boy;
    wife_of[boy] = girl;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

struct BlockingPair {
  Index girl;
  Index boy;
  friend bool operator==(const BlockingPair&, const BlockingPair&) = default;
};

/// Every pair that would rather be together than with their partners, in
/// (girl, boy) order. An unmatched person prefers anyone to nobody.
/// Throws std::invalid_argument on an inconsistent matching.
std::vector<BlockingPair> find_blocking_pairs(const PreferenceInstance& instance,
                                              const Matching& matching);

inline bool is_stable(const PreferenceInstance& instance, const Matching& m) {
  return m.complete() && find_blocking_pairs(instance, m).empty();
}

/// Boy-proposing deferred acceptance; yields the boy-optimal stable matching.
Matching gale_shapley_boys_propose(const PreferenceInstance& instance);

/// One row of the event log kept by stable_husbands. Mirrors the columns of
/// the classic hand trace: step, matching before the action, P, H, action.
struct TraceRow {
  enum class Step { select, propose };
  enum class Action { none, accept, reject, output, terminate };

  Step step = Step::select;
  Action action = Action::none;
  Index proposer = kNone;
  Index proposee = kNone;
  /// Boy displaced by an acceptance (he is rejected as a consequence).
  Index displaced = kNone;
  /// Number of proposals made so far, counting this one.
  std::size_t time = 0;
  /// Pairs before the action, plus the designated girl's best offer while
  /// she is unpaired after the first output (shown in parentheses).
  std::vector<Index> husbands_before;
  Index held_offer = kNone;
};

struct HusbandEnumeration {
  Index girl = kNone;
  /// Stable husbands of `girl` in output order (worst first).
  std::vector<Index> husbands;
  /// The complete stable matching current at each output.
  std::vector<Matching> matchings;
  std::vector<TraceRow> trace;
  std::size_t proposals = 0;
  /// Proposals made before the first output; equals `proposals` if none.
  std::size_t first_output_time = 0;
  /// Times `girl` accepted a proposal before the first output.
  std::size_t acceptances_before_first_output = 0;
};

/// Enumerates all stable husbands of `girl` by the single-girl proposal
/// algorithm:
///
///   A0. everybody starts unpaired;
///   A1. if some boy is unpaired, he (lowest index first) becomes P;
///       otherwise the matching is stable: output the girl's partner S,
///       dissolve that pair and let P = S;
///   A2. stop if P has proposed to every girl, else P proposes to his best
///       girl H not yet approached;
///   A3. H rejects P if she has ever had an offer she prefers, otherwise
///       accepts and her old partner (if any) becomes P and goes to A2; a
///       previously unpaired H sends control to A1.
///
/// Girls never lower their standards: the best offer so far is remembered
/// even while the designated girl is unpaired after an output.
/// Throws std::out_of_range if `girl` is not a valid index.
HusbandEnumeration stable_husbands(const PreferenceInstance& instance,
                                   Index girl, bool keep_trace = false);

/// "AZ,BW,CX,DY" style rendering of the pairs in girl order.
std::string format_matching(const std::vector<Index>& husband_of, bool letters,
                            Index held_girl = kNone, Index held_offer = kNone);

/// One line per trace row: step, matching, P, H, action, tab separated.
std::vector<std::string> format_trace(const HusbandEnumeration& result,
                                      bool letters);

}  // namespace sh
