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

#include "stablehusbands/matching.hpp"

#include <stdexcept>

namespace sh {

Matching Matching::from_husbands(std::vector<Index> husbands) {
  Matching m(static_cast<Index>(husbands.size()));
  for (Index g = 0; g < husbands.size(); ++g) {
    const Index b = husbands[g];
    if (b == kNone) continue;
    if (b >= husbands.size() || m.wife_of[b] != kNone) {
      throw std::invalid_argument("matching lists boy " + std::to_string(b) +
                                  " out of range or twice");
    }
    m.pair(g, b);
  }
  return m;
}

bool Matching::complete() const {
  for (Index b : husband_of)
    if (b == kNone) return false;
  return true;
}

bool Matching::consistent() const {
  const std::size_t n = husband_of.size();
  if (wife_of.size() != n) return false;
  for (std::size_t g = 0; g < n; ++g) {
    const Index b = husband_of[g];
    if (b != kNone && (b >= n || wife_of[b] != g)) return false;
  }
  for (std::size_t b = 0; b < n; ++b) {
    const Index g = wife_of[b];
    if (g != kNone && (g >= n || husband_of[g] != b)) return false;
  }
  return true;
}

std::vector<BlockingPair> find_blocking_pairs(const PreferenceInstance& instance,
                                              const Matching& matching) {
  const Index n = instance.size();
  if (matching.size() != n || !matching.consistent()) {
    throw std::invalid_argument("find_blocking_pairs: inconsistent matching");
  }
  std::vector<BlockingPair> out;
  for (Index g = 0; g < n; ++g) {
    const Index husband = matching.husband_of[g];
    for (Index b = 0; b < n; ++b) {
      if (b == husband) continue;
      const bool girl_wants =
          husband == kNone || instance.girl_prefers(g, b, husband);
      if (!girl_wants) continue;
      const Index wife = matching.wife_of[b];
      if (wife == kNone || instance.boy_prefers(b, g, wife)) {
        out.push_back({g, b});
      }
    }
  }
  return out;
}

Matching gale_shapley_boys_propose(const PreferenceInstance& instance) {
  const Index n = instance.size();
  Matching m(n);
  std::vector<Index> next(n, 0);
  std::vector<Index> free_boys;
  free_boys.reserve(n);
  for (Index b = n; b-- > 0;) free_boys.push_back(b);
  while (!free_boys.empty()) {
    Index boy = free_boys.back();
    free_boys.pop_back();
    // A free boy always finds someone: at most n-1 girls can be held by
    // others, and a girl once proposed to stays engaged.
    while (boy != kNone) {
      const Index girl = instance.boy_prefs(boy)[next[boy]++];
      const Index current = m.husband_of[girl];
      if (current == kNone) {
        m.pair(girl, boy);
        boy = kNone;
      } else if (instance.girl_prefers(girl, boy, current)) {
        m.pair(girl, boy);
        m.wife_of[current] = kNone;
        boy = current;
      }
    }
  }
  return m;
}

HusbandEnumeration stable_husbands(const PreferenceInstance& instance,
                                   Index girl, bool keep_trace) {
  const Index n = instance.size();
  if (girl >= n) {
    throw std::out_of_range("stable_husbands: girl " + std::to_string(girl) +
                            " outside [0, " + std::to_string(n) + ")");
  }

  HusbandEnumeration result;
  result.girl = girl;

  Matching current(n);
  // Rank of the best offer each girl has received; n means none yet.
  std::vector<Index> best_rank(n, n);
  std::vector<Index> best_boy(n, kNone);
  std::vector<Index> next(n, 0);
  // Boys are paired in index order before the first output, and afterwards
  // A1 only runs when everybody is paired, so the lowest unpaired boy is
  // always at or after this cursor.
  Index cursor = 0;
  bool output_seen = false;

  auto record = [&](TraceRow::Step step, TraceRow::Action action, Index p,
                    Index h, Index displaced) {
    if (!keep_trace) return;
    TraceRow row;
    row.step = step;
    row.action = action;
    row.proposer = p;
    row.proposee = h;
    row.displaced = displaced;
    row.time = result.proposals;
    row.husbands_before = current.husband_of;
    if (output_seen && current.husband_of[girl] == kNone)
      row.held_offer = best_boy[girl];
    result.trace.push_back(std::move(row));
  };

  Index proposer = kNone;
  for (;;) {
    // A1
    if (proposer == kNone) {
      while (cursor < n && current.wife_of[cursor] != kNone) ++cursor;
      if (cursor < n) {
        proposer = cursor;
        record(TraceRow::Step::select, TraceRow::Action::none, proposer, kNone,
               kNone);
      } else {
        const Index s = current.husband_of[girl];
        record(TraceRow::Step::select, TraceRow::Action::output, s, kNone,
               kNone);
        if (!output_seen) result.first_output_time = result.proposals;
        output_seen = true;
        result.husbands.push_back(s);
        result.matchings.push_back(current);
        current.husband_of[girl] = kNone;
        current.wife_of[s] = kNone;
        proposer = s;
      }
    }

    // A2
    if (next[proposer] == n) {
      record(TraceRow::Step::propose, TraceRow::Action::terminate, proposer,
             kNone, kNone);
      break;
    }
    const Index h = instance.boy_prefs(proposer)[next[proposer]++];
    ++result.proposals;

    // A3
    const Index rank = instance.girl_rank(h, proposer);
    if (rank > best_rank[h]) {
      record(TraceRow::Step::propose, TraceRow::Action::reject, proposer, h,
             kNone);
      continue;
    }
    const Index previous = current.husband_of[h];
    record(TraceRow::Step::propose, TraceRow::Action::accept, proposer, h,
           previous);
    best_rank[h] = rank;
    best_boy[h] = proposer;
    if (h == girl && !output_seen) ++result.acceptances_before_first_output;
    current.pair(h, proposer);
    if (previous != kNone) current.wife_of[previous] = kNone;
    proposer = previous;
  }

  if (!output_seen) result.first_output_time = result.proposals;
  return result;
}

std::string format_matching(const std::vector<Index>& husband_of, bool letters,
                            Index held_girl, Index held_offer) {
  std::string out;
  for (Index g = 0; g < husband_of.size(); ++g) {
    std::string pair;
    if (husband_of[g] != kNone) {
      pair = girl_label(g, letters) + (letters ? "" : "-") +
             boy_label(husband_of[g], letters);
    } else if (g == held_girl && held_offer != kNone) {
      pair = "(" + girl_label(g, letters) + (letters ? "" : "-") +
             boy_label(held_offer, letters) + ")";
    } else {
      continue;
    }
    if (!out.empty()) out += ',';
    out += pair;
  }
  return out;
}

std::vector<std::string> format_trace(const HusbandEnumeration& result,
                                      bool letters) {
  std::vector<std::string> lines;
  for (const TraceRow& row : result.trace) {
    std::string line = row.step == TraceRow::Step::select ? "A1" : "A2";
    line += '\t';
    line += format_matching(row.husbands_before, letters, result.girl,
                            row.held_offer);
    line += '\t';
    line += boy_label(row.proposer, letters);
    line += '\t';
    if (row.proposee != kNone) line += girl_label(row.proposee, letters);
    line += '\t';
    const std::string h = girl_label(row.proposee, letters);
    const std::string p = boy_label(row.proposer, letters);
    switch (row.action) {
      case TraceRow::Action::none:
        break;
      case TraceRow::Action::accept:
        line += h + " accepts " + p;
        break;
      case TraceRow::Action::reject:
        line += h + " rejects " + p;
        break;
      case TraceRow::Action::output:
        line += "output " + p;
        break;
      case TraceRow::Action::terminate:
        line += "terminate";
        break;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace sh
