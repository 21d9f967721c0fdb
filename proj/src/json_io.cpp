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

#include "stablehusbands/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace sh {

using nlohmann::json;

json matching_json(const Matching& m) {
  json out = json::array();
  for (Index b : m.husband_of) {
    if (b == kNone) {
      out.push_back(nullptr);
    } else {
      out.push_back(b);
    }
  }
  return out;
}

Matching matching_from_json(const json& doc, Index n) {
  const json& list = doc.is_object() && doc.contains("husband_of") ? doc["husband_of"] : doc;
  if (!list.is_array() || list.size() != n) {
    throw std::invalid_argument("matching must be an array of " + std::to_string(n) +
                                " husbands (null for none)");
  }
  std::vector<Index> husbands;
  for (const json& v : list) {
    if (v.is_null()) {
      husbands.push_back(kNone);
    } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0 &&
               v.get<std::int64_t>() < n) {
      husbands.push_back(v.get<Index>());
    } else {
      throw std::invalid_argument("matching entry " + v.dump() + " is not a boy index");
    }
  }
  return Matching::from_husbands(std::move(husbands));
}

namespace {

const char* action_name(TraceRow::Action a) {
  switch (a) {
    case TraceRow::Action::none: return "select";
    case TraceRow::Action::accept: return "accept";
    case TraceRow::Action::reject: return "reject";
    case TraceRow::Action::output: return "output";
    case TraceRow::Action::terminate: return "terminate";
  }
  return "?";
}

json index_or_null(Index i) { return i == kNone ? json(nullptr) : json(i); }

}  // namespace

json enumeration_json(const HusbandEnumeration& e, bool letters) {
  json out;
  out["girl"] = e.girl;
  out["husbands"] = e.husbands;
  json matchings = json::array();
  for (const Matching& m : e.matchings) matchings.push_back(matching_json(m));
  out["matchings"] = std::move(matchings);
  out["proposals"] = e.proposals;
  if (letters) {
    json names = json::array();
    for (Index b : e.husbands) names.push_back(boy_label(b, true));
    out["husbands_display"] = std::move(names);
    json shown = json::array();
    for (const Matching& m : e.matchings)
      shown.push_back(format_matching(m.husband_of, true));
    out["matchings_display"] = std::move(shown);
  }
  if (!e.trace.empty()) {
    json trace = json::array();
    const auto lines = format_trace(e, letters);
    for (std::size_t i = 0; i < e.trace.size(); ++i) {
      const TraceRow& row = e.trace[i];
      trace.push_back({{"step", row.step == TraceRow::Step::select ? "A1" : "A2"},
                       {"time", row.time},
                       {"proposer", index_or_null(row.proposer)},
                       {"proposee", index_or_null(row.proposee)},
                       {"displaced", index_or_null(row.displaced)},
                       {"action", action_name(row.action)},
                       {"row", lines[i]}});
    }
    out["trace"] = std::move(trace);
  }
  return out;
}

json blocking_pairs_json(const std::vector<BlockingPair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back({{"girl", p.girl}, {"boy", p.boy}});
  return out;
}

json stable_set_json(const oracle::StableSet& set) {
  json out;
  json matchings = json::array();
  for (const Matching& m : set.matchings) matchings.push_back(matching_json(m));
  out["count"] = set.matchings.size();
  out["matchings"] = std::move(matchings);
  json sets = json::array();
  for (const auto& s : set.husband_sets) sets.push_back(json(std::vector<Index>(s.begin(), s.end())));
  out["husband_sets"] = std::move(sets);
  return out;
}

json tail_bound_json(const bounds::TailBound& b) {
  return {{"direction", b.direction == bounds::Tail::lower ? "lower" : "upper"},
          {"r", b.r},
          {"x", b.x},
          {"value", b.value}};
}

json envelope_json(const bounds::Envelope& e) {
  json out{{"n", e.n},
           {"c", e.c},
           {"C", e.big_c},
           {"delta", e.delta},
           {"epsilon", e.epsilon},
           {"interval", {e.lower, e.upper}},
           {"strict_interval", {e.strict_lower, e.strict_upper}},
           {"nonredundant_floor", e.nonredundant_floor},
           {"coupon_window", e.coupon_window},
           {"coupon_mean", e.coupon_mean},
           {"pre_output_proposals", e.pre_output_proposals},
           {"gamma", e.gamma},
           // Only the leading term of the third acceptance estimate is known.
           {"third_estimate_constant", "unspecified"}};
  out["pre_output_acceptance_ceiling"] =
      e.pre_output_acceptance_ceiling ? json(*e.pre_output_acceptance_ceiling) : json(nullptr);
  return out;
}

json audit_json(const model::AuditReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"statement", c.statement},
                      {"lower", c.lower},
                      {"upper", c.upper},
                      {"passed", c.passed},
                      {"violation_count", c.violation_count},
                      {"violations", c.violations}});
  }
  return {{"n", report.n},
          {"delta", report.delta},
          {"cap", report.cap},
          {"passed", report.passed()},
          {"checks", std::move(checks)}};
}

json stats_summary_json(const model::RunStats& s) {
  auto max_of = [](const std::vector<std::uint64_t>& v) {
    return v.empty() ? std::uint64_t{0} : *std::max_element(v.begin(), v.end());
  };
  auto min_of = [](const std::vector<std::uint64_t>& v) {
    return v.empty() ? std::uint64_t{0} : *std::min_element(v.begin(), v.end());
  };
  std::uint64_t longest = 0;
  for (const auto& r : s.run_lengths) longest = std::max(longest, r.length);
  json out{{"total_proposals", s.total_proposals},
           {"proposals_per_girl", {{"min", min_of(s.proposals_per_girl)},
                                   {"max", max_of(s.proposals_per_girl)}}},
           {"nonredundant_per_girl", {{"min", min_of(s.nonredundant_per_girl)},
                                      {"max", max_of(s.nonredundant_per_girl)}}},
           {"runs_per_boy_max", max_of(s.runs_per_boy)},
           {"proposals_per_boy_max", max_of(s.proposals_per_boy)},
           {"runs", s.run_lengths.size()},
           {"longest_run", longest},
           {"acceptances_by_g", s.acceptances_by_g},
           {"acceptances_by_g_before_first_output", s.acceptances_by_g_before_first_output}};
  out["first_output_time"] =
      s.first_output_time ? json(*s.first_output_time) : json(nullptr);
  return out;
}

}  // namespace sh
