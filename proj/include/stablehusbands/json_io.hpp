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

#include "json.hpp"
#include "stablehusbands/bounds.hpp"
#include "stablehusbands/matching.hpp"
#include "stablehusbands/oracle.hpp"
#include "stablehusbands/random_model.hpp"

namespace sh {

/// Husbands in girl order; absent partners are null.
nlohmann::json matching_json(const Matching& m);
/// Accepts the array form above or {"husband_of": [...]}.
Matching matching_from_json(const nlohmann::json& doc, Index n);

nlohmann::json enumeration_json(const HusbandEnumeration& e, bool letters);
nlohmann::json blocking_pairs_json(const std::vector<BlockingPair>& pairs);
nlohmann::json stable_set_json(const oracle::StableSet& set);
nlohmann::json tail_bound_json(const bounds::TailBound& b);
nlohmann::json envelope_json(const bounds::Envelope& e);
nlohmann::json audit_json(const model::AuditReport& report);
nlohmann::json stats_summary_json(const model::RunStats& stats);

}  // namespace sh
