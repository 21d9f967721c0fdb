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

#include <set>
#include <stdexcept>
#include <vector>

#include "stablehusbands/instance.hpp"
#include "stablehusbands/matching.hpp"

namespace sh::oracle {

/// Raised when an instance is too large for exhaustive enumeration.
class ScaleExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// All stable matchings of an instance, with each girl's partner set.
struct StableSet {
  std::vector<Matching> matchings;
  std::vector<std::set<Index>> husband_sets;
};

inline constexpr Index kDefaultLimit = 8;

/// Exhaustive backtracking over girl-by-girl assignments. A partial
/// assignment is abandoned only when it already contains a blocking pair
/// whose girl and boy are both assigned. Matchings come out in
/// lexicographic order of the husband list.
StableSet enumerate_stable(const PreferenceInstance& instance,
                           Index limit = kDefaultLimit);

const std::set<Index>& husband_set(const StableSet& stable, Index girl);

/// The stable matching that gives every boy his favorite stable partner, or
/// an empty matching if no single matching does (never for valid input).
Matching boy_optimal(const PreferenceInstance& instance, const StableSet& stable);

}  // namespace sh::oracle
