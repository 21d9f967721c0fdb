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

#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "stablehusbands/matching.hpp"
#include "stablehusbands/oracle.hpp"

using namespace sh;

namespace {

// Stable matchings by trying all n! permutations.
std::vector<Matching> all_permutations_stable(const PreferenceInstance& x) {
  std::vector<Index> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> out;
  do {
    const auto m = Matching::from_husbands(perm);
    if (is_stable(x, m)) out.push_back(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

TEST_CASE("fixture has exactly two stable matchings") {
  const auto stable = oracle::enumerate_stable(worked_example());
  REQUIRE(stable.matchings.size() == 2);
  CHECK(stable.matchings[0].husband_of == std::vector<Index>{2, 0, 1, 3});
  CHECK(stable.matchings[1].husband_of == std::vector<Index>{3, 0, 1, 2});
  CHECK(oracle::husband_set(stable, 0) == std::set<Index>{2, 3});
  CHECK(oracle::husband_set(stable, 1) == std::set<Index>{0});
  CHECK(oracle::husband_set(stable, 2) == std::set<Index>{1});
  CHECK(oracle::husband_set(stable, 3) == std::set<Index>{2, 3});
}

TEST_CASE("n = 1 and a two-by-two with two stable matchings") {
  CHECK(oracle::enumerate_stable(PreferenceInstance({{0}}, {{0}})).matchings.size() == 1);

  // Girls want the boy the boys do not want them with: both perfect
  // matchings are stable.
  const PreferenceInstance x({{0, 1}, {1, 0}}, {{1, 0}, {0, 1}});
  const auto stable = oracle::enumerate_stable(x);
  CHECK(stable.matchings.size() == 2);
  CHECK(oracle::boy_optimal(x, stable).husband_of == std::vector<Index>{1, 0});
}

TEST_CASE("agrees with brute force over permutations") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index n = 1 + static_cast<Index>(seed % 6);
    const auto x = generate_uniform(n, seed);
    const auto expected = all_permutations_stable(x);
    CHECK(oracle::enumerate_stable(x).matchings == expected);
  }
}

TEST_CASE("boy-optimal matching equals boy-proposing deferred acceptance") {
  for (std::uint64_t seed = 500; seed < 600; ++seed) {
    const auto x = generate_uniform(2 + static_cast<Index>(seed % 6), seed);
    CHECK(oracle::boy_optimal(x, oracle::enumerate_stable(x)) ==
          gale_shapley_boys_propose(x));
  }
}

TEST_CASE("refuses large instances") {
  CHECK_THROWS_AS(oracle::enumerate_stable(generate_uniform(9, 1)), oracle::ScaleExceeded);
  CHECK_NOTHROW(oracle::enumerate_stable(generate_uniform(9, 1), 9));
  const auto stable = oracle::enumerate_stable(worked_example());
  CHECK_THROWS_AS(oracle::husband_set(stable, 4), std::out_of_range);
}
