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

// Independent reference computations used only by tests. Nothing here
// shares code with the library routes it checks.

#include <cmath>
#include <cstdint>
#include <vector>

#include "stablehusbands/instance.hpp"
#include "stablehusbands/matching.hpp"

namespace sh::testing {

/// Pr(X = k) for X ~ Binomial(trials, p), built by repeated convolution
/// with a Bernoulli(p).
inline std::vector<double> binomial_pmf(std::uint64_t trials, double p) {
  std::vector<double> pmf{1.0};
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      next[k] += pmf[k] * (1.0 - p);
      next[k + 1] += pmf[k] * p;
    }
    pmf = std::move(next);
  }
  return pmf;
}

/// Pr(X = k) for the number of acceptances among m proposals when the k-th
/// is accepted with probability 1/k: the unsigned Stirling cycle numbers
/// [m k] divided by m!, via the same recurrence.
inline std::vector<double> acceptance_pmf(std::uint64_t m) {
  std::vector<double> pmf{1.0};
  for (std::uint64_t k = 1; k <= m; ++k) {
    const double accept = 1.0 / static_cast<double>(k);
    std::vector<double> next(pmf.size() + 1, 0.0);
    for (std::size_t j = 0; j < pmf.size(); ++j) {
      next[j] += pmf[j] * (1.0 - accept);
      next[j + 1] += pmf[j] * accept;
    }
    pmf = std::move(next);
  }
  return pmf;
}

inline double lower_tail(const std::vector<double>& pmf, double r) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k)
    if (static_cast<double>(k) <= r) sum += pmf[k];
  return sum;
}

inline double upper_tail(const std::vector<double>& pmf, double r) {
  double sum = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k)
    if (static_cast<double>(k) >= r) sum += pmf[k];
  return sum;
}

inline double harmonic_direct(std::uint64_t m) {
  double sum = 0.0;
  for (std::uint64_t k = 1; k <= m; ++k) sum += 1.0 / static_cast<double>(k);
  return sum;
}

/// Girl-proposing deferred acceptance, written independently of the
/// library's boy-proposing version. Gives every girl her best stable
/// husband.
inline Matching girls_propose(const PreferenceInstance& instance) {
  const Index n = instance.size();
  Matching m(n);
  std::vector<Index> next(n, 0);
  std::vector<Index> queue;
  for (Index g = 0; g < n; ++g) queue.push_back(g);
  while (!queue.empty()) {
    const Index g = queue.back();
    queue.pop_back();
    const Index b = instance.girl_prefs(g)[next[g]++];
    const Index holder = m.wife_of[b];
    if (holder == kNone) {
      m.pair(g, b);
    } else if (instance.boy_rank(b, g) < instance.boy_rank(b, holder)) {
      m.husband_of[holder] = kNone;
      m.pair(g, b);
      queue.push_back(holder);
    } else {
      queue.push_back(g);
    }
  }
  return m;
}

/// Lexicographic index of a permutation of 0..n-1 (Lehmer code).
inline std::size_t permutation_rank(const std::vector<Index>& perm) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[j] < perm[i]) ++smaller;
    rank = rank * (perm.size() - i) + smaller;
  }
  return rank;
}

}  // namespace sh::testing
