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

#include "stablehusbands/oracle.hpp"

#include <string>

namespace sh::oracle {
namespace {

class Enumerator {
 public:
  Enumerator(const PreferenceInstance& instance, StableSet& out)
      : instance_(instance), out_(out), n_(instance.size()), partial_(n_) {}

  void run() { extend(0); }

 private:
  // Checks only pairs that involve the newly assigned girl `g` or her new
  // husband, against people who are already assigned. Earlier pairs were
  // checked when they were made.
  bool blocked_by(Index g) const {
    const Index b = partial_.husband_of[g];
    for (Index other = 0; other < g; ++other) {
      const Index other_boy = partial_.husband_of[other];
      // g with other_boy
      if (instance_.girl_prefers(g, other_boy, b) &&
          instance_.boy_prefers(other_boy, g, other)) {
        return true;
      }
      // other with b
      if (instance_.girl_prefers(other, b, other_boy) &&
          instance_.boy_prefers(b, other, g)) {
        return true;
      }
    }
    return false;
  }

  void extend(Index g) {
    if (g == n_) {
      out_.matchings.push_back(partial_);
      return;
    }
    for (Index b = 0; b < n_; ++b) {
      if (partial_.wife_of[b] != kNone) continue;
      partial_.pair(g, b);
      if (!blocked_by(g)) extend(g + 1);
      partial_.husband_of[g] = kNone;
      partial_.wife_of[b] = kNone;
    }
  }

  const PreferenceInstance& instance_;
  StableSet& out_;
  Index n_;
  Matching partial_;
};

}  // namespace

StableSet enumerate_stable(const PreferenceInstance& instance, Index limit) {
  if (instance.size() > limit) {
    throw ScaleExceeded("oracle scale exceeded: n=" +
                        std::to_string(instance.size()) + " > limit " +
                        std::to_string(limit));
  }
  StableSet out;
  Enumerator(instance, out).run();
  out.husband_sets.assign(instance.size(), {});
  for (const Matching& m : out.matchings) {
    for (Index g = 0; g < instance.size(); ++g) {
      out.husband_sets[g].insert(m.husband_of[g]);
    }
  }
  return out;
}

const std::set<Index>& husband_set(const StableSet& stable, Index girl) {
  if (girl >= stable.husband_sets.size()) {
    throw std::out_of_range("husband_set: girl " + std::to_string(girl) +
                            " out of range");
  }
  return stable.husband_sets[girl];
}

Matching boy_optimal(const PreferenceInstance& instance,
                     const StableSet& stable) {
  const Index n = instance.size();
  std::vector<Index> best(n, kNone);
  for (const Matching& m : stable.matchings) {
    for (Index b = 0; b < n; ++b) {
      const Index wife = m.wife_of[b];
      if (best[b] == kNone || instance.boy_prefers(b, wife, best[b])) {
        best[b] = wife;
      }
    }
  }
  for (const Matching& m : stable.matchings) {
    if (m.wife_of == best) return m;
  }
  return Matching{};
}

}  // namespace sh::oracle
