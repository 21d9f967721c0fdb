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
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sh {

/// Index of a girl or a boy. Girls and boys use separate index spaces.
using Index = std::uint32_t;
inline constexpr Index kNone = std::numeric_limits<Index>::max();

class InstanceError : public std::runtime_error {
 public:
  enum class Kind { malformed, size_mismatch, out_of_range, not_permutation };

  InstanceError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Complete strict preferences of n girls over n boys and vice versa.
///
/// Rows are stored favorite-first. The rank tables are the row inverses and
/// are built once so that every "prefers" query is a single comparison.
class PreferenceInstance {
 public:
  using Table = std::vector<std::vector<Index>>;

  /// Validating constructor; throws InstanceError on bad input.
  PreferenceInstance(Table girl_prefs, Table boy_prefs);

  /// Builds an instance from all four tables without any checks. Intended
  /// for validation tooling and tests that need deliberately broken data.
  static PreferenceInstance unchecked(Table girl_prefs, Table boy_prefs,
                                      Table girl_rank, Table boy_rank);

  Index size() const noexcept { return n_; }

  std::span<const Index> girl_prefs(Index girl) const { return girl_prefs_[girl]; }
  std::span<const Index> boy_prefs(Index boy) const { return boy_prefs_[boy]; }
  const Table& girl_pref_table() const noexcept { return girl_prefs_; }
  const Table& boy_pref_table() const noexcept { return boy_prefs_; }
  const Table& girl_rank_table() const noexcept { return girl_rank_; }
  const Table& boy_rank_table() const noexcept { return boy_rank_; }

  /// Position of `boy` in `girl`'s list, 0 = favorite.
  Index girl_rank(Index girl, Index boy) const { return girl_rank_[girl][boy]; }
  Index boy_rank(Index boy, Index girl) const { return boy_rank_[boy][girl]; }

  bool girl_prefers(Index girl, Index a, Index b) const {
    return girl_rank_[girl][a] < girl_rank_[girl][b];
  }
  bool boy_prefers(Index boy, Index a, Index b) const {
    return boy_rank_[boy][a] < boy_rank_[boy][b];
  }

  friend bool operator==(const PreferenceInstance& a,
                         const PreferenceInstance& b) {
    return a.girl_prefs_ == b.girl_prefs_ && a.boy_prefs_ == b.boy_prefs_;
  }

 private:
  PreferenceInstance() = default;

  Index n_ = 0;
  Table girl_prefs_;
  Table boy_prefs_;
  Table girl_rank_;
  Table boy_rank_;
};

/// 2n independent uniform permutations drawn from a generator seeded with
/// `seed`. Girls' rows are drawn first, then boys', each by Fisher-Yates.
PreferenceInstance generate_uniform(Index n, std::uint64_t seed);

/// The 4x4 worked example: Alice..Debra are girls 0..3, Wilfred..Zeke are
/// boys 0..3.
PreferenceInstance worked_example();

/// True when `instance` is the 4x4 worked example, in which case letters
/// can be used for display.
bool is_worked_example(const PreferenceInstance& instance);

/// Display names: girls A, B, C, D and boys W, X, Y, Z for the fixture,
/// decimal indices otherwise.
std::string girl_label(Index girl, bool letters);
std::string boy_label(Index boy, bool letters);

/// One message per violated row or rank entry; empty iff the instance is
/// well formed.
std::vector<std::string> validate(const PreferenceInstance& instance);

void save(const PreferenceInstance& instance, std::ostream& out);
void save(const PreferenceInstance& instance, const std::filesystem::path& path);
PreferenceInstance load(std::istream& in);
PreferenceInstance load(const std::filesystem::path& path);

}  // namespace sh
