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

#include "stablehusbands/instance.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "stablehusbands/rng.hpp"

namespace sh {
namespace {

using Table = PreferenceInstance::Table;

Table invert(const Table& prefs) {
  Table rank(prefs.size(), std::vector<Index>(prefs.size(), kNone));
  for (std::size_t row = 0; row < prefs.size(); ++row) {
    for (std::size_t i = 0; i < prefs[row].size(); ++i) {
      rank[row][prefs[row][i]] = static_cast<Index>(i);
    }
  }
  return rank;
}

// Throws on the first problem with `table`, checking shape, then range, then
// duplicates, so the error kind is deterministic.
void check_table(const Table& table, std::size_t n, const char* side) {
  if (table.size() != n) {
    throw InstanceError(InstanceError::Kind::size_mismatch,
                        std::string(side) + "_prefs has " +
                            std::to_string(table.size()) + " rows, expected " +
                            std::to_string(n));
  }
  for (std::size_t row = 0; row < n; ++row) {
    if (table[row].size() != n) {
      throw InstanceError(InstanceError::Kind::size_mismatch,
                          std::string(side) + " " + std::to_string(row) +
                              " ranks " + std::to_string(table[row].size()) +
                              " entries, expected " + std::to_string(n));
    }
    for (Index v : table[row]) {
      if (v >= n) {
        throw InstanceError(InstanceError::Kind::out_of_range,
                            std::string(side) + " " + std::to_string(row) +
                                " lists " + std::to_string(v) +
                                ", outside [0, " + std::to_string(n) + ")");
      }
    }
    std::vector<bool> seen(n, false);
    for (Index v : table[row]) {
      if (seen[v]) {
        throw InstanceError(InstanceError::Kind::not_permutation,
                            std::string(side) + " " + std::to_string(row) +
                                " lists " + std::to_string(v) + " twice");
      }
      seen[v] = true;
    }
  }
}

void describe_table(const Table& prefs, const Table& rank, std::size_t n,
                    const char* side, std::vector<std::string>& out) {
  if (prefs.size() != n || rank.size() != n) {
    out.push_back(std::string(side) + " tables have the wrong number of rows");
    return;
  }
  for (std::size_t row = 0; row < n; ++row) {
    const std::string who = std::string(side) + " " + std::to_string(row);
    if (prefs[row].size() != n) {
      out.push_back(who + ": row has " + std::to_string(prefs[row].size()) +
                    " entries, expected " + std::to_string(n));
      continue;
    }
    std::vector<bool> seen(n, false);
    std::string problems;
    for (Index v : prefs[row]) {
      if (v >= n) {
        problems += (problems.empty() ? "" : ", ") + std::string("out of range ") +
                    std::to_string(v);
      } else if (seen[v]) {
        problems += (problems.empty() ? "" : ", ") + std::string("duplicate ") +
                    std::to_string(v);
      } else {
        seen[v] = true;
      }
    }
    if (!problems.empty()) {
      out.push_back(who + ": " + problems);
      continue;
    }
    if (rank[row].size() != n) {
      out.push_back(who + ": rank row has " + std::to_string(rank[row].size()) +
                    " entries, expected " + std::to_string(n));
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[row][prefs[row][i]] != i) {
        out.push_back(std::string(side) + "_rank mismatch at (" +
                      std::to_string(row) + ", " + std::to_string(i) + "): rank of " +
                      std::to_string(prefs[row][i]) + " is " +
                      std::to_string(rank[row][prefs[row][i]]) + ", expected " +
                      std::to_string(i));
      }
    }
  }
}

}  // namespace

PreferenceInstance::PreferenceInstance(Table girl_prefs, Table boy_prefs) {
  const std::size_t n = girl_prefs.size();
  if (n == 0) {
    throw InstanceError(InstanceError::Kind::size_mismatch,
                        "instance must have at least one girl and one boy");
  }
  check_table(girl_prefs, n, "girl");
  check_table(boy_prefs, n, "boy");
  n_ = static_cast<Index>(n);
  girl_rank_ = invert(girl_prefs);
  boy_rank_ = invert(boy_prefs);
  girl_prefs_ = std::move(girl_prefs);
  boy_prefs_ = std::move(boy_prefs);
}

PreferenceInstance PreferenceInstance::unchecked(Table girl_prefs,
                                                 Table boy_prefs,
                                                 Table girl_rank,
                                                 Table boy_rank) {
  PreferenceInstance instance;
  instance.n_ = static_cast<Index>(girl_prefs.size());
  instance.girl_prefs_ = std::move(girl_prefs);
  instance.boy_prefs_ = std::move(boy_prefs);
  instance.girl_rank_ = std::move(girl_rank);
  instance.boy_rank_ = std::move(boy_rank);
  return instance;
}

PreferenceInstance generate_uniform(Index n, std::uint64_t seed) {
  if (n == 0) {
    throw std::invalid_argument("generate_uniform: n must be at least 1");
  }
  Rng rng(seed);
  auto draw = [&] {
    Table table(n, std::vector<Index>(n));
    for (auto& row : table) {
      for (Index i = 0; i < n; ++i) row[i] = i;
      rng.shuffle(std::span<Index>(row));
    }
    return table;
  };
  Table girls = draw();
  Table boys = draw();
  return PreferenceInstance(std::move(girls), std::move(boys));
}

PreferenceInstance worked_example() {
  // W X Y Z = 0 1 2 3, A B C D = 0 1 2 3.
  return PreferenceInstance({{2, 1, 3, 0},   // Alice    Y>X>Z>W
                             {1, 0, 2, 3},   // Brigitte X>W>Y>Z
                             {0, 2, 1, 3},   // Cindy    W>Y>X>Z
                             {1, 0, 3, 2}},  // Debra    X>W>Z>Y
                            {{0, 1, 3, 2},   // Wilfred  A>B>D>C
                             {2, 0, 3, 1},   // Xavier   C>A>D>B
                             {1, 3, 0, 2},   // Yuri     B>D>A>C
                             {1, 0, 2, 3}}); // Zeke     B>A>C>D
}

bool is_worked_example(const PreferenceInstance& instance) {
  static const PreferenceInstance fixture = worked_example();
  return instance.size() == 4 && instance == fixture;
}

std::string girl_label(Index girl, bool letters) {
  if (letters && girl < 4) return std::string(1, static_cast<char>('A' + girl));
  return std::to_string(girl);
}

std::string boy_label(Index boy, bool letters) {
  if (letters && boy < 4) return std::string(1, static_cast<char>('W' + boy));
  return std::to_string(boy);
}

std::vector<std::string> validate(const PreferenceInstance& instance) {
  std::vector<std::string> out;
  const std::size_t n = instance.size();
  if (n == 0) {
    out.emplace_back("instance is empty");
    return out;
  }
  describe_table(instance.girl_pref_table(), instance.girl_rank_table(), n,
                 "girl", out);
  describe_table(instance.boy_pref_table(), instance.boy_rank_table(), n, "boy",
                 out);
  return out;
}

void save(const PreferenceInstance& instance, std::ostream& out) {
  nlohmann::json doc;
  doc["n"] = instance.size();
  doc["girl_prefs"] = instance.girl_pref_table();
  doc["boy_prefs"] = instance.boy_pref_table();
  out << doc.dump() << '\n';
}

void save(const PreferenceInstance& instance,
          const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  save(instance, out);
}

PreferenceInstance load(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InstanceError(InstanceError::Kind::malformed,
                        std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer() ||
      !doc.contains("girl_prefs") || !doc.contains("boy_prefs")) {
    throw InstanceError(InstanceError::Kind::malformed,
                        "instance needs integer \"n\" and arrays \"girl_prefs\", "
                        "\"boy_prefs\"");
  }
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 1) {
    throw InstanceError(InstanceError::Kind::malformed, "n must be positive");
  }
  auto read = [&](const char* key) {
    const auto& rows = doc[key];
    if (!rows.is_array()) {
      throw InstanceError(InstanceError::Kind::malformed,
                          std::string(key) + " is not an array");
    }
    Table table;
    for (const auto& row : rows) {
      if (!row.is_array()) {
        throw InstanceError(InstanceError::Kind::malformed,
                            std::string(key) + " contains a non-array row");
      }
      std::vector<Index> values;
      for (const auto& v : row) {
        if (!v.is_number_integer()) {
          throw InstanceError(InstanceError::Kind::malformed,
                              std::string(key) + " contains a non-integer entry");
        }
        const auto value = v.get<std::int64_t>();
        if (value < 0 || value >= n) {
          throw InstanceError(InstanceError::Kind::out_of_range,
                              std::string(key) + " entry " +
                                  std::to_string(value) + " outside [0, " +
                                  std::to_string(n) + ")");
        }
        values.push_back(static_cast<Index>(value));
      }
      table.push_back(std::move(values));
    }
    return table;
  };
  Table girls = read("girl_prefs");
  Table boys = read("boy_prefs");
  const auto expected = static_cast<std::size_t>(n);
  auto shape_ok = [&](const Table& t) {
    if (t.size() != expected) return false;
    for (const auto& row : t)
      if (row.size() != expected) return false;
    return true;
  };
  if (!shape_ok(girls) || !shape_ok(boys)) {
    throw InstanceError(InstanceError::Kind::size_mismatch,
                        "instance declares n=" + std::to_string(n) +
                            " but its tables are not " + std::to_string(n) +
                            "x" + std::to_string(n));
  }
  return PreferenceInstance(std::move(girls), std::move(boys));
}

PreferenceInstance load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InstanceError(InstanceError::Kind::malformed,
                        "cannot open " + path.string());
  }
  return load(in);
}

}  // namespace sh
