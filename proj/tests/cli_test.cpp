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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stablehusbands/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = sh::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "sh_cli_test";
  fs::create_directories(dir);
  return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

fs::path fixture_file() {
  return write_file("fixture.json", call({"generate", "--fixture"}).out);
}

}  // namespace

TEST_CASE("generate") {
  const auto a = call({"generate", "--n", "5", "--seed", "9"});
  CHECK(a.code == sh::cli::kOk);
  const auto doc = json::parse(a.out);
  CHECK(doc["n"] == 5);
  CHECK(doc["girl_prefs"].size() == 5);
  CHECK(call({"generate", "--n", "5", "--seed", "9"}).out == a.out);
  CHECK(call({"generate", "--n", "0"}).code == sh::cli::kBadInput);
}

TEST_CASE("husbands on the fixture") {
  const auto path = fixture_file().string();
  const auto r = call({"husbands", "--instance", path, "--girl", "0", "--trace"});
  REQUIRE(r.code == sh::cli::kOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["husbands"] == json::array({3, 2}));
  CHECK(doc["husbands_display"] == json::array({"Z", "Y"}));
  CHECK(doc["matchings_display"] == json::array({"AZ,BW,CX,DY", "AY,BW,CX,DZ"}));
  CHECK(doc["trace"].size() == 20);
  CHECK(call({"husbands", "--instance", path, "--girl", "4"}).code == sh::cli::kBadInput);
}

TEST_CASE("bad instance files exit with code 2") {
  const auto bad = write_file("bad.json", R"({"n":2,"girl_prefs":[[0,0],[0,1]],"boy_prefs":[[0,1],[1,0]]})");
  const auto r = call({"husbands", "--instance", bad.string(), "--girl", "0"});
  CHECK(r.code == sh::cli::kBadInput);
  CHECK(r.err.find("instance error") != std::string::npos);
  CHECK(call({"husbands", "--instance", (scratch() / "missing.json").string(), "--girl", "0"})
            .code == sh::cli::kBadInput);
}

TEST_CASE("check") {
  const auto path = fixture_file().string();
  const auto good = write_file("good.json", "[3,0,1,2]");
  const auto r = json::parse(call({"check", "--instance", path, "--matching", good.string()}).out);
  CHECK(r["stable"] == true);
  CHECK(r["blocking_pairs"].empty());

  const auto bad = write_file("unstable.json", R"({"husband_of":[0,3,2,1]})");
  const auto s = json::parse(call({"check", "--instance", path, "--matching", bad.string()}).out);
  CHECK(s["stable"] == false);
  CHECK_FALSE(s["blocking_pairs"].empty());
}

TEST_CASE("enumerate") {
  const auto path = fixture_file().string();
  const auto r = json::parse(call({"enumerate", "--instance", path}).out);
  CHECK(r["count"] == 2);
  const auto big = write_file("big.json", call({"generate", "--n", "9"}).out);
  CHECK(call({"enumerate", "--instance", big.string()}).code == sh::cli::kBadInput);
}

TEST_CASE("simulate") {
  const auto r = call({"simulate", "--n", "50", "--seed", "3", "--natural"});
  REQUIRE(r.code == sh::cli::kOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["stopped_by"] == "natural");
  CHECK(doc["husband_count"] == doc["outputs"].size());

  const auto capped = json::parse(call({"simulate", "--n", "50", "--cap", "100"}).out);
  CHECK(capped["stopped_by"] == "time_cap");

  const auto audited = call({"simulate", "--n", "1", "--delta", "0.3", "--audit"});
  CHECK(audited.code == sh::cli::kOk);
  CHECK(json::parse(audited.out)["audit"]["passed"] == true);

  CHECK(call({"simulate", "--n", "5", "--girl", "5"}).code == sh::cli::kBadInput);
  CHECK(call({"simulate", "--n", "5", "--natural", "--audit"}).code == sh::cli::kBadInput);
  CHECK(call({"simulate", "--n", "5", "--cap", "3", "--natural"}).code == sh::cli::kBadInput);
}

TEST_CASE("bounds") {
  const auto r = json::parse(
      call({"bounds", "--pgf", "binom", "2", "10", "--tail", "upper", "--r", "8", "--optimize"}).out);
  CHECK(r["value"].get<double>() >= 56.0 / 1024);
  const auto fixed =
      json::parse(call({"bounds", "--pgf", "accept", "3", "--r", "0", "--x", "2"}).out);
  CHECK(fixed["value"] == 1.0);
  CHECK(call({"bounds", "--pgf", "accept", "3", "--tail", "lower", "--r", "1", "--x", "2"}).code ==
        sh::cli::kBadInput);
  CHECK(call({"bounds", "--pgf", "poisson", "3", "--r", "1"}).code == sh::cli::kBadInput);
}

TEST_CASE("envelope") {
  const auto r = call({"envelope", "--n", "1024", "--c", "0.4", "--C", "1.5", "--delta", "0.45",
                       "--eps", "0.05"});
  REQUIRE(r.code == sh::cli::kOk);
  CHECK(json::parse(r.out)["interval"][0].get<double>() == doctest::Approx(2.772588722239781));
  const auto bad = call({"envelope", "--n", "1024", "--c", "0.45", "--C", "1.5", "--delta",
                         "0.45", "--eps", "0.05"});
  CHECK(bad.code == sh::cli::kBadInput);
  CHECK(bad.err.find("(1 - epsilon) * delta") != std::string::npos);
}

TEST_CASE("experiment exit codes and outputs") {
  const auto out_dir = scratch() / "exp";
  fs::remove_all(out_dir);
  const auto ok = call({"experiment", "--kind", "theorem", "--n", "5", "--trials", "20", "--out",
                        out_dir.string(), "--plot-data", "--C", "5", "--c", "0.01"});
  CHECK(ok.code == sh::cli::kOk);
  CHECK(fs::exists(out_dir / "report.json"));
  CHECK(fs::exists(out_dir / "trials.csv"));
  CHECK(fs::exists(out_dir / "counts_n5.tsv"));

  const auto config = write_file("config.json", R"({"kind":"coupon","n":30,"trials":5})");
  const auto from_file = call({"experiment", "--config", config.string()});
  CHECK(json::parse(from_file.out)["kind"] == "coupon");

  // Every trial would need a single husband.
  const auto strict = write_file(
      "strict.json", R"({"kind":"theorem","n":4,"trials":20,"C":1.06,"min_fraction":1.0})");
  const auto gate = call({"experiment", "--config", strict.string()});
  CHECK(gate.code == sh::cli::kGateFailed);

  const auto bad = call({"experiment", "--kind", "theorem", "--c", "0.9"});
  CHECK(bad.code == sh::cli::kBadInput);
  CHECK(bad.err.find("config error") != std::string::npos);
  CHECK(call({"experiment"}).code == sh::cli::kBadInput);
  fs::remove_all(scratch());
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == sh::cli::kBadInput);
  CHECK(call({"frobnicate"}).code == sh::cli::kBadInput);
  CHECK(call({"--help"}).code == sh::cli::kOk);
}
