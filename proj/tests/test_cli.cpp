/*
 * Copyright 2026 The mobnet Authors. All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mobnet/cli.hpp"
#include "nlohmann/json.hpp"

namespace fs = std::filesystem;
using mobnet::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("mobnet-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& leaf) const { return (path / leaf).string(); }
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) n += line.empty() ? 0 : 1;
  return n;
}

}  // namespace

TEST_CASE("installed binary runs synth end to end") {
  TempDir tmp;
  const std::string cmd = std::string(MOBNET_CLI_PATH) + " synth --scenario stationary24h --seed 7 --out " +
                          tmp / "run1" + " > /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(fs::exists(tmp / "run1/trace.jsonl"));
  CHECK(fs::exists(tmp / "run1/ground_truth.json"));
  CHECK(fs::exists(tmp / "run1/manifest.json"));

  const std::string bad = std::string(MOBNET_CLI_PATH) + " synth --diurnal-dip 1.5 --out " + tmp / "bad" +
                          " 2> /dev/null";
  const int bad_status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(bad_status) == 2);
}

TEST_CASE("synth validation and determinism") {
  TempDir tmp;
  const auto bad = cli({"synth", "--diurnal-dip", "1.5", "--out", tmp / "bad"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("dip must be in [0,1)") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp / "bad/trace.jsonl"));

  CHECK(cli({"synth", "--seed", "7", "--out", tmp / "a"}).code == 0);
  CHECK(cli({"synth", "--seed", "7", "--out", tmp / "b"}).code == 0);
  const auto ma = nlohmann::json::parse(slurp(tmp / "a/manifest.json"));
  const auto mb = nlohmann::json::parse(slurp(tmp / "b/manifest.json"));
  CHECK(ma["outputs"] == mb["outputs"]);
  CHECK(slurp(tmp / "a/trace.jsonl") == slurp(tmp / "b/trace.jsonl"));
  CHECK(mobnet::cli::sha256_file(tmp / "a/trace.jsonl") == mobnet::cli::sha256_file(tmp / "b/trace.jsonl"));

  CHECK(cli({"synth", "--scenario", "nowhere", "--out", tmp / "c"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
}

TEST_CASE("analyze writes one verdict per record") {
  TempDir tmp;
  REQUIRE(cli({"synth", "--seed", "3", "--records-per-hour", "40", "--out", tmp / "syn"}).code == 0);
  const auto records = line_count(tmp / "syn/trace.jsonl");
  CHECK(records == 960);
  REQUIRE(cli({"analyze", "--in", tmp / "syn/trace.jsonl", "--out", tmp / "an"}).code == 0);
  CHECK(line_count(tmp / "an/verdicts.jsonl") == records);

  std::ifstream verdicts(tmp / "an/verdicts.jsonl");
  std::string line;
  std::size_t pooled = 0;
  while (std::getline(verdicts, line)) {
    const auto v = nlohmann::json::parse(line);
    CHECK_FALSE(v["verdict"]["artificial"].get<bool>());
    pooled += v["congestion"].is_null() ? 0 : 1;
  }
  CHECK(pooled == records);

  SUBCASE("series-free records keep verdicts without pools") {
    std::ifstream in(tmp / "syn/trace.jsonl");
    std::ofstream stripped(tmp / "bare.jsonl");
    for (std::string l; std::getline(in, l);) {
      auto j = nlohmann::ordered_json::parse(l);
      j.erase("samples");
      stripped << j.dump() << "\n";
    }
    stripped.close();
    REQUIRE(cli({"analyze", "--in", tmp / "bare.jsonl", "--out", tmp / "bare"}).code == 0);
    std::ifstream out(tmp / "bare/verdicts.jsonl");
    std::size_t n = 0;
    for (std::string l; std::getline(out, l); ++n) {
      const auto v = nlohmann::json::parse(l);
      CHECK(v["congestion"].is_null());
      CHECK(v["verdict"]["factor"] == "UNDETERMINED");
    }
    CHECK(n == records);
  }
}

TEST_CASE("analyze error exits") {
  TempDir tmp;
  std::ofstream(tmp / "empty.jsonl") << "\n";
  const auto empty = cli({"analyze", "--in", tmp / "empty.jsonl", "--out", tmp / "out"});
  CHECK(empty.code == 3);
  CHECK(empty.err.find("no analyzable records") != std::string::npos);
  CHECK(cli({"analyze", "--in", tmp / "missing.jsonl", "--out", tmp / "out"}).code == 1);
  std::ofstream(tmp / "one.jsonl") << "{}\n";
  CHECK(cli({"analyze", "--in", tmp / "one.jsonl", "--out", tmp / "out", "--catalog", tmp / "nope.csv"})
            .code == 1);
  CHECK(cli({"analyze", "--out", tmp / "out"}).code == 2);
}

TEST_CASE("report enumerates and validates report names") {
  TempDir tmp;
  REQUIRE(cli({"synth", "--scenario", "commute", "--seed", "5", "--out", tmp / "syn"}).code == 0);
  REQUIRE(cli({"analyze", "--in", tmp / "syn/trace.jsonl", "--out", tmp / "an"}).code == 0);
  REQUIRE(cli({"report", "--in", tmp / "an", "--out", tmp / "rep"}).code == 0);
  for (const auto& name : mobnet::cli::report_names()) {
    CHECK(fs::exists(tmp / ("rep/" + name + ".json")));
    CHECK(fs::exists(tmp / ("rep/" + name + ".csv")));
  }
  CHECK(mobnet::cli::report_names().size() == 8);

  const auto unknown = cli({"report", "--in", tmp / "an", "--out", tmp / "x", "--report", "bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("histogram") != std::string::npos);
  CHECK(unknown.err.find("handovers") != std::string::npos);

  REQUIRE(cli({"report", "--in", tmp / "an", "--out", tmp / "op", "--report", "hourly", "--key", "operator"})
              .code == 0);
  const auto hourly = nlohmann::json::parse(slurp(tmp / "op/hourly.json"));
  CHECK(hourly["profiles"].size() == 1);
  CHECK(hourly["profiles"][0]["key"] == "OperatorA");

  REQUIRE(cli({"report", "--in", tmp / "an", "--out", tmp / "camp", "--report", "camping",
               "--subscription", "4g"})
              .code == 0);
  const auto camping = nlohmann::json::parse(slurp(tmp / "camp/camping.json"));
  REQUIRE(camping["sessions"].size() == 1);
  CHECK(camping["sessions"][0]["fraction_lower"].get<double>() == 0.75);

  CHECK(cli({"report", "--in", tmp / "an", "--out", tmp / "y", "--report", "camping", "--subscription", "2g"})
            .code == 2);
  CHECK(cli({"report", "--in", tmp / "nothing", "--out", tmp / "z"}).code == 1);
}
