// Copyright 2026 The Influmax Authors.
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


#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <vector>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef INFLUMAX_CLI_PATH
#error "INFLUMAX_CLI_PATH must name the CLI executable"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args, const std::string& env = "") {
  const std::string command = env + " \"" + INFLUMAX_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) r.out.append(buffer, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

struct Files {
  fs::path dir = fs::temp_directory_path() / ("influmax_cli_test_" + std::to_string(::getpid()));
  std::string chain, plain;
  Files() {
    fs::create_directories(dir);
    chain = (dir / "chain.txt").string();
    plain = (dir / "plain.txt").string();
    std::ofstream(chain) << "# chain\na b 0.5\nb c 0.5\n";
    std::ofstream(plain) << "a b\nb c\nc a\nc d\n";
  }
  ~Files() { fs::remove_all(dir); }
};

}  // namespace

TEST_CASE("select on the chain") {
  Files f;
  const Run r = cli("select --graph " + f.chain +
                    " --model ic --k 1 --epsilon 0.5 --ell 1 --algorithm tim+ --seed 7 --threads 1");
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["seeds"] == json::array({"a"}));
  CHECK(j["command"] == "select");
  CHECK(j["master_seed"] == 7);
  CHECK(j["mc_spread"].is_null());
  CHECK(j["kpt_plus"].get<double>() >= j["kpt_star"].get<double>());
  for (const char* key : {"params", "timings", "estimated_spread", "rr_sets_generated", "peak_rss_bytes",
                          "tool_version", "model", "graph", "algorithm"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("record keys are stable across algorithms") {
  Files f;
  std::vector<std::string> keys;
  for (const char* algorithm : {"tim", "tim+", "greedy"}) {
    const Run r = cli("select --graph " + f.plain + " --model wc --k 2 --epsilon 0.5 --ell 1 --algorithm " +
                      algorithm + " --r 100 --threads 1");
    REQUIRE(r.status == 0);
    const nlohmann::ordered_json record = nlohmann::ordered_json::parse(r.out);
    std::string joined;
    for (const auto& item : record.items()) joined += item.key() + ",";
    keys.push_back(joined);
  }
  CHECK(keys[0] == keys[1]);
  CHECK(keys[1] == keys[2]);
}

TEST_CASE("usage and input errors") {
  Files f;
  CHECK(cli("select --graph " + f.chain + " --model ic --epsilon 0.5 --ell 1 --algorithm tim+").status == 2);
  CHECK(cli("select --graph " + f.chain + " --model xx --k 1 --algorithm tim+").status == 2);
  CHECK(cli("select --graph " + f.chain + " --model ic --k 1 --epsilon 2 --algorithm tim").status == 2);
  CHECK(cli("frobnicate").status == 2);
  CHECK(cli("").status == 2);
  CHECK(cli("--help").status == 0);
  CHECK(cli("select --graph " + f.chain + " --model wc --k 1 --algorithm tim+").status == 1);
  CHECK(cli("select --graph " + f.plain + " --model ic --k 1 --algorithm tim+").status == 1);
  CHECK(cli("select --graph " + f.chain + " --model ic --k 9 --algorithm tim+").status == 1);
  CHECK(cli("select --graph " + (f.dir / "missing.txt").string() + " --model ic --k 1 --algorithm tim").status == 1);
}

TEST_CASE("evaluate") {
  Files f;
  Run r = cli("evaluate --graph " + f.chain + " --model ic --seeds a,b,c --trials 1000");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["mean"] == 3.0);
  CHECK(j["std_error"] == 0.0);

  r = cli("evaluate --graph " + f.chain + " --model ic --seeds a --trials 100000 --seed 3");
  REQUIRE(r.status == 0);
  j = json::parse(r.out);
  CHECK(std::abs(j["mean"].get<double>() - 1.75) <= 4 * j["std_error"].get<double>());

  CHECK(cli("evaluate --graph " + f.chain + " --model ic --seeds '' --trials 10").status == 1);
  CHECK(cli("evaluate --graph " + f.chain + " --model ic --seeds a,zz --trials 10").status == 1);
}

TEST_CASE("benchmark rows") {
  Files f;
  const Run r = cli("benchmark --graph " + f.plain +
                    " --model wc --k-list 1,2 --epsilon-list 0.5,1 --algorithms tim,tim+,greedy --repeats 3 --r 50");
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "algorithm,k,epsilon,run,seconds,spread_estimate,theta,kpt_star,kpt_plus");
  std::map<std::string, int> per_cell;
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) cols.push_back(col);
    if (line.back() == ',') cols.push_back("");
    REQUIRE(cols.size() == 9);
    ++per_cell[cols[0] + "/" + cols[1] + "/" + cols[2]];
    if (cols[0] == "tim+") CHECK(std::stod(cols[8]) >= std::stod(cols[7]));
  }
  CHECK(per_cell.size() == 12);
  for (const auto& [cell, rows] : per_cell) CHECK(rows == 4);
}

TEST_CASE("thread count comes from the environment when not given") {
  Files f;
  const Run r = cli("select --graph " + f.plain + " --model wc --k 1 --algorithm tim", "INFLUMAX_THREADS=3");
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["params"]["threads"] == 3);
}
