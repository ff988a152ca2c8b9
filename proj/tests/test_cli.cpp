// Copyright 2026 The bnfix Authors
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

#include "bnfix/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = bnfix::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& stem) {
    static int counter = 0;
    path = fs::temp_directory_path() / (stem + std::to_string(counter++) + ".json");
  }
  ~TempFile() {
    std::error_code ec;
    fs::remove(path, ec);
  }
};

}  // namespace

TEST_CASE("search-kn prints the minimal scale") {
  auto r = run_cli({"search-kn", "--n", "15", "--json"});
  CHECK(r.status == 0);
  auto j = json::parse(r.out);
  CHECK(j["kn"] == 51);
  CHECK(j["lower"] == 49);
  CHECK(j["upper"] == 85);
  CHECK(j["minimal_certified"] == true);

  auto human = run_cli({"search-kn", "--n", "3"});
  CHECK(human.status == 0);
  CHECK(human.out.find(" 2") != std::string::npos);
}

TEST_CASE("list-k and bounds") {
  auto r = run_cli({"list-k", "--n", "15", "--max", "69"});
  CHECK(r.status == 0);
  CHECK(r.out == "51 61 62 63 64 67 68 69\n");
  auto b = run_cli({"bounds", "--n", "15"});
  CHECK(b.out == "49 85\n");
}

TEST_CASE("convert emits the worked example") {
  auto r = run_cli({"convert", "--t", "0.618", "--b", "0.198", "--k", "64", "--ymin", "0",
                    "--ymax", "15", "--all"});
  CHECK(r.status == 0);
  CHECK(r.out == "T=39 B=6 K=64\nT=39 B=7 K=64\nT=39 B=8 K=64\n");
}

TEST_CASE("convert output round-trips through verify") {
  auto c = run_cli({"convert", "--t", "0.37", "--b", "-1.25", "--k", "61", "--ymin", "0",
                    "--ymax", "15", "--all", "--json"});
  REQUIRE(c.status == 0);
  auto j = json::parse(c.out);
  REQUIRE(j["pairs"].size() >= 1);
  for (const auto& p : j["pairs"]) {
    auto v = run_cli({"verify", "--t", "0.37", "--b", "-1.25", "--T",
                      p["T"].get<std::string>(), "--B", p["B"].get<std::string>(), "--k", "61",
                      "--ymin", "0", "--ymax", "15"});
    CHECK(v.status == 0);
    CHECK(v.out.find("certified") != std::string::npos);
  }
}

TEST_CASE("verify rejects a corrupted pair with a concrete witness") {
  auto v = run_cli({"verify", "--t", "0.618", "--b", "0.198", "--T", "39", "--B", "12", "--k",
                    "64", "--ymin", "0", "--ymax", "15", "--json"});
  CHECK(v.status == 1);
  auto j = json::parse(v.out);
  CHECK(j["ok"] == false);
  CHECK(j["mismatches"].size() >= 1);
  CHECK(j["mismatches"][0].contains("N"));
}

TEST_CASE("convert reports no-solution with recovery guidance") {
  auto r = run_cli({"convert", "--t", "457/1008", "--b", "31/78", "--k", "52", "--ymin", "0",
                    "--ymax", "15"});
  CHECK(r.status == 1);
  CHECK(r.err.find("witness sequence") != std::string::npos);
  CHECK(r.err.find("next satisfied K: 61") != std::string::npos);
}

TEST_CASE("usage errors return 64") {
  CHECK(run_cli({"search-kn"}).status == 64);          // missing --n
  CHECK(run_cli({"no-such-command"}).status == 64);
  CHECK(run_cli({}).status == 64);
  CHECK(run_cli({"convert", "--t", "abc", "--b", "0", "--k", "4", "--ymin", "0", "--ymax",
                 "15"}).status == 64);
}

TEST_CASE("dump-seqs lists sequences in lex order") {
  auto r = run_cli({"dump-seqs", "--n", "3"});
  CHECK(r.status == 0);
  CHECK(r.out == "1,1,1\n1,1,2\n1,2,2\n1,2,3\n");
}

TEST_CASE("fold and compare through files") {
  TempFile model("bnfix_model_");
  TempFile folded("bnfix_folded_");
  {
    std::ofstream f(model.path);
    f << R"({"name": "toy", "layers": [
      {"name": "bn1", "mu": "0.0486", "sigma": "0.618", "gamma": "1", "beta": "0.1",
       "c": "0", "W": 1, "A": 15, "y_min": 0, "y_max": 1},
      {"name": "bn2", "mu": "-0.25", "sigma": "1.5", "gamma": "-0.75", "beta": "0.125",
       "c": "0", "W": 15, "A": 15, "y_min": 0, "y_max": 1}
    ]})";
  }
  auto f = run_cli({"fold", "--model", model.path.string(), "--k", "64", "--out",
                    folded.path.string()});
  CHECK(f.status == 0);
  CHECK(f.err.find("2/2 layers certified") != std::string::npos);

  auto c = run_cli({"compare", "--model", model.path.string(), "--folded",
                    folded.path.string(), "--samples", "200", "--json"});
  CHECK(c.status == 0);
  auto j = json::parse(c.out);
  CHECK(j["all_agree"] == true);
}

TEST_CASE("fold schema error returns 2") {
  TempFile model("bnfix_badmodel_");
  {
    std::ofstream f(model.path);
    f << R"({"layers": [{"name": "x"}]})";
  }
  auto r = run_cli({"fold", "--model", model.path.string(), "--k", "64"});
  CHECK(r.status == 2);
  CHECK(r.err.find("schema error") != std::string::npos);
  auto r2 = run_cli({"fold", "--model", "/nonexistent/file.json", "--k", "64"});
  CHECK(r2.status == 2);
}

TEST_CASE("fold exits 3 when a layer has no solution") {
  TempFile model("bnfix_stuck_");
  TempFile folded("bnfix_stuckout_");
  {
    std::ofstream f(model.path);
    f << R"({"name": "stuck", "layers": [
      {"name": "s", "mu": "-31/1170", "sigma": "457/1008", "gamma": "1", "beta": "0",
       "c": "0", "W": 1, "A": 15, "y_min": 0, "y_max": 1}
    ]})";
  }
  auto r = run_cli({"fold", "--model", model.path.string(), "--k", "52", "--out",
                    folded.path.string()});
  CHECK(r.status == 3);
  CHECK(r.err.find("next satisfied K: 61") != std::string::npos);
}

TEST_CASE("help is not an error") {
  CHECK(run_cli({"--help"}).status == 0);
}
