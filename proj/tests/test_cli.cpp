// Copyright 2026 The gfp Authors
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


#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "gfp/cli.hpp"
#include "gfp/errors.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace gfp;
using gfp::testing::read_file;
using gfp::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("real grids") {
  CHECK(parse_real_grid("0.1:0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(parse_real_grid("0.5") == std::vector<double>{0.5});
  CHECK(parse_real_grid("1, 2.5") == std::vector<double>{1.0, 2.5});
  CHECK(parse_real_grid("0:1:0.25,3") ==
        std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0, 3.0});
  const auto grid = parse_real_grid("0.1:2:0.1");
  REQUIRE(grid.size() == 20);
  CHECK(grid[2] == 0.3);
  CHECK(grid.back() == 2.0);
  CHECK_THROWS_AS(parse_real_grid(""), UsageError);
  CHECK_THROWS_AS(parse_real_grid("0.1:0.2"), UsageError);
  CHECK_THROWS_AS(parse_real_grid("0.3:0.1:0.1"), UsageError);
  CHECK_THROWS_AS(parse_real_grid("0:1:0"), UsageError);
  CHECK_THROWS_AS(parse_real_grid("0.1,abc"), UsageError);
  CHECK_THROWS_AS(parse_real_grid("0.1,"), UsageError);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("2,4,8") == std::vector<int>{2, 4, 8});
  CHECK(parse_int_list("2:8:2") == std::vector<int>{2, 4, 6, 8});
  CHECK(parse_int_list("3:5") == std::vector<int>{3, 4, 5});
  CHECK_THROWS_AS(parse_int_list("2.5"), UsageError);
  CHECK_THROWS_AS(parse_int_list("5:3"), UsageError);
}

TEST_CASE("help and usage errors") {
  const auto help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("sweep") != std::string::npos);
  const auto sub_help = run({"nn-table", "--help"});
  CHECK(sub_help.code == kExitOk);
  CHECK(sub_help.out.find("--ell-max") != std::string::npos);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"sweep", "--family", "exponential"}).code == kExitUsage);
  CHECK(run({"sweep", "--family", "weibull", "--q", "1", "--beta", "2",
             "--theta-max", "4"})
            .code == kExitUsage);
}

TEST_CASE("negative parameters are domain errors, not flags") {
  const auto r = run({"sweep", "--family", "exponential", "--q", "-1", "--beta", "2",
                      "--theta-max", "4"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("q must be > 0") != std::string::npos);
  CHECK(r.out.empty());
  CHECK(run({"sweep", "--family", "bernoulli", "--p", "1.5", "--beta", "2",
             "--theta-max", "4"})
            .code == kExitUsage);
  CHECK(run({"sweep", "--family", "bernoulli", "--p", "0.5", "--q", "0.5", "--beta",
             "2", "--theta-max", "4"})
            .code == kExitUsage);
  CHECK(run({"sweep", "--family", "bernoulli", "--p", "0.5", "--beta", "0",
             "--theta-max", "4"})
            .code == kExitUsage);
}

TEST_CASE("sweep writes csv and json") {
  TempDir dir;
  const auto csv = run({"sweep", "--family", "exponential", "--q", "0.5:1.5:0.5",
                        "--beta", "2", "--theta-max", "4,8", "--threads", "2"});
  REQUIRE(csv.code == kExitOk);
  std::istringstream lines(csv.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 7);
  CHECK(csv.err.find("6 grid points") != std::string::npos);

  const auto path = dir.path("sweep.json");
  const auto js = run({"sweep", "--family", "bernoulli", "--p", "0.2", "--beta", "2",
                       "--theta-max", "10", "--format", "json", "-o", path});
  REQUIRE(js.code == kExitOk);
  CHECK(js.out.empty());
  const auto doc = nlohmann::json::parse(read_file(path));
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["rows"][0]["uncorrelated"]["quality_mean"] == 0);
}

TEST_CASE("nn-table") {
  const auto ok = run({"nn-table", "--beta", "2", "--family", "exponential", "--q",
                       "0.5", "--theta-max", "4", "--k", "3", "--theta", "1"});
  REQUIRE(ok.code == kExitOk);
  CHECK(ok.out.rfind("# beta=2\n# k=3\n# theta=1\n", 0) == 0);
  CHECK(run({"nn-table", "--beta", "2", "--family", "exponential", "--q", "0.5",
             "--theta-max", "4", "--k", "1", "--theta", "1"})
            .code == kExitUsage);
  CHECK(run({"nn-table", "--beta", "2", "--family", "bernoulli", "--p", "0.5",
             "--theta-max", "4", "--k", "3", "--theta", "2"})
            .code == kExitUsage);
  const auto capped = run({"nn-table", "--beta", "2", "--family", "bernoulli", "--p",
                           "1", "--theta-max", "4", "--k", "3", "--theta", "0",
                           "--ell-max", "50"});
  CHECK(capped.code == kExitOk);
  CHECK(capped.err.find("warning") != std::string::npos);
}

TEST_CASE("custom pmf files") {
  TempDir dir;
  const auto good = dir.file("good.txt", "0 1\n2 1\n");
  CHECK(run({"nn-table", "--beta", "2", "--family", "custom", "--pmf-file", good,
             "--k", "2", "--theta", "2"})
            .code == kExitOk);
  const auto bad = dir.file("bad.txt", "0 1\n2 x\n");
  const auto r = run({"nn-table", "--beta", "2", "--family", "custom", "--pmf-file",
                      bad, "--k", "2", "--theta", "2"});
  CHECK(r.code == kExitParse);
  CHECK(r.err.find(":2:") != std::string::npos);
}

TEST_CASE("simulate is reproducible and writes edges") {
  TempDir dir;
  const std::vector<std::string> args = {
      "simulate", "--beta", "2", "--family", "exponential", "--q", "0.5",
      "--theta-max", "4", "--n", "3000", "--seed", "17", "--replicas", "3",
      "--threads", "2", "--emit-edges", dir.path("edges.txt")};
  const auto a = run(args);
  const auto b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["seeds"] == std::vector<int>{17, 18, 19});
  CHECK(doc["replicas"].size() == 3);
  const auto edges = read_file(dir.path("edges.txt"));
  CHECK(std::count(edges.begin(), edges.end(), '\n') == 3 + 2 * (3000 - 3));

  std::ostringstream q;
  // Qualities are not in the JSON; re-ingesting the same edges with any
  // qualities must count the same degree paradoxes as the first replica.
  for (int u = 0; u < 3000; ++u) q << u << " 0\n";
  const auto ingested = run({"simulate", "--input", dir.path("edges.txt"), "--qualities",
                             dir.file("q.txt", q.str())});
  REQUIRE(ingested.code == kExitOk);
  const auto idoc = nlohmann::json::parse(ingested.out);
  CHECK(idoc["replicas"][0]["flagged"]["degree_mean"] ==
        doc["replicas"][0]["flagged"]["degree_mean"]);
  CHECK(idoc["replicas"][0]["fractions"]["quality_mean"] == 0.0);
}

TEST_CASE("simulate argument errors") {
  TempDir dir;
  CHECK(run({"simulate", "--beta", "2", "--family", "exponential", "--q", "0.5",
             "--theta-max", "4", "--n", "3"})
            .code == kExitUsage);
  CHECK(run({"simulate", "--beta", "2", "--family", "exponential", "--q", "0.5",
             "--theta-max", "4"})
            .code == kExitUsage);
  const auto e = dir.file("e.txt", "1 2\n2 2\n");
  const auto q = dir.file("q.txt", "1 0\n2 0\n");
  CHECK(run({"simulate", "--input", e}).code == kExitUsage);
  CHECK(run({"simulate", "--input", e, "--qualities", q}).code == kExitParse);
  CHECK(run({"simulate", "--input", e, "--qualities", q, "--n", "10"}).code ==
        kExitUsage);
}
