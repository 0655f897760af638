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


#include <filesystem>
#include <sstream>
#include <string>

#include "doctest.h"
#include "gfp/errors.hpp"
#include "gfp/neighbor.hpp"
#include "gfp/output.hpp"
#include "test_util.hpp"

using namespace gfp;
using gfp::testing::read_file;
using gfp::testing::TempDir;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("sweep csv layout") {
  SweepRow row = sweep_point(Family::kBernoulli, 1.0, 2, 4);
  const auto lines = lines_of(sweep_csv({row}));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "family,x,beta,theta_max,crit_q_mean,crit_q_median,crit_k_mean,"
        "crit_k_median,crit_q_mean_u,crit_q_median_u,crit_k_mean_u,"
        "crit_k_median_u,frac_q_mean,frac_q_median,frac_k_mean,frac_k_median");
  // Absent quality criticals are empty fields; fractions have six decimals.
  CHECK(lines[1].rfind("bernoulli,1,2,4,,,", 0) == 0);
  CHECK(lines[1].find(",0.000000,0.000000,") != std::string::npos);
}

TEST_CASE("sweep json carries the schema version") {
  const auto doc = sweep_json({sweep_point(Family::kExponential, 0.5, 2, 4)});
  CHECK(doc["schema_version"] == kSchemaVersion);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["beta"] == 2);
}

TEST_CASE("nn table layout") {
  const ModelParams params(2, make_bernoulli(0.5, 3));
  const auto dist = neighbor_joint_dist(params, 3, 0);
  const auto lines = lines_of(nn_table_csv(params, 3, 0, dist));
  REQUIRE(lines.size() > 6);
  CHECK(lines[0] == "# beta=2");
  CHECK(lines[1] == "# k=3");
  CHECK(lines[2] == "# theta=0");
  CHECK(lines[3].rfind("# tail_mass=", 0) == 0);
  CHECK(lines[4] == "ell,phi,prob");
  CHECK(lines[5].rfind("2,0,", 0) == 0);
  CHECK(lines[6].rfind("2,3,", 0) == 0);
  // Two support qualities per degree.
  CHECK((lines.size() - 5) % 2 == 0);
}

TEST_CASE("atomic writes replace the whole file") {
  TempDir dir;
  const auto path = dir.path("out.txt");
  write_file_atomic(path, "first version\n");
  CHECK(read_file(path) == "first version\n");
  write_file_atomic(path, "2\n");
  CHECK(read_file(path) == "2\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e :
       std::filesystem::directory_iterator(std::filesystem::path(path).parent_path())) {
    ++entries;
  }
  CHECK(entries == 1);
  CHECK_THROWS_AS(write_file_atomic(dir.path("no/such/dir/out.txt"), "x"), Error);
}
