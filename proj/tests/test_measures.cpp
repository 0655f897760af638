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


#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "doctest.h"
#include "gfp/errors.hpp"
#include "gfp/measures.hpp"
#include "gfp/neighbor.hpp"
#include "test_util.hpp"

using namespace gfp;
using gfp::testing::close_rel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest theta whose conditional neighbor-quality mean exceeds it, with
// E[1/k | theta] summed directly over the joint law.
std::optional<int> brute_quality_mean_critical(const ModelParams& params) {
  const auto& pmf = params.quality;
  const double mu = pmf.mean();
  const double var = pmf.variance();
  const int beta = params.beta;
  std::optional<int> best;
  for (int theta : pmf.support()) {
    double mass = 0.0;
    double inv_k = 0.0;
    for (std::int64_t k = beta; k < 2'000'000; ++k) {
      const double p = joint_probability(params, k, theta);
      mass += p;
      inv_k += p / static_cast<double>(k);
      if (p < 1e-18 * mass) break;
    }
    const double mean = mu + beta * var * (inv_k / mass) / (beta + mu);
    if (theta < mean - 1e-9 * std::max(1.0, mean)) best = theta;
  }
  return best;
}

}  // namespace

TEST_CASE("strictly_below") {
  CHECK(strictly_below(1.0, 2.0));
  CHECK_FALSE(strictly_below(2.0, 2.0));
  CHECK_FALSE(strictly_below(2.0, 2.0 + 1e-12));
  CHECK_FALSE(strictly_below(3.0, 2.0));
  CHECK(strictly_below(1e6, kInf));
  CHECK_FALSE(strictly_below(0.0, -kInf));
}

TEST_CASE("quality criticals against direct summation") {
  for (double q : {0.2, 0.5, 0.9, 1.0, 1.3, 2.0}) {
    for (int beta : {2, 6}) {
      for (int tmax : {4, 16}) {
        const ModelParams params(beta, make_exponential(q, tmax));
        const auto table = build_joint_table(params);
        const auto crit = critical_values(table);
        CAPTURE(q);
        CAPTURE(beta);
        CAPTURE(tmax);
        CHECK(crit.quality_mean == brute_quality_mean_critical(params));
      }
    }
  }
}

TEST_CASE("criticals are the last value satisfying the strict inequality") {
  for (auto pmf : {make_exponential(0.5, 8), make_exponential(1.6, 4),
                   make_bernoulli(0.4, 6)}) {
    const ModelParams params(3, pmf);
    const auto table = build_joint_table(params);
    const auto crit = critical_values(table);
    for (int theta : pmf.support()) {
      const auto dist = neighbor_quality_dist(params, theta);
      const bool mean_holds = strictly_below(theta, dist.mean);
      const bool median_holds = strictly_below(theta, dist.median);
      if (crit.quality_mean && theta == *crit.quality_mean) CHECK(mean_holds);
      if (!crit.quality_mean || theta > *crit.quality_mean) CHECK_FALSE(mean_holds);
      if (crit.quality_median && theta == *crit.quality_median) CHECK(median_holds);
      if (!crit.quality_median || theta > *crit.quality_median) CHECK_FALSE(median_holds);
    }
    REQUIRE(crit.degree_mean);
    REQUIRE(crit.degree_median);
    const std::int64_t km = *crit.degree_mean;
    CHECK(strictly_below(km, mean_neighbor_degree(table, km)));
    for (std::int64_t k = km + 1; k <= km + 25; ++k) {
      CHECK_FALSE(strictly_below(k, mean_neighbor_degree(table, k)));
    }
    const std::int64_t kd = *crit.degree_median;
    CHECK(strictly_below(kd, neighbor_degree_median(table, kd)));
    for (std::int64_t k = kd + 1; k <= kd + 25; ++k) {
      CHECK_FALSE(strictly_below(k, neighbor_degree_median(table, k)));
    }
  }
}

TEST_CASE("all-zero quality") {
  const ModelParams params(2, make_bernoulli(1.0, 5));
  const auto table = build_joint_table(params);
  const auto crit = critical_values(table);
  CHECK_FALSE(crit.quality_mean);
  CHECK_FALSE(crit.quality_median);
  // Every degree has an infinite neighbor mean; the scan ends at its cap.
  REQUIRE(crit.degree_mean);
  CHECK(*crit.degree_mean >= 2);
  CHECK(*crit.degree_mean == table.k_max());
  CHECK_FALSE(crit.warnings.empty());
  const auto frac = paradox_fractions(crit, table);
  CHECK(frac.quality_mean == 0.0);
  CHECK(frac.quality_median == 0.0);
  const auto u = uncorrelated_criticals(table);
  CHECK_FALSE(u.quality_mean);
}

TEST_CASE("uncorrelated criticals") {
  SUBCASE("largest support value below the mean") {
    const ModelParams params(2, make_bernoulli(0.2, 10));
    const auto table = build_joint_table(params);
    const auto u = uncorrelated_criticals(table);
    REQUIRE(u.quality_mean);
    CHECK(*u.quality_mean == 0);
    CHECK(u.baseline == Baseline::kUncorrelated);
    const auto frac = paradox_fractions(u, table);
    CHECK(frac.quality_mean == doctest::Approx(0.2));
    // Median quality 10 leaves 0 as the only smaller support value.
    REQUIRE(u.quality_median);
    CHECK(*u.quality_median == 0);
  }
  SUBCASE("median zero leaves nothing below it") {
    const ModelParams params(2, make_bernoulli(0.6, 8));
    const auto u = uncorrelated_criticals(build_joint_table(params));
    CHECK_FALSE(u.quality_median);
    REQUIRE(u.quality_mean);
    CHECK(*u.quality_mean == 0);
  }
  SUBCASE("uniform quality") {
    const ModelParams params(2, make_exponential(1.0, 8));
    const auto table = build_joint_table(params);
    const auto u = uncorrelated_criticals(table);
    CHECK(u.quality_mean == 3);
    CHECK(u.quality_median == 3);
    // <k> = 2 beta; k_c^u is the largest degree below 4.
    CHECK(u.degree_mean == 3);
    REQUIRE(u.degree_median);
    CHECK(*u.degree_median == table.median_degree() - 1);
  }
}

TEST_CASE("fractions are CDF values at the criticals") {
  const ModelParams params(4, make_exponential(0.7, 8));
  const auto table = build_joint_table(params);
  const auto crit = critical_values(table);
  const auto frac = paradox_fractions(crit, table);
  REQUIRE(crit.quality_mean);
  REQUIRE(crit.degree_mean);
  CHECK(frac.quality_mean == doctest::Approx(params.quality.cdf()[*crit.quality_mean]));
  CHECK(frac.degree_mean == doctest::Approx(table.degree_cdf()[*crit.degree_mean]));
  for (double f : {frac.quality_mean, frac.quality_median, frac.degree_mean,
                   frac.degree_median}) {
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
  Criticals none;
  const auto zero = paradox_fractions(none, table);
  CHECK(zero.quality_mean == 0.0);
  CHECK(zero.degree_median == 0.0);
}

TEST_CASE("quality criticals are non-decreasing in q") {
  for (int beta : {2, 8}) {
    for (int tmax : {4, 16}) {
      int prev_mean = -1;
      int prev_median = -1;
      for (int i = 1; i <= 20; ++i) {
        const auto row = sweep_point(Family::kExponential, i / 10.0, beta, tmax);
        REQUIRE_FALSE(row.error);
        const int mean = row.qpa.quality_mean.value_or(-1);
        const int median = row.qpa.quality_median.value_or(-1);
        CHECK(mean >= prev_mean);
        CHECK(median >= prev_median);
        prev_mean = mean;
        prev_median = median;
      }
    }
  }
}

TEST_CASE("stronger quality-degree coupling at small beta") {
  auto gap = [](int beta) {
    const auto row = sweep_point(Family::kExponential, 0.5, beta, 16);
    return std::abs(row.qpa.quality_mean.value_or(-1) -
                    row.uncorrelated.quality_mean.value_or(-1));
  };
  CHECK(gap(8) <= gap(2));
  const auto row = sweep_point(Family::kExponential, 0.5, 2, 16);
  CHECK(row.qpa.quality_mean.value_or(-1) >= row.uncorrelated.quality_mean.value_or(-1));
}

TEST_CASE("sweep orders rows and isolates failing points") {
  SweepSpec spec;
  spec.family = Family::kExponential;
  spec.x_grid = {1.5, 0.5};
  spec.betas = {4, 2};
  spec.theta_maxes = {8, 4};
  spec.threads = 3;
  const auto rows = sweep(spec);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    CHECK(std::tie(a.x, a.beta, a.theta_max) < std::tie(b.x, b.beta, b.theta_max));
  }
  const auto serial = [&] {
    auto s = spec;
    s.threads = 1;
    return sweep(s);
  }();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].qpa.degree_mean == serial[i].qpa.degree_mean);
    CHECK(rows[i].fractions.degree_median == serial[i].fractions.degree_median);
  }
  const auto bad = sweep_point(Family::kExponential, -1.0, 2, 4);
  CHECK(bad.error);
}

TEST_CASE("median degree paradox is never more common than the mean one") {
  for (double q : {0.1, 0.6, 1.0, 1.4, 2.0}) {
    for (int beta : {2, 5}) {
      const auto row = sweep_point(Family::kBernoulli, q / 2.0, beta, 8);
      REQUIRE_FALSE(row.error);
      CHECK(row.fractions.degree_median <= row.fractions.degree_mean + 1e-12);
    }
  }
}
