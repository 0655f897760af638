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
#include <random>
#include <vector>

#include "doctest.h"
#include "gfp/errors.hpp"
#include "gfp/quality.hpp"
#include "test_util.hpp"

using namespace gfp;
using gfp::testing::close_rel;
using gfp::testing::TempDir;

TEST_CASE("bernoulli puts p at zero and 1 - p at theta_max") {
  const auto pmf = make_bernoulli(0.2, 10);
  CHECK(pmf.theta_max() == 10);
  CHECK(pmf.prob(0) == doctest::Approx(0.2));
  CHECK(pmf.prob(10) == doctest::Approx(0.8));
  for (int t = 1; t < 10; ++t) CHECK(pmf.prob(t) == 0.0);
  CHECK(pmf.mean() == doctest::Approx(8.0));
  CHECK(pmf.variance() == doctest::Approx(0.2 * 0.8 * 100.0));
  CHECK(pmf.median() == 10);
  CHECK(pmf.support() == std::vector<int>{0, 10});
  CHECK(pmf.family() == Family::kBernoulli);
  CHECK(*pmf.param() == 0.2);
}

TEST_CASE("bernoulli endpoints collapse the support") {
  const auto all_zero = make_bernoulli(1.0, 4);
  CHECK(all_zero.support() == std::vector<int>{0});
  CHECK(all_zero.mean() == 0.0);
  CHECK(all_zero.median() == 0);
  const auto all_top = make_bernoulli(0.0, 4);
  CHECK(all_top.support() == std::vector<int>{4});
  CHECK(all_top.median() == 4);
}

TEST_CASE("median of an even two-point mixture is the lower point") {
  const auto pmf = make_custom({0.5, 0, 0, 0, 0, 0.5});
  CHECK(pmf.median() == 0);
  CHECK(make_bernoulli(0.5, 5).median() == 0);
}

TEST_CASE("exponential weights form a geometric sequence") {
  for (double q : {0.1, 0.5, 1.0, 1.5, 2.0}) {
    for (int tmax : {4, 16, 24}) {
      CAPTURE(q);
      CAPTURE(tmax);
      const auto pmf = make_exponential(q, tmax);
      double z = 0.0;
      for (int t = 0; t <= tmax; ++t) z += std::pow(q, t);
      double mean = 0.0;
      double second = 0.0;
      double total = 0.0;
      for (int t = 0; t <= tmax; ++t) {
        const double expected = std::pow(q, t) / z;
        CHECK(close_rel(pmf.prob(t), expected, 1e-13));
        mean += t * expected;
        second += t * t * expected;
        total += pmf.prob(t);
      }
      CHECK(close_rel(total, 1.0, 1e-14));
      CHECK(close_rel(pmf.mean(), mean, 1e-12));
      CHECK(close_rel(pmf.variance(), second - mean * mean, 1e-10));
      CHECK(pmf.cdf().back() == 1.0);
    }
  }
}

TEST_CASE("uniform quality has mean theta_max / 2") {
  const auto pmf = make_exponential(1.0, 8);
  CHECK(pmf.mean() == doctest::Approx(4.0));
  CHECK(pmf.median() == 4);
}

TEST_CASE("invalid family parameters are domain errors") {
  CHECK_THROWS_AS(make_bernoulli(-0.1, 4), DomainError);
  CHECK_THROWS_AS(make_bernoulli(1.1, 4), DomainError);
  CHECK_THROWS_AS(make_bernoulli(std::nan(""), 4), DomainError);
  CHECK_THROWS_AS(make_bernoulli(0.5, 0), DomainError);
  CHECK_THROWS_AS(make_exponential(0.0, 4), DomainError);
  CHECK_THROWS_AS(make_exponential(-1.0, 4), DomainError);
  CHECK_THROWS_AS(make_exponential(0.5, -3), DomainError);
  CHECK_THROWS_AS(make_custom({}), DomainError);
  CHECK_THROWS_AS(make_custom({0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(make_custom({1.0, -0.5}), DomainError);
}

TEST_CASE("custom weights are normalized") {
  const auto pmf = make_custom({1.0, 0.0, 3.0});
  CHECK(pmf.prob(0) == doctest::Approx(0.25));
  CHECK(pmf.prob(2) == doctest::Approx(0.75));
  CHECK_FALSE(pmf.in_support(1));
  CHECK_FALSE(pmf.in_support(3));
  CHECK_FALSE(pmf.in_support(-1));
  CHECK(pmf.mean() == doctest::Approx(1.5));
  CHECK(pmf_stats(pmf).median == 2);
}

TEST_CASE("load_custom_pmf reads theta weight lines") {
  TempDir dir;
  const auto path = dir.file("q.txt",
                             "# quality weights\n"
                             "0 2\n"
                             "\n"
                             "3 6   # trailing comment\n");
  const auto pmf = load_custom_pmf(path);
  CHECK(pmf.theta_max() == 3);
  CHECK(pmf.prob(0) == doctest::Approx(0.25));
  CHECK(pmf.prob(3) == doctest::Approx(0.75));
  CHECK(pmf.family() == Family::kCustom);
}

TEST_CASE("load_custom_pmf reports the offending line") {
  TempDir dir;
  auto line_of = [&](const std::string& contents) -> std::size_t {
    try {
      load_custom_pmf(dir.file("bad.txt", contents));
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("0 1\nx 2\n") == 2);
  CHECK(line_of("0 1\n1\n") == 2);
  CHECK(line_of("0 1\n1 2 3\n") == 2);
  CHECK(line_of("0 1\n\n-1 2\n") == 3);
  CHECK(line_of("0 -1\n") == 1);
  CHECK(line_of("0 1\n0 2\n") == 2);
  CHECK(line_of("# nothing\n") == 0);
  CHECK(line_of("0 0\n1 0\n") == 0);
  CHECK_THROWS_AS(load_custom_pmf(dir.path("missing.txt")), ParseError);
}

TEST_CASE("sampling reproduces the pmf") {
  const auto pmf = make_exponential(0.7, 6);
  std::mt19937_64 rng(12345);
  constexpr int kDraws = 200000;
  std::vector<int> counts(7, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[sample_quality(pmf, rng)];
  for (int t = 0; t <= 6; ++t) {
    const double p = pmf.prob(t);
    const double sd = std::sqrt(p * (1 - p) / kDraws);
    CAPTURE(t);
    CHECK(std::abs(counts[t] / double(kDraws) - p) < 5 * sd);
  }
}

TEST_CASE("sampling never returns a zero-probability quality") {
  const auto pmf = make_bernoulli(0.3, 9);
  std::mt19937_64 rng(7);
  int stray = 0;
  for (int i = 0; i < 50000; ++i) {
    const int t = pmf.sample(rng);
    if (t != 0 && t != 9) ++stray;
  }
  CHECK(stray == 0);
}

TEST_CASE("bernoulli draws at p = 1/2") {
  const auto pmf = make_bernoulli(0.5, 6);
  std::mt19937_64 rng(99);
  constexpr int kDraws = 1'000'000;
  int zeros = 0;
  for (int i = 0; i < kDraws; ++i) zeros += pmf.sample(rng) == 0;
  CHECK(std::abs(zeros / double(kDraws) - 0.5) < 0.002);
}

TEST_CASE("vanishing q concentrates on zero quality") {
  const auto pmf = make_exponential(1e-9, 8);
  CHECK(pmf.prob(0) > 1.0 - 1e-8);
  CHECK(pmf.median() == 0);
  CHECK(pmf.mean() < 1e-8);
}
