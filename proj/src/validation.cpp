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


#include "gfp/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "gfp/errors.hpp"
#include "gfp/graph_io.hpp"
#include "gfp/neighbor.hpp"
#include "gfp/parallel.hpp"
#include "gfp/simulate.hpp"

namespace gfp {

namespace {

template <typename Fn>
CheckResult timed(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult result = fn();
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

std::vector<ModelParams> normalization_grid() {
  std::vector<ModelParams> grid;
  for (int beta : {2, 4, 8}) {
    for (int theta_max : {4, 16}) {
      for (double p : {0.1, 0.5, 0.9}) {
        grid.emplace_back(beta, make_bernoulli(p, theta_max));
      }
      for (double q : {0.5, 1.0, 1.5}) {
        grid.emplace_back(beta, make_exponential(q, theta_max));
      }
    }
  }
  return grid;
}

// Absent values rank below every present one.
bool at_least(const std::optional<int>& a, const std::optional<int>& b) {
  if (!b) return true;
  return a && *a >= *b;
}

std::string violation_detail(int violations, std::size_t total,
                             const std::string& first) {
  std::string out = fmt::format("violations {} of {}", violations, total);
  if (!first.empty()) out += " (first: " + first + ")";
  return out;
}

std::string row_label(const SweepRow& r) {
  return fmt::format("q={} beta={} theta_max={}", r.x, r.beta, r.theta_max);
}

// Counts rows failing `ok`; rows that errored count as failures.
template <typename Pred>
CheckResult count_violations(const std::string& name,
                             const std::vector<SweepRow>& rows, Pred&& ok) {
  int bad = 0;
  std::size_t considered = 0;
  std::string first;
  for (const auto& r : rows) {
    std::optional<bool> verdict = r.error ? std::optional<bool>(false) : ok(r);
    if (!verdict) continue;
    ++considered;
    if (!*verdict) {
      if (first.empty()) {
        first = row_label(r) + (r.error ? ": " + *r.error : std::string());
      }
      ++bad;
    }
  }
  CheckResult c;
  c.name = name;
  c.pass = bad == 0 && considered > 0;
  c.detail = violation_detail(bad, considered, first);
  return c;
}

}  // namespace

std::string format_check(const CheckResult& check) {
  const char* verdict =
      check.informational ? "INFO" : (check.pass ? "PASS" : "FAIL");
  return fmt::format("{}: {}: {}", check.name, check.detail, verdict);
}

CheckResult check_joint_normalization() {
  return timed([] {
    double worst = 0.0;
    const auto grid = normalization_grid();
    for (const auto& params : grid) {
      const JointTable joint = build_joint_table(params);
      worst = std::max(worst,
                       std::abs(joint.total_mass() + joint.tail_mass() - 1.0));
    }
    CheckResult c;
    c.name = "joint normalization";
    c.pass = worst < 1e-6;
    c.detail = fmt::format("max residual {:.3g} < 1e-06 over {} parameter sets",
                           worst, grid.size());
    return c;
  });
}

CheckResult check_ba_reduction() {
  return timed([] {
    double worst = 0.0;
    for (int beta : {2, 4, 8}) {
      const ModelParams params(beta, make_bernoulli(1.0, 4));
      for (std::int64_t k = 0; k <= 1000; ++k) {
        const double kd = static_cast<double>(k);
        const double expected =
            k < beta ? 0.0
                     : 2.0 * beta * (beta + 1) / (kd * (kd + 1) * (kd + 2));
        worst = std::max(
            worst, std::abs(joint_probability(params, k, 0) - expected));
      }
    }
    CheckResult c;
    c.name = "zero-quality reduction";
    c.pass = worst < 1e-10;
    c.detail = fmt::format("max |P(k,0) - 2b(b+1)/(k(k+1)(k+2))| {:.3g} < 1e-10",
                           worst);
    return c;
  });
}

CheckResult check_conditional_normalization() {
  return timed([] {
    double worst = 0.0;
    std::size_t evaluated = 0;
    for (const auto& params : normalization_grid()) {
      const int b = params.beta;
      const QualityPmf& q = params.quality;
      std::set<int> thetas;
      for (int theta : {0, q.median(), q.theta_max()}) {
        if (q.in_support(theta)) thetas.insert(theta);
      }
      for (std::int64_t k : {b, b + 3, 2 * b + 5}) {
        for (int theta : thetas) {
          const NeighborDist d = neighbor_joint_dist(params, k, theta);
          worst = std::max(worst, std::abs(d.total() - 1.0));
          ++evaluated;
        }
      }
    }
    CheckResult c;
    c.name = "neighbor normalization";
    c.pass = worst < 1e-6;
    c.detail = fmt::format("max residual {:.3g} < 1e-06 over {} (k, theta)",
                           worst, evaluated);
    return c;
  });
}

CheckResult check_monte_carlo_agreement(int threads) {
  return timed([threads] {
    constexpr int kSeeds = 10;
    constexpr std::int64_t kNodes = 200'000;
    constexpr std::int64_t kMaxDegree = 20;
    const ModelParams params(2, make_exponential(0.5, 4));
    const JointTable joint = build_joint_table(params);
    std::vector<JointHistogram> hists(kSeeds);
    parallel_for(kSeeds, threads, [&](std::size_t i) {
      hists[i] = joint_histogram(
          grow_qpa(kNodes, params, static_cast<std::uint64_t>(i + 1)));
    });
    JointHistogram pooled;
    for (const auto& h : hists) {
      for (const auto& [key, count] : h.counts) pooled.counts[key] += count;
      pooled.total += h.total;
    }
    double tv = 0.0;
    for (std::int64_t k = 0; k <= kMaxDegree; ++k) {
      for (int theta = 0; theta <= params.quality.theta_max(); ++theta) {
        tv += std::abs(pooled.prob(k, theta) - joint.prob(k, theta));
      }
    }
    tv *= 0.5;
    CheckResult c;
    c.name = "simulated joint distribution";
    c.pass = tv < 0.02;
    c.detail = fmt::format(
        "total variation {:.4g} < 0.02 (k <= {}, {} seeds x {} nodes)", tv,
        kMaxDegree, kSeeds, kNodes);
    return c;
  });
}

std::vector<SweepRow> exponential_reference_sweep(int threads) {
  SweepSpec spec;
  spec.family = Family::kExponential;
  for (int i = 1; i <= 20; ++i) spec.x_grid.push_back(i / 10.0);
  spec.betas = {2, 4, 6, 8};
  spec.theta_maxes = {4, 8, 16, 24};
  spec.threads = threads;
  return sweep(spec);
}

CheckResult check_degree_fraction_order(const std::vector<SweepRow>& rows) {
  return timed([&] {
    return count_violations(
        "median FP fraction <= mean FP fraction", rows,
        [](const SweepRow& r) -> std::optional<bool> {
          return r.fractions.degree_median <= r.fractions.degree_mean + 1e-12;
        });
  });
}

CheckResult check_mean_fp_majority(const std::vector<SweepRow>& rows) {
  return timed([&] {
    return count_violations(
        "mean FP fraction > 0.8 at theta_max=16", rows,
        [](const SweepRow& r) -> std::optional<bool> {
          if (r.theta_max != 16) return std::nullopt;
          return r.fractions.degree_mean > 0.8;
        });
  });
}

CheckResult check_quality_critical_order(const std::vector<SweepRow>& rows) {
  return timed([&] {
    return count_violations(
        "critical quality >= uncorrelated critical quality", rows,
        [](const SweepRow& r) -> std::optional<bool> {
          return at_least(r.qpa.quality_mean, r.uncorrelated.quality_mean) &&
                 at_least(r.qpa.quality_median, r.uncorrelated.quality_median);
        });
  });
}

CheckResult check_regime_flip(const std::vector<SweepRow>& rows) {
  return timed([&] {
    auto flip = [&](const std::string& label, auto pick) {
      return count_violations(
          label, rows, [pick](const SweepRow& r) -> std::optional<bool> {
            if (std::abs(r.x - 1.0) < 1e-12) return std::nullopt;
            const Criticals& c = pick(r);
            return r.x < 1.0 ? at_least(c.quality_mean, c.quality_median)
                             : at_least(c.quality_median, c.quality_mean);
          });
    };
    const CheckResult qpa =
        flip("QPA", [](const SweepRow& r) -> const Criticals& { return r.qpa; });
    const CheckResult unc = flip("uncorrelated", [](const SweepRow& r) -> const Criticals& {
      return r.uncorrelated;
    });
    CheckResult c;
    c.name = "mean/median critical quality order flips at q=1";
    c.pass = qpa.pass && unc.pass;
    c.detail = fmt::format("QPA {}; uncorrelated {}", qpa.detail, unc.detail);
    return c;
  });
}

CheckResult check_median_convention() {
  return timed([] {
    const QualityPmf pmf = make_custom({0.5, 0.0, 0.0, 0.0, 0.0, 0.5});
    CheckResult c;
    c.name = "median convention";
    c.pass = pmf.median() == 0;
    c.detail = fmt::format("median of (delta0 + delta5)/2 is {} (expected 0)",
                           pmf.median());
    return c;
  });
}

CheckResult check_micro_graphs() {
  return timed([] {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> star_edges;
    for (std::uint32_t leaf = 1; leaf <= 10; ++leaf) {
      star_edges.push_back({0, leaf});
    }
    const EmpiricalReport star = empirical_report(
        network_from_edges(11, star_edges, std::vector<int>(11, 0)));
    const EmpiricalReport triangle = empirical_report(
        network_from_edges(3, {{0, 1}, {1, 2}, {0, 2}}, {0, 0, 5}));
    CheckResult c;
    c.name = "hand-computed graphs";
    c.pass = star.flagged.degree_mean == 10 && star.counted == 11 &&
             triangle.flagged.quality_mean == 2 && triangle.counted == 3 &&
             triangle.flagged.quality_median == 0;
    c.detail = fmt::format(
        "star mean FP {}/{} (expected 10/11), triangle mean QP {}/{} "
        "(expected 2/3), median QP {}/{} (expected 0/3)",
        star.flagged.degree_mean, star.counted, triangle.flagged.quality_mean,
        triangle.counted, triangle.flagged.quality_median, triangle.counted);
    return c;
  });
}

CheckResult check_growth_determinism() {
  return timed([] {
    const ModelParams params(2, make_exponential(0.5, 4));
    std::ostringstream a;
    std::ostringstream b;
    write_edge_list(grow_qpa(20'000, params, 42), a);
    write_edge_list(grow_qpa(20'000, params, 42), b);
    CheckResult c;
    c.name = "growth determinism";
    c.pass = a.str() == b.str();
    c.detail = fmt::format("two edge lists from seed 42 {}",
                           c.pass ? "identical" : "differ");
    return c;
  });
}

CheckResult edge_balance_diagnostic() {
  return timed([] {
    const ModelParams params(2, make_exponential(0.5, 2));
    double worst = 0.0;
    double worst_rel = 0.0;
    for (std::int64_t k : {2, 3, 5, 8}) {
      for (std::int64_t ell : {2, 4, 7}) {
        for (int theta : {0, 1, 2}) {
          for (int phi : {0, 1, 2}) {
            const double lhs = static_cast<double>(k) *
                               joint_probability(params, k, theta) *
                               nn_probability(params, k, theta, ell, phi);
            const double rhs = static_cast<double>(ell) *
                               joint_probability(params, ell, phi) *
                               nn_probability(params, ell, phi, k, theta);
            worst = std::max(worst, std::abs(lhs - rhs));
            worst_rel = std::max(worst_rel, std::abs(lhs - rhs) /
                                                std::max(lhs, rhs));
          }
        }
      }
    }
    CheckResult c;
    c.name = "edge-end balance";
    c.informational = true;
    c.pass = true;
    c.detail = fmt::format("max residual {:.3g} (relative {:.3g})", worst,
                           worst_rel);
    return c;
  });
}

std::vector<CheckResult> run_validation(bool quick, int threads) {
  std::vector<CheckResult> out;
  out.push_back(check_joint_normalization());
  out.push_back(check_ba_reduction());
  out.push_back(check_conditional_normalization());
  const auto rows = exponential_reference_sweep(threads);
  out.push_back(check_degree_fraction_order(rows));
  out.push_back(check_mean_fp_majority(rows));
  out.push_back(check_quality_critical_order(rows));
  out.push_back(check_regime_flip(rows));
  out.push_back(check_median_convention());
  out.push_back(check_micro_graphs());
  out.push_back(edge_balance_diagnostic());
  if (!quick) {
    out.push_back(check_monte_carlo_agreement(threads));
    out.push_back(check_growth_determinism());
  }
  return out;
}

}  // namespace gfp
