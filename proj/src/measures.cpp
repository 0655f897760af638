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


#include "gfp/measures.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <fmt/core.h>

#include "gfp/errors.hpp"
#include "gfp/neighbor.hpp"
#include "gfp/parallel.hpp"

namespace gfp {

namespace {

constexpr double kTieTolerance = 1e-9;

template <typename Holds>
std::optional<std::int64_t> scan_degrees(const JointTable& joint,
                                         const ScanOptions& scan,
                                         const char* what, Holds&& holds,
                                         std::vector<std::string>& warnings) {
  const std::int64_t cap = scan.k_cap > 0
                               ? std::min(scan.k_cap, joint.k_max())
                               : joint.k_max();
  const double min_span = scan.span_factor * joint.mean_degree();
  std::optional<std::int64_t> last;
  int failures = 0;
  std::int64_t k = joint.beta();
  for (; k <= cap; ++k) {
    if (holds(k)) {
      last = k;
      failures = 0;
    } else {
      ++failures;
    }
    if (static_cast<double>(k) >= min_span && failures >= scan.failure_run) {
      break;
    }
  }
  if (k > cap && last == cap) {
    warnings.push_back(fmt::format(
        "{}: inequality still holds at the scan edge k={}", what, cap));
  }
  return last;
}

}  // namespace

bool strictly_below(double value, double statistic) {
  if (std::isinf(statistic)) return statistic > 0.0;
  return value <
         statistic - kTieTolerance * std::max(1.0, std::abs(statistic));
}

Criticals critical_values(const JointTable& joint, double rel_tol,
                          const ScanOptions& scan) {
  const ModelParams& params = joint.params();
  Criticals out;
  out.baseline = Baseline::kQpa;
  for (int theta : params.quality.support()) {
    const NeighborDist dist = neighbor_quality_dist(params, theta, rel_tol);
    if (strictly_below(theta, dist.mean)) out.quality_mean = theta;
    if (theta < dist.median) out.quality_median = theta;
  }
  out.degree_mean = scan_degrees(
      joint, scan, "mean friendship paradox",
      [&](std::int64_t k) {
        return strictly_below(static_cast<double>(k),
                              mean_neighbor_degree(joint, k));
      },
      out.warnings);
  out.degree_median = scan_degrees(
      joint, scan, "median friendship paradox",
      [&](std::int64_t k) { return k < neighbor_degree_median(joint, k); },
      out.warnings);
  return out;
}

Criticals uncorrelated_criticals(const JointTable& joint) {
  const QualityPmf& quality = joint.params().quality;
  Criticals out;
  out.baseline = Baseline::kUncorrelated;
  for (int theta : quality.support()) {
    if (strictly_below(theta, quality.mean())) out.quality_mean = theta;
    if (theta < quality.median()) out.quality_median = theta;
  }
  auto k = static_cast<std::int64_t>(std::floor(joint.mean_degree()));
  if (!strictly_below(static_cast<double>(k), joint.mean_degree())) --k;
  k = std::min(k, joint.k_max());
  if (k >= joint.beta()) out.degree_mean = k;
  if (joint.median_degree() - 1 >= joint.beta()) {
    out.degree_median = joint.median_degree() - 1;
  }
  return out;
}

Fractions paradox_fractions(const Criticals& criticals,
                            const JointTable& joint) {
  const auto& quality_cdf = joint.params().quality.cdf();
  const auto& degree_cdf = joint.degree_cdf();
  auto at_quality = [&](std::optional<int> c) {
    return c ? quality_cdf[*c] : 0.0;
  };
  auto at_degree = [&](std::optional<std::int64_t> c) {
    return c ? degree_cdf[static_cast<std::size_t>(*c)] : 0.0;
  };
  Fractions f;
  f.quality_mean = at_quality(criticals.quality_mean);
  f.quality_median = at_quality(criticals.quality_median);
  f.degree_mean = at_degree(criticals.degree_mean);
  f.degree_median = at_degree(criticals.degree_median);
  return f;
}

QualityPmf make_family(Family family, double x, int theta_max) {
  switch (family) {
    case Family::kBernoulli:
      return make_bernoulli(x, theta_max);
    case Family::kExponential:
      return make_exponential(x, theta_max);
    case Family::kCustom:
      break;
  }
  throw UsageError("parameter sweeps need the bernoulli or exponential family");
}

SweepRow sweep_point(Family family, double x, int beta, int theta_max,
                     double rel_tol) {
  SweepRow row;
  row.family = family;
  row.x = x;
  row.beta = beta;
  row.theta_max = theta_max;
  try {
    const ModelParams params(beta, make_family(family, x, theta_max));
    const JointTable joint = build_joint_table(params, rel_tol);
    row.qpa = critical_values(joint, rel_tol);
    row.uncorrelated = uncorrelated_criticals(joint);
    row.fractions = paradox_fractions(row.qpa, joint);
  } catch (const NonConvergenceError& e) {
    row.error = e.what();
    row.non_convergence = true;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> sweep(const SweepSpec& spec) {
  if (spec.x_grid.empty() || spec.betas.empty() || spec.theta_maxes.empty()) {
    throw UsageError("sweep: every grid must be non-empty");
  }
  struct Point {
    double x;
    int beta;
    int theta_max;
  };
  std::vector<Point> points;
  for (double x : spec.x_grid) {
    for (int beta : spec.betas) {
      for (int theta_max : spec.theta_maxes) {
        points.push_back({x, beta, theta_max});
      }
    }
  }
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return std::tie(a.x, a.beta, a.theta_max) <
           std::tie(b.x, b.beta, b.theta_max);
  });
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), spec.threads, [&](std::size_t i) {
    rows[i] = sweep_point(spec.family, points[i].x, points[i].beta,
                          points[i].theta_max, spec.rel_tol);
  });
  return rows;
}

}  // namespace gfp
