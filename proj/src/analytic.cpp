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


#include "gfp/analytic.hpp"

#include <cmath>

#include <fmt/core.h>

#include "gfp/errors.hpp"
#include "gfp/numerics.hpp"

namespace gfp {

using numerics::ln_gamma_ratio;

namespace {

constexpr std::int64_t kReanchorInterval = 512;

void require_support(const ModelParams& params, int theta) {
  if (!params.quality.in_support(theta)) {
    throw DomainError(fmt::format(
        "quality {} is outside the support of the quality distribution",
        theta));
  }
}

// ln[Gamma(beta + theta + s) Gamma(k + theta) / (Gamma(beta + theta)
// Gamma(k + theta + s))]
double ln_tail_ratio(const ModelParams& params, std::int64_t k, int theta) {
  const double s = params.shift();
  const double b = params.beta + theta;
  const double kt = static_cast<double>(k) + theta;
  return ln_gamma_ratio(b, s) - ln_gamma_ratio(kt, s);
}

}  // namespace

ModelParams::ModelParams(int beta_in, QualityPmf quality_in)
    : beta(beta_in), quality(std::move(quality_in)) {
  if (beta < 1) {
    throw DomainError(fmt::format("beta must be >= 1, got {}", beta));
  }
}

double joint_probability(const ModelParams& params, std::int64_t k,
                         int theta) {
  require_support(params, theta);
  if (k < params.beta) return 0.0;
  const double s = params.shift();
  const double b = params.beta + theta;
  const double kt = static_cast<double>(k) + theta;
  const double ln_p = std::log(params.quality.prob(theta) * s) +
                      ln_gamma_ratio(b, s) - ln_gamma_ratio(kt, s + 1.0);
  return std::exp(ln_p);
}

double joint_tail_mass(const ModelParams& params, std::int64_t k_from,
                       int theta) {
  require_support(params, theta);
  k_from = std::max<std::int64_t>(k_from, params.beta);
  return params.quality.prob(theta) *
         std::exp(ln_tail_ratio(params, k_from, theta));
}

double joint_tail_first_moment(const ModelParams& params, std::int64_t k_from,
                               int theta) {
  require_support(params, theta);
  k_from = std::max<std::int64_t>(k_from, params.beta);
  const double s = params.shift();
  const double kt = static_cast<double>(k_from) + theta;
  return params.quality.prob(theta) *
         std::exp(ln_tail_ratio(params, k_from, theta)) *
         (s * kt / (s - 1.0) - theta);
}

double JointTable::prob(std::int64_t k, int theta) const {
  if (theta < 0 || theta > theta_max() || k < beta()) return 0.0;
  if (k > k_max_) {
    return params_.quality.in_support(theta)
               ? joint_probability(params_, k, theta)
               : 0.0;
  }
  return probs_[static_cast<std::size_t>(k) * (theta_max() + 1) + theta];
}

double JointTable::degree_prob(std::int64_t k) const {
  if (k < 0 || k > k_max_) return 0.0;
  return degree_[static_cast<std::size_t>(k)];
}

double JointTable::degree_given_quality(std::int64_t k, int theta) const {
  const double rho = params_.quality.prob(theta);
  if (!(rho > 0.0)) {
    throw UndefinedConditionalError(
        fmt::format("P(k | theta={}) is undefined: rho(theta) = 0", theta));
  }
  return prob(k, theta) / rho;
}

double JointTable::quality_given_degree(int theta, std::int64_t k) const {
  const double pk = degree_prob(k);
  if (!(pk > 0.0)) {
    throw UndefinedConditionalError(
        fmt::format("P(theta | k={}) is undefined: P(k) = 0", k));
  }
  return prob(k, theta) / pk;
}

JointTable build_joint_table(const ModelParams& params, double rel_tol,
                             std::int64_t k_cap) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("build_joint_table: rel_tol must lie in (0, 1)");
  }
  if (k_cap < params.beta) {
    throw DomainError("build_joint_table: degree cap below beta");
  }
  const auto& support = params.quality.support();
  auto tail_beyond = [&](std::int64_t k_max) {
    double tail = 0.0;
    for (int theta : support) tail += joint_tail_mass(params, k_max + 1, theta);
    return tail;
  };
  if (!(tail_beyond(k_cap) < kJointTailTarget)) {
    throw NonConvergenceError(fmt::format(
        "joint table: tail mass still {:.3g} at the degree cap {}",
        tail_beyond(k_cap), k_cap));
  }
  std::int64_t lo = params.beta;
  std::int64_t hi = k_cap;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (tail_beyond(mid) < kJointTailTarget) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }

  JointTable table(params);
  table.k_max_ = lo;
  const int width = params.quality.theta_max() + 1;
  const auto rows = static_cast<std::size_t>(table.k_max_ + 1);
  table.probs_.assign(rows * width, 0.0);
  const double s = params.shift();
  for (int theta : support) {
    double p = 0.0;
    for (std::int64_t k = params.beta; k <= table.k_max_; ++k) {
      if ((k - params.beta) % kReanchorInterval == 0) {
        p = joint_probability(params, k, theta);
      }
      table.probs_[static_cast<std::size_t>(k) * width + theta] = p;
      const double kt = static_cast<double>(k) + theta;
      p *= kt / (kt + s + 1.0);
    }
  }

  table.degree_.assign(rows, 0.0);
  table.degree_cdf_.assign(rows, 0.0);
  double acc = 0.0;
  double first_moment = 0.0;
  for (std::size_t k = 0; k < rows; ++k) {
    double pk = 0.0;
    for (int theta : support) pk += table.probs_[k * width + theta];
    table.degree_[k] = pk;
    acc += pk;
    table.degree_cdf_[k] = acc;
    first_moment += static_cast<double>(k) * pk;
  }
  for (int theta : support) {
    table.tail_mass_ += joint_tail_mass(params, table.k_max_ + 1, theta);
    first_moment += joint_tail_first_moment(params, table.k_max_ + 1, theta);
  }
  table.total_mass_ = acc;
  table.mean_degree_ = first_moment;
  table.median_degree_ =
      static_cast<std::int64_t>(numerics::median_index(table.degree_cdf_));
  return table;
}

}  // namespace gfp
