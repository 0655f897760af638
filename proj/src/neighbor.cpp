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


#include "gfp/neighbor.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/core.h>

#include "gfp/errors.hpp"
#include "gfp/numerics.hpp"

namespace gfp {

using numerics::ln_binomial;
using numerics::ln_gamma;
using numerics::ln_gamma_ratio;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlushBelow = 1e-300;
// Mixture components lighter than this are skipped by the median scan; the
// total skipped mass stays far below numerics::kHalfTolerance.
constexpr double kNegligibleWeight = 1e-16;

void require_conditioning(const ModelParams& params, std::int64_t k,
                          int theta) {
  if (k < params.beta) {
    throw DomainError(
        fmt::format("degree {} is below beta = {}", k, params.beta));
  }
  if (!params.quality.in_support(theta)) {
    throw UndefinedConditionalError(fmt::format(
        "conditioning on quality {} with rho(theta) = 0", theta));
  }
}

struct Component {
  double weight;
  NeighborSeries series;
  double prev = 0.0;
  double last = 0.0;
};

// Advances every component by one ell step; returns the weighted sum.
double step_all(std::vector<Component>& parts) {
  double total = 0.0;
  for (auto& c : parts) {
    c.prev = c.last;
    c.last = c.series.next();
    total += c.weight * c.last;
  }
  return total;
}

double tail_estimate(const std::vector<Component>& parts, std::int64_t ell,
                     double s) {
  double tail = 0.0;
  for (const auto& c : parts) {
    tail += c.weight * numerics::power_law_tail(c.prev, c.last, ell, s).mass;
  }
  return tail;
}

std::int64_t median_of_rows(const std::vector<double>& row_mass,
                            std::int64_t ell_min) {
  std::vector<double> cdf(row_mass.size());
  std::partial_sum(row_mass.begin(), row_mass.end(), cdf.begin());
  const std::size_t idx = numerics::median_index(cdf);
  if (idx == cdf.size()) {
    throw NonConvergenceError(
        "neighbor distribution: enumerated mass never reaches 1/2");
  }
  return ell_min + static_cast<std::int64_t>(idx);
}

}  // namespace

double nn_probability(const ModelParams& params, std::int64_t k, int theta,
                      std::int64_t ell, int phi) {
  require_conditioning(params, k, theta);
  if (ell < params.beta) {
    throw DomainError(
        fmt::format("neighbor degree {} is below beta = {}", ell, params.beta));
  }
  if (!params.quality.in_support(phi)) {
    throw DomainError(fmt::format(
        "neighbor quality {} is outside the quality support", phi));
  }
  const int beta = params.beta;
  const double s = params.shift();
  const double big_k = static_cast<double>(k) + theta + s + 1.0;
  const double ell_d = static_cast<double>(ell);

  const double ln_prefactor =
      std::log(params.quality.prob(phi) / static_cast<double>(k)) +
      ln_gamma_ratio(beta + phi, ell_d - beta) - ln_gamma_ratio(big_k, ell_d + phi) +
      ln_gamma(beta + phi + s);

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k + ell));
  for (std::int64_t j = beta + 1; j <= k; ++j) {
    const double jd = static_cast<double>(j);
    terms.push_back(ln_gamma_ratio(jd + theta + s, beta + phi) -
                    ln_gamma(beta + phi + s) +
                    ln_binomial(k - j + ell - beta, ell - beta));
  }
  for (std::int64_t j = beta + 1; j <= ell; ++j) {
    const double jd = static_cast<double>(j);
    terms.push_back(ln_gamma_ratio(jd + phi + s, beta + theta) -
                    ln_gamma(beta + theta + s) +
                    ln_binomial(ell - j + k - beta, k - beta));
  }
  if (terms.empty()) return 0.0;
  return std::exp(ln_prefactor + numerics::sum_log_terms(terms));
}

NeighborSeries::NeighborSeries(const ModelParams& params, std::int64_t k,
                               int theta, int phi)
    : beta_(params.beta),
      phi_(phi),
      s_(params.shift()),
      n_(k - params.beta),
      big_k_(static_cast<double>(k) + theta + params.shift() + 1.0),
      e_base_(params.beta + theta + params.shift()),
      ell_(params.beta) {
  require_conditioning(params, k, theta);
  if (!params.quality.in_support(phi)) {
    throw DomainError(fmt::format(
        "neighbor quality {} is outside the quality support", phi));
  }
  const double rho_over_k = params.quality.prob(phi) / static_cast<double>(k);
  const double b = beta_;

  // First sum at ell = beta, j = beta + 1 .. k, by the ratio in j.
  s1_.resize(static_cast<std::size_t>(n_));
  if (n_ > 0) {
    const double a0 = b + 1.0 + theta + s_;
    double t = rho_over_k * std::exp(ln_gamma_ratio(a0, b + phi) -
                                     ln_gamma_ratio(big_k_, b + phi));
    for (std::int64_t i = 0; i < n_; ++i) {
      s1_[static_cast<std::size_t>(i)] = t;
      const double a = a0 + static_cast<double>(i);
      t *= (a + b + phi) / a;
    }
  }

  // Second sum as an n-fold prefix sum, each level rescaled to be 1 at
  // ell = beta + 1.
  v_.assign(static_cast<std::size_t>(n_ + 1), 0.0);
  s2_scale_ = std::exp(
      std::log(rho_over_k) + ln_gamma_ratio(b + phi, s_) -
      ln_gamma_ratio(b + 1.0 + phi, s_) + ln_gamma_ratio(e_base_, b + 1.0 + phi) -
      ln_gamma_ratio(big_k_, b + 1.0 + phi));
}

void NeighborSeries::advance(std::int64_t ell) {
  const double prev_ell = static_cast<double>(ell - 1) + phi_;
  const double steps = static_cast<double>(ell - beta_);
  const double common = prev_ell / (big_k_ + prev_ell);
  for (std::int64_t i = 0; i < n_; ++i) {
    double& t = s1_[static_cast<std::size_t>(i)];
    if (t == 0.0) continue;
    t *= common * (static_cast<double>(n_ - 1 - i) + steps) / steps;
    if (t < kFlushBelow) t = 0.0;
  }

  g_ = (ell == beta_ + 1) ? 1.0 : g_ * prev_ell / (prev_ell + s_);
  const double cur = static_cast<double>(ell) + phi_;
  const double anchor = static_cast<double>(beta_) + 1.0 + phi_;
  double lower = g_;
  double e_lower = e_base_;
  for (auto& v : v_) {
    const double e = e_lower + 1.0;
    v = v * prev_ell / (prev_ell + e) + lower * (anchor + e_lower) /
                                            (cur + e_lower);
    lower = v;
    e_lower = e;
  }
}

double NeighborSeries::next() {
  const std::int64_t ell = ell_++;
  if (ell == beta_) {
    return std::accumulate(s1_.begin(), s1_.end(), 0.0);
  }
  advance(ell);
  return std::accumulate(s1_.begin(), s1_.end(), 0.0) + s2_scale_ * v_.back();
}

double neighbor_quality_given(const ModelParams& params, std::int64_t k,
                              int theta, int phi) {
  require_conditioning(params, k, theta);
  const double mu = params.quality.mean();
  const double b = params.beta;
  return params.quality.prob(phi) *
         (1.0 + b * (phi - mu) / (static_cast<double>(k) * (b + mu)));
}

double mean_neighbor_quality(const ModelParams& params, std::int64_t k,
                             int theta) {
  require_conditioning(params, k, theta);
  const double mu = params.quality.mean();
  const double b = params.beta;
  return mu + b * params.quality.variance() / (static_cast<double>(k) * (b + mu));
}

double mean_neighbor_degree(const ModelParams& params, std::int64_t k,
                            int theta) {
  require_conditioning(params, k, theta);
  const double s = params.shift();
  if (!(s > 2.0)) return kInf;
  const double mu = params.quality.mean();
  const double b = params.beta;
  double m2 = 0.0;
  for (int phi : params.quality.support()) {
    m2 += params.quality.prob(phi) * (b + phi) * (b + phi + 1.0);
  }
  const double kd = static_cast<double>(k);
  const double x = kd + theta + s;
  const double y = b + theta + s;
  const double degree_plus_quality =
      x / kd *
      ((b + mu) * (numerics::digamma(x) - numerics::digamma(y)) +
       m2 / ((y - 1.0) * (s - 2.0)));
  return degree_plus_quality - mean_neighbor_quality(params, k, theta);
}

double mean_neighbor_degree(const JointTable& joint, std::int64_t k) {
  double mean = 0.0;
  for (int theta : joint.params().quality.support()) {
    const double w = joint.quality_given_degree(theta, k);
    if (w > 0.0) mean += w * mean_neighbor_degree(joint.params(), k, theta);
  }
  return mean;
}

double NeighborDist::total() const {
  return std::accumulate(probs.begin(), probs.end(), 0.0) + tail_mass;
}

NeighborDist neighbor_joint_dist(const ModelParams& params, std::int64_t k,
                                 int theta, double tail_target,
                                 std::int64_t ell_cap) {
  require_conditioning(params, k, theta);
  if (!(tail_target > 0.0)) {
    throw DomainError("neighbor_joint_dist: tail target must be > 0");
  }
  const double s = params.shift();
  std::vector<Component> parts;
  for (int phi : params.quality.support()) {
    parts.push_back({1.0, NeighborSeries(params, k, theta, phi)});
  }

  NeighborDist dist;
  dist.kind = NeighborDist::Kind::kJoint;
  dist.phi_count = params.quality.theta_max() + 1;
  dist.ell_min = params.beta;
  std::vector<double> row_mass;
  for (std::int64_t ell = params.beta;; ++ell) {
    row_mass.push_back(step_all(parts));
    dist.probs.resize(dist.probs.size() + dist.phi_count, 0.0);
    double* row = dist.probs.data() + dist.probs.size() - dist.phi_count;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      row[params.quality.support()[i]] = parts[i].last;
    }
    dist.ell_max = ell;
    if (ell > params.beta) {
      dist.tail_mass = tail_estimate(parts, ell, s);
      if (dist.tail_mass < tail_target || ell >= ell_cap) break;
    } else if (ell >= ell_cap) {
      break;
    }
  }
  dist.mean = mean_neighbor_degree(params, k, theta);
  dist.median = median_of_rows(row_mass, dist.ell_min);
  return dist;
}

NeighborDist neighbor_quality_dist(const ModelParams& params, int theta,
                                   double rel_tol) {
  require_conditioning(params, params.beta, theta);
  const double s = params.shift();
  // E[1 / k | theta], walking P(k | theta) by its ratio in k.
  double p = joint_probability(params, params.beta, theta) /
             params.quality.prob(theta);
  auto term = [&](std::int64_t k) {
    const double kd = static_cast<double>(k);
    const double t = p / kd;
    p *= (kd + theta) / (kd + theta + s + 1.0);
    return t;
  };
  const auto inv_k = numerics::adaptive_series(term, params.beta, rel_tol);
  const double inv_degree = inv_k.value + inv_k.tail_bound;

  const double mu = params.quality.mean();
  const double b = params.beta;
  NeighborDist dist;
  dist.kind = NeighborDist::Kind::kQuality;
  dist.phi_count = params.quality.theta_max() + 1;
  dist.probs.assign(dist.phi_count, 0.0);
  for (int phi : params.quality.support()) {
    dist.probs[phi] = params.quality.prob(phi) *
                      (1.0 + b * (phi - mu) / (b + mu) * inv_degree);
  }
  dist.mean = mu + b * params.quality.variance() / (b + mu) * inv_degree;
  std::vector<double> cdf(dist.probs.size());
  std::partial_sum(dist.probs.begin(), dist.probs.end(), cdf.begin());
  dist.median = static_cast<std::int64_t>(numerics::median_index(cdf));
  return dist;
}

namespace {

std::vector<Component> degree_mixture(const JointTable& joint, std::int64_t k,
                                      double min_weight) {
  const auto& params = joint.params();
  if (k < params.beta || k > joint.k_max()) {
    throw DomainError(fmt::format("degree {} outside the tabulated range [{}, {}]",
                                  k, params.beta, joint.k_max()));
  }
  std::vector<Component> parts;
  for (int theta : params.quality.support()) {
    const double w = joint.quality_given_degree(theta, k);
    for (int phi : params.quality.support()) {
      const double weight = w * params.quality.prob(phi);
      if (!(weight > min_weight)) continue;
      parts.push_back({w, NeighborSeries(params, k, theta, phi)});
    }
  }
  return parts;
}

}  // namespace

NeighborDist neighbor_degree_dist(const JointTable& joint, std::int64_t k,
                                  double tail_target, std::int64_t ell_cap) {
  if (!(tail_target > 0.0)) {
    throw DomainError("neighbor_degree_dist: tail target must be > 0");
  }
  auto parts = degree_mixture(joint, k, 0.0);
  const double s = joint.params().shift();
  NeighborDist dist;
  dist.kind = NeighborDist::Kind::kDegree;
  dist.ell_min = joint.beta();
  for (std::int64_t ell = joint.beta();; ++ell) {
    dist.probs.push_back(step_all(parts));
    dist.ell_max = ell;
    if (ell > joint.beta()) {
      dist.tail_mass = tail_estimate(parts, ell, s);
      if (dist.tail_mass < tail_target) break;
    }
    if (ell >= ell_cap) break;
  }
  dist.mean = mean_neighbor_degree(joint, k);
  dist.median = median_of_rows(dist.probs, dist.ell_min);
  return dist;
}

std::int64_t neighbor_degree_median(const JointTable& joint, std::int64_t k,
                                    std::int64_t ell_cap) {
  auto parts = degree_mixture(joint, k, kNegligibleWeight);
  double cdf = 0.0;
  for (std::int64_t ell = joint.beta(); ell <= ell_cap; ++ell) {
    cdf += step_all(parts);
    if (cdf >= 0.5 - numerics::kHalfTolerance) return ell;
  }
  throw NonConvergenceError(fmt::format(
      "median neighbor degree for k={} not reached by ell={}", k, ell_cap));
}

}  // namespace gfp
