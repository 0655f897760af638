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


// Stationary joint degree-quality distribution of quality-based
// preferential attachment, where a node with degree k and quality theta
// attracts new links at a rate proportional to k + theta.

#ifndef GFP_ANALYTIC_HPP_
#define GFP_ANALYTIC_HPP_

#include <cstdint>
#include <vector>

#include "gfp/quality.hpp"

namespace gfp {

inline constexpr double kDefaultRelTol = 1e-10;
inline constexpr std::int64_t kDefaultDegreeCap = 100'000;
inline constexpr double kJointTailTarget = 1e-8;

struct ModelParams {
  ModelParams(int beta, QualityPmf quality);

  int beta;
  QualityPmf quality;

  // 2 + mu / beta; the degree distribution decays as k^-(shift + 1).
  double shift() const { return 2.0 + quality.mean() / beta; }
};

// P(k, theta). Zero for k < beta. Throws DomainError if theta is outside
// the support of the quality distribution.
double joint_probability(const ModelParams& params, std::int64_t k, int theta);

// sum_{k >= k_from} P(k, theta) and sum_{k >= k_from} k P(k, theta) in
// closed form, k_from >= beta.
double joint_tail_mass(const ModelParams& params, std::int64_t k_from,
                       int theta);
double joint_tail_first_moment(const ModelParams& params, std::int64_t k_from,
                               int theta);

// P(k, theta) tabulated on k in [0, k_max]; rows below beta are zero.
class JointTable {
 public:
  const ModelParams& params() const { return params_; }
  int beta() const { return params_.beta; }
  int theta_max() const { return params_.quality.theta_max(); }
  std::int64_t k_max() const { return k_max_; }

  double prob(std::int64_t k, int theta) const;
  // P(k), indexed by k from 0.
  const std::vector<double>& degree_marginal() const { return degree_; }
  const std::vector<double>& degree_cdf() const { return degree_cdf_; }
  double degree_prob(std::int64_t k) const;
  // P(k | theta) and P(theta | k).
  double degree_given_quality(std::int64_t k, int theta) const;
  double quality_given_degree(int theta, std::int64_t k) const;

  double mean_degree() const { return mean_degree_; }
  std::int64_t median_degree() const { return median_degree_; }
  // Mass beyond k_max, summed over qualities.
  double tail_mass() const { return tail_mass_; }
  double total_mass() const { return total_mass_; }

 private:
  friend JointTable build_joint_table(const ModelParams&, double,
                                      std::int64_t);
  explicit JointTable(ModelParams params) : params_(std::move(params)) {}

  ModelParams params_;
  std::int64_t k_max_ = 0;
  std::vector<double> probs_;  // row-major, (theta_max + 1) per k
  std::vector<double> degree_;
  std::vector<double> degree_cdf_;
  double mean_degree_ = 0.0;
  std::int64_t median_degree_ = 0;
  double tail_mass_ = 0.0;
  double total_mass_ = 0.0;
};

// k_max is the smallest degree leaving less than kJointTailTarget of the
// mass untabulated. Throws NonConvergenceError when that exceeds k_cap.
JointTable build_joint_table(const ModelParams& params,
                             double rel_tol = kDefaultRelTol,
                             std::int64_t k_cap = kDefaultDegreeCap);

}  // namespace gfp

#endif  // GFP_ANALYTIC_HPP_
