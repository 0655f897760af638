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


// Nearest-neighbor distribution P(ell, phi | k, theta): the fraction of the
// neighbors of a (k, theta) node that have degree ell and quality phi, and
// its aggregates P(phi | theta) and P(ell | k).

#ifndef GFP_NEIGHBOR_HPP_
#define GFP_NEIGHBOR_HPP_

#include <cstdint>
#include <vector>

#include "gfp/analytic.hpp"

namespace gfp {

inline constexpr std::int64_t kDefaultEllCap = 10'000;
inline constexpr std::int64_t kMedianEllCap = 10'000'000;

// Evaluates the defining double sum term by term in log space. Slow; used
// as the reference for NeighborSeries.
double nn_probability(const ModelParams& params, std::int64_t k, int theta,
                      std::int64_t ell, int phi);

// Successive values P(ell, phi | k, theta) for ell = beta, beta + 1, ...
// Each step costs O(k - beta).
class NeighborSeries {
 public:
  NeighborSeries(const ModelParams& params, std::int64_t k, int theta,
                 int phi);

  // ell of the value the next call to next() returns.
  std::int64_t ell() const { return ell_; }
  double next();

 private:
  void advance(std::int64_t ell);

  int beta_;
  int phi_;
  double s_;
  std::int64_t n_;     // k - beta
  double big_k_;       // k + theta + s + 1
  double e_base_;      // beta + theta + s
  double s2_scale_;
  std::int64_t ell_;
  double g_ = 0.0;
  std::vector<double> s1_;
  std::vector<double> v_;
};

// Closed-form marginals of P(ell, phi | k, theta).
double neighbor_quality_given(const ModelParams& params, std::int64_t k,
                              int theta, int phi);
double mean_neighbor_quality(const ModelParams& params, std::int64_t k,
                             int theta);
// +inf when shift() <= 2, i.e. mu = 0.
double mean_neighbor_degree(const ModelParams& params, std::int64_t k,
                            int theta);
// sum_theta P(theta | k) E[ell | k, theta].
double mean_neighbor_degree(const JointTable& joint, std::int64_t k);

struct NeighborDist {
  enum class Kind { kJoint, kQuality, kDegree };

  Kind kind = Kind::kJoint;
  // kJoint: row-major by ell, columns phi = 0..phi_count-1.
  // kQuality: indexed by phi.  kDegree: indexed by ell - ell_min.
  std::vector<double> probs;
  std::int64_t ell_min = 0;
  std::int64_t ell_max = 0;
  int phi_count = 0;
  double tail_mass = 0.0;
  // Of phi for kQuality, of ell otherwise.
  double mean = 0.0;
  std::int64_t median = 0;

  double total() const;
};

// Enumerates ell from beta until the estimated remaining mass is below
// tail_target or ell reaches ell_cap.
NeighborDist neighbor_joint_dist(const ModelParams& params, std::int64_t k,
                                 int theta, double tail_target = 1e-6,
                                 std::int64_t ell_cap = kDefaultEllCap);

// P(phi | theta) = sum_k P(k | theta) P(phi | k, theta).
NeighborDist neighbor_quality_dist(const ModelParams& params, int theta,
                                   double rel_tol = kDefaultRelTol);

// P(ell | k) = sum_theta P(theta | k) P(ell | k, theta).
NeighborDist neighbor_degree_dist(const JointTable& joint, std::int64_t k,
                                  double tail_target = kDefaultRelTol,
                                  std::int64_t ell_cap = kDefaultEllCap);

// Median of P(ell | k) without building the whole distribution.
std::int64_t neighbor_degree_median(const JointTable& joint, std::int64_t k,
                                    std::int64_t ell_cap = kMedianEllCap);

}  // namespace gfp

#endif  // GFP_NEIGHBOR_HPP_
