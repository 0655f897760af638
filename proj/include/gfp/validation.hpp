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


// Cross-module consistency checks shared by `gfp validate` and the
// acceptance test binary.

#ifndef GFP_VALIDATION_HPP_
#define GFP_VALIDATION_HPP_

#include <string>
#include <vector>

#include "gfp/measures.hpp"

namespace gfp {

struct CheckResult {
  std::string name;
  std::string detail;  // measured value against its bound
  bool pass = false;
  bool informational = false;  // reported, never fails a run
  double seconds = 0.0;
};

// "name: detail: PASS" (or FAIL / INFO).
std::string format_check(const CheckResult& check);

// Sum of the joint table plus its tail over beta in {2, 4, 8}, Bernoulli
// p in {0.1, 0.5, 0.9} and exponential q in {0.5, 1, 1.5}, theta_max in
// {4, 16}.
CheckResult check_joint_normalization();
// Zero-quality case against 2 beta (beta + 1) / (k (k + 1) (k + 2)).
CheckResult check_ba_reduction();
// Nearest-neighbor distributions at k in {beta, beta + 3, 2 beta + 5} and
// theta in {0, median, theta_max} over the same parameter grid.
CheckResult check_conditional_normalization();
// Pooled simulated P(k, theta) vs the analytic table, k <= 20.
CheckResult check_monte_carlo_agreement(int threads);

// Exponential sweep over q = 0.1..2, beta in {2, 4, 6, 8}, theta_max in
// {4, 8, 16, 24}.
std::vector<SweepRow> exponential_reference_sweep(int threads);
CheckResult check_degree_fraction_order(const std::vector<SweepRow>& rows);
CheckResult check_mean_fp_majority(const std::vector<SweepRow>& rows);
CheckResult check_quality_critical_order(const std::vector<SweepRow>& rows);
CheckResult check_regime_flip(const std::vector<SweepRow>& rows);

CheckResult check_median_convention();
CheckResult check_micro_graphs();
CheckResult check_growth_determinism();
// Residual of the edge-end symmetry k P(k,theta) P(l,phi|k,theta) =
// l P(l,phi) P(k,theta|l,phi) on sampled tuples. Informational.
CheckResult edge_balance_diagnostic();

// quick skips the simulation-based checks.
std::vector<CheckResult> run_validation(bool quick, int threads);

}  // namespace gfp

#endif  // GFP_VALIDATION_HPP_
