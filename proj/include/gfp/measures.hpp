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


// Mean and median friendship / quality paradox measures: critical values,
// their uncorrelated-network counterparts, and paradox fractions.

#ifndef GFP_MEASURES_HPP_
#define GFP_MEASURES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfp/analytic.hpp"

namespace gfp {

enum class Baseline { kQpa, kUncorrelated };

// The largest attribute value still strictly below the relevant neighbor
// statistic. Empty when no value qualifies.
struct Criticals {
  Baseline baseline = Baseline::kQpa;
  std::optional<int> quality_mean;
  std::optional<int> quality_median;
  std::optional<std::int64_t> degree_mean;
  std::optional<std::int64_t> degree_median;
  std::vector<std::string> warnings;
};

struct Fractions {
  double quality_mean = 0.0;
  double quality_median = 0.0;
  double degree_mean = 0.0;
  double degree_median = 0.0;
};

struct ScanOptions {
  // Degree scans run at least to span_factor * <k> and stop after
  // failure_run consecutive non-qualifying degrees.
  double span_factor = 4.0;
  int failure_run = 25;
  // 0 means the joint table's k_max.
  std::int64_t k_cap = 0;
};

// value < statistic, treating relative differences below 1e-9 as ties.
bool strictly_below(double value, double statistic);

Criticals critical_values(const JointTable& joint,
                          double rel_tol = kDefaultRelTol,
                          const ScanOptions& scan = {});

Criticals uncorrelated_criticals(const JointTable& joint);

// CDF of each attribute at its critical value; 0 when the value is absent.
Fractions paradox_fractions(const Criticals& criticals,
                            const JointTable& joint);

struct SweepRow {
  Family family = Family::kExponential;
  double x = 0.0;
  int beta = 0;
  int theta_max = 0;
  Criticals qpa;
  Criticals uncorrelated;
  Fractions fractions;
  std::optional<std::string> error;
  bool non_convergence = false;
};

struct SweepSpec {
  Family family = Family::kExponential;
  std::vector<double> x_grid;
  std::vector<int> betas;
  std::vector<int> theta_maxes;
  double rel_tol = kDefaultRelTol;
  int threads = 1;
};

QualityPmf make_family(Family family, double x, int theta_max);

SweepRow sweep_point(Family family, double x, int beta, int theta_max,
                     double rel_tol = kDefaultRelTol);

// Rows ordered by (x, beta, theta_max). A failing grid point is reported in
// its row and does not stop the others.
std::vector<SweepRow> sweep(const SweepSpec& spec);

}  // namespace gfp

#endif  // GFP_MEASURES_HPP_
