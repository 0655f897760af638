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


// Discrete quality distributions rho(theta) on {0, ..., theta_max}.

#ifndef GFP_QUALITY_HPP_
#define GFP_QUALITY_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gfp {

enum class Family { kBernoulli, kExponential, kCustom };

std::string family_name(Family family);

// Immutable after construction.
class QualityPmf {
 public:
  // Normalizes non-negative weights indexed by theta. Throws DomainError on
  // negative or non-finite weights or a zero total.
  static QualityPmf from_weights(std::vector<double> weights, Family family,
                                 std::optional<double> param);

  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& cdf() const { return cdf_; }
  int theta_max() const { return static_cast<int>(probs_.size()) - 1; }
  Family family() const { return family_; }
  std::optional<double> param() const { return param_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  int median() const { return median_; }

  double prob(int theta) const {
    return (theta >= 0 && theta <= theta_max()) ? probs_[theta] : 0.0;
  }
  bool in_support(int theta) const { return prob(theta) > 0.0; }
  // Qualities with positive probability, ascending.
  const std::vector<int>& support() const { return support_; }

  // Inverse-CDF draw.
  template <typename Rng>
  int sample(Rng& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return static_cast<int>(it - cdf_.begin());
  }

 private:
  QualityPmf() = default;

  std::vector<double> probs_;
  std::vector<double> cdf_;
  std::vector<int> support_;
  Family family_ = Family::kCustom;
  std::optional<double> param_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  int median_ = 0;
};

// rho(0) = p, rho(theta_max) = 1 - p.
QualityPmf make_bernoulli(double p, int theta_max);

// rho(theta) proportional to q^theta.
QualityPmf make_exponential(double q, int theta_max);

QualityPmf make_custom(std::vector<double> weights);

// Reads `theta weight` lines; '#' starts a comment. Throws ParseError.
QualityPmf load_custom_pmf(const std::string& path);

struct PmfStats {
  double mean = 0.0;
  int median = 0;
};

PmfStats pmf_stats(const QualityPmf& pmf);

template <typename Rng>
int sample_quality(const QualityPmf& pmf, Rng& rng) {
  return pmf.sample(rng);
}

}  // namespace gfp

#endif  // GFP_QUALITY_HPP_
