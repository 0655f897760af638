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


#include "gfp/quality.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/core.h>

#include "gfp/errors.hpp"
#include "gfp/numerics.hpp"

namespace gfp {

std::string family_name(Family family) {
  switch (family) {
    case Family::kBernoulli:
      return "bernoulli";
    case Family::kExponential:
      return "exponential";
    case Family::kCustom:
      return "custom";
  }
  return "custom";
}

QualityPmf QualityPmf::from_weights(std::vector<double> weights, Family family,
                                    std::optional<double> param) {
  if (weights.empty()) throw DomainError("quality pmf: no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw DomainError(fmt::format("quality pmf: invalid weight {}", w));
    }
    total += w;
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw DomainError("quality pmf: weights must have a positive finite sum");
  }

  QualityPmf pmf;
  pmf.family_ = family;
  pmf.param_ = param;
  pmf.probs_ = std::move(weights);
  for (double& w : pmf.probs_) w /= total;

  pmf.cdf_.resize(pmf.probs_.size());
  double acc = 0.0;
  double mean = 0.0;
  for (std::size_t t = 0; t < pmf.probs_.size(); ++t) {
    acc += pmf.probs_[t];
    pmf.cdf_[t] = acc;
    mean += static_cast<double>(t) * pmf.probs_[t];
    if (pmf.probs_[t] > 0.0) pmf.support_.push_back(static_cast<int>(t));
  }
  pmf.cdf_.back() = 1.0;
  // Trailing zero weights leave flat CDF steps; clamp them to 1 as well.
  for (std::size_t t = pmf.probs_.size(); t-- > 0 && pmf.probs_[t] == 0.0;) {
    if (t > 0) pmf.cdf_[t - 1] = 1.0;
  }
  pmf.mean_ = mean;
  double var = 0.0;
  for (std::size_t t = 0; t < pmf.probs_.size(); ++t) {
    const double d = static_cast<double>(t) - mean;
    var += d * d * pmf.probs_[t];
  }
  pmf.variance_ = var;
  pmf.median_ = static_cast<int>(numerics::median_index(pmf.cdf_));
  return pmf;
}

QualityPmf make_bernoulli(double p, int theta_max) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(fmt::format("bernoulli: p must lie in [0, 1], got {}", p));
  }
  if (theta_max < 1) {
    throw DomainError(
        fmt::format("bernoulli: theta_max must be >= 1, got {}", theta_max));
  }
  std::vector<double> w(theta_max + 1, 0.0);
  w[0] = p;
  w[theta_max] = 1.0 - p;
  return QualityPmf::from_weights(std::move(w), Family::kBernoulli, p);
}

QualityPmf make_exponential(double q, int theta_max) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError(fmt::format("exponential: q must be > 0, got {}", q));
  }
  if (theta_max < 1) {
    throw DomainError(
        fmt::format("exponential: theta_max must be >= 1, got {}", theta_max));
  }
  std::vector<double> w(theta_max + 1);
  // Anchor at the largest weight so q^theta cannot overflow.
  const int anchor = q > 1.0 ? theta_max : 0;
  for (int t = 0; t <= theta_max; ++t) w[t] = std::pow(q, t - anchor);
  return QualityPmf::from_weights(std::move(w), Family::kExponential, q);
}

QualityPmf make_custom(std::vector<double> weights) {
  return QualityPmf::from_weights(std::move(weights), Family::kCustom,
                                  std::nullopt);
}

QualityPmf load_custom_pmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open pmf file '{}'", path), 0);
  std::map<long long, double> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    long long theta = 0;
    double weight = 0.0;
    std::string extra;
    if (!(fields >> theta)) {
      if (fields.eof() && line.find_first_not_of(" \t\r") == std::string::npos) {
        continue;
      }
      throw ParseError(fmt::format("{}:{}: expected `theta weight`", path,
                                   line_no),
                       line_no);
    }
    if (!(fields >> weight) || (fields >> extra)) {
      throw ParseError(
          fmt::format("{}:{}: expected `theta weight`", path, line_no),
          line_no);
    }
    if (theta < 0 || theta > 1'000'000) {
      throw ParseError(
          fmt::format("{}:{}: quality {} out of range", path, line_no, theta),
          line_no);
    }
    if (!std::isfinite(weight) || weight < 0.0) {
      throw ParseError(
          fmt::format("{}:{}: weight must be >= 0", path, line_no), line_no);
    }
    if (!entries.emplace(theta, weight).second) {
      throw ParseError(
          fmt::format("{}:{}: duplicate quality {}", path, line_no, theta),
          line_no);
    }
  }
  if (entries.empty()) {
    throw ParseError(fmt::format("{}: no quality entries", path), 0);
  }
  std::vector<double> w(entries.rbegin()->first + 1, 0.0);
  for (const auto& [theta, weight] : entries) w[theta] = weight;
  try {
    return make_custom(std::move(w));
  } catch (const DomainError& e) {
    throw ParseError(fmt::format("{}: {}", path, e.what()), 0);
  }
}

PmfStats pmf_stats(const QualityPmf& pmf) {
  return {pmf.mean(), pmf.median()};
}

}  // namespace gfp
