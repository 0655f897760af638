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


#include "gfp/simulate.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include <fmt/core.h>

#include "gfp/errors.hpp"

namespace gfp {

namespace {

enum class Attachment { kPreferential, kUniform };

Network grow(std::int64_t n, const ModelParams& params, std::uint64_t seed,
             Attachment mode) {
  const int beta = params.beta;
  if (n <= beta + 1) {
    throw DomainError(fmt::format(
        "network size must exceed beta + 1 = {}, got {}", beta + 1, n));
  }
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError(fmt::format("network size {} too large", n));
  }
  std::mt19937_64 rng(seed);
  Network net;
  net.beta = beta;
  net.seed = seed;
  net.provenance = mode == Attachment::kPreferential ? Provenance::kQpa
                                                     : Provenance::kUniform;
  const auto count = static_cast<std::size_t>(n);
  net.adjacency.resize(count);
  net.qualities.resize(count);

  // Node u appears degree(u) + quality(u) times.
  std::vector<std::uint32_t> tokens;
  if (mode == Attachment::kPreferential) {
    tokens.reserve(count * (2 * beta + params.quality.theta_max()));
  }
  std::int64_t quality_sum = 0;

  const auto seed_size = static_cast<std::uint32_t>(beta + 1);
  for (std::uint32_t u = 0; u < seed_size; ++u) {
    net.qualities[u] = params.quality.sample(rng);
    quality_sum += net.qualities[u];
    for (std::uint32_t v = 0; v < u; ++v) {
      net.adjacency[u].push_back(v);
      net.adjacency[v].push_back(u);
    }
  }
  if (mode == Attachment::kPreferential) {
    for (std::uint32_t u = 0; u < seed_size; ++u) {
      tokens.insert(tokens.end(), beta + net.qualities[u], u);
    }
  }

  std::vector<std::uint32_t> targets;
  targets.reserve(beta);
  for (auto u = seed_size; u < count; ++u) {
    const int theta = params.quality.sample(rng);
    net.qualities[u] = theta;
    quality_sum += theta;
    targets.clear();
    std::uniform_int_distribution<std::size_t> pick(
        0, mode == Attachment::kPreferential ? tokens.size() - 1 : u - 1);
    while (targets.size() < static_cast<std::size_t>(beta)) {
      const std::size_t draw = pick(rng);
      const auto v = mode == Attachment::kPreferential
                         ? tokens[draw]
                         : static_cast<std::uint32_t>(draw);
      if (std::find(targets.begin(), targets.end(), v) == targets.end()) {
        targets.push_back(v);
      }
    }
    for (auto v : targets) {
      net.adjacency[u].push_back(v);
      net.adjacency[v].push_back(u);
    }
    if (mode == Attachment::kPreferential) {
      tokens.insert(tokens.end(), targets.begin(), targets.end());
      tokens.insert(tokens.end(), beta + theta, u);
    }
  }

  if (mode == Attachment::kPreferential &&
      static_cast<std::int64_t>(tokens.size()) !=
          2 * static_cast<std::int64_t>(net.edge_count()) + quality_sum) {
    throw std::logic_error("token count out of sync with degrees");
  }
  return net;
}

}  // namespace

std::size_t Network::edge_count() const {
  std::size_t ends = 0;
  for (const auto& nbrs : adjacency) ends += nbrs.size();
  return ends / 2;
}

Network grow_qpa(std::int64_t n, const ModelParams& params,
                 std::uint64_t seed) {
  return grow(n, params, seed, Attachment::kPreferential);
}

Network grow_uniform(std::int64_t n, const ModelParams& params,
                     std::uint64_t seed) {
  return grow(n, params, seed, Attachment::kUniform);
}

Network network_from_edges(
    std::size_t n,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    std::vector<int> qualities) {
  if (qualities.size() != n) {
    throw DomainError("network_from_edges: need one quality per node");
  }
  Network net;
  net.provenance = Provenance::kIngested;
  net.adjacency.resize(n);
  net.qualities = std::move(qualities);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n || u == v) {
      throw DomainError(fmt::format("network_from_edges: bad edge {} {}", u, v));
    }
    auto& nbrs = net.adjacency[u];
    if (std::find(nbrs.begin(), nbrs.end(), v) != nbrs.end()) {
      throw DomainError(
          fmt::format("network_from_edges: duplicate edge {} {}", u, v));
    }
    nbrs.push_back(v);
    net.adjacency[v].push_back(u);
  }
  return net;
}

double JointHistogram::prob(std::int64_t k, int theta) const {
  if (total == 0) return 0.0;
  auto it = counts.find({k, theta});
  return it == counts.end() ? 0.0
                            : static_cast<double>(it->second) /
                                  static_cast<double>(total);
}

JointHistogram joint_histogram(const Network& net) {
  JointHistogram h;
  for (std::size_t u = 0; u < net.node_count(); ++u) {
    ++h.counts[{static_cast<std::int64_t>(net.degree(u)), net.qualities[u]}];
  }
  h.total = static_cast<std::int64_t>(net.node_count());
  return h;
}

EmpiricalReport empirical_report(const Network& net, bool keep_flags) {
  EmpiricalReport report;
  const std::size_t n = net.node_count();
  report.nodes = static_cast<std::int64_t>(n);
  if (keep_flags) report.flags.assign(n, 0);
  std::vector<std::int64_t> values;
  auto median_of = [&values] {
    // Smallest v with at least half of the values <= v.
    const std::size_t pos = (values.size() + 1) / 2 - 1;
    std::nth_element(values.begin(), values.begin() + pos, values.end());
    return values[pos];
  };
  for (std::size_t u = 0; u < n; ++u) {
    const auto& nbrs = net.adjacency[u];
    const auto d = static_cast<std::int64_t>(nbrs.size());
    if (d == 0) {
      ++report.isolated;
      continue;
    }
    ++report.counted;
    const std::int64_t theta = net.qualities[u];
    std::uint8_t flags = 0;

    values.clear();
    for (auto v : nbrs) values.push_back(net.qualities[v]);
    const std::int64_t quality_sum =
        std::accumulate(values.begin(), values.end(), std::int64_t{0});
    if (theta * d < quality_sum) flags |= kQualityMeanFlag;
    if (theta < median_of()) flags |= kQualityMedianFlag;

    values.clear();
    for (auto v : nbrs) values.push_back(static_cast<std::int64_t>(net.degree(v)));
    const std::int64_t degree_sum =
        std::accumulate(values.begin(), values.end(), std::int64_t{0});
    if (d * d < degree_sum) flags |= kDegreeMeanFlag;
    if (d < median_of()) flags |= kDegreeMedianFlag;

    report.flagged.quality_mean += (flags & kQualityMeanFlag) != 0;
    report.flagged.quality_median += (flags & kQualityMedianFlag) != 0;
    report.flagged.degree_mean += (flags & kDegreeMeanFlag) != 0;
    report.flagged.degree_median += (flags & kDegreeMedianFlag) != 0;
    if (keep_flags) report.flags[u] = flags;
  }
  if (report.counted > 0) {
    const auto c = static_cast<double>(report.counted);
    report.fractions.quality_mean = report.flagged.quality_mean / c;
    report.fractions.quality_median = report.flagged.quality_median / c;
    report.fractions.degree_mean = report.flagged.degree_mean / c;
    report.fractions.degree_median = report.flagged.degree_median / c;
  }
  report.histogram = joint_histogram(net);
  if (net.seed) report.seeds.push_back(*net.seed);
  return report;
}

}  // namespace gfp
