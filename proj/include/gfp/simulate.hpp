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


// Network growth under quality-based preferential attachment or uniform
// attachment, and per-node paradox statistics of grown or loaded graphs.

#ifndef GFP_SIMULATE_HPP_
#define GFP_SIMULATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gfp/analytic.hpp"
#include "gfp/measures.hpp"

namespace gfp {

enum class Provenance { kQpa, kUniform, kIngested };

struct Network {
  std::vector<std::vector<std::uint32_t>> adjacency;
  std::vector<int> qualities;
  // External node ids of ingested graphs; empty for grown networks, whose
  // nodes are numbered by birth order.
  std::vector<std::int64_t> labels;
  int beta = 0;
  Provenance provenance = Provenance::kQpa;
  std::optional<std::uint64_t> seed;

  std::size_t node_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  std::size_t degree(std::size_t u) const { return adjacency[u].size(); }
  std::int64_t label(std::size_t u) const {
    return labels.empty() ? static_cast<std::int64_t>(u) : labels[u];
  }
};

// Starts from a complete graph on beta + 1 nodes; every later node brings
// beta links to distinct existing nodes chosen with probability
// proportional to degree + quality. Requires n > beta + 1.
Network grow_qpa(std::int64_t n, const ModelParams& params,
                 std::uint64_t seed);

// Same seed graph; targets chosen uniformly among existing nodes.
Network grow_uniform(std::int64_t n, const ModelParams& params,
                     std::uint64_t seed);

// Builds an undirected network from an edge list over nodes 0..n-1.
// Throws DomainError on self-loops, duplicates, or out-of-range endpoints.
Network network_from_edges(
    std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
    std::vector<int> qualities);

struct JointHistogram {
  std::map<std::pair<std::int64_t, int>, std::int64_t> counts;
  std::int64_t total = 0;

  double prob(std::int64_t k, int theta) const;
};

JointHistogram joint_histogram(const Network& net);

enum ParadoxFlag : std::uint8_t {
  kQualityMeanFlag = 1,
  kQualityMedianFlag = 2,
  kDegreeMeanFlag = 4,
  kDegreeMedianFlag = 8,
};

struct ParadoxCounts {
  std::int64_t quality_mean = 0;
  std::int64_t quality_median = 0;
  std::int64_t degree_mean = 0;
  std::int64_t degree_median = 0;
};

struct EmpiricalReport {
  std::int64_t nodes = 0;
  std::int64_t isolated = 0;
  // Nodes with at least one neighbor; the denominator of the fractions.
  std::int64_t counted = 0;
  ParadoxCounts flagged;
  Fractions fractions;
  JointHistogram histogram;
  // ParadoxFlag bits per node, filled only on request.
  std::vector<std::uint8_t> flags;
  std::vector<std::uint64_t> seeds;
};

// A node is flagged when its attribute is strictly below the mean (median)
// over its neighbors. The median of a neighbor multiset is its smallest
// value v with at least half of the neighbors at or below v.
EmpiricalReport empirical_report(const Network& net, bool keep_flags = false);

}  // namespace gfp

#endif  // GFP_SIMULATE_HPP_
