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


#include "gfp/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <fmt/core.h>

#include "gfp/errors.hpp"

namespace gfp {

namespace {

constexpr std::int64_t kMaxQuality = 1'000'000;

// Reads exactly two non-negative integers from a line, ignoring any '#'
// comment. Returns false for blank lines.
bool parse_pair(std::string_view line, const std::string& path,
                std::size_t line_no, const char* shape, std::int64_t& a,
                std::int64_t& b) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(start, end - start));
    pos = end;
  }
  if (fields.empty()) return false;
  auto fail = [&] {
    throw ParseError(fmt::format("{}:{}: expected `{}` with non-negative "
                                 "integers",
                                 path, line_no, shape),
                     line_no);
  };
  if (fields.size() != 2) fail();
  std::int64_t* out[2] = {&a, &b};
  for (int i = 0; i < 2; ++i) {
    const auto f = fields[i];
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), *out[i]);
    if (ec != std::errc() || ptr != f.data() + f.size() || *out[i] < 0) fail();
  }
  return true;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot open '{}'", path), 0);
  return in;
}

}  // namespace

Network load_graph(const std::string& edge_path,
                   const std::string& quality_path) {
  struct Edge {
    std::int64_t u;
    std::int64_t v;
  };
  std::vector<Edge> edges;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  std::unordered_map<std::int64_t, std::size_t> first_line;
  {
    auto in = open_or_throw(edge_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::int64_t u = 0;
      std::int64_t v = 0;
      if (!parse_pair(line, edge_path, line_no, "u v", u, v)) continue;
      if (u == v) {
        throw ParseError(
            fmt::format("{}:{}: self-loop on node {}", edge_path, line_no, u),
            line_no);
      }
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
        throw ParseError(fmt::format("{}:{}: duplicate edge {} {}", edge_path,
                                     line_no, u, v),
                         line_no);
      }
      first_line.emplace(u, line_no);
      first_line.emplace(v, line_no);
      edges.push_back({u, v});
    }
  }

  std::unordered_map<std::int64_t, int> quality_of;
  {
    auto in = open_or_throw(quality_path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::int64_t id = 0;
      std::int64_t theta = 0;
      if (!parse_pair(line, quality_path, line_no, "node_id quality", id,
                      theta)) {
        continue;
      }
      if (theta > kMaxQuality) {
        throw ParseError(fmt::format("{}:{}: quality {} exceeds {}",
                                     quality_path, line_no, theta,
                                     kMaxQuality),
                         line_no);
      }
      if (!quality_of.emplace(id, static_cast<int>(theta)).second) {
        throw ParseError(fmt::format("{}:{}: node {} listed twice",
                                     quality_path, line_no, id),
                         line_no);
      }
    }
  }

  std::vector<std::int64_t> ids;
  ids.reserve(quality_of.size());
  for (const auto& [id, theta] : quality_of) ids.push_back(id);
  for (const auto& [id, line_no] : first_line) {
    if (!quality_of.count(id)) {
      throw ParseError(fmt::format("{}:{}: node {} has no quality in {}",
                                   edge_path, line_no, id, quality_path),
                       line_no);
    }
  }
  if (ids.empty()) throw ParseError("graph has no nodes", 0);
  std::sort(ids.begin(), ids.end());
  if (ids.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError("graph has too many nodes", 0);
  }

  Network net;
  net.provenance = Provenance::kIngested;
  net.labels = ids;
  net.adjacency.resize(ids.size());
  net.qualities.resize(ids.size());
  std::unordered_map<std::int64_t, std::uint32_t> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    index.emplace(ids[i], static_cast<std::uint32_t>(i));
    net.qualities[i] = quality_of.at(ids[i]);
  }
  for (const auto& e : edges) {
    const auto a = index.at(e.u);
    const auto b = index.at(e.v);
    net.adjacency[a].push_back(b);
    net.adjacency[b].push_back(a);
  }
  return net;
}

void write_edge_list(const Network& net, std::ostream& out) {
  for (std::size_t u = 0; u < net.node_count(); ++u) {
    for (auto v : net.adjacency[u]) {
      if (v < u) out << net.label(u) << ' ' << net.label(v) << '\n';
    }
  }
}

}  // namespace gfp
