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


#ifndef GFP_GRAPH_IO_HPP_
#define GFP_GRAPH_IO_HPP_

#include <ostream>
#include <string>

#include "gfp/simulate.hpp"

namespace gfp {

// Edge file: `u v` per line. Quality file: `node_id quality` per line.
// Both accept '#' comments and blank lines. Node ids are non-negative
// integers; every edge endpoint needs a quality. Throws ParseError carrying
// the offending line on malformed input, self-loops, or duplicate edges.
Network load_graph(const std::string& edge_path,
                   const std::string& quality_path);

// One `u v` line per edge, u the later-born endpoint, in node order.
void write_edge_list(const Network& net, std::ostream& out);

}  // namespace gfp

#endif  // GFP_GRAPH_IO_HPP_
