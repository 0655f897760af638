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


// CSV / JSON serialization of sweep rows, neighbor tables, and empirical
// reports, plus atomic file replacement.

#ifndef GFP_OUTPUT_HPP_
#define GFP_OUTPUT_HPP_

#include <string>
#include <vector>

#include "json.hpp"

#include "gfp/measures.hpp"
#include "gfp/neighbor.hpp"
#include "gfp/simulate.hpp"

namespace gfp {

inline constexpr int kSchemaVersion = 1;

// Writes through a temporary file in the target directory and renames it
// over `path`, so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& contents);

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

// Rows `ell,phi,prob` for phi in the quality support, ascending.
std::string nn_table_csv(const ModelParams& params, std::int64_t k, int theta,
                         const NeighborDist& dist);

nlohmann::json fractions_json(const Fractions& f);
nlohmann::json report_json(const EmpiricalReport& report,
                           std::int64_t edge_count);

}  // namespace gfp

#endif  // GFP_OUTPUT_HPP_
