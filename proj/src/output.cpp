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


#include "gfp/output.hpp"

#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include <fmt/core.h>

#include "gfp/errors.hpp"

namespace gfp {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& contents) {
  const fs::path target(path);
  const fs::path dir =
      target.has_parent_path() ? target.parent_path() : fs::path(".");
  std::random_device entropy;
  const fs::path temp =
      dir / fmt::format(".{}.tmp{:08x}", target.filename().string(), entropy());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(fmt::format("cannot write '{}': {}", temp.string(),
                              std::strerror(errno)));
    }
    out << contents;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw Error(fmt::format("write to '{}' failed", temp.string()));
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw Error(fmt::format("cannot replace '{}': {}", path, ec.message()));
  }
}

namespace {

template <typename T>
std::string field(const std::optional<T>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json criticals_json(const Criticals& c) {
  return {{"quality_mean", optional_json(c.quality_mean)},
          {"quality_median", optional_json(c.quality_median)},
          {"degree_mean", optional_json(c.degree_mean)},
          {"degree_median", optional_json(c.degree_median)}};
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "family,x,beta,theta_max,crit_q_mean,crit_q_median,crit_k_mean,"
      "crit_k_median,crit_q_mean_u,crit_q_median_u,crit_k_mean_u,"
      "crit_k_median_u,frac_q_mean,frac_q_median,frac_k_mean,"
      "frac_k_median\n";
  for (const auto& r : rows) {
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{:.6f},{:.6f},{:.6f},{:.6f}\n",
        family_name(r.family), r.x, r.beta, r.theta_max,
        field(r.qpa.quality_mean), field(r.qpa.quality_median),
        field(r.qpa.degree_mean), field(r.qpa.degree_median),
        field(r.uncorrelated.quality_mean),
        field(r.uncorrelated.quality_median),
        field(r.uncorrelated.degree_mean),
        field(r.uncorrelated.degree_median), r.fractions.quality_mean,
        r.fractions.quality_median, r.fractions.degree_mean,
        r.fractions.degree_median);
  }
  return out;
}

nlohmann::json fractions_json(const Fractions& f) {
  return {{"quality_mean", f.quality_mean},
          {"quality_median", f.quality_median},
          {"degree_mean", f.degree_mean},
          {"degree_median", f.degree_median}};
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::json out = {{"schema_version", kSchemaVersion},
                        {"command", "sweep"}};
  auto& list = out["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"family", family_name(r.family)},
                          {"x", r.x},
                          {"beta", r.beta},
                          {"theta_max", r.theta_max},
                          {"qpa", criticals_json(r.qpa)},
                          {"uncorrelated", criticals_json(r.uncorrelated)},
                          {"fractions", fractions_json(r.fractions)}};
    if (!r.qpa.warnings.empty()) row["warnings"] = r.qpa.warnings;
    if (r.error) row["error"] = *r.error;
    list.push_back(std::move(row));
  }
  return out;
}

std::string nn_table_csv(const ModelParams& params, std::int64_t k, int theta,
                         const NeighborDist& dist) {
  std::string out = fmt::format(
      "# beta={}\n# k={}\n# theta={}\n# tail_mass={:.6e}\nell,phi,prob\n",
      params.beta, k, theta, dist.tail_mass);
  const auto& support = params.quality.support();
  const auto rows = static_cast<std::size_t>(dist.ell_max - dist.ell_min + 1);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::int64_t ell = dist.ell_min + static_cast<std::int64_t>(r);
    for (int phi : support) {
      out += fmt::format("{},{},{:.12e}\n", ell, phi,
                         dist.probs[r * dist.phi_count + phi]);
    }
  }
  return out;
}

nlohmann::json report_json(const EmpiricalReport& report,
                           std::int64_t edge_count) {
  return {{"nodes", report.nodes},
          {"edges", edge_count},
          {"isolated", report.isolated},
          {"counted", report.counted},
          {"flagged",
           {{"quality_mean", report.flagged.quality_mean},
            {"quality_median", report.flagged.quality_median},
            {"degree_mean", report.flagged.degree_mean},
            {"degree_median", report.flagged.degree_median}}},
          {"fractions", fractions_json(report.fractions)},
          {"seeds", report.seeds}};
}

}  // namespace gfp
