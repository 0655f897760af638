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


#include "gfp/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <fmt/core.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfp/errors.hpp"
#include "gfp/graph_io.hpp"
#include "gfp/measures.hpp"
#include "gfp/neighbor.hpp"
#include "gfp/output.hpp"
#include "gfp/parallel.hpp"
#include "gfp/simulate.hpp"
#include "gfp/validation.hpp"

namespace gfp {

namespace {

constexpr std::size_t kMaxGridSize = 1'000'000;
constexpr std::int64_t kHistogramMaxDegree = 20;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

template <typename T>
T parse_number(const std::string& text, const std::string& context) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw UsageError(fmt::format("{}: '{}' is not a valid number", context,
                                 text));
  }
  return value;
}

int default_threads() {
  if (const char* env = std::getenv("GFP_THREADS")) {
    int v = 0;
    const std::string text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && ptr == text.data() + text.size() && v >= 1) {
      return v;
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    out.flush();
  } else {
    write_file_atomic(path, content);
  }
}

struct ModelFlags {
  int beta = 0;
  std::string family;
  double p = 0.0;
  double q = 0.0;
  int theta_max = 0;
  std::string pmf_file;
  CLI::Option* beta_opt = nullptr;
  CLI::Option* family_opt = nullptr;
  CLI::Option* p_opt = nullptr;
  CLI::Option* q_opt = nullptr;
  CLI::Option* theta_max_opt = nullptr;
  CLI::Option* pmf_opt = nullptr;

  bool any_given() const {
    return beta_opt->count() || family_opt->count() || p_opt->count() ||
           q_opt->count() || theta_max_opt->count() || pmf_opt->count();
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  f.beta_opt = cmd->add_option("--beta", f.beta, "links per new node, >= 1")
                   ->check(CLI::Range(1, 1'000'000));
  f.family_opt =
      cmd->add_option("--family", f.family, "quality distribution family")
          ->check(CLI::IsMember({"bernoulli", "exponential", "custom"}));
  f.p_opt = cmd->add_option(
      "--p", f.p, "bernoulli: probability of quality 0, in [0, 1]");
  f.q_opt = cmd->add_option("--q", f.q,
                            "exponential: weight ratio q^theta, q > 0");
  f.theta_max_opt =
      cmd->add_option("--theta-max", f.theta_max,
                      "bernoulli/exponential: largest quality, >= 1")
          ->check(CLI::Range(1, 1'000'000));
  f.pmf_opt = cmd->add_option("--pmf-file", f.pmf_file,
                              "custom: file of `theta weight` lines");
}

QualityPmf build_quality(const ModelFlags& f) {
  if (!f.family_opt->count()) throw UsageError("--family is required");
  auto forbid = [](CLI::Option* opt, const std::string& family) {
    if (opt->count()) {
      throw UsageError(fmt::format("{} does not apply to the {} family",
                                   opt->get_name(), family));
    }
  };
  auto require = [](CLI::Option* opt, const std::string& family) {
    if (!opt->count()) {
      throw UsageError(
          fmt::format("{} is required for the {} family", opt->get_name(),
                      family));
    }
  };
  if (f.family == "custom") {
    require(f.pmf_opt, f.family);
    forbid(f.p_opt, f.family);
    forbid(f.q_opt, f.family);
    forbid(f.theta_max_opt, f.family);
    return load_custom_pmf(f.pmf_file);
  }
  forbid(f.pmf_opt, f.family);
  require(f.theta_max_opt, f.family);
  if (f.family == "bernoulli") {
    require(f.p_opt, f.family);
    forbid(f.q_opt, f.family);
    return make_bernoulli(f.p, f.theta_max);
  }
  require(f.q_opt, f.family);
  forbid(f.p_opt, f.family);
  return make_exponential(f.q, f.theta_max);
}

ModelParams build_params(const ModelFlags& f) {
  if (!f.beta_opt->count()) throw UsageError("--beta is required");
  return ModelParams(f.beta, build_quality(f));
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  std::string family;
  std::string p;
  std::string q;
  std::string beta;
  std::string theta_max;
  double rel_tol = kDefaultRelTol;
  std::string output = "-";
  std::string format = "csv";
  int threads = 1;
  CLI::Option* p_opt = nullptr;
  CLI::Option* q_opt = nullptr;
};

void add_sweep(CLI::App& app, SweepFlags& f) {
  auto* cmd = app.add_subcommand("sweep", "paradox measures over a grid");
  cmd->add_option("--family", f.family, "quality distribution family")
      ->check(CLI::IsMember({"bernoulli", "exponential"}))
      ->required();
  f.p_opt = cmd->add_option(
      "--p", f.p, "bernoulli grid: lo:hi:step and/or comma list in [0, 1]");
  f.q_opt = cmd->add_option(
      "--q", f.q, "exponential grid: lo:hi:step and/or comma list, > 0");
  cmd->add_option("--beta", f.beta, "beta values: list or range, >= 1")
      ->required();
  cmd->add_option("--theta-max", f.theta_max,
                  "theta_max values: list or range, >= 1")
      ->required();
  cmd->add_option("--rel-tol", f.rel_tol,
                  "relative tolerance of truncated sums, in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("-o,--output", f.output, "output path, - for stdout");
  cmd->add_option("--format", f.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", f.threads, "worker threads, >= 1")
      ->check(CLI::Range(1, 4096));
}

int run_sweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.family =
      f.family == "bernoulli" ? Family::kBernoulli : Family::kExponential;
  const bool bernoulli = spec.family == Family::kBernoulli;
  CLI::Option* grid_opt = bernoulli ? f.p_opt : f.q_opt;
  CLI::Option* other_opt = bernoulli ? f.q_opt : f.p_opt;
  if (!grid_opt->count()) {
    throw UsageError(fmt::format("{} is required for the {} family",
                                 grid_opt->get_name(), f.family));
  }
  if (other_opt->count()) {
    throw UsageError(fmt::format("{} does not apply to the {} family",
                                 other_opt->get_name(), f.family));
  }
  if (!(f.rel_tol > 0.0 && f.rel_tol < 1.0)) {
    throw UsageError("--rel-tol must lie in (0, 1)");
  }
  spec.x_grid = parse_real_grid(bernoulli ? f.p : f.q);
  spec.betas = parse_int_list(f.beta);
  spec.theta_maxes = parse_int_list(f.theta_max);
  spec.rel_tol = f.rel_tol;
  spec.threads = f.threads;
  for (int beta : spec.betas) {
    if (beta < 1) throw DomainError(fmt::format("beta must be >= 1, got {}", beta));
  }
  for (double x : spec.x_grid) {
    for (int theta_max : spec.theta_maxes) make_family(spec.family, x, theta_max);
  }

  const auto start = std::chrono::steady_clock::now();
  const auto rows = sweep(spec);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  bool failed = false;
  for (const auto& r : rows) {
    if (r.error) {
      err << fmt::format("error at {}={} beta={} theta_max={}: {}\n",
                         bernoulli ? "p" : "q", r.x, r.beta, r.theta_max,
                         *r.error);
      failed = true;
    }
    for (const auto& w : r.qpa.warnings) {
      err << fmt::format("warning at {}={} beta={} theta_max={}: {}\n",
                         bernoulli ? "p" : "q", r.x, r.beta, r.theta_max, w);
    }
  }
  err << fmt::format("sweep: {} grid points in {:.2f} s\n", rows.size(),
                     seconds);
  if (failed) return kExitNonConvergence;
  emit(f.output,
       f.format == "json" ? sweep_json(rows).dump(2) + "\n" : sweep_csv(rows),
       out);
  return kExitOk;
}

// ------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string mode = "qpa";
  std::int64_t n = 0;
  ModelFlags model;
  std::uint64_t seed = 1;
  int replicas = 1;
  int threads = 1;
  std::string output = "-";
  std::string emit_edges;
  std::string input;
  std::string qualities;
  CLI::Option* mode_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* replicas_opt = nullptr;
};

void add_simulate(CLI::App& app, SimulateFlags& f) {
  auto* cmd = app.add_subcommand(
      "simulate", "grow or load networks and measure paradox fractions");
  f.mode_opt = cmd->add_option("--mode", f.mode, "attachment rule")
                   ->check(CLI::IsMember({"qpa", "uniform"}));
  f.n_opt = cmd->add_option("--n", f.n, "nodes per network, > beta + 1")
                ->check(CLI::Range(std::int64_t{3}, std::int64_t{4'000'000'000}));
  add_model_flags(cmd, f.model);
  f.seed_opt = cmd->add_option("--seed", f.seed,
                               "seed of the first replica; replica i uses "
                               "seed + i, unsigned 64-bit");
  f.replicas_opt = cmd->add_option("--replicas", f.replicas,
                                   "independent networks, >= 1")
                       ->check(CLI::Range(1, 1'000'000));
  cmd->add_option("--threads", f.threads, "worker threads, >= 1")
      ->check(CLI::Range(1, 4096));
  cmd->add_option("-o,--output", f.output, "report path, - for stdout");
  cmd->add_option("--emit-edges", f.emit_edges,
                  "also write the (first) network's edge list here");
  cmd->add_option("--input", f.input,
                  "edge list to load instead of growing networks");
  cmd->add_option("--qualities", f.qualities,
                  "`node_id quality` file for --input");
}

nlohmann::json histogram_json(const JointHistogram& h) {
  nlohmann::json entries = nlohmann::json::array();
  double listed = 0.0;
  for (const auto& [key, count] : h.counts) {
    if (key.first > kHistogramMaxDegree) continue;
    const double p = h.prob(key.first, key.second);
    listed += p;
    entries.push_back({{"k", key.first}, {"theta", key.second}, {"prob", p}});
  }
  return {{"max_degree_listed", kHistogramMaxDegree},
          {"entries", entries},
          {"mass_above", std::max(0.0, 1.0 - listed)}};
}

int run_simulate(const SimulateFlags& f, std::ostream& out) {
  std::vector<EmpiricalReport> reports;
  std::vector<std::int64_t> edge_counts;
  std::string edges_text;
  nlohmann::json source;

  if (!f.input.empty()) {
    if (f.qualities.empty()) throw UsageError("--input needs --qualities");
    if (f.mode_opt->count() || f.n_opt->count() || f.seed_opt->count() ||
        f.replicas_opt->count() || f.model.any_given()) {
      throw UsageError("growth flags cannot be combined with --input");
    }
    const Network net = load_graph(f.input, f.qualities);
    reports.push_back(empirical_report(net));
    edge_counts.push_back(static_cast<std::int64_t>(net.edge_count()));
    if (!f.emit_edges.empty()) {
      std::ostringstream s;
      write_edge_list(net, s);
      edges_text = s.str();
    }
    source = {{"mode", "ingested"},
              {"edges", f.input},
              {"qualities", f.qualities}};
  } else {
    if (!f.qualities.empty()) throw UsageError("--qualities needs --input");
    if (!f.n_opt->count()) throw UsageError("--n is required");
    const ModelParams params = build_params(f.model);
    if (f.n <= params.beta + 1) {
      throw DomainError(fmt::format("--n must exceed beta + 1 = {}",
                                    params.beta + 1));
    }
    const auto count = static_cast<std::size_t>(f.replicas);
    reports.resize(count);
    edge_counts.resize(count);
    const bool uniform = f.mode == "uniform";
    parallel_for(count, f.threads, [&](std::size_t i) {
      const std::uint64_t seed = f.seed + i;
      const Network net = uniform ? grow_uniform(f.n, params, seed)
                                  : grow_qpa(f.n, params, seed);
      reports[i] = empirical_report(net);
      edge_counts[i] = static_cast<std::int64_t>(net.edge_count());
      if (i == 0 && !f.emit_edges.empty()) {
        std::ostringstream s;
        write_edge_list(net, s);
        edges_text = s.str();
      }
    });
    source = {{"mode", f.mode},
              {"n", f.n},
              {"beta", params.beta},
              {"family", family_name(params.quality.family())},
              {"theta_max", params.quality.theta_max()}};
    if (params.quality.param()) source["x"] = *params.quality.param();
    if (!f.model.pmf_file.empty()) source["pmf_file"] = f.model.pmf_file;
  }

  EmpiricalReport pooled;
  nlohmann::json replicas = nlohmann::json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    replicas.push_back(report_json(r, edge_counts[i]));
    pooled.nodes += r.nodes;
    pooled.isolated += r.isolated;
    pooled.counted += r.counted;
    pooled.flagged.quality_mean += r.flagged.quality_mean;
    pooled.flagged.quality_median += r.flagged.quality_median;
    pooled.flagged.degree_mean += r.flagged.degree_mean;
    pooled.flagged.degree_median += r.flagged.degree_median;
    for (const auto& [key, c] : r.histogram.counts) {
      pooled.histogram.counts[key] += c;
    }
    pooled.histogram.total += r.histogram.total;
    pooled.seeds.insert(pooled.seeds.end(), r.seeds.begin(), r.seeds.end());
  }
  if (pooled.counted > 0) {
    const auto c = static_cast<double>(pooled.counted);
    pooled.fractions = {pooled.flagged.quality_mean / c,
                        pooled.flagged.quality_median / c,
                        pooled.flagged.degree_mean / c,
                        pooled.flagged.degree_median / c};
  }
  std::int64_t pooled_edges = 0;
  for (auto e : edge_counts) pooled_edges += e;

  nlohmann::json doc = {{"schema_version", kSchemaVersion},
                        {"command", "simulate"},
                        {"source", source},
                        {"seeds", pooled.seeds},
                        {"replicas", replicas},
                        {"pooled", report_json(pooled, pooled_edges)},
                        {"histogram", histogram_json(pooled.histogram)}};
  if (!f.emit_edges.empty()) write_file_atomic(f.emit_edges, edges_text);
  emit(f.output, doc.dump(2) + "\n", out);
  return kExitOk;
}

// ------------------------------------------------------------- validate

struct ValidateFlags {
  bool quick = false;
  int threads = 1;
};

void add_validate(CLI::App& app, ValidateFlags& f) {
  auto* cmd =
      app.add_subcommand("validate", "run the consistency and accuracy checks");
  cmd->add_flag("--quick", f.quick, "analytic checks only");
  cmd->add_option("--threads", f.threads, "worker threads, >= 1")
      ->check(CLI::Range(1, 4096));
}

int run_validate(const ValidateFlags& f, std::ostream& out) {
  bool ok = true;
  for (const auto& check : run_validation(f.quick, f.threads)) {
    out << format_check(check) << '\n';
    if (!check.informational && !check.pass) ok = false;
  }
  out.flush();
  return ok ? kExitOk : kExitValidationFailed;
}

// ------------------------------------------------------------- nn-table

struct NnTableFlags {
  ModelFlags model;
  std::int64_t k = 0;
  int theta = 0;
  double tail = 1e-6;
  std::int64_t ell_max = 10'000'000;
  std::string output = "-";
};

void add_nn_table(CLI::App& app, NnTableFlags& f) {
  auto* cmd = app.add_subcommand(
      "nn-table", "dump the neighbor distribution of a (k, theta) node");
  add_model_flags(cmd, f.model);
  cmd->add_option("--k", f.k, "degree of the focal node, >= beta")->required();
  cmd->add_option("--theta", f.theta,
                  "quality of the focal node, in the quality support")
      ->required();
  cmd->add_option("--tail", f.tail,
                  "stop once the estimated remaining mass is below this, "
                  "in (0, 1)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--ell-max", f.ell_max, "largest neighbor degree listed")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1'000'000'000}));
  cmd->add_option("-o,--output", f.output, "output path, - for stdout");
}

int run_nn_table(const NnTableFlags& f, std::ostream& out, std::ostream& err) {
  const ModelParams params = build_params(f.model);
  if (!(f.tail > 0.0 && f.tail < 1.0)) {
    throw UsageError("--tail must lie in (0, 1)");
  }
  const NeighborDist dist =
      neighbor_joint_dist(params, f.k, f.theta, f.tail, f.ell_max);
  if (!(dist.tail_mass < f.tail)) {
    err << fmt::format(
        "warning: stopped at ell={} with estimated tail mass {:.3g}\n",
        dist.ell_max, dist.tail_mass);
  }
  emit(f.output, nn_table_csv(params, f.k, f.theta, dist), out);
  return kExitOk;
}

}  // namespace

std::vector<double> parse_real_grid(const std::string& text) {
  std::vector<double> values;
  for (const auto& item : split(text, ',')) {
    if (item.find(':') == std::string::npos) {
      values.push_back(parse_number<double>(item, "grid"));
      continue;
    }
    const auto parts = split(item, ':');
    if (parts.size() != 3) {
      throw UsageError(fmt::format("grid: '{}' is not lo:hi:step", item));
    }
    const double lo = parse_number<double>(parts[0], "grid");
    const double hi = parse_number<double>(parts[1], "grid");
    const double step = parse_number<double>(parts[2], "grid");
    if (!(step > 0.0) || hi < lo) {
      throw UsageError(
          fmt::format("grid: '{}' needs step > 0 and lo <= hi", item));
    }
    const double limit = hi + 1e-12 * std::max(1.0, std::abs(hi));
    for (std::size_t i = 0;; ++i) {
      const double v = lo + static_cast<double>(i) * step;
      if (v > limit) break;
      if (values.size() >= kMaxGridSize) {
        throw UsageError("grid: too many points");
      }
      // Drop accumulated binary noise such as 0.30000000000000004.
      values.push_back(std::stod(fmt::format("{:.12g}", v)));
    }
  }
  if (values.empty()) throw UsageError("grid: no values");
  return values;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const auto& item : split(text, ',')) {
    if (item.find(':') == std::string::npos) {
      values.push_back(parse_number<int>(item, "list"));
      continue;
    }
    const auto parts = split(item, ':');
    if (parts.size() != 2 && parts.size() != 3) {
      throw UsageError(fmt::format("list: '{}' is not lo:hi[:step]", item));
    }
    const int lo = parse_number<int>(parts[0], "list");
    const int hi = parse_number<int>(parts[1], "list");
    const int step = parts.size() == 3 ? parse_number<int>(parts[2], "list") : 1;
    if (step <= 0 || hi < lo) {
      throw UsageError(
          fmt::format("list: '{}' needs step > 0 and lo <= hi", item));
    }
    for (long long v = lo; v <= hi; v += step) {
      if (values.size() >= kMaxGridSize) {
        throw UsageError("list: too many values");
      }
      values.push_back(static_cast<int>(v));
    }
  }
  if (values.empty()) throw UsageError("list: no values");
  return values;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Friendship and quality paradoxes under quality-based "
               "preferential attachment"};
  app.name("gfp");
  app.require_subcommand(1);
  const int threads = default_threads();

  SweepFlags sweep_flags;
  sweep_flags.threads = threads;
  SimulateFlags simulate_flags;
  simulate_flags.threads = threads;
  ValidateFlags validate_flags;
  validate_flags.threads = threads;
  NnTableFlags nn_flags;
  add_sweep(app, sweep_flags);
  add_simulate(app, simulate_flags);
  add_validate(app, validate_flags);
  add_nn_table(app, nn_flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("sweep")) return run_sweep(sweep_flags, out, err);
    if (app.got_subcommand("simulate")) return run_simulate(simulate_flags, out);
    if (app.got_subcommand("validate")) return run_validate(validate_flags, out);
    return run_nn_table(nn_flags, out, err);
  } catch (const ParseError& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitParse;
  } catch (const NonConvergenceError& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "gfp: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace gfp
