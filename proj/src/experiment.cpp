// Copyright 2026 The qsw Authors
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

#include "qsw/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <thread>

#include <Eigen/Core>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qsw/error.hpp"

#ifndef QSW_VERSION
#define QSW_VERSION "unknown"
#endif

namespace qsw {

namespace {

struct ScanContext {
  const ExperimentConfig& cfg;
  const Network& net;
  std::size_t initial_node;
  TimeGrid grid;
  StepControl control;
  std::optional<FitWindow> window;
  AutoWindowOptions auto_opts;
};

SnapshotCheck worst_of(const std::vector<SnapshotCheck>& checks) {
  SnapshotCheck worst;
  for (const SnapshotCheck& c : checks) {
    worst.trace_deviation = std::max(worst.trace_deviation, c.trace_deviation);
    worst.hermiticity_deviation = std::max(worst.hermiticity_deviation, c.hermiticity_deviation);
    worst.min_eigenvalue = std::min(worst.min_eigenvalue, c.min_eigenvalue);
  }
  return worst;
}

void fit_alpha(AlphaResult& r, const ScanContext& ctx, const EntropyTrace& trace) {
  if (ctx.window) {
    try {
      r.fixed_fit = fit_information_dimension(trace, *ctx.window);
      r.fixed_fit->alpha = r.alpha;
    } catch (const FitError& e) {
      r.fixed_status = "fit_error";
      r.message += fmt::format("fixed fit: {}; ", e.what());
    }
  } else {
    r.fixed_status = "no_window";
  }

  std::optional<FitWindow> found;
  try {
    found = auto_window(trace, ctx.auto_opts);
  } catch (const FitError& e) {
    r.auto_status = "no_scaling_regime";
    r.message += fmt::format("auto window: {}; ", e.what());
  }
  if (found) {
    try {
      r.auto_fit = fit_information_dimension(trace, *found);
      r.auto_fit->alpha = r.alpha;
    } catch (const FitError& e) {
      r.auto_status = "fit_error";
      r.message += fmt::format("auto fit: {}; ", e.what());
    }
  }
}

AlphaResult run_alpha(double alpha, const ScanContext& ctx) {
  AlphaResult r;
  r.alpha = alpha;
  try {
    const QswParams params = make_params(ctx.net, alpha, ctx.initial_node, ctx.cfg.network.convention,
                                         ctx.cfg.dephasing_rate);
    const Trajectory traj = propagate(params, ctx.grid, ctx.control);
    r.stats = traj.stats;
    r.worst = worst_of(traj.checks);
    r.rows = trace_rows(traj);
    const EntropyTrace trace = entropy_trace_from_rows(r.rows, ctx.net.n_nodes(), alpha, ctx.net.tag());
    if (ctx.cfg.fit.mode == FitMode::none) {
      r.fixed_status = r.auto_status = "not_fitted";
      return r;
    }
    fit_alpha(r, ctx, trace);
    if (ctx.window) {
      try {
        r.return_exponent = fit_return_exponent(return_probability(traj), *ctx.window);
      } catch (const Error&) {
        r.return_exponent.reset();
      }
    }
  } catch (const InvariantViolation& e) {
    r.status = "invariant_violation";
    r.message = e.what();
  } catch (const StepSizeUnderflow& e) {
    r.status = "step_underflow";
    r.message = e.what();
  } catch (const NumericalError& e) {
    r.status = "numerical_error";
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = "error";
    r.message = e.what();
  }
  return r;
}

nlohmann::json fit_json(const std::optional<FitResult>& fit, const std::string& status) {
  nlohmann::json j;
  j["status"] = status;
  if (fit) {
    j["d_info"] = fit->d_info;
    j["intercept"] = fit->intercept;
    j["r_squared"] = fit->r_squared;
    j["window"] = {fit->window.t_lo(), fit->window.t_hi()};
    j["n_points"] = fit->n_points;
  }
  return j;
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["network"] = {{"topology", std::string(to_string(cfg.network.topology))},
                  {"size", cfg.network.size},
                  {"generation", cfg.network.generation},
                  {"convention", std::string(to_string(cfg.network.convention))},
                  {"edge_list", cfg.network.edge_list.string()}};
  j["walk"] = {{"alphas", cfg.alphas},
               {"dephasing_rate", cfg.dephasing_rate},
               {"initial_node", cfg.initial_node.to_string()}};
  j["time"] = {{"t_min", cfg.t_min}, {"t_max", cfg.t_max}, {"points_per_decade", cfg.points_per_decade}};
  j["integrator"] = {{"rtol", cfg.rtol}, {"atol", cfg.atol}};
  const AutoWindowOptions opts = cfg.auto_window_options();
  nlohmann::json fit = {{"mode", std::string(to_string(cfg.fit.mode))},
                        {"min_decades", opts.min_decades},
                        {"saturation_margin", opts.saturation_margin},
                        {"transient_time", opts.transient_time}};
  if (auto w = cfg.fixed_window()) fit["window"] = {w->t_lo(), w->t_hi()};
  j["fit"] = fit;
  j["run"] = {{"output_dir", cfg.output_dir.string()}, {"seed", cfg.seed}, {"threads", cfg.threads}};
  return j;
}

}  // namespace

const std::optional<FitResult>& AlphaResult::fit(FitMode mode) const {
  static const std::optional<FitResult> kNoFit;
  if (mode == FitMode::none) return kNoFit;
  return mode == FitMode::fixed ? fixed_fit : auto_fit;
}

const std::string& AlphaResult::fit_status(FitMode mode) const {
  if (!ok() || mode == FitMode::none) return status;
  return mode == FitMode::fixed ? fixed_status : auto_status;
}

bool ScanReport::all_ok() const {
  return std::all_of(results.begin(), results.end(),
                     [this](const AlphaResult& r) { return r.fit_status(config.fit.mode) == "ok"; });
}

std::vector<SummaryRow> ScanReport::summary(FitMode mode) const {
  std::vector<SummaryRow> rows;
  rows.reserve(results.size());
  for (const AlphaResult& r : results) rows.push_back({r.alpha, r.fit(mode), r.fit_status(mode)});
  return rows;
}

ScanReport compute_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const Network net = cfg.network.build();
  const ScanContext ctx{cfg,
                        net,
                        cfg.initial_node.resolve(net),
                        cfg.grid(),
                        cfg.step_control(),
                        cfg.fixed_window(),
                        cfg.auto_window_options()};

  ScanReport report;
  report.config = cfg;
  report.network_tag = net.tag();
  report.n_nodes = net.n_nodes();
  report.initial_node = ctx.initial_node;
  report.results.resize(cfg.alphas.size());

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.alphas.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cfg.alphas.size(); i = next++) {
      report.results[i] = run_alpha(cfg.alphas[i], ctx);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string trace_file_name(double alpha) { return fmt::format("trace_alpha_{:g}.csv", alpha); }

void write_scan(const ScanReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const ExperimentConfig& cfg = report.config;
  for (const AlphaResult& r : report.results) {
    if (!r.rows.empty()) write_trace_csv(dir / trace_file_name(r.alpha), r.rows);
  }
  write_summary_csv(dir / "summary.csv", report.summary(cfg.fit.mode));
  const FitMode other = cfg.fit.mode == FitMode::automatic ? FitMode::fixed : FitMode::automatic;
  const bool other_has_fit = std::any_of(report.results.begin(), report.results.end(),
                                         [other](const AlphaResult& r) { return r.fit(other).has_value(); });
  if (other_has_fit) {
    write_summary_csv(dir / fmt::format("summary_{}.csv", to_string(other)), report.summary(other));
  }

  nlohmann::json meta;
  meta["version"] = QSW_VERSION;
  meta["eigen_version"] =
      fmt::format("{}.{}.{}", EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION);
#if defined(__clang__)
  meta["compiler"] = fmt::format("clang {}.{}.{}", __clang_major__, __clang_minor__, __clang_patchlevel__);
#elif defined(__GNUC__)
  meta["compiler"] = fmt::format("gcc {}.{}.{}", __GNUC__, __GNUC_MINOR__, __GNUC_PATCHLEVEL__);
#endif
  meta["config"] = config_json(cfg);
  meta["network_tag"] = report.network_tag;
  meta["n_nodes"] = report.n_nodes;
  meta["initial_node"] = report.initial_node;
  meta["wall_seconds"] = report.wall_seconds;
  nlohmann::json per_alpha = nlohmann::json::array();
  for (const AlphaResult& r : report.results) {
    nlohmann::json a;
    a["alpha"] = r.alpha;
    a["status"] = r.status;
    a["message"] = r.message;
    a["trace_file"] = r.rows.empty() ? "" : trace_file_name(r.alpha);
    a["fixed_fit"] = fit_json(r.fixed_fit, r.fit_status(FitMode::fixed));
    a["auto_fit"] = fit_json(r.auto_fit, r.fit_status(FitMode::automatic));
    if (r.return_exponent) {
      a["return_probability_slope"] = r.return_exponent->slope;
      a["return_probability_r_squared"] = r.return_exponent->r_squared;
    }
    if (!r.rows.empty()) a["final_entropy"] = r.rows.back().entropy;
    a["integration"] = {{"accepted_steps", r.stats.accepted},
                        {"rejected_steps", r.stats.rejected},
                        {"rhs_evaluations", r.stats.rhs_evaluations}};
    a["invariants"] = {{"max_trace_deviation", r.worst.trace_deviation},
                       {"max_hermiticity_deviation", r.worst.hermiticity_deviation},
                       {"min_eigenvalue", r.worst.min_eigenvalue}};
    per_alpha.push_back(std::move(a));
  }
  meta["results"] = std::move(per_alpha);

  std::ofstream out(dir / "run.json");
  if (!out) throw ConfigError("cannot write run.json in '" + dir.string() + "'");
  out << meta.dump(2) << '\n';
}

ScanReport run_scan(const ExperimentConfig& cfg) {
  ScanReport report = compute_scan(cfg);
  write_scan(report, cfg.output_dir);
  return report;
}

std::string_view to_string(FigureKind f) {
  switch (f) {
    case FigureKind::fig1a: return "fig1a";
    case FigureKind::fig1b: return "fig1b";
    case FigureKind::fig2: return "fig2";
  }
  return "fig2";
}

FigureKind parse_figure(std::string_view s) {
  if (s == "fig1a") return FigureKind::fig1a;
  if (s == "fig1b") return FigureKind::fig1b;
  if (s == "fig2") return FigureKind::fig2;
  throw ConfigError("figure must be fig1a, fig1b or fig2, got '" + std::string(s) + "'");
}

ExperimentConfig figure_config(FigureKind which) {
  ExperimentConfig cfg;
  cfg.alphas = figure_alpha_grid();
  cfg.output_dir = "figures";
  if (which == FigureKind::fig1b) {
    cfg.network.topology = Topology::sierpinski;
    cfg.network.generation = 5;
  } else {
    cfg.network.topology = Topology::chain;
    cfg.network.size = 100;
  }
  return cfg;
}

namespace {

std::filesystem::path write_fig1(FigureKind which, const ExperimentConfig& cfg, bool& ok) {
  ExperimentConfig scan_cfg = cfg;
  scan_cfg.output_dir = cfg.output_dir / std::string(to_string(which));
  const ScanReport report = run_scan(scan_cfg);
  ok = report.all_ok();

  const auto path = cfg.output_dir / fmt::format("{}.csv", to_string(which));
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "t";
  for (const AlphaResult& r : report.results) out << fmt::format(",S_alpha_{:g}", r.alpha);
  out << '\n';
  const TimeGrid grid = scan_cfg.grid();
  const std::vector<double>& times = grid.samples();
  for (std::size_t k = 0; k < times.size(); ++k) {
    out << format_double(times[k]);
    for (const AlphaResult& r : report.results) {
      out << ',';
      if (k < r.rows.size()) out << format_double(r.rows[k].entropy);
    }
    out << '\n';
  }
  return path;
}

std::filesystem::path write_fig2(const ExperimentConfig& cfg, bool& ok) {
  struct Variant {
    NetworkSpec network;
    InitialNode node;
  };
  NetworkSpec chain;
  chain.topology = Topology::chain;
  chain.size = 100;
  chain.convention = cfg.network.convention;
  NetworkSpec gasket;
  gasket.topology = Topology::sierpinski;
  gasket.generation = 5;
  gasket.convention = cfg.network.convention;
  const InitialNode center{InitialNode::Kind::center, 0};
  const InitialNode corner{InitialNode::Kind::corner, 0};
  const std::vector<Variant> variants{{chain, center}, {chain, corner}, {gasket, center}, {gasket, corner}};

  const auto path = cfg.output_dir / "fig2.csv";
  std::filesystem::create_directories(cfg.output_dir);
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << "network,initial_node,node_index,alpha,fit_mode,d_info,r_squared,window_lo,window_hi,status\n";
  ok = true;
  for (const Variant& v : variants) {
    ExperimentConfig scan_cfg = cfg;
    scan_cfg.network = v.network;
    scan_cfg.initial_node = v.node;
    scan_cfg.fit.window.reset();
    const std::string label = fmt::format("{}_{}", v.network.build().tag(), v.node.to_string());
    scan_cfg.output_dir = cfg.output_dir / "fig2" / label;
    const ScanReport report = run_scan(scan_cfg);
    ok = ok && report.all_ok();
    for (FitMode mode : {FitMode::fixed, FitMode::automatic}) {
      for (const AlphaResult& r : report.results) {
        out << report.network_tag << ',' << v.node.to_string() << ',' << report.initial_node << ','
            << format_double(r.alpha) << ',' << to_string(mode) << ',';
        if (const auto& fit = r.fit(mode)) {
          out << format_double(fit->d_info) << ',' << format_double(fit->r_squared) << ','
              << format_double(fit->window.t_lo()) << ',' << format_double(fit->window.t_hi());
        } else {
          out << ",,,";
        }
        out << ',' << r.fit_status(mode) << '\n';
      }
    }
  }
  return path;
}

}  // namespace

std::filesystem::path figure_data(FigureKind which, const ExperimentConfig& cfg, bool* all_ok) {
  bool ok = true;
  std::filesystem::create_directories(cfg.output_dir);
  const auto path = which == FigureKind::fig2 ? write_fig2(cfg, ok) : write_fig1(which, cfg, ok);
  if (all_ok) *all_ok = ok;
  return path;
}

}  // namespace qsw
