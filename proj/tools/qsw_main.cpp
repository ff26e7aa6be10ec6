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

// qsw: quantum stochastic walk experiment runner.
//
//   qsw run    --alpha A [options]      single alpha
//   qsw scan   --alphas A,B,... [options]
//   qsw figure fig1a|fig1b|fig2 [options]
//   qsw fit    TRACE.csv --nodes N [--window LO,HI | --auto]
//   qsw network --output FILE [network options]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qsw/config.hpp"
#include "qsw/csv.hpp"
#include "qsw/error.hpp"
#include "qsw/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config_file;
  std::optional<std::string> topology;
  std::optional<std::size_t> size;
  std::optional<int> generation;
  std::optional<std::string> convention;
  std::optional<std::string> edge_list;
  std::optional<double> alpha;
  std::optional<std::string> alphas;
  std::optional<double> dephasing;
  std::optional<std::string> initial_node;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<int> ppd;
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<std::string> fit_mode;
  std::optional<std::string> window;
  std::optional<double> min_decades;
  std::optional<double> saturation_margin;
  std::optional<double> transient_time;
  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

void add_network_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_file, "TOML config file; flags override its values");
  app.add_option("--topology", o.topology, "chain | sierpinski | dimer | custom");
  app.add_option("--size", o.size, "chain length");
  app.add_option("--generation", o.generation, "gasket generation");
  app.add_option("--convention", o.convention, "laplacian | adjacency");
  app.add_option("--edge-list", o.edge_list, "edge-list file for the custom topology");
}

void add_run_options(CLI::App& app, Overrides& o) {
  add_network_options(app, o);
  app.add_option("--dephasing", o.dephasing, "dephasing rate lambda");
  app.add_option("--initial-node", o.initial_node, "center | corner | node index");
  app.add_option("--t-min", o.t_min, "first positive sample time");
  app.add_option("--t-max", o.t_max, "last sample time");
  app.add_option("--points-per-decade", o.ppd, "log-grid density");
  app.add_option("--rtol", o.rtol, "integrator relative tolerance");
  app.add_option("--atol", o.atol, "integrator absolute tolerance");
  app.add_option("--fit-mode", o.fit_mode, "fixed | auto | none");
  app.add_option("--window", o.window, "fixed fit window LO,HI");
  app.add_option("--min-decades", o.min_decades, "auto window minimum width in decades");
  app.add_option("--saturation-margin", o.saturation_margin, "auto window ceiling as a fraction of ln N");
  app.add_option("--transient-time", o.transient_time, "auto window earliest start time");
  app.add_option("--output,-o", o.output, "output directory");
  app.add_option("--seed", o.seed, "reserved; runs are deterministic");
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

std::pair<double, double> parse_window(const std::string& s) {
  const auto v = qsw::parse_real_list(s);
  if (v.size() != 2) throw qsw::ConfigError("--window expects LO,HI");
  return {v[0], v[1]};
}

void apply(qsw::ExperimentConfig& cfg, const Overrides& o) {
  if (!o.config_file.empty()) qsw::apply_config_file(cfg, o.config_file);
  if (o.topology) cfg.network.topology = qsw::parse_topology(*o.topology);
  if (o.size) cfg.network.size = *o.size;
  if (o.generation) cfg.network.generation = *o.generation;
  if (o.convention) cfg.network.convention = qsw::parse_convention(*o.convention);
  if (o.edge_list) cfg.network.edge_list = *o.edge_list;
  if (o.alphas) cfg.alphas = qsw::parse_real_list(*o.alphas);
  if (o.alpha) cfg.alphas = {*o.alpha};
  if (o.dephasing) cfg.dephasing_rate = *o.dephasing;
  if (o.initial_node) cfg.initial_node = qsw::InitialNode::parse(*o.initial_node);
  if (o.t_min) cfg.t_min = *o.t_min;
  if (o.t_max) cfg.t_max = *o.t_max;
  if (o.ppd) cfg.points_per_decade = *o.ppd;
  if (o.rtol) cfg.rtol = *o.rtol;
  if (o.atol) cfg.atol = *o.atol;
  if (o.fit_mode) cfg.fit.mode = qsw::parse_fit_mode(*o.fit_mode);
  if (o.window) cfg.fit.window = parse_window(*o.window);
  if (o.min_decades) cfg.fit.min_decades = *o.min_decades;
  if (o.saturation_margin) cfg.fit.saturation_margin = *o.saturation_margin;
  if (o.transient_time) cfg.fit.transient_time = *o.transient_time;
  if (o.output) cfg.output_dir = *o.output;
  if (o.seed) cfg.seed = *o.seed;
  if (o.threads) cfg.threads = *o.threads;
}

std::string fit_cell(const std::optional<qsw::FitResult>& fit) {
  if (!fit) return "-";
  return fmt::format("d_I={:.4f} R2={:.5f} window=[{:.4g},{:.4g}]", fit->d_info, fit->r_squared, fit->window.t_lo(),
                     fit->window.t_hi());
}

void print_report(const qsw::ScanReport& report) {
  fmt::print("network {} (N={}), initial node {}, wall {:.2f} s\n", report.network_tag, report.n_nodes,
             report.initial_node, report.wall_seconds);
  for (const qsw::AlphaResult& r : report.results) {
    fmt::print("alpha={:<6g} status={:<20} fixed: {}  auto: {}\n", r.alpha, r.fit_status(report.config.fit.mode),
               fit_cell(r.fixed_fit), fit_cell(r.auto_fit));
  }
  fmt::print("outputs written to {}\n", report.config.output_dir.string());
}

int run_fit(const std::string& trace_path, std::size_t nodes, const Overrides& o, double alpha) {
  if (nodes < 2) throw qsw::ConfigError("--nodes must be >= 2");
  const auto rows = qsw::read_trace_csv(std::filesystem::path(trace_path));
  const qsw::EntropyTrace trace = qsw::entropy_trace_from_rows(rows, nodes, alpha);
  qsw::SummaryRow row;
  row.alpha = alpha;
  try {
    std::optional<qsw::FitWindow> window;
    if (o.window) {
      const auto [lo, hi] = parse_window(*o.window);
      window.emplace(lo, hi);
    } else {
      qsw::AutoWindowOptions opts;
      if (o.min_decades) opts.min_decades = *o.min_decades;
      if (o.saturation_margin) opts.saturation_margin = *o.saturation_margin;
      if (o.transient_time) opts.transient_time = *o.transient_time;
      window = qsw::auto_window(trace, opts);
    }
    row.fit = qsw::fit_information_dimension(trace, *window);
    row.fit->alpha = alpha;
  } catch (const qsw::FitError& e) {
    row.status = "fit_error";
    std::cerr << "fit failed: " << e.what() << '\n';
  }
  qsw::write_summary_csv(std::cout, {row});
  return row.status == "ok" ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum stochastic walk entropy experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(QSW_VERSION));

  Overrides o;
  double fit_alpha = 0.0;
  std::size_t fit_nodes = 0;
  std::string trace_path;
  std::string figure_name;
  std::string edge_output;

  CLI::App* run = app.add_subcommand("run", "propagate and fit a single alpha");
  add_run_options(*run, o);
  run->add_option("--alpha", o.alpha, "interpolation parameter in (0, 1]");

  CLI::App* scan = app.add_subcommand("scan", "propagate and fit a list of alphas");
  add_run_options(*scan, o);
  scan->add_option("--alphas", o.alphas, "comma-separated, strictly increasing alphas");

  CLI::App* figure = app.add_subcommand("figure", "emit figure data (fig1a | fig1b | fig2)");
  add_run_options(*figure, o);
  figure->add_option("which", figure_name, "fig1a | fig1b | fig2")->required();
  figure->add_option("--alphas", o.alphas, "override the alpha grid");

  CLI::App* fit = app.add_subcommand("fit", "re-fit an existing trace CSV");
  fit->add_option("trace", trace_path, "trace CSV (t,entropy,return_prob)")->required();
  fit->add_option("--nodes", fit_nodes, "network size N (sets the ln N ceiling)")->required();
  fit->add_option("--alpha", fit_alpha, "alpha label for the summary row");
  fit->add_option("--window", o.window, "fixed window LO,HI; omitted means auto window");
  fit->add_option("--min-decades", o.min_decades, "auto window minimum width in decades");
  fit->add_option("--saturation-margin", o.saturation_margin, "auto window ceiling as a fraction of ln N");
  fit->add_option("--transient-time", o.transient_time, "auto window earliest start time");

  CLI::App* network = app.add_subcommand("network", "export a network as an edge list");
  add_network_options(*network, o);
  network->add_option("--output,-o", edge_output, "edge-list file ('-' for stdout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*fit) return run_fit(trace_path, fit_nodes, o, fit_alpha);

    if (*network) {
      qsw::ExperimentConfig cfg;
      apply(cfg, o);
      const qsw::Network net = cfg.network.build();
      if (edge_output == "-") {
        qsw::write_edge_list(std::cout, net);
      } else {
        std::ofstream out(edge_output);
        if (!out) throw qsw::ConfigError("cannot write '" + edge_output + "'");
        qsw::write_edge_list(out, net);
      }
      return kExitOk;
    }

    if (*figure) {
      const qsw::FigureKind which = qsw::parse_figure(figure_name);
      qsw::ExperimentConfig cfg = qsw::figure_config(which);
      apply(cfg, o);
      bool ok = true;
      const auto path = qsw::figure_data(which, cfg, &ok);
      fmt::print("wrote {}\n", path.string());
      return ok ? kExitOk : kExitNumerical;
    }

    qsw::ExperimentConfig cfg;
    apply(cfg, o);
    if (*run && cfg.alphas.size() != 1) throw qsw::ConfigError("run takes exactly one alpha; use scan for a list");
    const qsw::ScanReport report = qsw::run_scan(cfg);
    print_report(report);
    return report.all_ok() ? kExitOk : kExitNumerical;
  } catch (const qsw::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qsw::DimensionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const qsw::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
