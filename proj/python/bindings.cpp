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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "qsw/config.hpp"
#include "qsw/error.hpp"
#include "qsw/experiment.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

std::size_t resolve_node(const qsw::Network& net, const std::variant<std::size_t, std::string>& node) {
  if (const auto* index = std::get_if<std::size_t>(&node)) {
    return qsw::InitialNode{qsw::InitialNode::Kind::index, *index}.resolve(net);
  }
  return qsw::InitialNode::parse(std::get<std::string>(node)).resolve(net);
}

py::dict fit_dict(const qsw::FitResult& f) {
  return py::dict("d_info"_a = f.d_info, "intercept"_a = f.intercept, "r_squared"_a = f.r_squared,
                  "window"_a = py::make_tuple(f.window.t_lo(), f.window.t_hi()), "n_points"_a = f.n_points);
}

qsw::EntropyTrace make_trace(const std::vector<double>& times, const std::vector<double>& entropy, std::size_t dim) {
  if (times.size() != entropy.size()) throw qsw::DimensionError("times and entropy lengths differ");
  // Traces from propagate() start at t = 0, which a log-time fit cannot use.
  const std::size_t skip = (!times.empty() && times.front() == 0.0) ? 1 : 0;
  qsw::EntropyTrace trace;
  trace.times.assign(times.begin() + skip, times.end());
  trace.values.assign(entropy.begin() + skip, entropy.end());
  trace.dim = dim;
  trace.validate();
  return trace;
}

py::dict propagate_py(const qsw::Network& net, double alpha, const std::variant<std::size_t, std::string>& initial_node,
                      const std::string& convention, double dephasing_rate, double t_min, double t_max,
                      int points_per_decade, double rtol, double atol, bool keep_states) {
  const std::size_t j = resolve_node(net, initial_node);
  const qsw::QswParams params = qsw::make_params(net, alpha, j, qsw::parse_convention(convention), dephasing_rate);
  qsw::StepControl control;
  control.rtol = rtol;
  control.atol = atol;
  const qsw::TimeGrid grid = qsw::TimeGrid::log_spaced(t_min, t_max, points_per_decade);
  const qsw::Trajectory traj = [&] {
    py::gil_scoped_release release;
    return qsw::propagate(params, grid, control);
  }();
  std::vector<double> entropy;
  std::vector<double> ret;
  for (const qsw::TraceRow& row : qsw::trace_rows(traj)) {
    entropy.push_back(row.entropy);
    ret.push_back(row.return_prob);
  }
  py::dict out("times"_a = traj.grid.samples(), "entropy"_a = entropy, "return_prob"_a = ret, "initial_node"_a = j,
               "accepted_steps"_a = traj.stats.accepted, "rejected_steps"_a = traj.stats.rejected);
  if (keep_states) {
    py::list states;
    for (const qsw::DensityMatrix& rho : traj.states) states.append(rho.matrix());
    out["states"] = states;
  }
  return out;
}

py::list scan_py(const std::string& toml_text, const std::optional<std::string>& output_dir) {
  qsw::ExperimentConfig cfg = qsw::parse_config(toml_text);
  if (output_dir) cfg.output_dir = *output_dir;
  qsw::ScanReport report;
  {
    py::gil_scoped_release release;
    report = output_dir ? qsw::run_scan(cfg) : qsw::compute_scan(cfg);
  }
  py::list rows;
  for (const qsw::AlphaResult& r : report.results) {
    py::dict row("alpha"_a = r.alpha, "status"_a = r.fit_status(cfg.fit.mode), "message"_a = r.message,
                 "final_entropy"_a = r.rows.empty() ? py::none() : py::cast(r.rows.back().entropy),
                 "initial_node"_a = report.initial_node);
    row["fixed_fit"] = r.fixed_fit ? py::object(fit_dict(*r.fixed_fit)) : py::none();
    row["auto_fit"] = r.auto_fit ? py::object(fit_dict(*r.auto_fit)) : py::none();
    rows.append(row);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_qsw, m) {
  m.doc() = "Quantum stochastic walks on networks: propagation, entropy and information dimension";
  m.attr("__version__") = QSW_VERSION;

  auto base = py::register_exception<qsw::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<qsw::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<qsw::DimensionError>(m, "DimensionError", base.ptr());
  auto numerical = py::register_exception<qsw::NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<qsw::InvariantViolation>(m, "InvariantViolation", numerical.ptr());
  py::register_exception<qsw::StepSizeUnderflow>(m, "StepSizeUnderflow", numerical.ptr());
  py::register_exception<qsw::FitError>(m, "FitError", numerical.ptr());

  py::class_<qsw::Network>(m, "Network")
      .def_static("custom", &qsw::Network::custom, "n_nodes"_a, "edges"_a)
      .def_property_readonly("n_nodes", &qsw::Network::n_nodes)
      .def_property_readonly("edges",
                             [](const qsw::Network& n) {
                               std::vector<std::pair<std::size_t, std::size_t>> out;
                               for (const qsw::Edge& e : n.edges()) out.emplace_back(e.a, e.b);
                               return out;
                             })
      .def_property_readonly("topology", [](const qsw::Network& n) { return std::string(qsw::to_string(n.topology())); })
      .def_property_readonly("generation", &qsw::Network::generation)
      .def_property_readonly("corners", &qsw::Network::corners)
      .def_property_readonly("tag", &qsw::Network::tag)
      .def("degrees", &qsw::Network::degrees)
      .def("center", &qsw::Network::center)
      .def("edge_list",
           [](const qsw::Network& n) {
             std::ostringstream out;
             qsw::write_edge_list(out, n);
             return out.str();
           })
      .def("__repr__", [](const qsw::Network& n) {
        return "<Network " + n.tag() + " nodes=" + std::to_string(n.n_nodes()) + ">";
      });

  m.def("make_chain", &qsw::make_chain, "n"_a);
  m.def("make_dimer", &qsw::make_dimer);
  m.def("make_sierpinski", &qsw::make_sierpinski, "generation"_a,
        "max_generation"_a = qsw::kDefaultMaxSierpinskiGeneration);
  m.def("sierpinski_node_count", &qsw::sierpinski_node_count, "generation"_a);
  m.def("read_edge_list", [](const std::string& text) {
    std::istringstream in(text);
    return qsw::read_edge_list(in);
  });

  m.def(
      "hamiltonian",
      [](const qsw::Network& net, const std::string& convention) -> qsw::ComplexMatrix {
        return qsw::hamiltonian(net, qsw::parse_convention(convention)).matrix();
      },
      "network"_a, "convention"_a = "laplacian");
  m.def(
      "golden_rule_rates", [](const qsw::ComplexMatrix& h) -> qsw::RealMatrix {
        return qsw::golden_rule_rates(qsw::HermitianMatrix(h)).matrix();
      },
      "hamiltonian"_a);
  m.def(
      "classical_generator", [](const qsw::RealMatrix& rates) { return qsw::classical_generator(qsw::RateMatrix(rates)); },
      "rates"_a);

  m.def(
      "ctqw_term",
      [](const qsw::ComplexMatrix& rho, const qsw::ComplexMatrix& h) {
        return qsw::ctqw_term(rho, qsw::HermitianMatrix(h));
      },
      "rho"_a, "hamiltonian"_a);
  m.def(
      "ctrw_dissipator",
      [](const qsw::ComplexMatrix& rho, const qsw::RealMatrix& rates) {
        return qsw::ctrw_dissipator(rho, qsw::RateMatrix(rates));
      },
      "rho"_a, "rates"_a);
  m.def("dephasing_dissipator", &qsw::dephasing_dissipator, "rho"_a, "rate"_a);
  m.def(
      "qsw_rhs",
      [](const qsw::ComplexMatrix& rho, double alpha, const qsw::ComplexMatrix& h, const qsw::RealMatrix& rates,
         double dephasing_rate) {
        qsw::QswParams p{alpha, dephasing_rate, qsw::HermitianMatrix(h), qsw::RateMatrix(rates), 0};
        return qsw::qsw_rhs(rho, p);
      },
      "rho"_a, "alpha"_a, "hamiltonian"_a, "rates"_a, "dephasing_rate"_a = 1.0);

  m.def(
      "time_grid",
      [](double t_min, double t_max, int ppd) { return qsw::TimeGrid::log_spaced(t_min, t_max, ppd).samples(); },
      "t_min"_a = qsw::TimeGrid::kDefaultMin, "t_max"_a = qsw::TimeGrid::kDefaultMax,
      "points_per_decade"_a = qsw::TimeGrid::kDefaultPointsPerDecade);
  m.def("propagate", &propagate_py, "network"_a, "alpha"_a, "initial_node"_a = "center",
        "convention"_a = "laplacian", "dephasing_rate"_a = 1.0, "t_min"_a = qsw::TimeGrid::kDefaultMin,
        "t_max"_a = qsw::TimeGrid::kDefaultMax, "points_per_decade"_a = qsw::TimeGrid::kDefaultPointsPerDecade,
        "rtol"_a = qsw::StepControl{}.rtol, "atol"_a = qsw::StepControl{}.atol, "keep_states"_a = false,
        "Propagate from a localized state; returns times, entropy, return_prob (t = 0 included).");
  m.def(
      "propagate_classical",
      [](const qsw::RealMatrix& generator, std::size_t node, double t_min, double t_max, int ppd) {
        return qsw::propagate_classical(generator, node, qsw::TimeGrid::log_spaced(t_min, t_max, ppd));
      },
      "generator"_a, "initial_node"_a, "t_min"_a = qsw::TimeGrid::kDefaultMin, "t_max"_a = qsw::TimeGrid::kDefaultMax,
      "points_per_decade"_a = qsw::TimeGrid::kDefaultPointsPerDecade);

  m.def("von_neumann_entropy", &qsw::von_neumann_entropy, "rho"_a);
  m.def(
      "shannon_entropy", [](const std::vector<double>& p) { return qsw::shannon_entropy(p); }, "p"_a);

  m.def(
      "fit_information_dimension",
      [](const std::vector<double>& times, const std::vector<double>& entropy, double t_lo, double t_hi,
         std::size_t dim) {
        return fit_dict(qsw::fit_information_dimension(make_trace(times, entropy, dim), qsw::FitWindow(t_lo, t_hi)));
      },
      "times"_a, "entropy"_a, "t_lo"_a, "t_hi"_a, "dim"_a = 0);
  m.def(
      "auto_window",
      [](const std::vector<double>& times, const std::vector<double>& entropy, std::size_t dim, double min_decades,
         double saturation_margin, double transient_time) {
        qsw::AutoWindowOptions opts{min_decades, saturation_margin, transient_time};
        const qsw::FitWindow w = qsw::auto_window(make_trace(times, entropy, dim), opts);
        return py::make_tuple(w.t_lo(), w.t_hi());
      },
      "times"_a, "entropy"_a, "dim"_a, "min_decades"_a = qsw::AutoWindowOptions{}.min_decades,
      "saturation_margin"_a = qsw::AutoWindowOptions{}.saturation_margin,
      "transient_time"_a = qsw::AutoWindowOptions{}.transient_time);
  m.def("dimer_short_time", &qsw::dimer_short_time, "alpha"_a, "t"_a);

  m.def("run_scan", &scan_py, "config_toml"_a, "output_dir"_a = py::none(),
        "Run an alpha scan described by TOML text; writes CSV outputs when output_dir is given.");
}
