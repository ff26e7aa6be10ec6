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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsw/dopri.hpp"
#include "qsw/network.hpp"
#include "qsw/propagator.hpp"
#include "qsw/scaling.hpp"

namespace qsw {

struct NetworkSpec {
  Topology topology = Topology::chain;
  std::size_t size = 100;
  int generation = 5;
  HamiltonianConvention convention = HamiltonianConvention::laplacian;
  /// Edge-list file for Topology::custom.
  std::filesystem::path edge_list;

  Network build() const;
};

/// Symbolic or explicit starting node.
struct InitialNode {
  enum class Kind { center, corner, index };
  Kind kind = Kind::center;
  std::size_t index = 0;

  /// "center", "corner" or a non-negative integer.
  static InitialNode parse(std::string_view s);
  std::string to_string() const;
  /// center -> Network::center(); corner -> first entry of corners().
  std::size_t resolve(const Network& net) const;
};

/// `none` propagates and exports traces without fitting.
enum class FitMode { fixed, automatic, none };

std::string_view to_string(FitMode m);
FitMode parse_fit_mode(std::string_view s);

struct FitConfig {
  FitMode mode = FitMode::automatic;
  /// Fixed window; defaults per topology when unset (chain [10,100],
  /// gasket [1,10]).
  std::optional<std::pair<double, double>> window;
  double min_decades = AutoWindowOptions{}.min_decades;
  double saturation_margin = AutoWindowOptions{}.saturation_margin;
  /// Defaults per topology when unset: 10 for chains, 1 otherwise.
  std::optional<double> transient_time;
};

struct ExperimentConfig {
  NetworkSpec network;
  std::vector<double> alphas{1.0};
  double dephasing_rate = 1.0;
  InitialNode initial_node;
  double t_min = TimeGrid::kDefaultMin;
  double t_max = TimeGrid::kDefaultMax;
  int points_per_decade = TimeGrid::kDefaultPointsPerDecade;
  double rtol = StepControl{}.rtol;
  double atol = StepControl{}.atol;
  FitConfig fit;
  std::filesystem::path output_dir = "qsw_out";
  /// Reserved; every pipeline stage is deterministic.
  std::uint64_t seed = 0;
  /// Worker threads; 0 means hardware concurrency.
  unsigned threads = 0;

  /// Throws ConfigError on an empty, out-of-range or non-increasing alpha
  /// list, bad grid/tolerance values or a node outside the network.
  void validate() const;

  TimeGrid grid() const;
  StepControl step_control() const;
  /// Fixed window after applying topology defaults; nullopt if none applies.
  std::optional<FitWindow> fixed_window() const;
  AutoWindowOptions auto_window_options() const;
};

/// The alpha grid shared by the figure outputs.
std::vector<double> figure_alpha_grid();

/// Parses TOML text; unknown keys are rejected. A relative edge_list path
/// resolves against `base_dir`, a relative output_dir against the working
/// directory.
ExperimentConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

/// Overwrites only the fields present in the TOML text.
void apply_config(ExperimentConfig& cfg, std::string_view toml_text, const std::filesystem::path& base_dir = {});
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// Comma-separated reals, e.g. "0.1,0.2,1".
std::vector<double> parse_real_list(std::string_view s);

}  // namespace qsw
