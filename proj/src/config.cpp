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

#include "qsw/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <tomlplusplus/toml.hpp>

#include "qsw/error.hpp"

namespace qsw {

Network NetworkSpec::build() const {
  switch (topology) {
    case Topology::chain: return make_chain(size);
    case Topology::sierpinski: return make_sierpinski(generation);
    case Topology::dimer: return make_dimer();
    case Topology::custom: {
      if (edge_list.empty()) throw ConfigError("custom topology needs an edge_list file");
      std::ifstream in(edge_list);
      if (!in) throw ConfigError("cannot open edge list '" + edge_list.string() + "'");
      return read_edge_list(in);
    }
  }
  throw ConfigError("unknown topology");
}

InitialNode InitialNode::parse(std::string_view s) {
  if (s == "center" || s == "centre") return {Kind::center, 0};
  if (s == "corner") return {Kind::corner, 0};
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("initial_node must be center, corner or a node index, got '" + std::string(s) + "'");
  }
  return {Kind::index, value};
}

std::string InitialNode::to_string() const {
  switch (kind) {
    case Kind::center: return "center";
    case Kind::corner: return "corner";
    case Kind::index: return std::to_string(index);
  }
  return "center";
}

std::size_t InitialNode::resolve(const Network& net) const {
  switch (kind) {
    case Kind::center: return net.center();
    case Kind::corner:
      if (net.corners().empty()) throw ConfigError("network '" + net.tag() + "' has no corner nodes");
      return net.corners().front();
    case Kind::index:
      if (index >= net.n_nodes()) {
        throw ConfigError(fmt::format("initial node {} out of range for {} nodes", index, net.n_nodes()));
      }
      return index;
  }
  return 0;
}

std::string_view to_string(FitMode m) {
  switch (m) {
    case FitMode::fixed: return "fixed";
    case FitMode::automatic: return "auto";
    case FitMode::none: return "none";
  }
  return "auto";
}

FitMode parse_fit_mode(std::string_view s) {
  if (s == "fixed") return FitMode::fixed;
  if (s == "auto") return FitMode::automatic;
  if (s == "none") return FitMode::none;
  throw ConfigError("fit mode must be 'fixed', 'auto' or 'none', got '" + std::string(s) + "'");
}

void ExperimentConfig::validate() const {
  if (alphas.empty()) throw ConfigError("alpha list is empty");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0)) {
      throw ConfigError(fmt::format("alpha {} outside (0, 1]", alphas[i]));
    }
    if (i > 0 && !(alphas[i] > alphas[i - 1])) throw ConfigError("alpha list must be strictly increasing");
  }
  if (!(dephasing_rate >= 0.0) || !std::isfinite(dephasing_rate)) {
    throw ConfigError("dephasing_rate must be finite and >= 0");
  }
  if (network.topology == Topology::chain && network.size < 2) throw ConfigError("chain size must be >= 2");
  if (network.topology == Topology::sierpinski &&
      (network.generation < 1 || network.generation > kDefaultMaxSierpinskiGeneration)) {
    throw ConfigError(fmt::format("gasket generation must lie in [1, {}]", kDefaultMaxSierpinskiGeneration));
  }
  (void)grid();
  if (!(rtol > 0.0) || !(atol > 0.0)) throw ConfigError("tolerances must be positive");
  if (fit.window) (void)FitWindow(fit.window->first, fit.window->second);
  if (fit.mode == FitMode::fixed && !fixed_window()) {
    throw ConfigError("fit mode 'fixed' needs a window for topology " + std::string(qsw::to_string(network.topology)));
  }
  auto_window_options().validate();
  (void)initial_node.resolve(network.build());
}

TimeGrid ExperimentConfig::grid() const { return TimeGrid::log_spaced(t_min, t_max, points_per_decade); }

StepControl ExperimentConfig::step_control() const {
  StepControl control;
  control.rtol = rtol;
  control.atol = atol;
  return control;
}

std::optional<FitWindow> ExperimentConfig::fixed_window() const {
  if (fit.window) return FitWindow(fit.window->first, fit.window->second);
  switch (network.topology) {
    case Topology::chain: return FitWindow(10.0, 100.0);
    case Topology::sierpinski: return FitWindow(1.0, 10.0);
    default: return std::nullopt;
  }
}

AutoWindowOptions ExperimentConfig::auto_window_options() const {
  AutoWindowOptions opts;
  opts.min_decades = fit.min_decades;
  opts.saturation_margin = fit.saturation_margin;
  opts.transient_time = fit.transient_time.value_or(network.topology == Topology::chain ? 10.0 : 1.0);
  return opts;
}

std::vector<double> figure_alpha_grid() { return {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0}; }

std::vector<double> parse_real_list(std::string_view s) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    std::string_view item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw ConfigError("'" + std::string(item) + "' is not a number");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

void reject_unknown(const toml::table& table, std::string_view section, std::initializer_list<std::string_view> keys) {
  const std::set<std::string_view> allowed(keys);
  for (const auto& [key, node] : table) {
    if (!allowed.contains(key.str())) {
      throw ConfigError(fmt::format("unknown key '{}{}{}'", section, section.empty() ? "" : ".", key.str()));
    }
  }
}

const toml::table* section(const toml::table& root, std::string_view name) {
  const toml::node* node = root.get(name);
  if (!node) return nullptr;
  const toml::table* table = node->as_table();
  if (!table) throw ConfigError("'" + std::string(name) + "' must be a table");
  return table;
}

double get_real(const toml::table& t, std::string_view section, std::string_view key, double fallback) {
  const toml::node* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->value<double>()) return *v;
  throw ConfigError(fmt::format("{}.{} must be a number", section, key));
}

long long get_int(const toml::table& t, std::string_view section, std::string_view key, long long fallback) {
  const toml::node* node = t.get(key);
  if (!node) return fallback;
  if (auto v = node->as_integer()) return v->get();
  throw ConfigError(fmt::format("{}.{} must be an integer", section, key));
}

std::optional<std::string> get_string(const toml::table& t, std::string_view section, std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return std::nullopt;
  if (auto v = node->as_string()) return v->get();
  throw ConfigError(fmt::format("{}.{} must be a string", section, key));
}

std::size_t non_negative(long long v, std::string_view what) {
  if (v < 0) throw ConfigError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<double> get_real_array(const toml::table& t, std::string_view section, std::string_view key) {
  const toml::array* arr = t.get_as<toml::array>(key);
  if (!arr) throw ConfigError(fmt::format("{}.{} must be an array of numbers", section, key));
  std::vector<double> out;
  for (const toml::node& item : *arr) {
    auto v = item.value<double>();
    if (!v) throw ConfigError(fmt::format("{}.{} must be an array of numbers", section, key));
    out.push_back(*v);
  }
  return out;
}

}  // namespace

void apply_config(ExperimentConfig& cfg, std::string_view toml_text, const std::filesystem::path& base_dir) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error: " << e.description() << " at " << e.source().begin;
    throw ConfigError(msg.str());
  }
  reject_unknown(root, "", {"network", "walk", "time", "integrator", "fit", "run"});

  if (const toml::table* t = section(root, "network")) {
    reject_unknown(*t, "network", {"topology", "size", "generation", "convention", "edge_list"});
    if (auto s = get_string(*t, "network", "topology")) cfg.network.topology = parse_topology(*s);
    cfg.network.size = non_negative(get_int(*t, "network", "size", static_cast<long long>(cfg.network.size)),
                                    "network.size");
    cfg.network.generation = static_cast<int>(get_int(*t, "network", "generation", cfg.network.generation));
    if (auto s = get_string(*t, "network", "convention")) cfg.network.convention = parse_convention(*s);
    if (auto s = get_string(*t, "network", "edge_list")) {
      std::filesystem::path p(*s);
      cfg.network.edge_list = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
  }
  if (const toml::table* t = section(root, "walk")) {
    reject_unknown(*t, "walk", {"alphas", "dephasing_rate", "initial_node"});
    if (t->contains("alphas")) cfg.alphas = get_real_array(*t, "walk", "alphas");
    cfg.dephasing_rate = get_real(*t, "walk", "dephasing_rate", cfg.dephasing_rate);
    if (const toml::node* node = t->get("initial_node")) {
      if (auto s = node->as_string()) {
        cfg.initial_node = InitialNode::parse(s->get());
      } else if (auto i = node->as_integer()) {
        cfg.initial_node = {InitialNode::Kind::index, non_negative(i->get(), "walk.initial_node")};
      } else {
        throw ConfigError("walk.initial_node must be a string or an integer");
      }
    }
  }
  if (const toml::table* t = section(root, "time")) {
    reject_unknown(*t, "time", {"t_min", "t_max", "points_per_decade"});
    cfg.t_min = get_real(*t, "time", "t_min", cfg.t_min);
    cfg.t_max = get_real(*t, "time", "t_max", cfg.t_max);
    cfg.points_per_decade = static_cast<int>(get_int(*t, "time", "points_per_decade", cfg.points_per_decade));
  }
  if (const toml::table* t = section(root, "integrator")) {
    reject_unknown(*t, "integrator", {"rtol", "atol"});
    cfg.rtol = get_real(*t, "integrator", "rtol", cfg.rtol);
    cfg.atol = get_real(*t, "integrator", "atol", cfg.atol);
  }
  if (const toml::table* t = section(root, "fit")) {
    reject_unknown(*t, "fit", {"mode", "window", "min_decades", "saturation_margin", "transient_time"});
    if (auto s = get_string(*t, "fit", "mode")) cfg.fit.mode = parse_fit_mode(*s);
    if (t->contains("window")) {
      const auto w = get_real_array(*t, "fit", "window");
      if (w.size() != 2) throw ConfigError("fit.window must have exactly two entries");
      cfg.fit.window = std::make_pair(w[0], w[1]);
    }
    cfg.fit.min_decades = get_real(*t, "fit", "min_decades", cfg.fit.min_decades);
    cfg.fit.saturation_margin = get_real(*t, "fit", "saturation_margin", cfg.fit.saturation_margin);
    if (t->contains("transient_time")) cfg.fit.transient_time = get_real(*t, "fit", "transient_time", 0.0);
  }
  if (const toml::table* t = section(root, "run")) {
    reject_unknown(*t, "run", {"output_dir", "seed", "threads"});
    if (auto s = get_string(*t, "run", "output_dir")) cfg.output_dir = *s;
    cfg.seed = non_negative(get_int(*t, "run", "seed", static_cast<long long>(cfg.seed)), "run.seed");
    cfg.threads = static_cast<unsigned>(non_negative(get_int(*t, "run", "threads", cfg.threads), "run.threads"));
  }
}

ExperimentConfig parse_config(std::string_view toml_text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  apply_config(cfg, toml_text, base_dir);
  return cfg;
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config(cfg, text.str(), path.parent_path());
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  return cfg;
}

}  // namespace qsw
