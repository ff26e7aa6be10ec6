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

#include "qsw/network.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

#include "qsw/error.hpp"

namespace qsw {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::chain: return "chain";
    case Topology::sierpinski: return "sierpinski";
    case Topology::dimer: return "dimer";
    case Topology::custom: return "custom";
  }
  return "custom";
}

Topology parse_topology(std::string_view s) {
  if (s == "chain") return Topology::chain;
  if (s == "sierpinski" || s == "gasket") return Topology::sierpinski;
  if (s == "dimer") return Topology::dimer;
  if (s == "custom") return Topology::custom;
  throw ConfigError("unknown topology '" + std::string(s) + "'");
}

std::string_view to_string(HamiltonianConvention c) {
  return c == HamiltonianConvention::laplacian ? "laplacian" : "adjacency";
}

HamiltonianConvention parse_convention(std::string_view s) {
  if (s == "laplacian") return HamiltonianConvention::laplacian;
  if (s == "adjacency") return HamiltonianConvention::adjacency;
  throw ConfigError("unknown Hamiltonian convention '" + std::string(s) + "'");
}

Network::Network(std::size_t n, std::vector<Edge> edges, Topology topology, std::optional<int> generation,
                 std::vector<std::size_t> corners)
    : n_nodes_(n),
      edges_(std::move(edges)),
      topology_(topology),
      generation_(generation),
      corners_(std::move(corners)) {
  if (n_nodes_ == 0) throw ConfigError("network must have at least one node");
  for (const Edge& e : edges_) {
    if (e.a == e.b) throw ConfigError("self-loop at node " + std::to_string(e.a));
    if (e.a > e.b) throw ConfigError("edge endpoints must be normalized");
    if (e.b >= n_nodes_) {
      throw ConfigError("edge endpoint " + std::to_string(e.b) + " out of range for " + std::to_string(n_nodes_) +
                        " nodes");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw ConfigError("duplicate edge in network");
  }
  if (!is_connected()) throw ConfigError("network is not connected");
}

Network Network::custom(std::size_t n_nodes, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (auto [a, b] : edges) normalized.push_back({std::min(a, b), std::max(a, b)});
  return Network(n_nodes, std::move(normalized), Topology::custom, std::nullopt, {});
}

std::vector<std::size_t> Network::degrees() const {
  std::vector<std::size_t> deg(n_nodes_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.a];
    ++deg[e.b];
  }
  return deg;
}

std::vector<std::vector<std::size_t>> Network::adjacency_list() const {
  std::vector<std::vector<std::size_t>> adj(n_nodes_);
  for (const Edge& e : edges_) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  return adj;
}

bool Network::is_connected() const {
  const auto adj = adjacency_list();
  std::vector<bool> seen(n_nodes_, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        frontier.push(w);
      }
    }
  }
  return reached == n_nodes_;
}

std::vector<std::size_t> Network::distances_from(std::size_t source) const {
  if (source >= n_nodes_) throw ConfigError("node index out of range");
  const auto adj = adjacency_list();
  std::vector<std::size_t> dist(n_nodes_, n_nodes_);
  std::queue<std::size_t> frontier;
  dist[source] = 0;
  frontier.push(source);
  while (!frontier.empty()) {
    const std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t w : adj[v]) {
      if (dist[w] == n_nodes_) {
        dist[w] = dist[v] + 1;
        frontier.push(w);
      }
    }
  }
  return dist;
}

std::size_t Network::center() const {
  std::size_t best = 0;
  std::size_t best_total = 0;
  for (std::size_t v = 0; v < n_nodes_; ++v) {
    const auto dist = distances_from(v);
    std::size_t total = 0;
    for (std::size_t d : dist) total += d;
    if (v == 0 || total <= best_total) {
      best = v;
      best_total = total;
    }
  }
  return best;
}

std::string Network::tag() const {
  switch (topology_) {
    case Topology::chain: return "chain" + std::to_string(n_nodes_);
    case Topology::sierpinski: return "sierpinski" + std::to_string(generation_.value_or(0));
    case Topology::dimer: return "dimer";
    case Topology::custom: return "custom" + std::to_string(n_nodes_);
  }
  return "custom";
}

Network make_chain(std::size_t n) {
  if (n < 2) throw ConfigError("chain needs at least 2 nodes, got " + std::to_string(n));
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return Network(n, std::move(edges), Topology::chain, std::nullopt, {0, n - 1});
}

Network make_dimer() {
  Network net = make_chain(2);
  net.topology_ = Topology::dimer;
  return net;
}

std::size_t sierpinski_node_count(int generation) {
  if (generation < 1) throw ConfigError("gasket generation must be >= 1");
  std::size_t pow3 = 1;
  for (int i = 1; i < generation; ++i) pow3 *= 3;
  return 3 * (pow3 + 1) / 2;
}

namespace {

// Triangular-lattice coordinates. With corners (0,0), (L,0), (0,L) and
// L = 2^(g-1), every midpoint produced by g-1 subdivisions is integral.
using LatticePoint = std::array<long, 2>;
using Triangle = std::array<LatticePoint, 3>;

LatticePoint midpoint(const LatticePoint& p, const LatticePoint& q) {
  return {(p[0] + q[0]) / 2, (p[1] + q[1]) / 2};
}

void subdivide(const Triangle& tri, int depth, std::vector<Triangle>& out) {
  if (depth == 0) {
    out.push_back(tri);
    return;
  }
  const LatticePoint m01 = midpoint(tri[0], tri[1]);
  const LatticePoint m12 = midpoint(tri[1], tri[2]);
  const LatticePoint m02 = midpoint(tri[0], tri[2]);
  subdivide({tri[0], m01, m02}, depth - 1, out);
  subdivide({m01, tri[1], m12}, depth - 1, out);
  subdivide({m02, m12, tri[2]}, depth - 1, out);
}

}  // namespace

Network make_sierpinski(int generation, int max_generation) {
  if (generation < 1) throw ConfigError("gasket generation must be >= 1, got " + std::to_string(generation));
  if (generation > max_generation) {
    throw ConfigError("gasket generation " + std::to_string(generation) + " exceeds limit " +
                      std::to_string(max_generation));
  }
  const long side = 1L << (generation - 1);
  const Triangle outer{{{0, 0}, {side, 0}, {0, side}}};

  std::vector<Triangle> cells;
  subdivide(outer, generation - 1, cells);

  std::set<LatticePoint> points;
  for (const Triangle& t : cells) points.insert(t.begin(), t.end());
  std::map<LatticePoint, std::size_t> index;
  for (const LatticePoint& p : points) index.emplace(p, index.size());

  std::vector<Edge> edges;
  edges.reserve(3 * cells.size());
  for (const Triangle& t : cells) {
    for (int k = 0; k < 3; ++k) {
      const std::size_t u = index.at(t[k]);
      const std::size_t v = index.at(t[(k + 1) % 3]);
      edges.push_back({std::min(u, v), std::max(u, v)});
    }
  }

  std::vector<std::size_t> corners{index.at(outer[0]), index.at(outer[1]), index.at(outer[2])};
  return Network(points.size(), std::move(edges), Topology::sierpinski, generation, std::move(corners));
}

void write_edge_list(std::ostream& out, const Network& net) {
  out << "# nodes=" << net.n_nodes() << " topology=" << to_string(net.topology()) << '\n';
  for (const Edge& e : net.edges()) out << e.a << ' ' << e.b << '\n';
}

Network read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("edge list is empty");
  const auto pos = line.find("nodes=");
  if (line.rfind('#', 0) != 0 || pos == std::string::npos) {
    throw ConfigError("edge list header must look like '# nodes=N topology=TAG'");
  }
  std::size_t n = 0;
  {
    std::istringstream header(line.substr(pos + 6));
    if (!(header >> n)) throw ConfigError("could not parse node count in edge list header");
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    long a = -1;
    long b = -1;
    if (!(row >> a >> b) || a < 0 || b < 0) {
      throw ConfigError("malformed edge on line " + std::to_string(lineno));
    }
    edges.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  return Network::custom(n, std::move(edges));
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DimensionError("Hermitian matrix must be square and non-empty");
  }
  const double dev = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kTolerance) {
    throw InvariantViolation("matrix is not Hermitian (max deviation " + std::to_string(dev) + ")");
  }
}

RateMatrix::RateMatrix(RealMatrix rates) : rates_(std::move(rates)) {
  if (rates_.rows() == 0 || rates_.rows() != rates_.cols()) {
    throw DimensionError("rate matrix must be square and non-empty");
  }
  for (Eigen::Index m = 0; m < rates_.rows(); ++m) {
    if (rates_(m, m) != 0.0) throw InvariantViolation("rate matrix diagonal must be zero");
    for (Eigen::Index n = 0; n < rates_.cols(); ++n) {
      if (!(rates_(m, n) >= 0.0)) throw InvariantViolation("rates must be nonnegative");
      if (std::abs(rates_(m, n) - rates_(n, m)) > kSymmetryTolerance) {
        throw InvariantViolation("rate matrix must be symmetric");
      }
    }
  }
}

HermitianMatrix hamiltonian(const Network& net, HamiltonianConvention convention) {
  const auto n = static_cast<Eigen::Index>(net.n_nodes());
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  const double off = convention == HamiltonianConvention::laplacian ? -1.0 : 1.0;
  for (const Edge& e : net.edges()) {
    const auto a = static_cast<Eigen::Index>(e.a);
    const auto b = static_cast<Eigen::Index>(e.b);
    h(a, b) = off;
    h(b, a) = off;
    if (convention == HamiltonianConvention::laplacian) {
      h(a, a) += 1.0;
      h(b, b) += 1.0;
    }
  }
  return HermitianMatrix(std::move(h));
}

RateMatrix golden_rule_rates(const HermitianMatrix& h) {
  RealMatrix rates = h.matrix().cwiseAbs2();
  rates.diagonal().setZero();
  // |h_mn|^2 and |h_nm|^2 can differ in the last bit for complex entries.
  rates = (0.5 * (rates + rates.transpose())).eval();
  return RateMatrix(std::move(rates));
}

}  // namespace qsw
