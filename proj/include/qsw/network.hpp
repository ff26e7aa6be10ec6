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

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qsw {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Topology { chain, sierpinski, dimer, custom };

std::string_view to_string(Topology t);
Topology parse_topology(std::string_view s);

/// Undirected edge with `a < b`.
struct Edge {
  std::size_t a;
  std::size_t b;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple, connected, undirected graph with 0-based node indices.
///
/// Construction validates every invariant; a Network that exists is valid.
/// Edges are stored normalized (`a < b`) and sorted, so two networks built
/// from the same edge set compare equal regardless of input order.
class Network {
 public:
  /// Builds a network from an arbitrary edge list. Throws ConfigError on
  /// self-loops, duplicates, out-of-range endpoints or a disconnected graph.
  static Network custom(std::size_t n_nodes, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t n_nodes() const { return n_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Topology topology() const { return topology_; }
  std::optional<int> generation() const { return generation_; }
  /// Extremal nodes: the three apexes of a gasket, the two ends of a chain
  /// or dimer; empty for custom graphs.
  const std::vector<std::size_t>& corners() const { return corners_; }

  std::vector<std::size_t> degrees() const;
  std::vector<std::vector<std::size_t>> adjacency_list() const;
  bool is_connected() const;
  /// BFS hop counts from `source`.
  std::vector<std::size_t> distances_from(std::size_t source) const;
  /// Node with the smallest sum of hop distances to all others; ties go to
  /// the highest index (floor(N/2) on a chain).
  std::size_t center() const;

  /// Short human-readable tag, e.g. "chain100" or "sierpinski5".
  std::string tag() const;

 private:
  Network(std::size_t n, std::vector<Edge> edges, Topology topology, std::optional<int> generation,
          std::vector<std::size_t> corners);

  friend Network make_chain(std::size_t);
  friend Network make_dimer();
  friend Network make_sierpinski(int, int);

  std::size_t n_nodes_;
  std::vector<Edge> edges_;
  Topology topology_;
  std::optional<int> generation_;
  std::vector<std::size_t> corners_;
};

/// Path graph 0-1-...-(n-1). Requires n >= 2.
Network make_chain(std::size_t n);

/// Two nodes joined by one edge; same graph as make_chain(2), tagged dimer.
Network make_dimer();

inline constexpr int kDefaultMaxSierpinskiGeneration = 8;

/// Sierpinski gasket of generation g (g = 1 is a single triangle).
///
/// Nodes live on a triangular lattice with integer coordinates, so midpoint
/// subdivision and node deduplication are exact. Nodes are indexed in
/// lexicographic order of their lattice coordinates.
Network make_sierpinski(int generation, int max_generation = kDefaultMaxSierpinskiGeneration);

/// 3(3^(g-1)+1)/2.
std::size_t sierpinski_node_count(int generation);

/// Writes "# nodes=N topology=TAG" followed by one "i j" line per edge.
void write_edge_list(std::ostream& out, const Network& net);

/// Inverse of write_edge_list. The topology tag is read back but the result
/// is always validated as a custom graph.
Network read_edge_list(std::istream& in);

// ---------------------------------------------------------------------------

/// Dense complex matrix that is Hermitian to 1e-12 (checked on construction).
class HermitianMatrix {
 public:
  static constexpr double kTolerance = 1e-12;

  explicit HermitianMatrix(ComplexMatrix entries);

  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const ComplexMatrix& matrix() const { return entries_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  ComplexMatrix entries_;
};

/// Nonnegative, symmetric transfer rates with zero diagonal.
/// `rates(m, n)` is the rate of the transition n -> m.
class RateMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  explicit RateMatrix(RealMatrix rates);

  std::size_t dim() const { return static_cast<std::size_t>(rates_.rows()); }
  const RealMatrix& matrix() const { return rates_; }
  double operator()(std::size_t m, std::size_t n) const {
    return rates_(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
  }

 private:
  RealMatrix rates_;
};

enum class HamiltonianConvention { laplacian, adjacency };

std::string_view to_string(HamiltonianConvention c);
HamiltonianConvention parse_convention(std::string_view s);

/// Network Hamiltonian: graph Laplacian (degree on the diagonal, -1 per
/// edge) or adjacency matrix (+1 per edge).
HermitianMatrix hamiltonian(const Network& net,
                            HamiltonianConvention convention = HamiltonianConvention::laplacian);

/// Fermi golden-rule rates with unit prefactor: rates(m, n) = |h(m, n)|^2, m != n.
RateMatrix golden_rule_rates(const HermitianMatrix& h);

}  // namespace qsw
