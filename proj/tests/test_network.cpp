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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "qsw/error.hpp"
#include "qsw/network.hpp"

using namespace qsw;

namespace {

bool has_edge(const Network& net, std::size_t a, std::size_t b) {
  for (const Edge& e : net.edges()) {
    if (e.a == std::min(a, b) && e.b == std::max(a, b)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("network") {

TEST_CASE("chain construction") {
  SUBCASE("n=2 is the dimer graph") {
    const Network net = make_chain(2);
    CHECK(net.n_nodes() == 2);
    REQUIRE(net.edges().size() == 1);
    CHECK(net.edges()[0] == Edge{0, 1});
  }
  SUBCASE("n=100") {
    const Network net = make_chain(100);
    CHECK(net.n_nodes() == 100);
    CHECK(net.edges().size() == 99);
    CHECK(net.tag() == "chain100");
  }
  SUBCASE("n=3 is a path") {
    const Network net = make_chain(3);
    CHECK(net.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  }
  SUBCASE("too short") {
    CHECK_THROWS_AS(make_chain(1), ConfigError);
    CHECK_THROWS_AS(make_chain(0), ConfigError);
  }
  SUBCASE("ends and center") {
    const Network net = make_chain(100);
    CHECK(net.corners() == std::vector<std::size_t>{0, 99});
    CHECK(net.center() == 50);
    CHECK(make_chain(7).center() == 3);
  }
}

TEST_CASE("dimer") {
  const Network net = make_dimer();
  CHECK(net.topology() == Topology::dimer);
  CHECK(net.n_nodes() == 2);
  CHECK(net.tag() == "dimer");
}

TEST_CASE("gasket node counts") {
  SUBCASE("g=1 is a triangle") {
    const Network net = make_sierpinski(1);
    CHECK(net.n_nodes() == 3);
    CHECK(net.edges().size() == 3);
  }
  SUBCASE("g=5 has 123 nodes") { CHECK(make_sierpinski(5).n_nodes() == 123); }
  SUBCASE("g=3: formula against explicit construction") {
    // 3 (3^2 + 1) / 2 = 15.
    CHECK(sierpinski_node_count(3) == 15);
    CHECK(make_sierpinski(3).n_nodes() == 15);
  }
  SUBCASE("formula and construction agree for every generation") {
    for (int g = 1; g <= 7; ++g) {
      const Network net = make_sierpinski(g);
      CHECK(net.n_nodes() == sierpinski_node_count(g));
      CHECK(net.edges().size() == static_cast<std::size_t>(std::lround(std::pow(3.0, g))));
    }
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(make_sierpinski(0), ConfigError);
    CHECK_THROWS_AS(make_sierpinski(9), ConfigError);
    CHECK_NOTHROW(make_sierpinski(3, 3));
    CHECK_THROWS_AS(make_sierpinski(4, 3), ConfigError);
  }
}

TEST_CASE("gasket structure") {
  const Network net = make_sierpinski(5);
  const auto deg = net.degrees();
  REQUIRE(net.corners().size() == 3);
  std::set<std::size_t> corners(net.corners().begin(), net.corners().end());
  std::map<std::size_t, int> histogram;
  for (std::size_t v = 0; v < net.n_nodes(); ++v) {
    ++histogram[deg[v]];
    if (corners.contains(v)) {
      CHECK(deg[v] == 2);
    } else {
      CHECK(deg[v] == 4);
    }
  }
  CHECK(histogram.size() == 2);
  CHECK(net.is_connected());
  CHECK(net.tag() == "sierpinski5");
  // Lexicographic lattice order puts the (0,0) apex first.
  CHECK(net.corners().front() == 0);
  // The center is not a corner.
  CHECK_FALSE(corners.contains(net.center()));
}

TEST_CASE("gasket generation 2 explicit edges") {
  // Lattice points ordered (0,0) (0,1) (0,2) (1,0) (1,1) (2,0).
  const Network net = make_sierpinski(2);
  REQUIRE(net.n_nodes() == 6);
  const std::vector<Edge> expected{{0, 1}, {0, 3}, {1, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 4}, {3, 5}, {4, 5}};
  CHECK(net.edges() == expected);
  CHECK(net.corners() == std::vector<std::size_t>{0, 5, 2});
}

TEST_CASE("custom networks are validated") {
  CHECK_NOTHROW(Network::custom(3, {{0, 1}, {2, 1}}));
  CHECK_THROWS_AS(Network::custom(3, {{0, 0}, {1, 2}}), ConfigError);
  CHECK_THROWS_AS(Network::custom(3, {{0, 1}, {1, 0}, {1, 2}}), ConfigError);
  CHECK_THROWS_AS(Network::custom(3, {{0, 1}, {1, 3}}), ConfigError);
  CHECK_THROWS_AS(Network::custom(4, {{0, 1}, {2, 3}}), ConfigError);
  CHECK(Network::custom(3, {{2, 1}, {1, 0}}).edges() == make_chain(3).edges());
}

TEST_CASE("distances and center") {
  const Network star = Network::custom(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(star.center() == 0);
  CHECK(star.distances_from(1) == std::vector<std::size_t>{1, 0, 2, 2, 2});
  CHECK_THROWS_AS(star.distances_from(5), ConfigError);

  // Gasket: the center is the midpoint of an outer side, half a side from two corners.
  const Network gasket = make_sierpinski(5);
  const std::size_t c = gasket.center();
  CHECK(c == 89);
  const auto d = gasket.distances_from(c);
  std::vector<std::size_t> to_corners;
  for (std::size_t k : gasket.corners()) to_corners.push_back(d[k]);
  std::sort(to_corners.begin(), to_corners.end());
  CHECK(to_corners == std::vector<std::size_t>{8, 8, 16});
}

TEST_CASE("edge list round trip") {
  for (const Network& net : {make_chain(5), make_sierpinski(3), make_dimer()}) {
    std::stringstream buf;
    write_edge_list(buf, net);
    const std::string text = buf.str();
    CHECK(text.rfind("# nodes=" + std::to_string(net.n_nodes()) + " topology=", 0) == 0);
    const Network back = read_edge_list(buf);
    CHECK(back.n_nodes() == net.n_nodes());
    CHECK(back.edges() == net.edges());
  }
  std::stringstream bad("0 1\n");
  CHECK_THROWS_AS(read_edge_list(bad), ConfigError);
}

TEST_CASE("Hamiltonian conventions") {
  SUBCASE("chain(3) Laplacian") {
    const HermitianMatrix h = hamiltonian(make_chain(3));
    ComplexMatrix expected(3, 3);
    expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
    CHECK((h.matrix() - expected).norm() == 0.0);
    CHECK(h.matrix().rowwise().sum().norm() == 0.0);
  }
  SUBCASE("dimer adjacency") {
    const HermitianMatrix h = hamiltonian(make_dimer(), HamiltonianConvention::adjacency);
    ComplexMatrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK((h.matrix() - expected).norm() == 0.0);
  }
  SUBCASE("parse") {
    CHECK(parse_convention("adjacency") == HamiltonianConvention::adjacency);
    CHECK_THROWS_AS(parse_convention("incidence"), ConfigError);
  }
}

TEST_CASE("golden-rule rates") {
  SUBCASE("chain(3) Laplacian") {
    const RateMatrix r = golden_rule_rates(hamiltonian(make_chain(3)));
    CHECK(r(0, 1) == 1.0);
    CHECK(r(1, 0) == 1.0);
    CHECK(r(0, 2) == 0.0);
    CHECK(r(1, 1) == 0.0);
  }
  SUBCASE("dimer adjacency") {
    const RateMatrix r = golden_rule_rates(hamiltonian(make_dimer(), HamiltonianConvention::adjacency));
    RealMatrix expected(2, 2);
    expected << 0, 1, 1, 0;
    CHECK((r.matrix() - expected).norm() == 0.0);
  }
  SUBCASE("complex Hermitian input gives symmetric rates") {
    ComplexMatrix m(3, 3);
    m << Complex(2, 0), Complex(0.3, -0.4), Complex(0, 1), Complex(0.3, 0.4), Complex(-1, 0), Complex(1.5, 0.5),
        Complex(0, -1), Complex(1.5, -0.5), Complex(0.5, 0);
    const RateMatrix r = golden_rule_rates(HermitianMatrix(m));
    CHECK(r(0, 1) == doctest::Approx(0.25));
    CHECK(r(1, 2) == doctest::Approx(2.5));
    CHECK((r.matrix() - r.matrix().transpose()).norm() == 0.0);
  }
  SUBCASE("Laplacian and adjacency give the same rates") {
    const Network net = make_sierpinski(3);
    const RateMatrix a = golden_rule_rates(hamiltonian(net));
    const RateMatrix b = golden_rule_rates(hamiltonian(net, HamiltonianConvention::adjacency));
    CHECK((a.matrix() - b.matrix()).norm() == 0.0);
  }
}

TEST_CASE("matrix wrappers validate") {
  ComplexMatrix nonherm(2, 2);
  nonherm << 0, 1, 0, 0;
  CHECK_THROWS_AS(HermitianMatrix{nonherm}, InvariantViolation);
  RealMatrix negative(2, 2);
  negative << 0, -1, -1, 0;
  CHECK_THROWS_AS(RateMatrix{negative}, InvariantViolation);
  RealMatrix asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(RateMatrix{asym}, InvariantViolation);
  RealMatrix diag(2, 2);
  diag << 1, 1, 1, 0;
  CHECK_THROWS_AS(RateMatrix{diag}, InvariantViolation);
}

}  // TEST_SUITE
