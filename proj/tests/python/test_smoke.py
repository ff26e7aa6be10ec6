# Copyright 2026 The qsw Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import qsw


def test_networks():
    assert qsw.make_chain(100).n_nodes == 100
    assert len(qsw.make_chain(3).edges) == 2
    gasket = qsw.make_sierpinski(5)
    assert gasket.n_nodes == 123
    assert qsw.sierpinski_node_count(3) == 15
    assert gasket.tag == "sierpinski5"
    assert len(gasket.corners) == 3
    back = qsw.read_edge_list(gasket.edge_list())
    assert back.edges == gasket.edges
    with pytest.raises(qsw.ConfigError):
        qsw.make_chain(1)


def test_hamiltonian_and_rates():
    h = qsw.hamiltonian(qsw.make_chain(3))
    np.testing.assert_array_equal(h.real, [[1, -1, 0], [-1, 2, -1], [0, -1, 1]])
    rates = qsw.golden_rule_rates(h)
    assert rates[0, 1] == 1.0 and rates[0, 2] == 0.0
    t = qsw.classical_generator(rates)
    np.testing.assert_allclose(t.sum(axis=0), 0.0, atol=1e-15)


def test_rhs_dimer():
    net = qsw.make_dimer()
    h = qsw.hamiltonian(net)
    rates = qsw.golden_rule_rates(h)
    rho = np.diag([1.0, 0.0]).astype(complex)
    out = qsw.qsw_rhs(rho, 0.5, h, rates)
    assert out[0, 0].real == pytest.approx(-0.5)
    assert out[1, 1].real == pytest.approx(0.5)
    assert out[0, 1].imag == pytest.approx(-0.5)
    assert abs(np.trace(out)) < 1e-15


def test_entropies():
    assert qsw.von_neumann_entropy(np.eye(4, dtype=complex) / 4) == pytest.approx(math.log(4))
    assert qsw.shannon_entropy([0.9, 0.1]) == pytest.approx(0.32508297339144826)
    with pytest.raises(qsw.InvariantViolation):
        qsw.shannon_entropy([0.5, 0.4])


def test_propagate_and_fit():
    res = qsw.propagate(qsw.make_chain(100), 1.0)
    assert res["initial_node"] == 50
    assert res["times"][0] == 0.0 and res["entropy"][0] == 0.0 and res["return_prob"][0] == 1.0
    times, entropy = res["times"][1:], res["entropy"][1:]
    fit = qsw.fit_information_dimension(times, entropy, 10.0, 100.0, dim=100)
    assert fit["d_info"] == pytest.approx(0.5, abs=0.05)
    lo, hi = qsw.auto_window(times, entropy, 100, transient_time=10.0)
    assert hi / lo >= 3.0
    assert res["entropy"][-1] == pytest.approx(math.log(100), rel=0.01)


def test_unitary_limit_and_states():
    res = qsw.propagate(qsw.make_chain(10), 0.0, t_max=10.0, keep_states=True)
    assert max(abs(s) for s in res["entropy"]) < 1e-6
    rho = res["states"][-1]
    assert rho.shape == (10, 10)
    assert np.trace(rho @ rho).real == pytest.approx(1.0, abs=1e-8)


def test_dimer_short_time():
    res = qsw.propagate(qsw.make_dimer(), 0.5, initial_node=0, t_min=1e-3, t_max=5e-2)
    for t, s in zip(res["times"][1:], res["entropy"][1:]):
        law = qsw.dimer_short_time(0.5, t)
        assert abs(s - law) / law < 0.1


def test_run_scan(tmp_path):
    toml = """
[network]
topology = "chain"
size = 20
[walk]
alphas = [0.5, 1.0]
[fit]
mode = "auto"
transient_time = 1.0
[run]
threads = 1
"""
    rows = qsw.run_scan(toml, str(tmp_path))
    assert [r["alpha"] for r in rows] == [0.5, 1.0]
    assert (tmp_path / "summary.csv").read_text().startswith(
        "alpha,d_info,intercept,r_squared,window_lo,window_hi,n_points,status\n")
    assert (tmp_path / "trace_alpha_0.5.csv").exists()
    with pytest.raises(qsw.ConfigError):
        qsw.run_scan("[walk]\nalphas = [1.5]\n")


def test_fit_accepts_propagate_output_with_t0():
    net = qsw.make_chain(20)
    res = qsw.propagate(net, alpha=1.0, t_max=10.0, points_per_decade=10)
    assert res["times"][0] == 0.0
    fit = qsw.fit_information_dimension(res["times"], res["entropy"], 0.5, 5.0, net.n_nodes)
    assert fit["d_info"] > 0.0
