"""Quantum stochastic walks on networks.

Thin Python layer over the C++ core: network builders, the master-equation
right-hand side, propagation, von Neumann entropy and information-dimension
fits.
"""

from ._qsw import (
    ConfigError,
    DimensionError,
    Error,
    FitError,
    InvariantViolation,
    Network,
    NumericalError,
    StepSizeUnderflow,
    __version__,
    auto_window,
    classical_generator,
    ctqw_term,
    ctrw_dissipator,
    dephasing_dissipator,
    dimer_short_time,
    fit_information_dimension,
    golden_rule_rates,
    hamiltonian,
    make_chain,
    make_dimer,
    make_sierpinski,
    propagate,
    propagate_classical,
    qsw_rhs,
    read_edge_list,
    run_scan,
    shannon_entropy,
    sierpinski_node_count,
    time_grid,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
