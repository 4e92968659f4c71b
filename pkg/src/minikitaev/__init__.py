"""Exact-diagonalization dynamics of minimal (2- and 3-site) Kitaev chains.

Builds parity-sector Hamiltonians in the many-body occupation basis,
time-evolves chosen initial states, and computes entanglement measures:
pairwise concurrence (pure, X-form, and Wootters routes), two-qubit and
multipartite geometric entanglement, return probability, and overlap
dynamics.  Sweep helpers and a CLI reproduce the reference datasets.
"""

from .errors import NumericInvariantError
from .model import (
    BasisLabel,
    ChainSpec2,
    ChainSpec3,
    Sector,
    SectorHamiltonian,
    build_three_site,
    build_two_site,
    sector_basis,
)
from .spectral import (
    EigenSystem,
    diagonalize,
    ground_state_splitting,
    quartic_discrepancies,
    three_site_quartic_residual,
    two_site_analytic_spectrum,
)
from .states import (
    PureState,
    bell_plus,
    basis_state,
    ghz_state,
    initial_state,
    target_state,
    w_even_state,
)
from .evolution import (
    EvolutionPlan,
    evolve,
    evolve_amplitudes,
    evolve_initial_amplitudes,
    evolved_state,
    plan_evolution,
    three_site_sweet_spot_closed_form,
    two_site_closed_form,
)
from .entanglement import (
    GmeReference,
    TwoQubitDensity,
    concurrence_pure_2q,
    concurrence_wootters,
    concurrence_x,
    entanglement_dynamics,
    full_state_reference,
    ghz_reference,
    gme_multipartite,
    gme_multipartite_batch,
    gme_two_qubit,
    partial_trace,
    return_probability,
    spin_flip_overlap,
    w_even_reference,
)
from .sweeps import (
    Axis,
    MeasureRecord,
    SweepSpec,
    gme_map,
    grid_values,
    max_c13_map,
    measures_for,
    pair_concurrence_map,
    sweep_time_epsilon,
    sweep_time_epsilon_table,
    time_grid,
    time_series,
)
from .checks import run_checks

__version__ = "0.1.0"

__all__ = [
    "NumericInvariantError",
    "BasisLabel",
    "ChainSpec2",
    "ChainSpec3",
    "Sector",
    "SectorHamiltonian",
    "build_two_site",
    "build_three_site",
    "sector_basis",
    "EigenSystem",
    "diagonalize",
    "ground_state_splitting",
    "quartic_discrepancies",
    "three_site_quartic_residual",
    "two_site_analytic_spectrum",
    "PureState",
    "basis_state",
    "bell_plus",
    "ghz_state",
    "w_even_state",
    "initial_state",
    "target_state",
    "EvolutionPlan",
    "plan_evolution",
    "evolve",
    "evolve_amplitudes",
    "evolve_initial_amplitudes",
    "evolved_state",
    "two_site_closed_form",
    "three_site_sweet_spot_closed_form",
    "GmeReference",
    "TwoQubitDensity",
    "concurrence_pure_2q",
    "concurrence_wootters",
    "concurrence_x",
    "spin_flip_overlap",
    "gme_two_qubit",
    "gme_multipartite",
    "gme_multipartite_batch",
    "partial_trace",
    "return_probability",
    "entanglement_dynamics",
    "ghz_reference",
    "w_even_reference",
    "full_state_reference",
    "Axis",
    "SweepSpec",
    "MeasureRecord",
    "grid_values",
    "time_grid",
    "time_series",
    "measures_for",
    "sweep_time_epsilon",
    "sweep_time_epsilon_table",
    "pair_concurrence_map",
    "gme_map",
    "max_c13_map",
    "run_checks",
    "__version__",
]
