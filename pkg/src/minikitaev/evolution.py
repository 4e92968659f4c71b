"""Exact time evolution via spectral decomposition, plus closed-form
evolutions used as analytic oracles.

The spectral route is the production path:

    |psi(t)> = sum_j exp(-i lambda_j t) <lambda_j|psi(0)> |lambda_j>

The closed-form routes reproduce the same states for special parameter
points (two-site chains with delta = tau, and the genuine three-site
sweet spot) and exist to cross-check the spectral route, never to
replace it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericInvariantError
from .model import (
    ChainSpec2,
    ChainSpec3,
    Sector,
    THREE_SITE_FULL,
    TWO_SITE_FULL,
    build_three_site,
    build_two_site,
    sector_basis,
)
from .spectral import EigenSystem, diagonalize, two_site_analytic_spectrum
from .states import PureState, initial_state

__all__ = [
    "EvolutionPlan",
    "plan_evolution",
    "evolve",
    "evolve_amplitudes",
    "two_site_closed_form",
    "three_site_sweet_spot_closed_form",
    "evolve_initial_amplitudes",
    "evolved_state",
]

#: closed forms with delta = tau require the pair potential to be nonzero
_SWEET_SPOT_TOL = 1e-12


@dataclass(frozen=True)
class EvolutionPlan:
    """Initial state projected once onto an eigenbasis.

    ``projections[j] = <lambda_j|psi(0)>``; evolving to any time is then
    a phase rotation plus a change of basis.  Immutable, so one plan can
    serve concurrent evaluations at distinct times.
    """

    eigensystem: EigenSystem
    initial: PureState
    projections: np.ndarray

    def __post_init__(self) -> None:
        projections = np.array(self.projections, dtype=complex)
        projections.setflags(write=False)
        object.__setattr__(self, "projections", projections)
        total = float(np.sum(np.abs(projections) ** 2))
        if abs(total - 1.0) > 1e-12:
            raise NumericInvariantError(
                f"projection weights sum to {total}, expected 1"
            )


def plan_evolution(system: EigenSystem, initial: PureState) -> EvolutionPlan:
    """Project an initial state onto the eigenbasis it will evolve in."""
    if system.basis != initial.basis:
        raise ValueError("eigensystem and initial state use different bases")
    projections = system.vectors.conj().T @ initial.amplitudes
    return EvolutionPlan(system, initial, projections)


def evolve(plan: EvolutionPlan, t: float) -> PureState:
    """The evolved state at time t (units of inverse hopping)."""
    phases = np.exp(-1j * plan.eigensystem.values * float(t))
    amplitudes = plan.eigensystem.vectors @ (phases * plan.projections)
    return PureState(amplitudes, plan.initial.basis)


def evolve_amplitudes(plan: EvolutionPlan, times: np.ndarray) -> np.ndarray:
    """Amplitudes for many times at once, shape (dim, len(times))."""
    times = np.asarray(times, dtype=float)
    phases = np.exp(-1j * np.outer(plan.eigensystem.values, times))
    return plan.eigensystem.vectors @ (phases * plan.projections[:, None])


def _two_site_coefficients(spec: ChainSpec2) -> tuple[float, float, float, float]:
    if abs(spec.delta - spec.tau) > _SWEET_SPOT_TOL:
        raise ValueError("closed form requires delta = tau")
    if spec.delta == 0.0:
        raise ValueError("closed form is singular at delta = 0; use evolve")
    spectrum = two_site_analytic_spectrum(spec)
    lam3, lam4 = spectrum.even_minus, spectrum.even_plus
    delta = spec.delta
    n3sq = delta**2 / (delta**2 + lam4**2)
    n4sq = delta**2 / (delta**2 + lam3**2)
    return lam3, lam4, n3sq, n4sq


def two_site_closed_form(spec: ChainSpec2, initial: str, t: float) -> PureState:
    """Closed-form two-site evolution at delta = tau.

    Returns alpha(t)|00> + delta(t)|11> on the even basis.  With
    lam3 <= lam4 the even eigenvalues and N3^2 = D^2/(D^2 + lam4^2),
    N4^2 = D^2/(D^2 + lam3^2) (D the pair potential):

        |00>    alpha = N3^2 (lam4/D)^2 e^{-i lam3 t}
                        + N4^2 (lam3/D)^2 e^{-i lam4 t}
                delta = -[N3^2 (lam4/D) e^{-i lam3 t}
                          + N4^2 (lam3/D) e^{-i lam4 t}]
        |11>    alpha = -[N3^2 (lam4/D) e^{-i lam3 t}
                          + N4^2 (lam3/D) e^{-i lam4 t}]
                delta = N3^2 e^{-i lam3 t} + N4^2 e^{-i lam4 t}
        bell+   the (|00> + |11>)/sqrt(2) superposition of the columns
                above, i.e. (alpha1 + alpha2, delta1 + delta2)/sqrt(2)

    At eps_i = 0 these reduce to (cos Dt, -i sin Dt) from |00>.
    """
    lam3, lam4, n3sq, n4sq = _two_site_coefficients(spec)
    d = spec.delta
    p3 = np.exp(-1j * lam3 * float(t))
    p4 = np.exp(-1j * lam4 * float(t))
    cross = -(n3sq * (lam4 / d) * p3 + n4sq * (lam3 / d) * p4)
    if initial == "00":
        alpha = n3sq * (lam4 / d) ** 2 * p3 + n4sq * (lam3 / d) ** 2 * p4
        delta_amp = cross
    elif initial == "11":
        alpha = cross
        delta_amp = n3sq * p3 + n4sq * p4
    elif initial == "bell+":
        alpha = (
            n3sq * (lam4 / d) * (lam4 / d - 1.0) * p3
            + n4sq * (lam3 / d) * (lam3 / d - 1.0) * p4
        ) / np.sqrt(2.0)
        delta_amp = (
            n3sq * (1.0 - lam4 / d) * p3 + n4sq * (1.0 - lam3 / d) * p4
        ) / np.sqrt(2.0)
    else:
        raise ValueError(f"unsupported initial state {initial!r}")
    return PureState(np.array([alpha, delta_amp]), sector_basis(2, Sector.EVEN))


def three_site_sweet_spot_closed_form(delta: float, initial: str, t: float) -> PureState:
    """Closed-form genuine-sweet-spot evolution (eps_i = 0, tau_i = delta_i).

    Returned on the full eight-state basis.  From |000>:

        cos^2(Dt)|000> - sin^2(Dt)|101> - (i/2) sin(2Dt) [|011> + |110>]

    From |111> the same pattern on the odd labels:

        cos^2(Dt)|111> - sin^2(Dt)|010> - (i/2) sin(2Dt) [|001> + |100>]

    ``ghz`` evolves both branches and combines them with weight
    1/sqrt(2) each.
    """
    delta = float(delta)
    t = float(t)
    c2 = np.cos(delta * t) ** 2
    s2 = np.sin(delta * t) ** 2
    half_s = 0.5 * np.sin(2.0 * delta * t)
    even = np.zeros(8, dtype=complex)
    even[0] = c2
    even[5] = -s2
    even[3] = even[6] = -1j * half_s
    odd = np.zeros(8, dtype=complex)
    odd[7] = c2
    odd[2] = -s2
    odd[1] = odd[4] = -1j * half_s
    if initial == "000":
        amplitudes = even
    elif initial == "111":
        amplitudes = odd
    elif initial == "ghz":
        amplitudes = (even + odd) / np.sqrt(2.0)
    else:
        raise ValueError(f"unsupported initial state {initial!r}")
    return PureState(amplitudes, THREE_SITE_FULL)


def evolve_initial_amplitudes(
    spec: ChainSpec2 | ChainSpec3, initial: str, times: np.ndarray
) -> np.ndarray:
    """Spectrally evolve a named initial state, embedded in the full basis.

    Returns amplitudes of shape (full dim, len(times)).  Parity-pure
    initial states evolve inside their own sector block; ``ghz`` evolves
    its even and odd halves in their blocks and superposes them, which
    keeps cross-parity amplitudes exactly zero.
    """
    times = np.asarray(times, dtype=float)
    if isinstance(spec, ChainSpec2):
        build, full_basis, n_sites = build_two_site, TWO_SITE_FULL, 2
    elif isinstance(spec, ChainSpec3):
        build, full_basis, n_sites = build_three_site, THREE_SITE_FULL, 3
    else:
        raise ValueError(f"unsupported spec type: {type(spec)!r}")

    def sector_run(state: PureState) -> np.ndarray:
        sector = state.basis[0].parity
        plan = plan_evolution(diagonalize(build(spec, sector)), state)
        block = evolve_amplitudes(plan, times)
        out = np.zeros((len(full_basis), len(times)), dtype=complex)
        for row, label in enumerate(state.basis):
            out[full_basis.index(label)] = block[row]
        return out

    if initial == "ghz":
        even = initial_state("000", 3)
        odd = initial_state("111", 3)
        return (sector_run(even) + sector_run(odd)) / np.sqrt(2.0)
    state = initial_state(initial, n_sites)
    return sector_run(state)


def evolved_state(
    spec: ChainSpec2 | ChainSpec3, initial: str, t: float
) -> PureState:
    """Single-time convenience wrapper around ``evolve_initial_amplitudes``."""
    full_basis = TWO_SITE_FULL if isinstance(spec, ChainSpec2) else THREE_SITE_FULL
    amplitudes = evolve_initial_amplitudes(spec, initial, np.array([float(t)]))
    return PureState(amplitudes[:, 0], full_basis)
