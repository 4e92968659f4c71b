"""Self-contained invariant suite behind the ``check`` command.

Every check exercises a structural property the rest of the package
relies on: Hermiticity and parity-block structure of the Hamiltonians,
protected ground-state degeneracies, quartic characteristic-polynomial
consistency, unitarity of the evolution, agreement of closed forms with
spectral evolution, agreement of independent concurrence routes, the
known GME reference values, and grid determinism across worker counts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import (
    concurrence_pure_2q,
    concurrence_wootters,
    concurrence_x,
    full_state_reference,
    ghz_reference,
    gme_multipartite,
    partial_trace,
    spin_flip_overlap,
    w_even_reference,
)
from .evolution import (
    evolve_initial_amplitudes,
    plan_evolution,
    evolve,
    three_site_sweet_spot_closed_form,
    two_site_closed_form,
)
from .model import (
    ChainSpec2,
    ChainSpec3,
    Sector,
    THREE_SITE_FULL,
    build_three_site,
    build_two_site,
    sector_basis,
)
from .spectral import diagonalize, ground_state_splitting, quartic_discrepancies
from .states import PureState, ghz_state, w_even_state
from .sweeps import Axis, SweepSpec, sweep_time_epsilon_cube, time_grid, time_series

__all__ = ["CheckResult", "DEFAULT_TOLERANCES", "run_checks"]

_SEED = 11235


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


DEFAULT_TOLERANCES: dict[str, float] = {
    "hermiticity": 1e-12,
    "block": 1e-14,
    "split": 1e-12,
    "quartic": 1e-8,
    "norm": 1e-12,
    "closed_form": 1e-10,
    "pure": 1e-12,
    "xform": 1e-10,
    "gme": 1e-8,
}


def _random_spec2(rng: np.random.Generator) -> ChainSpec2:
    e1, e2 = rng.uniform(-2.0, 2.0, size=2)
    tau, delta = rng.uniform(0.2, 2.0, size=2)
    return ChainSpec2(e1, e2, tau, delta)


def _random_spec3(rng: np.random.Generator) -> ChainSpec3:
    e = rng.uniform(-2.0, 2.0, size=3)
    t = rng.uniform(0.2, 2.0, size=4)
    return ChainSpec3(e[0], e[1], e[2], t[0], t[1], t[2], t[3])


def _random_state(rng: np.random.Generator, basis) -> PureState:
    z = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return PureState(z / np.linalg.norm(z), basis)


def _check_hermiticity(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    for _ in range(20):
        for spec, build in (
            (_random_spec2(rng), build_two_site),
            (_random_spec3(rng), build_three_site),
        ):
            sectors = (Sector.EVEN, Sector.ODD) + (
                (Sector.FULL,) if spec.n_sites == 3 else ()
            )
            for sector in sectors:
                h = np.asarray(build(spec, sector).matrix)
                worst = max(worst, float(np.max(np.abs(h - h.T))))
    return worst <= tol["hermiticity"], f"max |H - H^T| = {worst:.3g}"


def _check_parity_blocks(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    for _ in range(20):
        spec = _random_spec3(rng)
        h = np.asarray(build_three_site(spec, Sector.FULL).matrix)
        parity = np.array([label.parity for label in THREE_SITE_FULL])
        cross = parity[:, None] != parity[None, :]
        worst = max(worst, float(np.max(np.abs(h[cross]))))
    return worst <= tol["block"], f"max cross-parity element = {worst:.3g}"


def _check_sweet_spot_degeneracy(tol: dict[str, float]) -> tuple[bool, str]:
    cases = {
        "two-site": ChainSpec2(0.0, 0.0, 1.0, 1.0),
        "genuine": ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0),
        "effective": ChainSpec3(0.0, 1.0, 0.0, 1.0, 1.0, 1.0, 1.0),
        "delocalised": ChainSpec3(0.5, 0.0, 0.5, 1.0, 1.0, 1.0, 1.0),
    }
    worst_name, worst = "", -1.0
    for name, spec in cases.items():
        split = ground_state_splitting(spec)
        if split > worst:
            worst_name, worst = name, split
    ok = worst <= tol["split"]
    # at the genuine sweet spot the sector levels are {-2D, 0, 0, +2D}
    levels = diagonalize(
        build_three_site(cases["genuine"], Sector.EVEN)
    ).values
    level_dev = float(np.max(np.abs(levels - np.array([-2.0, 0.0, 0.0, 2.0]))))
    ok = ok and level_dev <= 1e-12
    return ok, (
        f"largest splitting {worst:.3g} ({worst_name}); "
        f"level deviation {level_dev:.3g}"
    )


def _check_two_site_splitting_lifted(tol: dict[str, float]) -> tuple[bool, str]:
    split = ground_state_splitting(ChainSpec2(0.0, 0.0, 0.5, 1.0))
    ok = abs(split - 0.5) <= tol["split"]
    rng = np.random.default_rng(_SEED + 2)
    for _ in range(10):
        tau, delta = rng.uniform(0.2, 2.0, size=2)
        if abs(tau - delta) < 0.05:
            continue
        s = ground_state_splitting(ChainSpec2(0.0, 0.0, tau, delta))
        ok = ok and abs(s - abs(tau - delta)) <= tol["split"]
    return ok, f"splitting at tau=0.5, delta=1: {split:.12g}"


def _check_quartic(tol: dict[str, float]) -> tuple[bool, str]:
    flagged = []
    for eps in (0.0, 0.5, 1.0):
        for tau in (0.5, 1.0):
            for delta in (0.5, 1.0):
                spec = ChainSpec3(eps, eps, eps, tau, tau, delta, delta)
                flagged.extend(quartic_discrepancies(spec, tol["quartic"]))
    return not flagged, f"{len(flagged)} flagged root(s) across 12 configurations"


def _check_unitarity(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED + 3)
    times = time_grid(5.0, 0.37)
    worst = 0.0
    for _ in range(10):
        spec = _random_spec3(rng)
        ham = build_three_site(spec, Sector.EVEN)
        psi = _random_state(rng, sector_basis(3, Sector.EVEN))
        plan = plan_evolution(diagonalize(ham), psi)
        for t in times:
            norm = float(np.linalg.norm(evolve(plan, float(t)).amplitudes))
            worst = max(worst, abs(norm - 1.0))
    return worst <= tol["norm"], f"max norm drift = {worst:.3g}"


def _check_closed_forms(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED + 4)
    times = time_grid(8.0, 0.19)
    worst = 0.0
    for _ in range(6):
        coupling = float(rng.uniform(0.3, 1.8))
        eps = rng.uniform(-1.5, 1.5, size=2)
        spec2 = ChainSpec2(eps[0], eps[1], coupling, coupling)
        for initial in ("00", "11", "bell+"):
            exact = np.stack(
                [two_site_closed_form(spec2, initial, float(t)).amplitudes for t in times],
                axis=1,
            )
            spectral = evolve_initial_amplitudes(spec2, initial, times)
            # closed form lives on the even sector: compare on that block
            worst = max(worst, float(np.max(np.abs(exact - spectral[[0, 3]]))))
        spec3 = ChainSpec3(0.0, 0.0, 0.0, coupling, coupling, coupling, coupling)
        for initial in ("000", "111", "ghz"):
            exact3 = np.stack(
                [
                    three_site_sweet_spot_closed_form(coupling, initial, float(t)).amplitudes
                    for t in times
                ],
                axis=1,
            )
            spectral3 = evolve_initial_amplitudes(spec3, initial, times)
            worst = max(worst, float(np.max(np.abs(exact3 - spectral3))))
    return worst <= tol["closed_form"], f"max amplitude deviation = {worst:.3g}"


def _check_pure_concurrence(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED + 5)
    z = rng.normal(size=(2000, 4)) + 1j * rng.normal(size=(2000, 4))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    worst = 0.0
    for psi in z:
        worst = max(worst, abs(concurrence_pure_2q(psi) - spin_flip_overlap(psi)))
    return worst <= tol["pure"], f"max |direct - spin flip| = {worst:.3g}"


def _check_x_vs_wootters(tol: dict[str, float]) -> tuple[bool, str]:
    rng = np.random.default_rng(_SEED + 6)
    worst = 0.0
    for _ in range(200):
        sector = Sector.EVEN if rng.uniform() < 0.5 else Sector.ODD
        psi = _random_state(rng, sector_basis(3, sector))
        full = np.zeros(8, dtype=complex)
        for amp, label in zip(psi.amplitudes, psi.basis):
            full[THREE_SITE_FULL.index(label)] = amp
        state = PureState(full, THREE_SITE_FULL)
        for pair in ((1, 2), (2, 3), (1, 3)):
            rho = partial_trace(state, pair)
            worst = max(
                worst, abs(concurrence_x(rho) - concurrence_wootters(rho))
            )
    return worst <= tol["xform"], f"max |X-form - Wootters| = {worst:.3g}"


def _check_gme_references(tol: dict[str, float]) -> tuple[bool, str]:
    ghz = ghz_state()
    w = w_even_state()
    devs = {
        "GHZ/GHZ-ref": abs(gme_multipartite(ghz, ghz_reference()) - 0.5),
        "GHZ/full-ref": abs(gme_multipartite(ghz, full_state_reference()) - 0.5),
        "W/W-ref": abs(gme_multipartite(w, w_even_reference()) - 5.0 / 9.0),
    }
    worst = max(devs.values())
    return worst <= tol["gme"], ", ".join(
        f"{k} off by {v:.3g}" for k, v in devs.items()
    )


def _check_measure_ranges(tol: dict[str, float]) -> tuple[bool, str]:
    times = time_grid(5.0, 0.1)
    spec = ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.5)
    series = time_series(
        spec, "ghz", ("C12", "C13", "EG12", "Rp", "Ed", "EgGHZ", "EgW"), times
    )
    t0_rp = float(series["Rp"][0])
    ok = abs(t0_rp - 1.0) <= 1e-12
    # _clamp inside time_series already enforces the ranges; re-verify here
    for name, values in series.items():
        ok = ok and float(np.min(values)) >= 0.0
    return ok, f"Rp(0) = {t0_rp:.12g}; all series within range"


def _check_determinism(tol: dict[str, float]) -> tuple[bool, str]:
    spec = SweepSpec(
        ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0),
        Axis("eps", -0.5, 0.5, 0.25),
        "000",
        ("C12", "Rp"),
        t_max=2.0,
        dt=0.05,
    )
    one = sweep_time_epsilon_cube(spec, workers=1)
    two = sweep_time_epsilon_cube(spec, workers=2)
    identical = bool(np.array_equal(one, two))
    return identical, "worker counts 1 and 2 agree bit-for-bit"


_CHECKS = [
    ("hamiltonian-hermitian", _check_hermiticity),
    ("parity-block-structure", _check_parity_blocks),
    ("sweet-spot-degeneracy", _check_sweet_spot_degeneracy),
    ("two-site-splitting-lifted", _check_two_site_splitting_lifted),
    ("quartic-consistency", _check_quartic),
    ("evolution-unitarity", _check_unitarity),
    ("closed-form-agreement", _check_closed_forms),
    ("pure-concurrence-routes", _check_pure_concurrence),
    ("x-form-vs-wootters", _check_x_vs_wootters),
    ("gme-reference-values", _check_gme_references),
    ("measure-ranges", _check_measure_ranges),
    ("sweep-determinism", _check_determinism),
]


def run_checks(tolerances: dict[str, float] | None = None) -> list[CheckResult]:
    """Run every invariant check; unknown tolerance keys are rejected."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {sorted(unknown)}")
        tol.update(tolerances)
    results = []
    for name, func in _CHECKS:
        try:
            passed, detail = func(tol)
        except Exception as exc:  # a crashed check is a failed check
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(CheckResult(name, passed, detail))
    return results
