"""Parameter sweeps over (t, eps) and (eps, delta) grids.

Two execution paths exist on purpose.  ``time_series`` runs the plain
per-time measure pipeline (partial trace, concurrence, overlaps) for a
single chain configuration; it is the reference path and the one the
time-trace commands use.  The grid builders (``sweep_time_epsilon``,
``pair_concurrence_map``, ``max_c13_map``, ``gme_map``) batch the
eigendecompositions and measure algebra over whole parameter grids and
are validated against the reference path in the test suite.

All grids are fixed up front and every cell is independent, so results
are deterministic and identical for any worker count: workers only
partition the outer axis into contiguous blocks whose results are
reassembled in order.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .entanglement import (
    GmeReference,
    concurrence_wootters,
    concurrence_x,
    ghz_reference,
    gme_multipartite_batch,
    partial_trace,
    w_even_reference,
)
from .errors import NumericInvariantError
from .evolution import evolve_initial_amplitudes
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
from .states import PureState, embed, initial_state, target_state

__all__ = [
    "Axis",
    "grid_values",
    "time_grid",
    "apply_parameter",
    "MEASURES",
    "measures_for",
    "SweepSpec",
    "MeasureRecord",
    "time_series",
    "sweep_time_epsilon",
    "sweep_time_epsilon_cube",
    "sweep_time_epsilon_table",
    "grid_full_amplitudes",
    "pair_concurrence_map",
    "gme_map",
    "max_c13_map",
    "MaxC13Map",
]


def grid_values(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid, computed as start + k*step to keep runs
    reproducible digit-for-digit."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    if stop < start:
        raise ValueError("stop must not precede start")
    count = int(round((stop - start) / step)) + 1
    values = start + step * np.arange(count)
    return values[values <= stop + 1e-9 * max(1.0, abs(stop))]


def time_grid(t_max: float, dt: float) -> np.ndarray:
    """Times 0, dt, ..., t_max (inclusive up to rounding)."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_max < 0.0:
        raise ValueError("t_max must be nonnegative")
    return grid_values(0.0, t_max, dt)


@dataclass(frozen=True)
class Axis:
    """A named swept parameter with an inclusive range and step."""

    param: str
    start: float
    stop: float
    step: float

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("axis range is empty")

    @property
    def values(self) -> np.ndarray:
        return grid_values(self.start, self.stop, self.step)


_PARAM_ALIASES = {
    2: {
        "eps": ("eps1", "eps2"),
        "eps1": ("eps1",),
        "eps2": ("eps2",),
        "tau": ("tau",),
        "delta": ("delta",),
    },
    3: {
        "eps": ("eps1", "eps2", "eps3"),
        "eps1": ("eps1",),
        "eps2": ("eps2",),
        "eps3": ("eps3",),
        "tau": ("tau1", "tau2"),
        "tau1": ("tau1",),
        "tau2": ("tau2",),
        "delta": ("delta1", "delta2"),
        "delta1": ("delta1",),
        "delta2": ("delta2",),
    },
}


def apply_parameter(
    spec: ChainSpec2 | ChainSpec3, param: str, value: float
) -> ChainSpec2 | ChainSpec3:
    """Copy of the spec with one named parameter (or parameter group) set.

    Group names ``eps``, ``tau``, ``delta`` set every matching field of
    the chain at once.
    """
    try:
        fields = _PARAM_ALIASES[spec.n_sites][param]
    except KeyError:
        raise ValueError(
            f"unknown parameter {param!r} for a {spec.n_sites}-site chain"
        ) from None
    return dataclasses.replace(spec, **{name: float(value) for name in fields})


@dataclass(frozen=True)
class MeasureDef:
    """Registry entry: where a measure applies and its allowed range."""

    name: str
    chains: frozenset[int]
    upper: float
    description: str


MEASURES: dict[str, MeasureDef] = {
    m.name: m
    for m in [
        MeasureDef("C", frozenset({2}), 1.0, "two-site pure-state concurrence"),
        MeasureDef("EG", frozenset({2}), 0.5, "two-qubit geometric measure from C"),
        MeasureDef("Rp", frozenset({2, 3}), 1.0, "return probability"),
        MeasureDef("Ed", frozenset({2, 3}), 1.0, "overlap with the entangled target"),
        MeasureDef("C12", frozenset({3}), 1.0, "concurrence of sites 1 and 2"),
        MeasureDef("C23", frozenset({3}), 1.0, "concurrence of sites 2 and 3"),
        MeasureDef("C13", frozenset({3}), 1.0, "concurrence of the outer sites"),
        MeasureDef("EG12", frozenset({3}), 0.5, "two-qubit geometric measure from C12"),
        MeasureDef("EG23", frozenset({3}), 0.5, "two-qubit geometric measure from C23"),
        MeasureDef("EG13", frozenset({3}), 0.5, "two-qubit geometric measure from C13"),
        MeasureDef("EgGHZ", frozenset({3}), 1.0, "multipartite GME, GHZ reference"),
        MeasureDef("EgW", frozenset({3}), 1.0, "multipartite GME, W reference"),
    ]
}

#: entanglement-dynamics target per chain size
_ED_TARGETS = {2: "bell2", 3: "phi2"}

#: values may overshoot their range by at most this much before clamping
_RANGE_TOL = 1e-9

_PAIRS = {"12": (1, 2), "23": (2, 3), "13": (1, 3)}


def measures_for(n_sites: int) -> tuple[str, ...]:
    """Measure names applicable to a chain size, in registry order."""
    return tuple(m.name for m in MEASURES.values() if n_sites in m.chains)


def _clamp(name: str, values: np.ndarray) -> np.ndarray:
    upper = MEASURES[name].upper
    lowest = float(np.min(values))
    highest = float(np.max(values))
    if lowest < -_RANGE_TOL or highest > upper + _RANGE_TOL:
        raise NumericInvariantError(
            f"measure {name} left its range [0, {upper}]: min {lowest}, max {highest}"
        )
    return np.clip(values, 0.0, upper)


def _gme_from_concurrence(c: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 - np.sqrt(np.clip(1.0 - c * c, 0.0, None)))


def _pair_series_generic(amps: np.ndarray, pair: tuple[int, int]) -> np.ndarray:
    """Per-time partial trace and concurrence; works for any parity content."""
    out = np.empty(amps.shape[1])
    for k in range(amps.shape[1]):
        psi = PureState(amps[:, k], THREE_SITE_FULL)
        rho = partial_trace(psi, pair)
        out[k] = concurrence_x(rho) if rho.is_x_form() else concurrence_wootters(rho)
    return out


def time_series(
    spec: ChainSpec2 | ChainSpec3,
    initial: str,
    measures: tuple[str, ...],
    times: np.ndarray,
) -> dict[str, np.ndarray]:
    """Measure time series for one chain configuration.

    Returns one array per requested measure, aligned with ``times``.
    The concurrence measures go through the production partial-trace
    pipeline at every sample.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise ValueError("empty time range")
    n = spec.n_sites
    for name in measures:
        if name not in MEASURES:
            raise ValueError(f"unknown measure {name!r}")
        if n not in MEASURES[name].chains:
            raise ValueError(f"measure {name} does not apply to a {n}-site chain")
    amps = evolve_initial_amplitudes(spec, initial, times)
    full_basis = TWO_SITE_FULL if n == 2 else THREE_SITE_FULL
    psi0 = embed(initial_state(initial, n), full_basis).amplitudes

    series: dict[str, np.ndarray] = {}
    pair_cache: dict[tuple[int, int], np.ndarray] = {}

    def pair_series(tag: str) -> np.ndarray:
        pair = _PAIRS[tag]
        if pair not in pair_cache:
            pair_cache[pair] = _pair_series_generic(amps, pair)
        return pair_cache[pair]

    for name in measures:
        if name == "C":
            values = 2.0 * np.abs(amps[0] * amps[3] - amps[1] * amps[2])
        elif name == "EG":
            c = 2.0 * np.abs(amps[0] * amps[3] - amps[1] * amps[2])
            values = _gme_from_concurrence(np.clip(c, 0.0, 1.0))
        elif name == "Rp":
            values = np.abs(psi0.conj() @ amps) ** 2
        elif name == "Ed":
            phi = target_state(_ED_TARGETS[n]).state.amplitudes
            values = np.abs(phi.conj() @ amps) ** 2
        elif name.startswith("C"):
            values = pair_series(name[1:])
        elif name.startswith("EG"):
            values = _gme_from_concurrence(np.clip(pair_series(name[2:]), 0.0, 1.0))
        elif name == "EgGHZ":
            values = gme_multipartite_batch(amps.T, ghz_reference())
        elif name == "EgW":
            values = gme_multipartite_batch(amps.T, w_even_reference())
        else:  # registry and dispatch got out of sync
            raise ValueError(f"unhandled measure {name!r}")
        series[name] = _clamp(name, values)
    return series


@dataclass(frozen=True)
class SweepSpec:
    """A time sweep repeated along one onsite-energy axis."""

    chain: ChainSpec2 | ChainSpec3
    axis: Axis
    initial: str
    measures: tuple[str, ...]
    t_max: float = 10.0
    dt: float = 0.01

    def __post_init__(self) -> None:
        if not self.measures:
            raise ValueError("at least one measure is required")
        n = self.chain.n_sites
        for name in self.measures:
            if name not in MEASURES:
                raise ValueError(f"unknown measure {name!r}")
            if n not in MEASURES[name].chains:
                raise ValueError(f"measure {name} does not apply to {n}-site chains")
        # axis and time-range validity checked by their own constructors
        apply_parameter(self.chain, self.axis.param, self.axis.start)
        if self.times.size == 0:
            raise ValueError("empty time range")
        initial_state(self.initial, n)

    @property
    def times(self) -> np.ndarray:
        return time_grid(self.t_max, self.dt)


@dataclass(frozen=True)
class MeasureRecord:
    """One sweep sample: coordinates, measure name, value."""

    measure: str
    value: float
    t: float | None = None
    eps: float | None = None
    delta: float | None = None


def _eps_block(args) -> np.ndarray:
    """Worker body: measure series for a block of axis values.

    Returns an array of shape (len(values), len(measures), len(times)).
    """
    chain, param, values, initial, measures, times = args
    out = np.empty((len(values), len(measures), len(times)))
    for i, value in enumerate(values):
        spec = apply_parameter(chain, param, value)
        series = time_series(spec, initial, measures, times)
        for j, name in enumerate(measures):
            out[i, j] = series[name]
    return out


def _split_blocks(count: int, workers: int) -> list[slice]:
    blocks = max(1, min(workers, count))
    bounds = np.linspace(0, count, blocks + 1).astype(int)
    return [slice(a, b) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _run_ordered(func, arg_list: list, workers: int) -> list:
    """Run block tasks, preserving submission order in the results."""
    if workers <= 1 or len(arg_list) <= 1:
        return [func(args) for args in arg_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, arg_list))


def sweep_time_epsilon_cube(spec: SweepSpec, workers: int = 1) -> np.ndarray:
    """All sweep values as an array (axis value, measure, time)."""
    if not spec.axis.param.startswith("eps"):
        raise ValueError("time sweeps vary an onsite-energy axis")
    values = spec.axis.values
    times = spec.times
    blocks = _split_blocks(len(values), workers)
    args = [
        (spec.chain, spec.axis.param, values[b], spec.initial, spec.measures, times)
        for b in blocks
    ]
    return np.concatenate(_run_ordered(_eps_block, args, workers), axis=0)


def sweep_time_epsilon(spec: SweepSpec, workers: int = 1) -> list[MeasureRecord]:
    """Row-major records: outer axis value ascending, inner time ascending,
    measures in the order requested."""
    cube = sweep_time_epsilon_cube(spec, workers)
    values = spec.axis.values
    times = spec.times
    records = []
    for i, eps in enumerate(values):
        for k, t in enumerate(times):
            for j, name in enumerate(spec.measures):
                records.append(
                    MeasureRecord(
                        measure=name,
                        value=float(cube[i, j, k]),
                        t=float(t),
                        eps=float(eps),
                    )
                )
    return records


def sweep_time_epsilon_table(
    spec: SweepSpec, workers: int = 1
) -> tuple[list[str], np.ndarray]:
    """Wide tabular form: header plus rows (axis value, t, one column per
    measure); same traversal order as the record form."""
    cube = sweep_time_epsilon_cube(spec, workers)
    values = spec.axis.values
    times = spec.times
    n_rows = len(values) * len(times)
    table = np.empty((n_rows, 2 + len(spec.measures)))
    table[:, 0] = np.repeat(values, len(times))
    table[:, 1] = np.tile(times, len(values))
    for j in range(len(spec.measures)):
        table[:, 2 + j] = cube[:, j, :].reshape(n_rows)
    header = [spec.axis.param, "t", *spec.measures]
    return header, table


# ---------------------------------------------------------------------------
# batched grid builders


def _grid_sector_amplitudes(
    chain: ChainSpec2 | ChainSpec3,
    param: str,
    values: np.ndarray,
    sector: Sector,
    start_label: str,
    times: np.ndarray,
) -> np.ndarray:
    """Evolve one sector basis state for every axis value at once.

    Returns sector-basis amplitudes of shape (len(values), dim, len(times)).
    """
    build = build_two_site if chain.n_sites == 2 else build_three_site
    basis = sector_basis(chain.n_sites, sector)
    matrices = np.stack(
        [
            np.asarray(build(apply_parameter(chain, param, v), sector).matrix)
            for v in values
        ]
    )
    lam, vec = np.linalg.eigh(matrices)
    start_index = [str(label) for label in basis].index(start_label)
    projections = vec.conj()[:, start_index, :]
    phases = np.exp(-1j * lam[:, :, None] * times[None, None, :])
    return np.einsum("nij,njt->nit", vec, projections[:, :, None] * phases)


def grid_full_amplitudes(
    chain: ChainSpec2 | ChainSpec3,
    param: str,
    values: np.ndarray,
    initial: str,
    times: np.ndarray,
) -> np.ndarray:
    """Full-basis amplitudes (len(values), full dim, len(times)) for a
    named initial state across an axis."""
    n = chain.n_sites
    full_basis = TWO_SITE_FULL if n == 2 else THREE_SITE_FULL
    out = np.zeros((len(values), len(full_basis), len(times)), dtype=complex)

    def add(state_label: str, weight: float) -> None:
        sector = (
            Sector.EVEN
            if sum(int(b) for b in state_label) % 2 == 0
            else Sector.ODD
        )
        block = _grid_sector_amplitudes(chain, param, values, sector, state_label, times)
        basis = sector_basis(n, sector)
        for row, label in enumerate(basis):
            out[:, full_basis.index(label), :] += weight * block[:, row, :]

    if initial == "ghz":
        add("000", 1.0 / np.sqrt(2.0))
        add("111", 1.0 / np.sqrt(2.0))
    elif initial == "bell+":
        # evolution is linear: superpose the evolved even basis states
        add("00", 1.0 / np.sqrt(2.0))
        add("11", 1.0 / np.sqrt(2.0))
    else:
        initial_state(initial, n)
        add(initial, 1.0)
    return out


def _pair_concurrence_grid(amps: np.ndarray, pair: tuple[int, int]) -> np.ndarray:
    """X-form pair concurrence on a grid of parity-pure states.

    ``amps`` has shape (n, 8, nt).  Valid only when each state is parity
    pure (then the reduced matrix is exactly X-form).
    """
    tensor = amps.reshape(amps.shape[0], 2, 2, 2, amps.shape[-1])
    traced_site = ({1, 2, 3} - set(pair)).pop()
    tensor = np.moveaxis(tensor, traced_site, 3)  # traced index to the last site slot

    def entry(a: int, b: int, c: int, d: int) -> np.ndarray:
        # rho[(a b), (c d)] = sum over the traced bit m of T[a,b,m] T*[c,d,m]
        return np.sum(tensor[:, a, b] * tensor[:, c, d].conj(), axis=1)

    p00 = entry(0, 0, 0, 0).real
    p01 = entry(0, 1, 0, 1).real
    p10 = entry(1, 0, 1, 0).real
    p11 = entry(1, 1, 1, 1).real
    inner = np.abs(entry(0, 1, 1, 0)) - np.sqrt(
        np.clip(p00, 0.0, None) * np.clip(p11, 0.0, None)
    )
    outer = np.abs(entry(0, 0, 1, 1)) - np.sqrt(
        np.clip(p01, 0.0, None) * np.clip(p10, 0.0, None)
    )
    return 2.0 * np.maximum(0.0, np.maximum(inner, outer))


def _parity_pure(initial: str) -> bool:
    return initial in ("000", "111")


def pair_concurrence_map(
    chain: ChainSpec3,
    param: str,
    values: np.ndarray,
    initial: str,
    pair: tuple[int, int],
    times: np.ndarray,
    workers: int = 1,
) -> np.ndarray:
    """C_pair over an (axis value, time) grid, shape (len(values), len(times))."""
    if not _parity_pure(initial):
        raise ValueError("the batched pair-concurrence map needs a parity-pure initial")
    blocks = _split_blocks(len(values), workers)
    args = [(chain, param, values[b], initial, pair, times) for b in blocks]
    return np.concatenate(_run_ordered(_pair_map_block, args, workers), axis=0)


def _pair_map_block(args) -> np.ndarray:
    chain, param, values, initial, pair, times = args
    amps = grid_full_amplitudes(chain, param, values, initial, times)
    return _pair_concurrence_grid(amps, pair)


def gme_map(
    chain: ChainSpec3,
    param: str,
    values: np.ndarray,
    initial: str,
    ref: GmeReference,
    times: np.ndarray,
    workers: int = 1,
) -> np.ndarray:
    """Multipartite GME over an (axis value, time) grid."""
    blocks = _split_blocks(len(values), workers)
    args = [(chain, param, values[b], initial, ref, times) for b in blocks]
    return np.concatenate(_run_ordered(_gme_map_block, args, workers), axis=0)


def _gme_map_block(args) -> np.ndarray:
    chain, param, values, initial, ref, times = args
    amps = grid_full_amplitudes(chain, param, values, initial, times)
    return gme_multipartite_batch(np.moveaxis(amps, 1, 2), ref)


@dataclass(frozen=True)
class MaxC13Map:
    """max_t C13 on an (eps, delta) grid; values[i, j] pairs
    eps_values[i] with delta_values[j]."""

    eps_param: str
    delta_param: str
    eps_values: np.ndarray
    delta_values: np.ndarray
    values: np.ndarray

    def records(self) -> list[MeasureRecord]:
        out = []
        for i, eps in enumerate(self.eps_values):
            for j, delta in enumerate(self.delta_values):
                out.append(
                    MeasureRecord(
                        measure="maxC13",
                        value=float(self.values[i, j]),
                        eps=float(eps),
                        delta=float(delta),
                    )
                )
        return out


#: grid cells processed per batch in the max-C13 map (memory bound)
_MAP_CHUNK = 2048


def _max_c13_block(args) -> np.ndarray:
    template, eps_param, delta_param, cells, times = args
    values = np.empty(len(cells))
    for start in range(0, len(cells), _MAP_CHUNK):
        chunk = cells[start : start + _MAP_CHUNK]
        matrices = np.empty((len(chunk), 4, 4))
        for k, (eps, delta) in enumerate(chunk):
            spec = apply_parameter(
                apply_parameter(template, eps_param, eps), delta_param, delta
            )
            matrices[k] = np.asarray(build_three_site(spec, Sector.EVEN).matrix)
        lam, vec = np.linalg.eigh(matrices)
        projections = vec.conj()[:, 0, :]  # |000> is the first even basis label
        phases = np.exp(-1j * lam[:, :, None] * times[None, None, :])
        amps = np.einsum("nij,njt->nit", vec, projections[:, :, None] * phases)
        # even basis {000, 011, 101, 110} seen by the outer pair (1,3):
        # (n1 n3) = 00, 01, 11, 10 with the middle site 0, 1, 0, 1
        alpha, beta, gamma, delta_amp = amps[:, 0], amps[:, 1], amps[:, 2], amps[:, 3]
        c13 = 2.0 * np.abs(
            np.abs(beta) * np.abs(delta_amp) - np.abs(alpha) * np.abs(gamma)
        )
        values[start : start + len(chunk)] = np.max(c13, axis=-1)
    return values


def max_c13_map(
    eps_axis: Axis,
    delta_axis: Axis,
    template: ChainSpec3 | None = None,
    horizon: float = 7.0,
    dt: float = 0.01,
    workers: int = 1,
) -> MaxC13Map:
    """Maximum outer-pair concurrence from |000> over a sampled horizon.

    For every (eps, delta) cell the even-sector evolution of |000> is
    sampled on ``time_grid(horizon, dt)`` and the largest C13 recorded.
    The default template fixes both hoppings at 1.
    """
    if horizon <= 0.0:
        raise ValueError("horizon must be positive")
    if template is None:
        template = ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0)
    times = time_grid(horizon, dt)
    eps_values = eps_axis.values
    delta_values = delta_axis.values
    cells = [(e, d) for e in eps_values for d in delta_values]
    blocks = _split_blocks(len(cells), workers)
    args = [
        (template, eps_axis.param, delta_axis.param, cells[b], times) for b in blocks
    ]
    flat = np.concatenate(_run_ordered(_max_c13_block, args, workers))
    return MaxC13Map(
        eps_axis.param,
        delta_axis.param,
        eps_values,
        delta_values,
        flat.reshape(len(eps_values), len(delta_values)),
    )
