"""Named dataset presets and their rendering.

Each preset reproduces one published panel as a delimited dataset:
energy spectra versus onsite energy, measure maps over (onsite energy,
time), measure time traces, the max-C13 (eps, delta) map, and the
multipartite GME maps and traces.  Presets fix every grid explicitly so
repeated runs are byte-identical.

Unstated plotting resolutions are artifact choices: onsite-energy axes
use step 0.01 over [-2, 2] (maps and spectra) or [0, 2] (the max-C13
map), and time axes use step 0.01 over [0, 10].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import ghz_reference, w_even_reference
from .model import ChainSpec2, ChainSpec3, Sector, build_three_site, build_two_site
from .sweeps import (
    Axis,
    SweepSpec,
    apply_parameter,
    gme_map,
    max_c13_map,
    pair_concurrence_map,
    sweep_time_epsilon_table,
    time_grid,
    time_series,
)

__all__ = ["Preset", "PRESETS", "spectrum_table", "render_png"]

Table = tuple[list[str], list[tuple]]

# chain configurations behind the published panels
_SWEET_2 = ChainSpec2(0.0, 0.0, 1.0, 1.0)
_DETUNED_2 = ChainSpec2(0.0, 0.0, 1.0, 0.5)
_SWEET_3 = ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0)
_DETUNED_3_SPECTRUM = ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 0.5, 0.5)
_DETUNED_3_DYNAMICS = ChainSpec3(0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 0.5)

_EPS_AXIS = Axis("eps", -2.0, 2.0, 0.01)
_EPS1_AXIS = Axis("eps1", -2.0, 2.0, 0.01)
_MAP_EPS_AXIS = Axis("eps", 0.0, 2.0, 0.01)
_MAP_EPS2_AXIS = Axis("eps2", 0.0, 2.0, 0.01)
_MAP_DELTA_AXIS = Axis("delta", 0.0, 2.0, 0.01)

_T_MAX = 10.0
_DT = 0.01


def spectrum_table(
    chain: ChainSpec2 | ChainSpec3, eps_param: str, eps_values: np.ndarray
) -> Table:
    """Sector eigenvalues along an onsite-energy axis.

    Columns: epsilon, sector, level_index, energy.  Rows iterate the
    axis ascending, then even before odd, then levels ascending.
    """
    build = build_two_site if chain.n_sites == 2 else build_three_site
    spectra = {}
    for sector in (Sector.EVEN, Sector.ODD):
        matrices = np.stack(
            [
                np.asarray(build(apply_parameter(chain, eps_param, v), sector).matrix)
                for v in eps_values
            ]
        )
        spectra[sector] = np.linalg.eigvalsh(matrices)
    rows = []
    for i, eps in enumerate(eps_values):
        for sector in (Sector.EVEN, Sector.ODD):
            for level, energy in enumerate(spectra[sector][i]):
                rows.append((float(eps), sector.value, level, float(energy)))
    return ["epsilon", "sector", "level_index", "energy"], rows


def _map_rows(
    axis: Axis, times: np.ndarray, grid: np.ndarray, value_name: str
) -> Table:
    values = axis.values
    rows = np.empty((len(values) * len(times), 3))
    rows[:, 0] = np.repeat(values, len(times))
    rows[:, 1] = np.tile(times, len(values))
    rows[:, 2] = grid.reshape(-1)
    return [axis.param, "t", value_name], rows


def _trace_table(
    spec: ChainSpec2 | ChainSpec3, initial: str, measures: tuple[str, ...]
) -> Table:
    times = time_grid(_T_MAX, _DT)
    series = time_series(spec, initial, measures, times)
    table = np.column_stack([times] + [series[name] for name in measures])
    return ["t", *measures], table


@dataclass(frozen=True)
class Preset:
    """A named dataset: how to build it and how to draw it."""

    name: str
    description: str
    kind: str  # spectrum | map_time | trace | map_eps_delta
    build: Callable[[int], Table]


def _spectrum_preset(name: str, description: str, chain) -> Preset:
    def build(workers: int) -> Table:
        return spectrum_table(chain, "eps", _EPS_AXIS.values)

    return Preset(name, description, "spectrum", build)


def _two_site_map_preset(name, description, chain, initial, measure) -> Preset:
    def build(workers: int) -> Table:
        spec = SweepSpec(chain, _EPS_AXIS, initial, (measure,), _T_MAX, _DT)
        header, table = sweep_time_epsilon_table(spec, workers)
        return header, table

    return Preset(name, description, "map_time", build)


def _trace_preset(name, description, chain, initial, measures) -> Preset:
    def build(workers: int) -> Table:
        return _trace_table(chain, initial, measures)

    return Preset(name, description, "trace", build)


def _pair_map_preset(name, description, chain, axis, pair, measure) -> Preset:
    def build(workers: int) -> Table:
        times = time_grid(_T_MAX, _DT)
        grid = pair_concurrence_map(
            chain, axis.param, axis.values, "000", pair, times, workers
        )
        return _map_rows(axis, times, grid, measure)

    return Preset(name, description, "map_time", build)


def _gme_map_preset(name, description, chain, ref, measure) -> Preset:
    def build(workers: int) -> Table:
        times = time_grid(_T_MAX, _DT)
        grid = gme_map(chain, "eps", _EPS_AXIS.values, "ghz", ref, times, workers)
        return _map_rows(_EPS_AXIS, times, grid, measure)

    return Preset(name, description, "map_time", build)


def _gme_pair_map_preset(name, description, chain) -> Preset:
    def build(workers: int) -> Table:
        times = time_grid(_T_MAX, _DT)
        values = _EPS_AXIS.values
        ghz = gme_map(chain, "eps", values, "ghz", ghz_reference(), times, workers)
        w = gme_map(chain, "eps", values, "ghz", w_even_reference(), times, workers)
        rows = np.empty((len(values) * len(times), 4))
        rows[:, 0] = np.repeat(values, len(times))
        rows[:, 1] = np.tile(times, len(values))
        rows[:, 2] = ghz.reshape(-1)
        rows[:, 3] = w.reshape(-1)
        return [_EPS_AXIS.param, "t", "EgGHZ", "EgW"], rows

    return Preset(name, description, "map_time", build)


def _c13_map_preset(name, description, eps_axis) -> Preset:
    def build(workers: int) -> Table:
        result = max_c13_map(eps_axis, _MAP_DELTA_AXIS, workers=workers)
        rows = np.empty((len(result.eps_values) * len(result.delta_values), 3))
        rows[:, 0] = np.repeat(result.eps_values, len(result.delta_values))
        rows[:, 1] = np.tile(result.delta_values, len(result.eps_values))
        rows[:, 2] = result.values.reshape(-1)
        return [eps_axis.param, "delta", "maxC13"], rows

    return Preset(name, description, "map_eps_delta", build)


_TRACES_2 = ("C", "EG", "Rp", "Ed")
_TRACES_3 = ("C12", "EG12", "Rp", "Ed")
_TRACES_GME = ("EgGHZ", "EgW", "Rp")


def _build_registry() -> dict[str, Preset]:
    presets = [
        _spectrum_preset(
            "fig2a", "two-site spectra vs eps, delta=tau=1", _SWEET_2
        ),
        _spectrum_preset(
            "fig2b", "two-site spectra vs eps, delta=0.5, tau=1", _DETUNED_2
        ),
        _spectrum_preset(
            "fig2c", "three-site spectra vs eps, delta_i=tau_i=1", _SWEET_3
        ),
        _spectrum_preset(
            "fig2d",
            "three-site spectra vs eps, delta_i=0.5, tau_i=1",
            _DETUNED_3_SPECTRUM,
        ),
        _two_site_map_preset(
            "fig3a", "C over (eps, t), |00>, delta=tau=1", _SWEET_2, "00", "C"
        ),
        _two_site_map_preset(
            "fig3b", "EG over (eps, t), |00>, delta=tau=1", _SWEET_2, "00", "EG"
        ),
        _trace_preset(
            "fig3c",
            "two-site traces at eps1=eps2=1",
            apply_parameter(_SWEET_2, "eps", 1.0),
            "00",
            _TRACES_2,
        ),
        _trace_preset(
            "fig3d",
            "two-site traces at eps1=0, eps2=1",
            apply_parameter(_SWEET_2, "eps2", 1.0),
            "00",
            _TRACES_2,
        ),
        _trace_preset(
            "fig3e", "two-site traces at the sweet spot", _SWEET_2, "00", _TRACES_2
        ),
        _two_site_map_preset(
            "fig3f", "C over (eps, t), bell+, delta=tau=1", _SWEET_2, "bell+", "C"
        ),
        _two_site_map_preset(
            "fig3g", "EG over (eps, t), bell+, delta=tau=1", _SWEET_2, "bell+", "EG"
        ),
        _trace_preset(
            "fig3h",
            "two-site traces, bell+, eps1=eps2=1",
            apply_parameter(_SWEET_2, "eps", 1.0),
            "bell+",
            _TRACES_2,
        ),
        _trace_preset(
            "fig3i",
            "two-site traces, bell+, eps1=0, eps2=1",
            apply_parameter(_SWEET_2, "eps2", 1.0),
            "bell+",
            _TRACES_2,
        ),
        _trace_preset(
            "fig3j",
            "two-site traces, bell+, sweet spot",
            _SWEET_2,
            "bell+",
            _TRACES_2,
        ),
        _pair_map_preset(
            "fig4a", "C12 over (eps, t), sweet spot", _SWEET_3, _EPS_AXIS, (1, 2), "C12"
        ),
        _pair_map_preset(
            "fig4b",
            "C12 over (eps1, t), eps2=eps3=0, sweet spot",
            _SWEET_3,
            _EPS1_AXIS,
            (1, 2),
            "C12",
        ),
        _pair_map_preset(
            "fig4c", "C13 over (eps, t), sweet spot", _SWEET_3, _EPS_AXIS, (1, 3), "C13"
        ),
        _trace_preset(
            "fig4d", "three-site traces at the genuine sweet spot", _SWEET_3,
            "000", _TRACES_3,
        ),
        _pair_map_preset(
            "fig4e",
            "C12 over (eps, t), delta2=0.5",
            _DETUNED_3_DYNAMICS,
            _EPS_AXIS,
            (1, 2),
            "C12",
        ),
        _pair_map_preset(
            "fig4f",
            "C12 over (eps1, t), eps2=eps3=0, delta2=0.5",
            _DETUNED_3_DYNAMICS,
            _EPS1_AXIS,
            (1, 2),
            "C12",
        ),
        _pair_map_preset(
            "fig4g",
            "C13 over (eps, t), delta2=0.5",
            _DETUNED_3_DYNAMICS,
            _EPS_AXIS,
            (1, 3),
            "C13",
        ),
        _trace_preset(
            "fig4h",
            "three-site traces at delta2=0.5",
            _DETUNED_3_DYNAMICS,
            "000",
            _TRACES_3,
        ),
        _c13_map_preset("fig5a", "max C13 over (eps, delta), tau=1", _MAP_EPS_AXIS),
        _c13_map_preset(
            "fig5b", "max C13 over (eps2, delta), eps1=eps3=0, tau=1", _MAP_EPS2_AXIS
        ),
        _gme_map_preset(
            "fig6a",
            "GHZ-reference GME over (eps, t), sweet spot, GHZ initial",
            _SWEET_3,
            ghz_reference(),
            "EgGHZ",
        ),
        _gme_map_preset(
            "fig6b",
            "W-reference GME over (eps, t), sweet spot, GHZ initial",
            _SWEET_3,
            w_even_reference(),
            "EgW",
        ),
        _trace_preset(
            "fig6c",
            "GME traces at eps=0, sweet spot, GHZ initial",
            _SWEET_3,
            "ghz",
            _TRACES_GME,
        ),
        _gme_map_preset(
            "fig6d",
            "GHZ-reference GME over (eps, t), delta2=0.5, GHZ initial",
            _DETUNED_3_DYNAMICS,
            ghz_reference(),
            "EgGHZ",
        ),
        _gme_map_preset(
            "fig6e",
            "W-reference GME over (eps, t), delta2=0.5, GHZ initial",
            _DETUNED_3_DYNAMICS,
            w_even_reference(),
            "EgW",
        ),
        _trace_preset(
            "fig6f",
            "GME traces at eps=0, delta2=0.5, GHZ initial",
            _DETUNED_3_DYNAMICS,
            "ghz",
            _TRACES_GME,
        ),
    ]
    presets.append(
        _gme_pair_map_preset(
            "fig6ab",
            "both GME maps over (eps, t), sweet spot, GHZ initial",
            _SWEET_3,
        )
    )
    registry = {p.name: p for p in presets}
    registry["fig5"] = registry["fig5a"]
    return registry


PRESETS: dict[str, Preset] = _build_registry()


# ---------------------------------------------------------------------------
# rendering


def _as_array(rows) -> np.ndarray:
    return rows if isinstance(rows, np.ndarray) else np.array(rows, dtype=object)


def render_png(kind: str, header: list[str], rows, path: str) -> None:
    """Draw a built dataset to a PNG file next to its delimited output."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.0, 4.2), constrained_layout=True)
    if kind == "spectrum":
        data = _as_array(rows)
        eps = np.array([r[0] for r in data], dtype=float)
        sectors = np.array([r[1] for r in data])
        levels = np.array([r[2] for r in data], dtype=int)
        energy = np.array([r[3] for r in data], dtype=float)
        for sector, style in (("even", "-"), ("odd", "--")):
            mask_sector = sectors == sector
            for level in np.unique(levels):
                mask = mask_sector & (levels == level)
                ax.plot(eps[mask], energy[mask], style, lw=1.2,
                        label=f"{sector} {level}" if level == 0 else None)
        ax.set_xlabel(header[0])
        ax.set_ylabel("energy")
        ax.legend(frameon=False)
    elif kind in ("map_time", "map_eps_delta"):
        table = np.asarray(rows, dtype=float)
        x = np.unique(table[:, 0])
        y = np.unique(table[:, 1])
        n_values = table.shape[1] - 2
        if n_values > 1:
            plt.close(fig)
            fig, axes = plt.subplots(
                1, n_values, figsize=(5.2 * n_values, 4.2), constrained_layout=True
            )
        else:
            axes = [ax]
        for panel, panel_ax in enumerate(axes):
            grid = table[:, 2 + panel].reshape(len(x), len(y))
            mesh = panel_ax.pcolormesh(y, x, grid, shading="nearest", cmap="viridis")
            fig.colorbar(mesh, ax=panel_ax, label=header[2 + panel])
            panel_ax.set_xlabel(header[1])
            panel_ax.set_ylabel(header[0])
    elif kind == "trace":
        table = np.asarray(rows, dtype=float)
        for column, name in enumerate(header[1:], start=1):
            ax.plot(table[:, 0], table[:, column], lw=1.3, label=name)
        ax.set_xlabel(header[0])
        ax.legend(frameon=False)
        ax.set_ylim(-0.02, 1.02)
    else:
        raise ValueError(f"unknown dataset kind {kind!r}")
    fig.savefig(path, dpi=150)
    plt.close(fig)
