"""Command-line front end.

Four commands: ``spectrum`` (sector eigenvalues along an onsite-energy
axis), ``evolve`` (measure time traces for one configuration), ``sweep``
(measure grids and the named dataset presets), and ``check`` (the
invariant suite).  Output is CSV with a one-line header, ``.`` decimal
separator, and 12 significant digits; ``--plot`` additionally renders a
PNG next to the CSV.

Values resolve as CLI flag > config file > built-in default.  The config
file is flat ``section.key = value`` text whose key (after the dot)
names the matching flag.  Exit codes: 0 success, 2 usage or
configuration error, 3 numeric-invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .checks import DEFAULT_TOLERANCES, run_checks
from .errors import NumericInvariantError
from .figures import PRESETS, render_png, spectrum_table
from .model import ChainSpec2, ChainSpec3
from .sweeps import (
    Axis,
    SweepSpec,
    grid_values,
    max_c13_map,
    measures_for,
    sweep_time_epsilon_table,
    time_grid,
    time_series,
)

__all__ = ["main", "build_parser"]

_DEFAULTS = {
    "chain": 2,
    "eps1": 0.0,
    "eps2": 0.0,
    "eps3": 0.0,
    "tau": 1.0,
    "delta": 1.0,
    "workers": None,  # resolved from KITAEV_WORKERS, else 1
    "eps_param": "eps",
    "eps_range": "-2:2:0.01",
    "delta_range": "0:2:0.01",
    "t_max": 10.0,
    "dt": 0.01,
    "map": "time-eps",
}


class UsageError(ValueError):
    """Invalid flags, config values, or their combination."""


def _add_chain_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("chain parameters")
    group.add_argument("--chain", type=int, choices=(2, 3), help="chain length")
    for name, text in (
        ("--eps1", "onsite energy of site 1"),
        ("--eps2", "onsite energy of site 2"),
        ("--eps3", "onsite energy of site 3 (3-site chains)"),
        ("--tau", "hopping amplitude (both bonds of a 3-site chain)"),
        ("--tau1", "hopping on bond 1-2 (3-site chains)"),
        ("--tau2", "hopping on bond 2-3 (3-site chains)"),
        ("--delta", "pairing amplitude (both bonds of a 3-site chain)"),
        ("--delta1", "pairing on bond 1-2 (3-site chains)"),
        ("--delta2", "pairing on bond 2-3 (3-site chains)"),
    ):
        group.add_argument(name, type=float, help=text)


def _add_run_flags(parser: argparse.ArgumentParser, plot: bool = True) -> None:
    group = parser.add_argument_group("run control")
    group.add_argument("--config", help="flat 'section.key = value' config file")
    group.add_argument("--out", help="output CSV path (default: stdout)")
    if plot:
        group.add_argument(
            "--plot",
            action="store_const",
            const=True,
            help="also render a PNG next to the CSV (requires --out)",
        )
    group.add_argument(
        "--workers",
        type=int,
        help="parallel workers for grid sweeps (default: KITAEV_WORKERS or 1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minikitaev",
        description="Exact-diagonalization dynamics of 2- and 3-site Kitaev chains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spectrum = sub.add_parser(
        "spectrum", help="sector eigenvalues along an onsite-energy axis"
    )
    _add_chain_flags(p_spectrum)
    _add_run_flags(p_spectrum)
    p_spectrum.add_argument(
        "--eps-range",
        help="axis as start:stop:step (default -2:2:0.01); "
        "write --eps-range=-2:2:0.01 when the start is negative",
    )
    p_spectrum.add_argument(
        "--eps-param",
        help="which onsite parameter the axis drives (eps, eps1, eps2, eps3)",
    )

    p_evolve = sub.add_parser("evolve", help="measure time traces for one chain")
    _add_chain_flags(p_evolve)
    _add_run_flags(p_evolve)
    p_evolve.add_argument(
        "--initial", help="initial state: 00, 11, bell+ (2-site); 000, 111, ghz"
    )
    p_evolve.add_argument(
        "--measures", help="comma-separated measure names (default: all applicable)"
    )
    p_evolve.add_argument("--t-max", type=float, help="final time (default 10)")
    p_evolve.add_argument("--dt", type=float, help="time step (default 0.01)")

    p_sweep = sub.add_parser("sweep", help="measure grids and dataset presets")
    _add_chain_flags(p_sweep)
    _add_run_flags(p_sweep)
    p_sweep.add_argument(
        "--preset",
        help="named dataset (fig2a..fig6f, fig6ab, fig5); overrides other inputs",
    )
    p_sweep.add_argument("--initial", help="initial state label")
    p_sweep.add_argument("--measures", help="comma-separated measure names")
    p_sweep.add_argument(
        "--eps-range",
        help="onsite-energy axis as start:stop:step "
        "(use the --flag=value form when the start is negative)",
    )
    p_sweep.add_argument(
        "--eps-param", help="onsite parameter the axis drives (default eps)"
    )
    p_sweep.add_argument(
        "--delta-range", help="pairing axis as start:stop:step (max-c13 map)"
    )
    p_sweep.add_argument(
        "--map",
        choices=("time-eps", "max-c13"),
        help="grid kind: measures over (eps, t), or max C13 over (eps, delta)",
    )
    p_sweep.add_argument("--t-max", type=float, help="final time / sampling horizon")
    p_sweep.add_argument("--dt", type=float, help="time step (default 0.01)")

    p_check = sub.add_parser("check", help="run the numeric invariant suite")
    _add_run_flags(p_check, plot=False)
    p_check.add_argument(
        "--tol",
        action="append",
        metavar="NAME=VALUE",
        help=f"override a check tolerance; names: {', '.join(DEFAULT_TOLERANCES)}",
    )

    return parser


# ---------------------------------------------------------------------------
# config file and value resolution


def parse_config_file(path: str) -> dict[str, str]:
    """Read flat ``section.key = value`` lines; blank lines and ``#``
    comments are ignored.  Returns {key: raw value} with the section
    prefix dropped and ``-`` normalized to ``_``."""
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path!r}: {exc}") from exc
    values: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'section.key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if "." not in key:
            raise UsageError(f"{path}:{lineno}: key {key!r} lacks a section prefix")
        dest = key.rsplit(".", 1)[1].replace("-", "_")
        values[dest] = value
    return values


_CONFIG_TYPES = {
    "chain": int,
    "eps1": float,
    "eps2": float,
    "eps3": float,
    "tau": float,
    "tau1": float,
    "tau2": float,
    "delta": float,
    "delta1": float,
    "delta2": float,
    "workers": int,
    "t_max": float,
    "dt": float,
    "plot": lambda s: s.lower() in ("1", "true", "yes", "on"),
}


def apply_config(args: argparse.Namespace, values: dict[str, str]) -> None:
    """Fill in config values for flags the command line left unset."""
    for dest, raw in values.items():
        if not hasattr(args, dest):
            raise UsageError(
                f"config key {dest!r} does not match a {args.command!r} flag"
            )
        if getattr(args, dest) is not None:
            continue  # the command line wins
        convert = _CONFIG_TYPES.get(dest, str)
        try:
            setattr(args, dest, convert(raw))
        except ValueError as exc:
            raise UsageError(f"config value {raw!r} invalid for {dest!r}") from exc


def _get(args: argparse.Namespace, dest: str):
    value = getattr(args, dest, None)
    if value is not None:
        return value
    return _DEFAULTS.get(dest)


def _resolve_workers(args: argparse.Namespace) -> int:
    workers = getattr(args, "workers", None)
    if workers is None:
        raw = os.environ.get("KITAEV_WORKERS", "").strip()
        if raw:
            try:
                workers = int(raw)
            except ValueError:
                raise UsageError(f"KITAEV_WORKERS={raw!r} is not an integer") from None
        else:
            workers = 1
    if workers < 1:
        raise UsageError("worker count must be >= 1")
    return workers


def resolve_chain(args: argparse.Namespace) -> ChainSpec2 | ChainSpec3:
    """Build the chain from flags: group flags (--tau/--delta) seed both
    bonds of a 3-site chain, bond flags override them."""
    chain = _get(args, "chain")
    eps1, eps2 = _get(args, "eps1"), _get(args, "eps2")
    if chain == 2:
        for flag in ("eps3", "tau1", "tau2", "delta1", "delta2"):
            if getattr(args, flag, None) is not None:
                raise UsageError(f"--{flag} applies to 3-site chains only")
        return ChainSpec2(eps1, eps2, _get(args, "tau"), _get(args, "delta"))
    tau = _get(args, "tau")
    delta = _get(args, "delta")
    tau1 = args.tau1 if args.tau1 is not None else tau
    tau2 = args.tau2 if args.tau2 is not None else tau
    delta1 = args.delta1 if args.delta1 is not None else delta
    delta2 = args.delta2 if args.delta2 is not None else delta
    return ChainSpec3(eps1, eps2, _get(args, "eps3"), tau1, tau2, delta1, delta2)


def parse_range(text: str, flag: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"{flag} expects start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise UsageError(f"{flag} expects numeric start:stop:step, got {text!r}") from None
    return start, stop, step


def _range_values(args: argparse.Namespace, dest: str, flag: str) -> np.ndarray:
    start, stop, step = parse_range(_get(args, dest), flag)
    values = grid_values(start, stop, step)
    if len(values) == 0:
        raise UsageError(f"{flag} produced an empty axis")
    return values


def _default_initial(chain) -> str:
    return "00" if chain.n_sites == 2 else "000"


def _resolve_measures(args: argparse.Namespace, chain) -> tuple[str, ...]:
    raw = getattr(args, "measures", None)
    if raw is None:
        return measures_for(chain.n_sites)
    names = tuple(name.strip() for name in raw.split(",") if name.strip())
    if not names:
        raise UsageError("--measures lists no measure names")
    return names


# ---------------------------------------------------------------------------
# CSV output


def format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.12g" % float(value)


def write_csv(header: list[str], rows, out: str | None) -> None:
    def emit(handle) -> None:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(format_cell(cell) for cell in row) + "\n")

    if out is None:
        emit(sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            emit(handle)


def _png_path(out: str) -> str:
    root, ext = os.path.splitext(out)
    return (root if ext else out) + ".png"


def _emit(args, kind: str, header: list[str], rows) -> None:
    out = getattr(args, "out", None)
    plot = getattr(args, "plot", None)
    if plot and out is None:
        raise UsageError("--plot requires --out")
    write_csv(header, rows, out)
    if plot:
        render_png(kind, header, rows, _png_path(out))


# ---------------------------------------------------------------------------
# commands


def cmd_spectrum(args: argparse.Namespace) -> int:
    chain = resolve_chain(args)
    values = _range_values(args, "eps_range", "--eps-range")
    header, rows = spectrum_table(chain, _get(args, "eps_param"), values)
    _emit(args, "spectrum", header, rows)
    return 0


def cmd_evolve(args: argparse.Namespace) -> int:
    chain = resolve_chain(args)
    initial = getattr(args, "initial", None) or _default_initial(chain)
    measures = _resolve_measures(args, chain)
    times = time_grid(_get(args, "t_max"), _get(args, "dt"))
    series = time_series(chain, initial, measures, times)
    table = np.column_stack([times] + [series[name] for name in measures])
    _emit(args, "trace", ["t", *measures], table)
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    preset_name = getattr(args, "preset", None)
    workers = _resolve_workers(args)
    if preset_name is not None:
        try:
            preset = PRESETS[preset_name]
        except KeyError:
            known = ", ".join(sorted(PRESETS))
            raise UsageError(
                f"unknown preset {preset_name!r}; known presets: {known}"
            ) from None
        header, rows = preset.build(workers)
        _emit(args, preset.kind, header, rows)
        return 0

    chain = resolve_chain(args)
    if _get(args, "map") == "max-c13":
        if chain.n_sites != 3:
            raise UsageError("the max-c13 map requires --chain 3")
        eps_axis = Axis(_get(args, "eps_param"), *parse_range(
            _get(args, "eps_range"), "--eps-range"
        ))
        delta_axis = Axis("delta", *parse_range(
            _get(args, "delta_range"), "--delta-range"
        ))
        horizon = args.t_max if args.t_max is not None else 7.0
        result = max_c13_map(
            eps_axis, delta_axis, chain, horizon, _get(args, "dt"), workers
        )
        rows = np.empty((len(result.eps_values) * len(result.delta_values), 3))
        rows[:, 0] = np.repeat(result.eps_values, len(result.delta_values))
        rows[:, 1] = np.tile(result.delta_values, len(result.eps_values))
        rows[:, 2] = result.values.reshape(-1)
        _emit(args, "map_eps_delta", [eps_axis.param, "delta", "maxC13"], rows)
        return 0

    initial = getattr(args, "initial", None) or _default_initial(chain)
    measures = _resolve_measures(args, chain)
    start, stop, step = parse_range(_get(args, "eps_range"), "--eps-range")
    sweep = SweepSpec(
        chain,
        Axis(_get(args, "eps_param"), start, stop, step),
        initial,
        measures,
        _get(args, "t_max"),
        _get(args, "dt"),
    )
    header, table = sweep_time_epsilon_table(sweep, workers)
    _emit(args, "map_time", header, table)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    overrides: dict[str, float] = {}
    for item in getattr(args, "tol", None) or ():
        if "=" not in item:
            raise UsageError(f"--tol expects NAME=VALUE, got {item!r}")
        name, raw = item.split("=", 1)
        try:
            overrides[name.strip()] = float(raw)
        except ValueError:
            raise UsageError(f"--tol value {raw!r} is not a number") from None
    try:
        results = run_checks(overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
    ]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out = getattr(args, "out", None)
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    return 0 if all(r.passed for r in results) else 3


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "sweep": cmd_sweep,
    "check": cmd_check,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None):
            apply_config(args, parse_config_file(args.config))
        if getattr(args, "plot", None) and getattr(args, "out", None) is None:
            raise UsageError("--plot requires --out")
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericInvariantError as exc:
        print(f"numeric invariant violated: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
