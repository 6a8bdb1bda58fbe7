"""Command-line front end: experiment drivers with CSV and SVG emission.

Commands:

    dispersion   branch tables sigma(k) for one or more models
    evolve       time evolution of an initial condition under one model
    compare      L2 deviation of hydro models from the kinetic moment reference
    secular      naive versus multiscale correction-ratio series
    selftest     run the built-in invariant suite

Every command is deterministic: identical configuration produces
byte-identical CSV and SVG output.  Exit codes: 0 success, 1 usage error,
2 numerical or internal-consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from . import hydro_spectral, moment_reference, secularity
from .coefficients import EigenvalueSet, eigenvalue_set
from .dispersion import BranchCollisionError, ModelId, branches
from .hydro_spectral import HermitianSymmetryError, InternalConsistencyError
from .initial_conditions import ICParseError, ICSpec, ICTerm, parse_initial_condition, realize
from .selftest import run_selftest

__all__ = [
    "ICSpec",
    "ICTerm",
    "RunConfig",
    "UsageError",
    "emit_outputs",
    "main",
    "parse_initial_condition",
    "run",
]

_MODEL_ALIASES = {
    "euler": ModelId.EULER,
    "navier_stokes": ModelId.NAVIER_STOKES,
    "ns": ModelId.NAVIER_STOKES,
    "burnett": ModelId.BURNETT,
    "riemann_decoupled": ModelId.RIEMANN_DECOUPLED,
    "riemann": ModelId.RIEMANN_DECOUPLED,
    "moment_reference": ModelId.MOMENT_REFERENCE,
    "moment": ModelId.MOMENT_REFERENCE,
}


class UsageError(ValueError):
    """Configuration that cannot be run."""


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration for one CLI invocation."""

    command: str
    models: tuple[ModelId, ...] = ()
    eps: float = 0.1
    lambda02: float = -1.0
    grid_size: int = 256
    kmin: float = 0.1
    kmax: float = 4.0
    samples: int = 64
    tmax: float = 10.0
    dt_out: float = 1.0
    ic: ICSpec | None = None
    out_path: Path | None = None
    emit_svg: bool = False

    def __post_init__(self):
        if self.eps <= 0:
            raise UsageError(f"eps must be positive, got {self.eps}")
        if self.lambda02 >= 0:
            raise UsageError(f"lambda02 must be negative, got {self.lambda02}")
        if self.grid_size < 8:
            raise UsageError(f"grid size must be at least 8, got {self.grid_size}")
        if self.command in ("evolve", "compare", "secular"):
            if self.tmax <= 0:
                raise UsageError(f"tmax must be positive, got {self.tmax}")
            if self.dt_out <= 0 or self.dt_out > self.tmax:
                raise UsageError(f"dt-out must lie in (0, tmax], got {self.dt_out}")
            if self.ic is None:
                raise UsageError("an initial condition is required (--ic)")
        if self.command == "dispersion":
            if not (0 < self.kmin < self.kmax):
                raise UsageError(f"need 0 < kmin < kmax, got [{self.kmin}, {self.kmax}]")
            if self.samples < 2:
                raise UsageError(f"need at least two k samples, got {self.samples}")
        if self.command in ("dispersion", "evolve", "compare", "secular"):
            if not self.models and self.command in ("dispersion", "evolve", "compare"):
                raise UsageError("at least one --model is required")
            if self.out_path is None:
                raise UsageError("an output path is required (--out)")

    @property
    def eigenvalues(self) -> EigenvalueSet:
        return eigenvalue_set(self.lambda02)


def _parse_models(raw: Sequence[str]) -> tuple[ModelId, ...]:
    models = []
    for item in raw:
        for name in item.split(","):
            key = name.strip().lower()
            if not key:
                continue
            if key not in _MODEL_ALIASES:
                raise UsageError(
                    f"unknown model '{name}'; choose from "
                    f"{sorted(set(alias for alias in _MODEL_ALIASES))}"
                )
            models.append(_MODEL_ALIASES[key])
    return tuple(models)


def _load_config_file(path: Path) -> dict[str, str]:
    """Flat key=value file mirroring the flag names; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got '{raw.strip()}'")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


# CSV/SVG emission ----------------------------------------------------------


def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        # 17 significant digits round-trips IEEE doubles exactly.
        return format(float(value), ".17g")
    return str(value)


_SVG_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


def _svg_chart(header: Sequence[str], rows: Sequence[Sequence[object]], title: str) -> str:
    """Deterministic 800x600 polyline chart of the numeric CSV columns.

    String columns group the rows into separate series; the first numeric
    column is the x axis and every remaining numeric column yields one
    polyline per group.
    """
    width, height = 800, 600
    margin_left, margin_right, margin_top, margin_bottom = 70, 20, 40, 50
    numeric_cols = [
        i
        for i in range(len(header))
        if all(isinstance(row[i], (int, float, np.integer, np.floating)) for row in rows)
    ]
    label_cols = [i for i in range(len(header)) if i not in numeric_cols]
    if len(numeric_cols) < 2:
        raise ValueError("SVG chart needs an x column and at least one y column")
    x_col, y_cols = numeric_cols[0], numeric_cols[1:]

    groups: dict[tuple, list] = {}
    for row in rows:
        groups.setdefault(tuple(str(row[i]) for i in label_cols), []).append(row)

    series: list[tuple[str, list[tuple[float, float]]]] = []
    for key in sorted(groups):
        tag = "/".join(key)
        for col in y_cols:
            name = header[col] if not tag else f"{header[col]}[{tag}]"
            points = [(float(r[x_col]), float(r[col])) for r in groups[key]]
            points.sort(key=lambda pt: pt[0])
            series.append((name, points))

    xs = [pt[0] for _, pts in series for pt in pts]
    ys = [pt[1] for _, pts in series for pt in pts]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x: float) -> float:
        return margin_left + (x - x_lo) / (x_hi - x_lo) * (width - margin_left - margin_right)

    def sy(y: float) -> float:
        return height - margin_bottom - (y - y_lo) / (y_hi - y_lo) * (
            height - margin_top - margin_bottom
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="20" text-anchor="middle" font-family="monospace" '
        f'font-size="14">{title}</text>',
        f'<line x1="{margin_left}" y1="{height - margin_bottom}" x2="{width - margin_right}" '
        f'y2="{height - margin_bottom}" stroke="black"/>',
        f'<line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" '
        f'y2="{height - margin_bottom}" stroke="black"/>',
        f'<text x="{(margin_left + width - margin_right) // 2}" y="{height - 12}" '
        f'text-anchor="middle" font-family="monospace" font-size="12">{header[x_col]}</text>',
        f'<text x="{margin_left}" y="{height - margin_bottom + 16}" text-anchor="middle" '
        f'font-family="monospace" font-size="10">{_format_cell(x_lo)[:10]}</text>',
        f'<text x="{width - margin_right}" y="{height - margin_bottom + 16}" '
        f'text-anchor="end" font-family="monospace" font-size="10">{_format_cell(x_hi)[:10]}</text>',
        f'<text x="{margin_left - 6}" y="{height - margin_bottom}" text-anchor="end" '
        f'font-family="monospace" font-size="10">{_format_cell(y_lo)[:10]}</text>',
        f'<text x="{margin_left - 6}" y="{margin_top + 10}" text-anchor="end" '
        f'font-family="monospace" font-size="10">{_format_cell(y_hi)[:10]}</text>',
    ]
    for index, (name, points) in enumerate(series):
        color = _SVG_PALETTE[index % len(_SVG_PALETTE)]
        path = " ".join(f"{sx(x):.3f},{sy(y):.3f}" for x, y in points)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{path}"/>'
        )
        parts.append(
            f'<text x="{width - margin_right - 4}" y="{margin_top + 14 * (index + 1)}" '
            f'text-anchor="end" font-family="monospace" font-size="10" '
            f'fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_outputs(
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
    out_path: Path,
    emit_svg: bool = False,
    title: str = "",
    chart: tuple[Sequence[str], Sequence[Sequence[object]]] | None = None,
) -> list[Path]:
    """Write the CSV (and optional sibling SVG); returns the written paths.

    Reals are written with 17 significant digits and '.' decimal separator,
    so they round-trip through the file at no more than 1 ulp.  The SVG
    charts the CSV contents unless a (header, rows) view is passed in chart;
    field-snapshot tables use that to plot the final time block against x.
    """
    if not rows:
        raise ValueError("refusing to write an empty table")
    width = len(header)
    for row in rows:
        if len(row) != width:
            raise ValueError("rows must be rectangular and match the header")
    out_path = Path(out_path)
    lines = [",".join(header)]
    lines.extend(",".join(_format_cell(cell) for cell in row) for row in rows)
    out_path.write_text("\n".join(lines) + "\n")
    written = [out_path]
    if emit_svg:
        chart_header, chart_rows = chart if chart is not None else (header, rows)
        svg_path = out_path.with_suffix(".svg")
        svg_path.write_text(_svg_chart(chart_header, chart_rows, title or out_path.stem))
        written.append(svg_path)
    return written


# Command implementations ---------------------------------------------------


def _cmd_dispersion(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    k_grid = np.linspace(config.kmin, config.kmax, config.samples)
    rows: list[list[object]] = []
    for model in sorted(set(config.models), key=lambda m: m.value):
        table = branches(model, k_grid, config.eps, config.eigenvalues)
        for k, branch, sigma in table.iter_rows():
            rows.append([model.value, k, branch.value, sigma.real, sigma.imag])
    rows.sort(key=lambda row: (row[0], row[1], row[2]))
    return ["model", "k", "branch", "re_sigma", "im_sigma"], rows


def _initial_state(config: RunConfig) -> hydro_spectral.HydroState:
    fields = realize(config.ic, config.grid_size)
    return hydro_spectral.HydroState(u=fields["u"], p=fields["p"], s=fields["s"])


def _output_times(config: RunConfig) -> np.ndarray:
    count = int(np.floor(config.tmax / config.dt_out + 1e-9))
    return config.dt_out * np.arange(count + 1)


def _cmd_evolve(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    if len(config.models) != 1:
        raise UsageError("evolve takes exactly one --model")
    model = config.models[0]
    state = _initial_state(config)
    x = state.x
    rows: list[list[object]] = []

    def snapshot(hydro: hydro_spectral.HydroState, t: float):
        for j in range(hydro.grid_size):
            rows.append([t, float(x[j]), float(hydro.u[j]), float(hydro.p[j]), float(hydro.s[j])])

    times = _output_times(config)
    if model is ModelId.MOMENT_REFERENCE:
        moments = moment_reference.from_hydro(state, config.eps)
        snapshot(moment_reference.hydro_projection(moments).state, 0.0)
        for previous, t in zip(times, times[1:]):
            moments = moment_reference.evolve_moments(
                moments, config.eigenvalues, float(t - previous)
            )
            snapshot(moment_reference.hydro_projection(moments).state, float(t))
    else:
        spec = hydro_spectral.to_modes(state)
        snapshot(state, 0.0)
        for previous, t in zip(times, times[1:]):
            spec = hydro_spectral.evolve(
                spec, model, config.eps, config.eigenvalues, float(t - previous)
            )
            snapshot(hydro_spectral.from_modes(spec), float(t))
    return ["t", "x", "u", "p", "s"], rows


def _l2_gap(a: hydro_spectral.HydroState, b: hydro_spectral.HydroState) -> float:
    dx = 2.0 * np.pi / a.grid_size
    return float(
        np.sqrt(dx * np.sum((a.u - b.u) ** 2 + (a.p - b.p) ** 2 + (a.s - b.s) ** 2))
    )


def _cmd_compare(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    models = [m for m in config.models if m is not ModelId.MOMENT_REFERENCE]
    if not models:
        raise UsageError("compare needs at least one hydrodynamic model")
    state = _initial_state(config)
    specs = {model: hydro_spectral.to_modes(state) for model in models}
    moments = moment_reference.from_hydro(state, config.eps)

    header = ["t"] + [f"l2_error_{model.value}" for model in models]
    rows: list[list[object]] = [[0.0] + [0.0 for _ in models]]
    times = _output_times(config)
    for previous, t in zip(times, times[1:]):
        step = float(t - previous)
        moments = moment_reference.evolve_moments(moments, config.eigenvalues, step)
        reference = moment_reference.hydro_projection(moments).state
        row: list[object] = [float(t)]
        for model in models:
            specs[model] = hydro_spectral.evolve(
                specs[model], model, config.eps, config.eigenvalues, step
            )
            row.append(_l2_gap(hydro_spectral.from_modes(specs[model]), reference))
        rows.append(row)
    return header, rows


def _cmd_secular(config: RunConfig) -> tuple[list[str], list[list[object]]]:
    horizon = 1.0 / (config.eps * config.eps)
    if config.tmax > horizon * (1.0 + 1e-12):
        raise UsageError(
            f"tmax {config.tmax:g} exceeds the validity horizon 1/eps^2 = {horizon:g}"
        )
    times = _output_times(config)[1:]
    series = secularity.secular_ratio_series(
        config.ic, config.eps, config.eigenvalues, times
    )
    rows = [
        [float(t), float(n), float(m)]
        for t, n, m in zip(series.times, series.naive_ratio, series.multiscale_ratio)
    ]
    return ["t", "naive_ratio", "multiscale_ratio"], rows


def run(config: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    try:
        if config.command == "selftest":
            results = run_selftest()
            for result in results:
                status = "ok " if result.passed else "FAIL"
                print(f"{status} {result.name}: {result.detail}")
            failed = [r for r in results if not r.passed]
            print(f"{len(results) - len(failed)}/{len(results)} checks passed")
            return 0 if not failed else 2
        builders = {
            "dispersion": _cmd_dispersion,
            "evolve": _cmd_evolve,
            "compare": _cmd_compare,
            "secular": _cmd_secular,
        }
        header, rows = builders[config.command](config)
        chart = None
        if config.command == "evolve":
            # Chart the final-time snapshot against x, not everything vs t.
            final_t = rows[-1][0]
            chart = (header[1:], [row[1:] for row in rows if row[0] == final_t])
        written = emit_outputs(
            header, rows, config.out_path, config.emit_svg, title=config.command, chart=chart
        )
        for path in written:
            print(path)
        return 0
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (
        BranchCollisionError,
        InternalConsistencyError,
        HermitianSymmetryError,
        FloatingPointError,
        np.linalg.LinAlgError,
    ) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # keep the single-line diagnostic contract
        print(f"internal failure: {exc!r}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydrobench",
        description="Workbench for the hydrodynamic model hierarchy of the "
        "linearized 1-D kinetic equation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_models=True):
        p.add_argument("--config", type=Path, default=None, help="flat key=value config file")
        if with_models:
            p.add_argument(
                "--model",
                action="append",
                default=None,
                help="model name (repeatable or comma-separated): euler, navier_stokes, "
                "burnett, riemann_decoupled, moment_reference",
            )
        p.add_argument("--eps", type=float, default=None, help="Knudsen number (default 0.1)")
        p.add_argument(
            "--lambda02", type=float, default=None, help="anchor eigenvalue (default -1)"
        )
        p.add_argument("--out", type=Path, default=None, help="output CSV path")
        p.add_argument("--svg", action="store_true", help="also write a sibling SVG chart")

    p_disp = sub.add_parser("dispersion", help="branch tables sigma(k)")
    add_common(p_disp)
    p_disp.add_argument("--kmin", type=float, default=None)
    p_disp.add_argument("--kmax", type=float, default=None)
    p_disp.add_argument("--samples", type=int, default=None)

    for name, needs_model in (("evolve", True), ("compare", True), ("secular", False)):
        p_cmd = sub.add_parser(name)
        add_common(p_cmd, with_models=needs_model)
        p_cmd.add_argument("--ic", type=str, default=None, help="e.g. u:1:1.0 or u:1:1,p:2:0.5")
        p_cmd.add_argument("--tmax", type=float, default=None)
        p_cmd.add_argument("--dt-out", type=float, default=None)
        p_cmd.add_argument("--grid-size", type=int, default=None)

    sub.add_parser("selftest", help="run the built-in invariant suite")
    return parser


_DEFAULTS = {
    "eps": 0.1,
    "lambda02": -1.0,
    "grid_size": 256,
    "kmin": 0.1,
    "kmax": 4.0,
    "samples": 64,
    "tmax": 10.0,
    "dt_out": 1.0,
}


def _resolve(namespace: argparse.Namespace) -> RunConfig:
    config_values = (
        _load_config_file(namespace.config) if getattr(namespace, "config", None) else {}
    )

    def pick(key: str, cast):
        flag = getattr(namespace, key, None)
        if flag is not None:
            return flag
        if key in config_values:
            return cast(config_values[key])
        return _DEFAULTS.get(key)

    models: tuple[ModelId, ...] = ()
    raw_models = getattr(namespace, "model", None)
    if raw_models:
        models = _parse_models(raw_models)
    elif "model" in config_values:
        models = _parse_models([config_values["model"]])

    grid_size = int(pick("grid_size", int))
    ic_text = pick("ic", str)
    ic = parse_initial_condition(ic_text, grid_size) if ic_text else None

    out = getattr(namespace, "out", None)
    if out is None and "out" in config_values:
        out = Path(config_values["out"])

    emit_svg = bool(getattr(namespace, "svg", False)) or config_values.get(
        "svg", ""
    ).lower() in ("1", "true", "yes")

    return RunConfig(
        command=namespace.command,
        models=models,
        eps=float(pick("eps", float)),
        lambda02=float(pick("lambda02", float)),
        grid_size=grid_size,
        kmin=float(pick("kmin", float)),
        kmax=float(pick("kmax", float)),
        samples=int(pick("samples", int)),
        tmax=float(pick("tmax", float)),
        dt_out=float(pick("dt_out", float)),
        ic=ic,
        out_path=Path(out) if out is not None else None,
        emit_svg=emit_svg,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on bad flags; remap to the documented usage code
        return 0 if exc.code in (0, None) else 1
    if namespace.command == "selftest":
        return run(RunConfig(command="selftest"))
    try:
        config = _resolve(namespace)
    except (UsageError, ICParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
