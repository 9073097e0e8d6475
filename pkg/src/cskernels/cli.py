"""Command line front end.

Five subcommands: ``eval`` tabulates a kernel profile, ``spectrum`` its
spectral density, ``transform`` runs one of the transform identities and
reports its worst error, ``interp`` fits an interpolant to a node file, and
``verify`` executes the acceptance-check registry. Everything numeric is
emitted as CSV with a ``#``-prefixed header block that echoes the complete
configuration, the library version, and the seed, so any emitted number can
be reproduced from its own file.

Exit codes are part of the contract: 0 success, 2 parameter domain
violations, 3 quadrature nonconvergence, 4 linear-algebra failures
(non-positive-definite Gram), 5 file I/O problems. The ``verify`` subcommand
instead exits with the number of failed checks.
"""

from __future__ import annotations

import argparse
import csv
import enum
import io
import math
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import __version__, verify
from .errors import (
    ConvergenceFailure,
    CSKernelsError,
    DecayTooSlow,
    DimensionMismatch,
    NotAvailable,
    ParameterOutOfRange,
    PositivityViolation,
    QuadratureNonconvergence,
    SingularGram,
)
from .kernels import (
    Family,
    KernelSpec,
    Regime,
    Side,
    closed_form,
    fourier_constant,
    radial_profile,
    spectral_density,
    spectrum_q,
    spectrum_w,
    surface_area,
)
from .rkhs import NodeSet, eval_interpolant, fit
from .transforms import (
    BinomialDensity,
    OscillatoryIntegralConfig,
    hankel_schoenberg,
    inverse_transform,
    order_walk,
    radial_fourier,
)
from . import specfun

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_QUADRATURE = 3
EXIT_LINALG = 4
EXIT_IO = 5

_FAMILIES = {
    "wendland": Family.WENDLAND_TYPE,
    "smooth": Family.SMOOTH,
    "askey": Family.ASKEY,
    "bessel": Family.BESSEL_POTENTIAL,
}

_RESIDUAL_LIMIT = 1e-10


class Subcommand(enum.Enum):
    EVAL = "eval"
    SPECTRUM = "spectrum"
    TRANSFORM = "transform"
    INTERP = "interp"
    VERIFY = "verify"


class Spacing(enum.Enum):
    LINEAR = "linear"
    LOG = "log"


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid, parsed from ``start:stop:count``."""

    start: float
    stop: float
    count: int
    spacing: Spacing = Spacing.LINEAR

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ParameterOutOfRange("grid endpoints must be finite")
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ParameterOutOfRange(f"grid count must satisfy count >= 1, got {self.count}")
        if self.count > 1 and not self.start < self.stop:
            raise ParameterOutOfRange(
                f"grid requires start < stop for count > 1, got {self.start} >= {self.stop}"
            )
        if self.spacing is Spacing.LOG and not self.start > 0.0:
            raise ParameterOutOfRange(
                f"log spacing requires start > 0, got {self.start}"
            )

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        if self.spacing is Spacing.LOG:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def describe(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.count}"


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand needs, validated once at parse time."""

    subcommand: Subcommand
    family: str | None = None
    dimension: int | None = None
    order: float | None = None
    grid: GridSpec | None = None
    tolerance: float | None = None
    tolerance_scale: float = 1.0
    identity: str | None = None
    nodes_path: str | None = None
    values_path: str | None = None
    coefficients_path: str | None = None
    probes: int = 11
    seed: int = 0
    only: tuple[str, ...] | None = None
    threads: int | None = None
    output: str | None = None

    def __post_init__(self):
        if self.tolerance is not None and not (
            self.tolerance > 0.0 and math.isfinite(self.tolerance)
        ):
            raise ParameterOutOfRange(
                f"tolerance must satisfy tolerance > 0, got {self.tolerance}"
            )
        if not (self.tolerance_scale > 0.0 and math.isfinite(self.tolerance_scale)):
            raise ParameterOutOfRange(
                f"tolerance scale must satisfy scale > 0, got {self.tolerance_scale}"
            )
        if self.probes < 1:
            raise ParameterOutOfRange(f"probe count must satisfy count >= 1, got {self.probes}")

    def kernel_spec(self) -> KernelSpec:
        if self.family is None or self.dimension is None or self.order is None:
            raise ParameterOutOfRange("family, dimension, and order are all required here")
        return KernelSpec(_FAMILIES[self.family], self.dimension, self.order)

    def header_lines(self) -> list[str]:
        lines = [f"# cskernels {__version__}"]
        for field in fields(self):
            value = getattr(self, field.name)
            if value is None:
                text = "none"
            elif isinstance(value, enum.Enum):
                text = value.value
            elif isinstance(value, GridSpec):
                text = f"{value.describe()} spacing={value.spacing.value}"
            elif isinstance(value, tuple):
                text = ",".join(value)
            else:
                text = f"{value:g}" if isinstance(value, float) else str(value)
            lines.append(f"# config: {field.name}={text}")
        return lines


def _fmt(value: float) -> str:
    # repr of a float is the shortest digit string that round-trips exactly
    return repr(float(value))


def _write_output(config: RunConfig, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if config.output is None:
        sys.stdout.write(text)
    else:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_rows(rows: list[list[str]]) -> list[str]:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue().splitlines()


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_eval(config: RunConfig) -> int:
    """Tabulate a kernel profile next to its registered closed form."""
    spec = config.kernel_spec()
    profile = radial_profile(spec)
    grid = (config.grid or GridSpec(0.0, 1.0, 11)).points()
    values = np.asarray(profile(grid), dtype=float)
    try:
        reference = [_fmt(closed_form(spec, Side.PROFILE, float(r))) for r in grid]
    except NotAvailable:
        reference = [""] * len(grid)
    lines = config.header_lines()
    lines.append("# columns: r,profile_value,closed_form_value")
    lines += _csv_rows(
        [[_fmt(r), _fmt(v), ref] for r, v, ref in zip(grid, values, reference)]
    )
    _write_output(config, lines)
    return EXIT_OK


def cmd_spectrum(config: RunConfig) -> int:
    """Tabulate a spectral density, its Fourier weighting, and the regime."""
    spec = config.kernel_spec()
    density = spectral_density(spec)
    weight = fourier_constant(spec)
    grid = (config.grid or GridSpec(0.0, 100.0, 101)).points()
    rows = []
    for r in grid:
        info = density.evaluate_with_info(float(r))
        regime = "SERIES" if info.regime is Regime.SERIES else "ASYMPTOTIC"
        rows.append([_fmt(r), _fmt(info.value), _fmt(weight * info.value), regime])
    lines = config.header_lines()
    lines.append("# columns: r,spectrum,fourier_constant_times_spectrum,regime")
    lines += _csv_rows(rows)
    _write_output(config, lines)
    return EXIT_OK


def _transform_roundtrip(config: RunConfig) -> tuple[list[str], list[list[str]], float]:
    spec = config.kernel_spec()
    density = spectral_density(spec)
    profile = radial_profile(spec)
    weight = fourier_constant(spec)
    d = spec.dimension
    quad_config = (
        OscillatoryIntegralConfig(tail_tolerance=config.tolerance)
        if config.tolerance is not None
        else None
    )
    grid = (config.grid or GridSpec(0.1, 0.9, 5)).points()
    worst = 0.0
    rows = []
    for t in grid:
        recovered = inverse_transform(0.5 * (d - 2), density, float(t), config=quad_config)
        value = recovered * weight / (surface_area(d) * float(t) ** (d - 1))
        target = float(profile(float(t)))
        err = abs(value - target)
        worst = max(worst, err)
        rows.append([_fmt(t), _fmt(target), _fmt(value), _fmt(err)])
    return ["# columns: t,profile_value,recovered_value,abs_error"], rows, worst


def _transform_forward(config: RunConfig) -> tuple[list[str], list[list[str]], float]:
    spec = config.kernel_spec()
    profile = radial_profile(spec)
    weight = fourier_constant(spec)
    spectrum = {
        Family.WENDLAND_TYPE: spectrum_w,
        Family.SMOOTH: spectrum_q,
    }.get(spec.family)
    if spectrum is None:
        raise ParameterOutOfRange(
            "the forward identity is tabulated for the wendland and smooth families"
        )
    tol = config.tolerance if config.tolerance is not None else 1e-7
    grid = (config.grid or GridSpec(0.5, 50.0, 5, Spacing.LOG)).points()
    worst = 0.0
    rows = []
    for r in grid:
        got = radial_fourier(spec.dimension, profile, float(r), tol=tol)
        want = weight * spectrum(spec.order, float(r))
        err = abs(got - want)
        worst = max(worst, err)
        rows.append([_fmt(r), _fmt(got), _fmt(want), _fmt(err)])
    return ["# columns: r,radial_fourier,weighted_spectrum,abs_error"], rows, worst


def _transform_lemma(config: RunConfig) -> tuple[list[str], list[list[str]], float]:
    tol = config.tolerance if config.tolerance is not None else 1e-8
    worst = 0.0
    rows = []
    for a in (0.7, 1.5, 3.2):
        for b in (0.6, 1.0, 2.5):
            for lam in (-0.4, 0.5, 2.0):
                for r in (0.5, 2.0, 10.0):
                    got = hankel_schoenberg(
                        lam, BinomialDensity(a, b, squared_argument=True), r, tol=tol
                    )
                    want = specfun.hyp1f2(b, a + b, lam + 1.0, r).value
                    err = abs(got - want)
                    rows.append(
                        ["squared", _fmt(a), _fmt(b), _fmt(lam), _fmt(r), _fmt(got), _fmt(want), _fmt(err)]
                    )
                    worst = max(worst, err)
                    got = hankel_schoenberg(lam, BinomialDensity(a, b), r, tol=tol)
                    want = specfun.hyp2f3(
                        0.5 * b, 0.5 * (b + 1.0), 0.5 * (a + b), 0.5 * (a + b + 1.0), lam + 1.0, r
                    ).value
                    err = abs(got - want)
                    rows.append(
                        ["plain", _fmt(a), _fmt(b), _fmt(lam), _fmt(r), _fmt(got), _fmt(want), _fmt(err)]
                    )
                    worst = max(worst, err)
    header = ["# columns: reduction,alpha,beta,order,r,transform_value,series_value,abs_error"]
    return header, rows, worst


def _transform_orderwalk(config: RunConfig) -> tuple[list[str], list[list[str]], float]:
    d = config.dimension if config.dimension is not None else 2
    if d < 1:
        raise ParameterOutOfRange(f"dimension must satisfy d >= 1, got {d}")
    source = BinomialDensity(1.3, 0.5 * (d + 1), squared_argument=True)
    grid = (config.grid or GridSpec(1.0, 20.0, 3)).points()
    worst = 0.0
    rows = []
    for lam in (0.5 * d, 0.5 * d + 1.0):
        walked = order_walk(lam, d, source)
        for r in grid:
            direct = hankel_schoenberg(lam, source, float(r))
            via_walk = radial_fourier(d, walked, float(r)) / surface_area(d)
            err = abs(via_walk - direct)
            worst = max(worst, err)
            rows.append([_fmt(lam), _fmt(r), _fmt(direct), _fmt(via_walk), _fmt(err)])
    return ["# columns: order,r,direct_value,order_walk_value,abs_error"], rows, worst


_IDENTITIES = {
    "roundtrip": _transform_roundtrip,
    "forward": _transform_forward,
    "lemma": _transform_lemma,
    "orderwalk": _transform_orderwalk,
}


def cmd_transform(config: RunConfig) -> int:
    """Run one transform identity over a grid and report the worst error."""
    runner = _IDENTITIES[config.identity or "roundtrip"]
    column_lines, rows, worst = runner(config)
    lines = config.header_lines() + column_lines + _csv_rows(rows)
    lines.append(f"# max_abs_error: {_fmt(worst)}")
    _write_output(config, lines)
    if config.output is not None:
        sys.stdout.write(f"max_abs_error: {_fmt(worst)}\n")
    return EXIT_OK


def _read_node_file(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            raw_lines = fh.readlines()
    except OSError as exc:
        raise _IOFailure(f"cannot read node file {path}: {exc}") from exc
    rows = []
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(part) for part in line.split()])
        except ValueError as exc:
            raise _IOFailure(f"{path}:{lineno}: unparsable entry ({exc})") from exc
    if not rows:
        raise _IOFailure(f"node file {path} contains no data rows")
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise _IOFailure(
            f"node file {path} has inconsistent column counts: {sorted(widths)}"
        )
    return np.asarray(rows, dtype=float)


class _IOFailure(Exception):
    """File could not be read, parsed, or written."""


def _split_nodes_values(config: RunConfig, table: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
    columns = table.shape[1]
    if config.values_path is not None:
        values_table = _read_node_file(config.values_path)
        if values_table.shape[1] != 1:
            raise _IOFailure(
                f"value file {config.values_path} must have exactly one column"
            )
        coords, values = table, values_table[:, 0]
    else:
        if columns < 2:
            raise ParameterOutOfRange(
                "node file needs a trailing value column (or pass --values)"
            )
        coords, values = table[:, :-1], table[:, -1]
    if len(values) != len(coords):
        raise ParameterOutOfRange(
            f"value count {len(values)} does not match node count {len(coords)}"
        )
    d = coords.shape[1]
    if config.dimension is not None and config.dimension != d:
        raise ParameterOutOfRange(
            f"node file has {d} coordinate columns but dimension {config.dimension} was requested"
        )
    return coords, values, d


def _probe_points(nodes: np.ndarray, d: int, count: int, seed: int) -> np.ndarray:
    if d == 1:
        return np.linspace(float(nodes.min()), float(nodes.max()), count).reshape(-1, 1)
    rng = np.random.default_rng(seed)
    low = nodes.min(axis=0)
    high = nodes.max(axis=0)
    return rng.uniform(low, high, size=(count, d))


def cmd_interp(config: RunConfig) -> int:
    """Fit an interpolant to a node file and tabulate it at probe points."""
    if config.nodes_path is None:
        raise ParameterOutOfRange("interp requires --nodes FILE")
    table = _read_node_file(config.nodes_path)
    coords, values, d = _split_nodes_values(config, table)
    family = config.family or "wendland"
    order = config.order if config.order is not None else 2.0
    spec = KernelSpec(_FAMILIES[family], d, order)
    nodes = NodeSet(d, coords)
    interpolant = fit(spec, nodes, values)

    fitted = eval_interpolant(interpolant, coords)
    scale = float(np.linalg.norm(values))
    residual = float(np.linalg.norm(fitted - values))
    relative = residual / scale if scale > 0.0 else residual

    probes = _probe_points(coords, d, config.probes, config.seed)
    probe_values = eval_interpolant(interpolant, probes)
    lines = config.header_lines()
    lines.append(f"# nodes: {len(nodes)}  dimension: {d}")
    lines.append("# columns: " + ",".join(f"x{i + 1}" for i in range(d)) + ",interpolant_value")
    rows = [
        [_fmt(c) for c in point] + [_fmt(v)] for point, v in zip(probes, np.atleast_1d(probe_values))
    ]
    lines += _csv_rows(rows)
    lines.append(f"# residual_relative: {_fmt(relative)}")
    _write_output(config, lines)

    coef_path = config.coefficients_path
    if coef_path is None:
        base = config.output if config.output is not None else config.nodes_path
        coef_path = base + ".coefficients"
    try:
        with open(coef_path, "w", encoding="utf-8") as fh:
            fh.writelines(_fmt(c) + "\n" for c in interpolant.coefficients)
    except OSError as exc:
        raise _IOFailure(f"cannot write coefficients file {coef_path}: {exc}") from exc
    if config.output is not None:
        sys.stdout.write(f"residual_relative: {_fmt(relative)}\n")
    return EXIT_OK if relative <= _RESIDUAL_LIMIT else 1


def cmd_verify(config: RunConfig) -> int:
    """Run the acceptance registry; exit with the number of failures."""
    results = verify.run_checks(
        config.only, tolerance_scale=config.tolerance_scale, threads=config.threads
    )
    lines = config.header_lines()
    lines += [result.line() for result in results]
    failures = sum(1 for result in results if not result.passed)
    lines.append(
        f"# {len(results) - failures}/{len(results)} checks passed"
    )
    _write_output(config, lines)
    return failures


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"grid must look like start:stop:count, got {text!r}"
        )
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc
    try:
        return GridSpec(start, stop, count)
    except ParameterOutOfRange as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cskernels",
        description="Compactly supported Sobolev kernels: tables, spectra, transforms, interpolation.",
    )
    parser.add_argument("--version", action="version", version=f"cskernels {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_spec_flags(p, family_required=True):
        p.add_argument(
            "--family", choices=sorted(_FAMILIES), required=family_required,
            help="kernel family",
        )
        p.add_argument("-d", "--dimension", type=int, help="ambient dimension")
        p.add_argument("--order", type=float, help="smoothness order")

    def add_io_flags(p):
        p.add_argument("-o", "--output", help="write CSV here instead of stdout")

    def add_grid_flags(p):
        p.add_argument("--grid", type=_parse_grid, help="evaluation grid start:stop:count")
        p.add_argument(
            "--spacing", choices=[s.value for s in Spacing], default="linear",
            help="grid spacing (default linear)",
        )

    p = sub.add_parser("eval", help="tabulate a kernel profile")
    add_spec_flags(p)
    add_grid_flags(p)
    add_io_flags(p)

    p = sub.add_parser("spectrum", help="tabulate a spectral density")
    add_spec_flags(p)
    add_grid_flags(p)
    add_io_flags(p)

    p = sub.add_parser("transform", help="run a transform identity")
    add_spec_flags(p, family_required=False)
    add_grid_flags(p)
    add_io_flags(p)
    p.add_argument(
        "--identity", choices=sorted(_IDENTITIES), default="roundtrip",
        help="which identity to run (default roundtrip)",
    )
    p.add_argument("--tol", type=float, dest="tolerance", help="quadrature tolerance override")

    p = sub.add_parser("interp", help="fit an interpolant to a node file")
    add_spec_flags(p, family_required=False)
    add_io_flags(p)
    p.add_argument("--nodes", dest="nodes_path", required=True, help="node file")
    p.add_argument(
        "--values", dest="values_path",
        help="value file (one number per line); otherwise the node file's last column",
    )
    p.add_argument(
        "--coefficients", dest="coefficients_path",
        help="coefficients output path (default: alongside the CSV or node file)",
    )
    p.add_argument("--probes", type=int, default=11, help="number of probe points (default 11)")
    p.add_argument("--seed", type=int, default=0, help="probe-sampling seed (default 0)")

    p = sub.add_parser("verify", help="run the acceptance checks")
    add_io_flags(p)
    p.add_argument(
        "--only", help="comma-separated subset of check ids (default: all)",
    )
    p.add_argument(
        "--tolerance-scale", type=float, default=1.0, dest="tolerance_scale",
        help="multiply every threshold (values < 1 tighten the suite)",
    )
    p.add_argument("--threads", type=int, help="worker cap (default: KERNEL_VERIFY_THREADS or 4)")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    grid = getattr(args, "grid", None)
    if grid is not None and getattr(args, "spacing", "linear") == Spacing.LOG.value:
        grid = GridSpec(grid.start, grid.stop, grid.count, Spacing.LOG)
    only = getattr(args, "only", None)
    return RunConfig(
        subcommand=Subcommand(args.subcommand),
        family=getattr(args, "family", None),
        dimension=getattr(args, "dimension", None),
        order=getattr(args, "order", None),
        grid=grid,
        tolerance=getattr(args, "tolerance", None),
        tolerance_scale=getattr(args, "tolerance_scale", 1.0),
        identity=getattr(args, "identity", None),
        nodes_path=getattr(args, "nodes_path", None),
        values_path=getattr(args, "values_path", None),
        coefficients_path=getattr(args, "coefficients_path", None),
        probes=getattr(args, "probes", 11),
        seed=getattr(args, "seed", 0),
        only=tuple(only.split(",")) if only else None,
        threads=getattr(args, "threads", None),
        output=getattr(args, "output", None),
    )


_DISPATCH = {
    Subcommand.EVAL: cmd_eval,
    Subcommand.SPECTRUM: cmd_spectrum,
    Subcommand.TRANSFORM: cmd_transform,
    Subcommand.INTERP: cmd_interp,
    Subcommand.VERIFY: cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        return _DISPATCH[config.subcommand](config)
    except (ParameterOutOfRange, DimensionMismatch, NotAvailable, DecayTooSlow) as exc:
        sys.stderr.write(f"parameter error: {exc}\n")
        return EXIT_PARAMETER
    except (QuadratureNonconvergence, ConvergenceFailure, PositivityViolation) as exc:
        sys.stderr.write(f"quadrature error: {exc}\n")
        return EXIT_QUADRATURE
    except SingularGram as exc:
        sys.stderr.write(f"linear algebra error: {exc}\n")
        return EXIT_LINALG
    except (_IOFailure, OSError) as exc:
        sys.stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
    except CSKernelsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
