"""Command-line interface.

Three subcommands:

``modes``
    Solve the cavity spectrum at one acceleration and report each mode's
    inertial frequency, accelerated frequency, relative shift, and the
    evaluation method used.

``point``
    Decay probability at a single acceleration for the configured
    detector; ``--verbose`` adds the per-mode breakdown.

``sweep``
    Probability-versus-acceleration curves over a grid, written as CSV.

Settings resolve with precedence: command-line flags, then ``--config``
file, then ``--figure`` preset, then built-in defaults.  Config files
hold ``key = value`` lines (``#`` comments allowed) restricted to the
keys length, mass, accel_min, accel_max, accel_steps, mode_n, placement,
tau, epsilon, k_max, output; any other key is an error.  Sweep CSV
output echoes the resolved physics settings as ``# key = value`` header
lines, so the header block of a dataset is itself a valid config file
that reproduces the dataset byte for byte.

Exit codes: 0 success, 1 usage or domain error, 2 numerical failure
(a sweep still writes its partial CSV first), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Mapping, Optional, Sequence

from . import __version__
from .detector import DetectorConfig, decay_probability_accelerated
from .errors import DomainError, NumericalError
from .inertial import CavityGeometry, mode_frequency
from .rindler import (
    RindlerGeometry,
    massless_modes,
    normalize_mode,
    solve_eigenfrequencies,
)
from .sweep import (
    FIGURE_PRESETS,
    placement_label,
    placements_from_spec,
    plan_from_config,
    run_sweep,
)

__all__ = ["main", "build_parser", "read_config", "render_sweep_csv"]

_FLOAT_KEYS = ("length", "mass", "accel_min", "accel_max", "tau", "epsilon")
_INT_KEYS = ("accel_steps", "mode_n", "k_max")
_STR_KEYS = ("placement", "output")
_CONFIG_KEYS = frozenset(_FLOAT_KEYS + _INT_KEYS + _STR_KEYS)
# Echo order is fixed so identical settings give identical headers.
_ECHO_KEYS = (
    "length",
    "mass",
    "accel_min",
    "accel_max",
    "accel_steps",
    "mode_n",
    "placement",
    "tau",
    "epsilon",
    "k_max",
)

_DEFAULTS: dict[str, object] = {
    "length": 1.0,
    "mass": 1.0,
    "accel_min": 0.0045,
    "accel_max": 1.8,
    "accel_steps": 400,
    "mode_n": 2,
    "placement": "center",
    "tau": 50.0,
    "epsilon": 1.0,
    "k_max": 64,
    "output": None,
}


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit 1, not 2.

    Exit code 2 is reserved for numerical failures, so the argparse
    default would be ambiguous.
    """

    def error(self, message: str):  # noqa: D102 - argparse hook
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _convert(key: str, value: str):
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key in _INT_KEYS:
            return int(value)
    except ValueError:
        raise DomainError(f"config key {key!r} has invalid value {value!r}") from None
    return value


def read_config(path: str) -> dict[str, object]:
    """Parse a ``key = value`` config file; unknown keys are an error."""
    cfg: dict[str, object] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise DomainError(f"{path}:{lineno}: expected 'key = value'")
            key = key.strip()
            value = value.strip().strip("'\"")
            if key not in _CONFIG_KEYS:
                raise DomainError(f"{path}:{lineno}: unknown config key {key!r}")
            cfg[key] = _convert(key, value)
    return cfg


def _format_value(key: str, value) -> str:
    if key in _FLOAT_KEYS:
        return repr(float(value))
    if key in _INT_KEYS:
        return str(int(value))
    return str(value)


def build_parser() -> _Parser:
    parser = _Parser(prog="rindler-purcell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add_common(p: _Parser, grid: bool) -> None:
        p.add_argument("--length", type=float, help="mirror separation L")
        p.add_argument("--mass", type=float, help="field mass m (0 for massless)")
        if grid:
            p.add_argument("--accel-min", type=float, dest="accel_min")
            p.add_argument("--accel-max", type=float, dest="accel_max")
            p.add_argument("--accel-steps", type=int, dest="accel_steps")
            p.add_argument(
                "--figure",
                type=int,
                choices=sorted(FIGURE_PRESETS),
                help="start from a canned sweep protocol",
            )
        else:
            p.add_argument(
                "--accel", type=float, required=True, help="proper acceleration a"
            )
        p.add_argument("--k-max", type=int, dest="k_max", help="mode-sum cutoff")
        p.add_argument("--config", help="key = value settings file")
        p.add_argument("--output", help="write CSV here instead of stdout")
        p.add_argument("--verbose", action="store_true")

    def add_detector(p: _Parser) -> None:
        p.add_argument("--mode-n", type=int, dest="mode_n", help="resonant mode index")
        p.add_argument(
            "--placement", help="detector placement: center, nodes, or node<j>"
        )
        p.add_argument("--tau", type=float, help="interaction time")
        p.add_argument("--epsilon", type=float, help="coupling strength")

    p_modes = sub.add_parser("modes", help="cavity spectrum at one acceleration")
    add_common(p_modes, grid=False)

    p_point = sub.add_parser("point", help="decay probability at one acceleration")
    add_common(p_point, grid=False)
    add_detector(p_point)

    p_sweep = sub.add_parser("sweep", help="probability curves over a grid")
    add_common(p_sweep, grid=True)
    add_detector(p_sweep)

    return parser


def _merged_config(args: argparse.Namespace) -> dict[str, object]:
    cfg = dict(_DEFAULTS)
    figure = getattr(args, "figure", None)
    if figure is not None:
        cfg.update(FIGURE_PRESETS[figure])
    if args.config is not None:
        cfg.update(read_config(args.config))
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _write_text(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_header(echo: Sequence[tuple[str, object]]) -> list[str]:
    lines = [f"# rindler-purcell v{__version__}"]
    lines.extend(f"# {key} = {_format_value(key, value)}" for key, value in echo)
    return lines


def render_sweep_csv(result, cfg: Mapping[str, object]) -> str:
    """CSV text for a sweep: version line, settings echo, data rows."""
    lines = _csv_header([(key, cfg[key]) for key in _ECHO_KEYS])
    labels = result.plan.labels
    lines.append("a," + ",".join(f"P_{lbl}" for lbl in labels))
    for i, a in enumerate(result.plan.a_grid):
        row = [f"{a:.11e}"] + [f"{result.curves[lbl][i]:.11e}" for lbl in labels]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def _cmd_sweep(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    plan = plan_from_config(cfg)
    result = run_sweep(plan)
    _write_text(render_sweep_csv(result, cfg), cfg.get("output"))
    if args.verbose:
        print(
            f"swept {len(plan.a_grid)} points, {len(result.failures)} failed",
            file=sys.stderr,
        )
    if result.failures:
        for index, message in result.failures:
            a = plan.a_grid[index]
            print(f"point a={a:.6g} failed: {message}", file=sys.stderr)
        return 2
    return 0


def _solve_modes(geom: RindlerGeometry, k_max: int):
    if geom.mass == 0.0:
        return massless_modes(geom, k_max)
    return [
        normalize_mode(geom, mode)
        for mode in solve_eigenfrequencies(geom, k_max)
    ]


_METHOD_NAMES = {"massless": "closed-form"}


def _cmd_modes(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    base = CavityGeometry(float(cfg["length"]), float(cfg["mass"]))
    geom = RindlerGeometry(base, args.accel)
    rows = []
    for mode in _solve_modes(geom, int(cfg["k_max"])):
        omega = mode_frequency(base, mode.k)
        method = _METHOD_NAMES.get(mode.route, mode.route)
        rows.append((mode.k, omega, mode.Omega, (mode.Omega - omega) / omega, method))
    echo = [
        ("length", cfg["length"]),
        ("mass", cfg["mass"]),
        ("accel", args.accel),
        ("k_max", cfg["k_max"]),
    ]
    lines = _csv_header([(k, v) for k, v in echo])
    lines.append("k,omega_inertial,Omega_accelerated,rel_shift,method")
    for k, omega, Omega, shift, method in rows:
        lines.append(f"{k},{omega:.11e},{Omega:.11e},{shift:.11e},{method}")
    _write_text("\n".join(lines) + "\n", cfg.get("output"))
    return 0


def _cmd_point(args: argparse.Namespace) -> int:
    cfg = _merged_config(args)
    base = CavityGeometry(float(cfg["length"]), float(cfg["mass"]))
    geom = RindlerGeometry(base, args.accel)
    modes = _solve_modes(geom, int(cfg["k_max"]))
    placements = placements_from_spec(str(cfg["placement"]), int(cfg["mode_n"]))
    out_lines = []
    for placement in placements:
        det = DetectorConfig.resonant(
            base,
            int(cfg["mode_n"]),
            tau=float(cfg["tau"]),
            epsilon=float(cfg["epsilon"]),
            placement=placement,
        )
        result = decay_probability_accelerated(geom, modes, det)
        label = placement_label(placement)
        out_lines.append(f"P_{label} = {result.probability:.11e}")
        if not result.converged:
            out_lines.append(f"# warning: P_{label} mode sum not converged")
        if args.verbose:
            out_lines.append("#   k  Omega            term")
            for k, Omega, term in result.per_mode_terms:
                out_lines.append(f"#   {k:<3d}{Omega:<17.10g}{term:.11e}")
    _write_text("\n".join(out_lines) + "\n", cfg.get("output"))
    return 0


_COMMANDS = {"modes": _cmd_modes, "point": _cmd_point, "sweep": _cmd_sweep}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0 if code is None else 1
    try:
        return _COMMANDS[args.command](args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
