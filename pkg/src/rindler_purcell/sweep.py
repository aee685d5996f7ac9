"""Acceleration sweeps: probability-versus-acceleration datasets.

A SweepPlan pins everything needed to reproduce a curve: rest geometry,
acceleration grid, detector tuning (the resting resonance of mode n),
placements, interaction time, coupling, and the mode-sum truncation.
``mode_subset`` optionally restricts the sum to chosen channels, for
example the resonant mode alone, which isolates the cavity-enhancement
signal from the static off-resonant background.

Grid points are independent, so the sweep is embarrassingly parallel;
set RP_THREADS to enable a process pool.  Results are assembled in grid
order either way, and identical plans produce identical curves.  A point
whose solve fails numerically is recorded invalid (NaN in the curve) and
the sweep continues.

The five canned protocols exposed as ``figure_plan(1..5)`` share the
documented defaults L = 1, m = 1, eps = 1, tau = 50, 400-point grids:
figures 1-4 sweep a in (0, 1.8] for the center (n = 2) and the node sets
of modes 3, 4, 5; figure 5 sweeps the massless center curve over the
monotone regime a in (0, 0.27].
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Mapping, Union

from .detector import (
    Center,
    DetectorConfig,
    Node,
    Placement,
    decay_probability_accelerated,
)
from .errors import DomainError, NumericalError, TruncationWarning
from .inertial import CavityGeometry
from .rindler import (
    RindlerGeometry,
    massless_modes,
    normalize_mode,
    solve_eigenfrequencies,
)

__all__ = [
    "SweepPlan",
    "SweepResult",
    "FIGURE_PRESETS",
    "figure_plan",
    "grid_from_bounds",
    "placements_from_spec",
    "placement_label",
    "plan_from_config",
    "run_sweep",
    "local_maxima",
    "node_ranking",
]

FIGURE_PRESETS: dict[int, dict[str, object]] = {
    1: {
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
    },
    5: {
        "length": 1.0,
        "mass": 0.0,
        "accel_min": 0.000675,
        "accel_max": 0.27,
        "accel_steps": 400,
        "mode_n": 2,
        "placement": "center",
        "tau": 50.0,
        "epsilon": 1.0,
        "k_max": 64,
    },
}
for _n, _fig in ((3, 2), (4, 3), (5, 4)):
    FIGURE_PRESETS[_fig] = dict(FIGURE_PRESETS[1], mode_n=_n, placement="nodes")


def placement_label(placement: Placement) -> str:
    """Column label of a placement: "center" or "node<j>"."""
    if isinstance(placement, Center):
        return "center"
    return f"node{placement.j}"


def grid_from_bounds(a_min: float, a_max: float, steps: int) -> tuple[float, ...]:
    """Evenly spaced acceleration grid, endpoints included."""
    if not (0.0 < a_min <= a_max and math.isfinite(a_max)):
        raise DomainError(
            f"need 0 < accel_min <= accel_max, got {a_min!r}, {a_max!r}"
        )
    if not (isinstance(steps, int) and steps >= 1):
        raise DomainError(f"accel_steps must be an integer >= 1, got {steps!r}")
    if steps == 1:
        return (a_min,)
    if a_min == a_max:
        raise DomainError("accel_min == accel_max requires accel_steps = 1")
    span = a_max - a_min
    grid = [a_min + span * i / (steps - 1) for i in range(steps)]
    grid[-1] = a_max  # rounding must not push the top point past the bound
    return tuple(grid)


def placements_from_spec(spec: str, n: int) -> tuple[Placement, ...]:
    """Parse a placement spec: "center", "nodes", or "node<j>"."""
    if spec == "center":
        return (Center(),)
    if spec == "nodes":
        if n < 2:
            raise DomainError("node placements need a reference mode n >= 2")
        return tuple(Node(n, j) for j in range(1, n))
    if spec.startswith("node") and spec[4:].isdigit():
        return (Node(n, int(spec[4:])),)
    raise DomainError(
        f"placement must be 'center', 'nodes', or 'node<j>', got {spec!r}"
    )


@dataclass(frozen=True)
class SweepPlan:
    """Full protocol for one probability-versus-acceleration dataset."""

    length: float
    mass: float
    a_grid: tuple[float, ...]
    mode_n: int = 2
    placements: tuple[Placement, ...] = (Center(),)
    tau: float = 50.0
    epsilon: float = 1.0
    k_max: int = 64
    mode_subset: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.a_grid) == 0:
            raise DomainError("acceleration grid is empty")
        if any(b <= a for a, b in zip(self.a_grid, self.a_grid[1:])):
            raise DomainError("acceleration grid must be strictly increasing")
        if not (isinstance(self.mode_n, int) and self.mode_n >= 1):
            raise DomainError(f"mode_n must be an integer >= 1, got {self.mode_n!r}")
        if not (isinstance(self.k_max, int) and self.k_max >= 1):
            raise DomainError(f"k_max must be an integer >= 1, got {self.k_max!r}")
        if not self.placements:
            raise DomainError("at least one placement is required")
        if self.mode_subset is not None:
            bad = [k for k in self.mode_subset if not (1 <= k <= self.k_max)]
            if bad or not self.mode_subset:
                raise DomainError(
                    f"mode_subset must be nonempty within 1..{self.k_max}"
                )
        if self.mass == 0.0 and any(
            not isinstance(p, Center) for p in self.placements
        ):
            raise DomainError("massless sweeps support center placement only")
        # Validates L, m, tau, epsilon and the horizon bound at the top
        # of the grid; every smaller a is then automatically admissible.
        base = CavityGeometry(self.length, self.mass)
        RindlerGeometry(base, self.a_grid[-1])
        DetectorConfig.resonant(
            base, self.mode_n, tau=self.tau, epsilon=self.epsilon
        )

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(placement_label(p) for p in self.placements)


@dataclass(frozen=True)
class SweepResult:
    """Curves and bookkeeping of one executed sweep."""

    plan: SweepPlan
    curves: dict[str, tuple[float, ...]]
    converged: dict[str, tuple[bool, ...]]
    valid: tuple[bool, ...]
    failures: tuple[tuple[int, str], ...]


def plan_from_config(cfg: Mapping[str, object]) -> SweepPlan:
    """Build a SweepPlan from a flat config mapping.

    Expects the pinned keys length, mass, accel_min, accel_max,
    accel_steps, mode_n, placement, tau, epsilon, k_max.
    """
    try:
        n = int(cfg["mode_n"])
        subset = cfg.get("mode_subset")
        return SweepPlan(
            length=float(cfg["length"]),
            mass=float(cfg["mass"]),
            a_grid=grid_from_bounds(
                float(cfg["accel_min"]),
                float(cfg["accel_max"]),
                int(cfg["accel_steps"]),
            ),
            mode_n=n,
            placements=placements_from_spec(str(cfg["placement"]), n),
            tau=float(cfg["tau"]),
            epsilon=float(cfg["epsilon"]),
            k_max=int(cfg["k_max"]),
            mode_subset=tuple(subset) if subset is not None else None,
        )
    except KeyError as exc:
        raise DomainError(f"sweep config is missing key {exc}") from None


def figure_plan(which: int) -> SweepPlan:
    """One of the five canned sweep protocols (see module docstring)."""
    if which not in FIGURE_PRESETS:
        raise DomainError(f"figure preset must be 1..5, got {which!r}")
    return plan_from_config(FIGURE_PRESETS[which])


def _evaluate_point(plan: SweepPlan, a: float) -> tuple[list[float], list[bool]]:
    base = CavityGeometry(plan.length, plan.mass)
    geom = RindlerGeometry(base, a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        if plan.mass == 0.0:
            modes = massless_modes(geom, plan.k_max)
            if plan.mode_subset is not None:
                keep = set(plan.mode_subset)
                modes = [m for m in modes if m.k in keep]
        else:
            indices = (
                sorted(set(plan.mode_subset))
                if plan.mode_subset is not None
                else None
            )
            modes = solve_eigenfrequencies(geom, plan.k_max, indices=indices)
            modes = [normalize_mode(geom, m) for m in modes]
        values: list[float] = []
        conv: list[bool] = []
        for placement in plan.placements:
            det = DetectorConfig.resonant(
                base,
                plan.mode_n,
                tau=plan.tau,
                epsilon=plan.epsilon,
                placement=placement,
            )
            res = decay_probability_accelerated(geom, modes, det)
            values.append(res.probability)
            conv.append(res.converged)
    return values, conv


def _point_worker(plan: SweepPlan, a: float):
    try:
        values, conv = _evaluate_point(plan, a)
        return values, conv, None
    except NumericalError as exc:
        n = len(plan.placements)
        return [math.nan] * n, [False] * n, f"{type(exc).__name__}: {exc}"


def _max_workers() -> int:
    raw = os.environ.get("RP_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"RP_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def run_sweep(plan: SweepPlan) -> SweepResult:
    """Execute a plan over its grid; deterministic for a fixed plan.

    Points run serially unless RP_THREADS > 1, in which case they spread
    over a process pool; assembly is in grid order either way, so the
    parallel and serial results are identical.
    """
    worker = partial(_point_worker, plan)
    n_workers = min(_max_workers(), len(plan.a_grid))
    if n_workers > 1:
        chunk = max(1, len(plan.a_grid) // (8 * n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            outs = list(pool.map(worker, plan.a_grid, chunksize=chunk))
    else:
        outs = [worker(a) for a in plan.a_grid]

    labels = plan.labels
    curves = {lbl: [] for lbl in labels}
    converged = {lbl: [] for lbl in labels}
    valid: list[bool] = []
    failures: list[tuple[int, str]] = []
    for i, (values, conv, err) in enumerate(outs):
        valid.append(err is None)
        if err is not None:
            failures.append((i, err))
        for lbl, v, c in zip(labels, values, conv):
            curves[lbl].append(v)
            converged[lbl].append(c)
    return SweepResult(
        plan=plan,
        curves={lbl: tuple(vs) for lbl, vs in curves.items()},
        converged={lbl: tuple(cs) for lbl, cs in converged.items()},
        valid=tuple(valid),
        failures=tuple(failures),
    )


def _label_of(result: SweepResult, placement) -> str:
    if isinstance(placement, str):
        if placement not in result.curves:
            raise DomainError(
                f"unknown placement {placement!r}; have {sorted(result.curves)}"
            )
        return placement
    return placement_label(placement)


def local_maxima(result: SweepResult, placement) -> list[tuple[float, float]]:
    """Interior strict local maxima of one curve, as (a, P) pairs.

    Three-point comparison with plateau ties resolved to the leftmost
    plateau point; windows touching invalid points are skipped, and a
    curve with fewer than three valid points yields an empty list.
    """
    label = _label_of(result, placement)
    curve = result.curves[label]
    grid = result.plan.a_grid
    valid = result.valid
    maxima: list[tuple[float, float]] = []
    n = len(curve)
    i = 1
    while i < n - 1:
        if not (valid[i - 1] and valid[i]):
            i += 1
            continue
        if not curve[i] > curve[i - 1]:
            i += 1
            continue
        j = i
        while j + 1 < n and valid[j + 1] and curve[j + 1] == curve[i]:
            j += 1
        if j + 1 < n and valid[j + 1] and curve[j + 1] < curve[i]:
            maxima.append((grid[i], curve[i]))
        i = j + 1
    return maxima


def node_ranking(
    source: Union[SweepPlan, SweepResult],
) -> list[Placement]:
    """Placements ordered by descending peak probability over the grid."""
    result = run_sweep(source) if isinstance(source, SweepPlan) else source
    peaks = []
    for placement in result.plan.placements:
        curve = result.curves[placement_label(placement)]
        vals = [v for v, ok in zip(curve, result.valid) if ok]
        peaks.append((max(vals) if vals else -math.inf, placement))
    peaks.sort(key=lambda t: -t[0])
    return [p for _, p in peaks]
