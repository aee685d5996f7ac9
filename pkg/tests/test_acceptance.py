"""Release acceptance suite.

Ten end-to-end checks, one per shipped guarantee, each printing a
visible ``[PASS]``/``[FAIL]`` line so a full run reads as a checklist.
Every check pins the documented tolerance; a FAIL here is a real defect,
never a tolerance to be loosened.
"""

import math
from dataclasses import replace

import pytest

from oracles import i0_series
from rindler_purcell import (
    CavityGeometry,
    DetectorConfig,
    RindlerGeometry,
    decay_probability_accelerated,
    decay_probability_massless,
    decay_probability_rest,
    massless_frequency,
    mode_frequency,
    mode_value,
    normalize_mode,
    solve_eigenfrequencies,
)
from rindler_purcell import __version__, specfun
from rindler_purcell import sweep as sweep_mod
from rindler_purcell.cli import main
from rindler_purcell.errors import NumericalError
from rindler_purcell.numerics import adaptive_simpson
from rindler_purcell.sweep import (
    FIGURE_PRESETS,
    figure_plan,
    grid_from_bounds,
    local_maxima,
    run_sweep,
)


def announce(capsys, number, label, ok, detail=""):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {number:>2}. {label}")
    assert ok, detail or label


def bessel_ode_residual(nu: float, x: float, h: float = 0.005) -> float:
    """Relative defect of I_{i nu} in x^2 f'' + x f' - (x^2 - nu^2) f = 0."""
    fm2, fm1, f0, fp1, fp2 = (
        specfun.bessel_I_imag_order(nu, x + i * h) for i in (-2, -1, 0, 1, 2)
    )
    fp = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h)
    fpp = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h)
    terms = (x * x * fpp, x * fp, -(x * x - nu * nu) * f0)
    return abs(sum(terms)) / max(abs(t) for t in terms)


def test_criterion_01_special_function_identities(capsys):
    worst_series = max(
        abs(specfun.bessel_I_imag_order(0.0, x).real - i0_series(x))
        / i0_series(x)
        for x in [0.1 + 0.35 * i for i in range(57)]  # covers [0.1, 19.7]
    )
    worst_ode = max(
        bessel_ode_residual(nu, x)
        for nu in (0.5, 1.0, 5.0)
        for x in (0.5, 2.0, 10.0)
    )
    gamma_sq = abs(specfun.complex_gamma(1 + 1j)) ** 2
    want = math.pi / math.sinh(math.pi)
    gamma_err = abs(gamma_sq - want) / want
    ok = worst_series <= 1e-12 and worst_ode <= 1e-6 and gamma_err <= 1e-12
    announce(
        capsys,
        1,
        "special functions: zero-order series, Bessel equation, gamma modulus",
        ok,
        f"series {worst_series:.2e} (<=1e-12), equation {worst_ode:.2e} "
        f"(<=1e-6), gamma {gamma_err:.2e} (<=1e-12)",
    )


def test_criterion_02_inertial_limit(capsys):
    rest = CavityGeometry(1.0, 1.0)
    geom = RindlerGeometry(rest, 1e-3)
    modes = [normalize_mode(geom, m) for m in solve_eigenfrequencies(geom, 64)]
    worst_freq = max(
        abs(m.Omega - mode_frequency(rest, m.k)) / mode_frequency(rest, m.k)
        for m in modes[:5]
    )
    det = DetectorConfig.resonant(rest, 2, tau=10.0)
    with pytest.warns(Warning):
        p_acc = decay_probability_accelerated(geom, modes, det).probability
        p_rest = decay_probability_rest(rest, det, k_max=64).probability
    p_err = abs(p_acc - p_rest) / p_rest
    ok = worst_freq <= 1e-3 and p_err <= 1e-3
    announce(
        capsys,
        2,
        "a -> 0 recovers the resting spectrum and probability",
        ok,
        f"frequencies {worst_freq:.2e} (<=1e-3), probability {p_err:.2e} (<=1e-3)",
    )


def test_criterion_03_massless_closed_form(capsys):
    worst = 0.0
    for a in (0.2, 1.0, 1.8):
        geom = RindlerGeometry(CavityGeometry(1.0, 1e-6), a)
        reference = RindlerGeometry(CavityGeometry(1.0, 0.0), a)
        for mode in solve_eigenfrequencies(geom, 5):
            want = massless_frequency(reference, mode.k)
            worst = max(worst, abs(mode.Omega - want) / want)
    ok = worst <= 1e-4
    announce(
        capsys,
        3,
        "tiny-mass solver matches the massless closed form",
        ok,
        f"worst relative deviation {worst:.2e} (<=1e-4)",
    )


def test_criterion_04_mode_orthonormality(capsys):
    geom = RindlerGeometry(CavityGeometry(1.0, 1.0), 1.0)
    modes = [normalize_mode(geom, m) for m in solve_eigenfrequencies(geom, 6)]
    worst = 0.0
    for i, mi in enumerate(modes):
        for mj in modes[i:]:
            integral = adaptive_simpson(
                lambda w: mode_value(geom, mi, math.exp(w) / geom.accel)
                * mode_value(geom, mj, math.exp(w) / geom.accel),
                geom.w1,
                geom.w2,
                abs_tol=1e-13,
                initial_panels=max(16, 4 * (mi.k + mj.k)),
            )
            gram = (mi.Omega + mj.Omega) / geom.accel * integral
            want = 1.0 if mi.k == mj.k else 0.0
            worst = max(worst, abs(gram - want))
    ok = worst <= 1e-6
    announce(
        capsys,
        4,
        "normalized modes are orthonormal in the curved norm",
        ok,
        f"worst Gram defect {worst:.2e} (<=1e-6)",
    )


def test_criterion_05_center_enhancement_curve(capsys):
    plan = replace(figure_plan(1), mode_subset=(2,))
    result = run_sweep(plan)
    assert result.failures == ()
    curve = result.curves["center"]
    peak = max(curve)
    floor = run_sweep(replace(plan, a_grid=(1e-4,))).curves["center"][0]
    maxima = [p for _, p in local_maxima(result, "center")]
    decreasing = all(b < a for a, b in zip(maxima, maxima[1:]))
    ok = floor <= 1e-6 * peak and len(maxima) >= 2 and decreasing
    announce(
        capsys,
        5,
        "center detector: dark at rest, resonance peaks decay with a",
        ok,
        f"floor/peak {floor / peak:.2e} (<=1e-6), {len(maxima)} interior "
        f"maxima (>=2), strictly decreasing: {decreasing}",
    )


def test_criterion_06_monotone_low_acceleration_regime(capsys):
    result = run_sweep(figure_plan(5))
    assert result.failures == ()
    curve = result.curves["center"]
    increasing = all(b > a for a, b in zip(curve, curve[1:]))
    maxima = local_maxima(result, "center")
    ok = increasing and not maxima
    announce(
        capsys,
        6,
        "low-acceleration massless curve rises monotonically",
        ok,
        f"strictly increasing: {increasing}, interior maxima: {len(maxima)} (=0)",
    )


def test_criterion_07_node_hierarchy(capsys):
    peaks = {}
    for n, fig in ((4, 3), (3, 2)):
        plan = replace(figure_plan(fig), mode_subset=(n,))
        result = run_sweep(plan)
        assert result.failures == ()
        peaks[n] = {
            lbl: max(v for v, ok in zip(curve, result.valid) if ok)
            for lbl, curve in result.curves.items()
        }
    middle_ok = peaks[4]["node2"] > peaks[4]["node1"] and (
        peaks[4]["node2"] > peaks[4]["node3"]
    )
    front_over_rear = peaks[3]["node2"] > peaks[3]["node1"]
    ok = middle_ok and front_over_rear
    announce(
        capsys,
        7,
        "node hierarchy: middle node strongest, front node above rear",
        ok,
        f"four-node middle strongest: {middle_ok} {peaks[4]}; "
        f"three-node front above rear: {front_over_rear} {peaks[3]}",
    )


def test_criterion_08_exact_coupling_scaling(capsys):
    checks = []
    geom = RindlerGeometry(CavityGeometry(1.0, 0.0), 0.7)
    for eps in (0.5, 1.0):
        p1 = decay_probability_massless(
            geom, DetectorConfig(omega=2 * math.pi, epsilon=eps, tau=11.0), 32
        ).probability
        p2 = decay_probability_massless(
            geom, DetectorConfig(omega=2 * math.pi, epsilon=2 * eps, tau=11.0), 32
        ).probability
        checks.append(p2 == 4.0 * p1)
    mgeom = RindlerGeometry(CavityGeometry(1.0, 1.0), 0.3)
    modes = [
        normalize_mode(mgeom, m)
        for m in solve_eigenfrequencies(mgeom, 2, indices=[2])
    ]
    rest = CavityGeometry(1.0, 1.0)
    q1 = decay_probability_accelerated(
        mgeom, modes, DetectorConfig.resonant(rest, 2, tau=50.0, epsilon=1.0)
    ).probability
    q2 = decay_probability_accelerated(
        mgeom, modes, DetectorConfig.resonant(rest, 2, tau=50.0, epsilon=2.0)
    ).probability
    checks.append(q2 == 4.0 * q1)
    ok = all(checks)
    announce(
        capsys,
        8,
        "doubling the coupling exactly quadruples the probability",
        ok,
        f"equality checks: {checks}",
    )


def test_criterion_09_continuity_through_level_crossing(capsys):
    # Omega_3(a) falls through the detector tuning omega_2 = 2 pi inside
    # this window; the curve must stay smooth at 400-point resolution
    rest = CavityGeometry(1.0, 0.0)
    det = DetectorConfig.resonant(rest, 2, tau=50.0)
    a_star = 1.7117911956652851
    grid = grid_from_bounds(a_star - 0.07, a_star + 0.07, 400)
    values = []
    crossed = False
    for a in grid:
        geom = RindlerGeometry(rest, a)
        values.append(
            decay_probability_massless(geom, det, k_max=8).probability
        )
        if massless_frequency(geom, 3) <= det.omega:
            crossed = True
    jump = max(abs(b - a) for a, b in zip(values, values[1:]))
    peak = max(values)
    ok = crossed and jump <= 0.05 * peak
    announce(
        capsys,
        9,
        "probability stays continuous when a mode crosses the tuning",
        ok,
        f"crossing inside window: {crossed}, max jump {jump / peak:.2%} of peak (<=5%)",
    )


def test_criterion_10_cli_contract(capsys, tmp_path, monkeypatch):
    problems = []
    echo_keys = [
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
    ]

    def run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    # every preset emits schema-valid CSV
    for fig, preset in sorted(FIGURE_PRESETS.items()):
        out_path = tmp_path / f"fig{fig}.csv"
        code, _, _ = run(
            "sweep",
            "--figure",
            str(fig),
            "--accel-steps",
            "6",
            "--k-max",
            "6",
            "--output",
            str(out_path),
        )
        lines = out_path.read_text().splitlines() if out_path.exists() else []
        comments = [ln for ln in lines if ln.startswith("#")]
        body = [ln for ln in lines if not ln.startswith("#")]
        if code != 0:
            problems.append(f"preset {fig} exited {code}")
            continue
        if comments[0] != f"# rindler-purcell v{__version__}":
            problems.append(f"preset {fig} lacks the version line")
        keys = [c.split()[1] for c in comments if " = " in c]
        if keys != echo_keys:
            problems.append(f"preset {fig} echo keys {keys}")
        n_cols = len(body[0].split(","))
        if preset["placement"] == "center":
            want_cols = 2
        else:
            want_cols = int(preset["mode_n"])  # a + (mode_n - 1) nodes
        if n_cols != want_cols:
            problems.append(f"preset {fig} has {n_cols} columns, want {want_cols}")
        if len(body) - 1 != 6:
            problems.append(f"preset {fig} wrote {len(body) - 1} rows")
        for row in body[1:]:
            if not all(math.isfinite(float(cell)) for cell in row.split(",")):
                problems.append(f"preset {fig} has non-finite entries")
                break

    # the echoed header reproduces the dataset byte for byte
    first = tmp_path / "first.csv"
    run(
        "sweep", "--figure", "5", "--accel-steps", "10", "--k-max", "8",
        "--output", str(first),
    )
    cfg_path = tmp_path / "replay.cfg"
    cfg_path.write_text(
        "\n".join(
            ln[2:]
            for ln in first.read_text().splitlines()
            if ln.startswith("# ") and " = " in ln
        )
        + "\n"
    )
    second = tmp_path / "second.csv"
    run("sweep", "--config", str(cfg_path), "--output", str(second))
    if first.read_bytes() != second.read_bytes():
        problems.append("round-trip rerun differs from the original")

    # exit codes: 1 usage/domain, 2 numerical, 3 i/o
    bad_cfg = tmp_path / "bad.cfg"
    bad_cfg.write_text("bogus = 1\n")
    code, _, _ = run("sweep", "--config", str(bad_cfg))
    if code != 1:
        problems.append(f"unknown config key exited {code}, want 1")
    code, _, _ = run("modes", "--accel", "2.5", "--mass", "0")
    if code != 1:
        problems.append(f"horizon violation exited {code}, want 1")

    def boom(plan, a):
        raise NumericalError("synthetic failure")

    with monkeypatch.context() as mp:
        mp.setattr(sweep_mod, "_evaluate_point", boom)
        code, _, _ = run(
            "sweep", "--figure", "5", "--accel-steps", "2", "--k-max", "4",
            "--output", str(tmp_path / "partial.csv"),
        )
    if code != 2:
        problems.append(f"numerical failure exited {code}, want 2")
    code, _, _ = run(
        "sweep", "--figure", "5", "--accel-steps", "2", "--k-max", "4",
        "--output", str(tmp_path / "no" / "dir" / "x.csv"),
    )
    if code != 3:
        problems.append(f"unwritable output exited {code}, want 3")

    ok = not problems
    announce(
        capsys,
        10,
        "CLI: valid CSV, byte-identical replay, documented exit codes",
        ok,
        "; ".join(problems),
    )
