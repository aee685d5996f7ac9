"""Shared numerical utilities: adaptive quadrature and root refinement.

The quadrature is a hand-rolled adaptive Simpson rule rather than
scipy.integrate.quad because the mode-normalization integrands call into
the Bessel kernels and may raise typed errors mid-integration; a plain
Python driver propagates those exceptions cleanly and enforces an
explicit subdivision budget.  Root refinement delegates to scipy's Brent
method once a sign change is in hand.
"""

from __future__ import annotations

import math
from collections.abc import Callable

from scipy.optimize import brentq

from .errors import BracketingError, QuadratureError

# Brent tolerances: rtol at the scipy-allowed floor (4*eps) so eigenvalues
# come out near machine precision; xtol only matters for roots near zero.
_BRENT_RTOL = 8.881784197001252e-16
_BRENT_XTOL = 1.0e-13


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    *,
    rel_tol: float = 1.0e-10,
    abs_tol: float = 1.0e-11,
    max_panels: int = 10_000,
    initial_panels: int = 16,
) -> float:
    """Integrate f over [a, b] by adaptive Simpson subdivision.

    Panels split until the classic |S2 - S1| <= 15 * tol criterion holds,
    with the local tolerance apportioned by interval fraction; accepted
    panels use the Richardson-extrapolated value.  The relative part of
    the tolerance is anchored to a coarse global estimate so oscillatory
    integrands that nearly cancel fall back to the absolute floor.

    ``initial_panels`` sets the bootstrap mesh.  Callers integrating an
    oscillatory function must size it to resolve the oscillation (a few
    panels per half-wave): if a panel spans whole periods, the halved
    panel can alias to the same value and the split criterion accepts a
    wildly wrong result.

    Raises:
        QuadratureError: if more than ``max_panels`` panels are needed.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_simpson(
            f,
            b,
            a,
            rel_tol=rel_tol,
            abs_tol=abs_tol,
            max_panels=max_panels,
            initial_panels=initial_panels,
        )

    # Coarse scale estimate for the relative criterion doubles as the
    # starting mesh.
    n0 = max(4, int(initial_panels))
    h0 = (b - a) / n0
    xs = [a + i * h0 for i in range(n0 + 1)]
    fs = [f(x) for x in xs]
    coarse = (
        h0
        / 3.0
        * (
            fs[0]
            + fs[-1]
            + 4.0 * sum(fs[1:-1:2])
            + 2.0 * sum(fs[2:-1:2])
        )
    )
    tol_global = max(abs_tol, rel_tol * abs(coarse))

    total = 0.0
    panels = 0
    # Stack entries: (a, fa, b, fb, m, fm, simpson_estimate, tol)
    def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 6.0 * (fa + 4.0 * fm + fb)

    stack = []
    for i in range(n0):
        lo, hi = xs[i], xs[i + 1]
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        s = _simpson(fs[i], fmid, fs[i + 1], hi - lo)
        stack.append((lo, fs[i], hi, fs[i + 1], mid, fmid, s, tol_global / n0))

    while stack:
        lo, flo, hi, fhi, mid, fmid, s_whole, tol = stack.pop()
        panels += 1
        if panels > max_panels:
            raise QuadratureError(
                f"adaptive Simpson exceeded {max_panels} panels on "
                f"[{a:g}, {b:g}]"
            )
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = f(lm)
        frm = f(rm)
        s_left = _simpson(flo, flm, fmid, mid - lo)
        s_right = _simpson(fmid, frm, fhi, hi - mid)
        delta = s_left + s_right - s_whole
        if abs(delta) <= 15.0 * tol:
            total += s_left + s_right + delta / 15.0
        else:
            half = 0.5 * tol
            stack.append((lo, flo, mid, fmid, lm, flm, s_left, half))
            stack.append((mid, fmid, hi, fhi, rm, frm, s_right, half))
    return total


def bracketed_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
) -> float:
    """Refine a root of f known to change sign on [lo, hi].

    Raises:
        BracketingError: if f has the same sign at both endpoints; the
            exception carries the window that was searched.
    """
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise BracketingError(
            f"no sign change on [{lo:.15g}, {hi:.15g}] "
            f"(f = {flo:.3e}, {fhi:.3e})",
            window=(lo, hi),
        )
    return float(brentq(f, lo, hi, xtol=_BRENT_XTOL, rtol=_BRENT_RTOL))


def frequency_spacing_scan(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    step: float,
) -> list[tuple[float, float]]:
    """Collect sign-change brackets of f on [lo, hi] with a fixed step.

    The step must undercut the smallest root spacing; exact zeros landed
    on by the grid are returned as degenerate brackets.
    """
    if not (step > 0.0 and math.isfinite(step)):
        raise ValueError(f"scan step must be positive, got {step!r}")
    brackets: list[tuple[float, float]] = []
    x_prev = lo
    f_prev = f(lo)
    if f_prev == 0.0:
        brackets.append((lo, lo))
    n = max(1, math.ceil((hi - lo) / step))
    for i in range(1, n + 1):
        x = lo + (hi - lo) * i / n
        fx = f(x)
        if fx == 0.0:
            brackets.append((x, x))
        elif f_prev != 0.0 and (f_prev > 0.0) != (fx > 0.0):
            brackets.append((x_prev, x))
        x_prev, f_prev = x, fx
    return brackets
