"""Accelerated cavity: geometry, eigenfrequencies, and field modes.

A cavity of proper length L whose center rides a uniformly accelerated
worldline (proper acceleration a) is static between the mirror
coordinates chi1 = 1/a - L/2 and chi2 = 1/a + L/2 of the comoving
(Rindler) frame, where the metric is ds^2 = (a chi)^2 dt^2 - dchi^2; the
constraint a L < 2 keeps the rear mirror ahead of the horizon.  Writing
the field as e^{-i Omega t} F(chi) and stretching the coordinate to
w = ln(a chi) turns the wave equation into

    F''(w) + [nu^2 - (m/a)^2 e^{2w}] F(w) = 0,      nu = Omega / a,

whose solution anchored to vanish at the front mirror is the
imaginary-order Bessel cross product
S(nu, m chi, m chi2) = Im[I_{i nu}(m chi) conj(I_{i nu}(m chi2))];
the Dirichlet condition at chi1 quantizes nu.  Massless modes reduce to
sines of the tortoise coordinate xi = (1/a) ln(a chi), with exactly even
spacing Omega_k = k pi / L' over the stretched length
L' = (1/a) ln((1 + aL/2) / (1 - aL/2)).

Two evaluation routes are used interchangeably: the exponentially scaled
series cross product wherever its predicted cancellation is acceptable,
and direct integration of the w-equation (DOP853, with an extra
quadrature state for the norm) elsewhere, in particular deep in the
inertial regime a L << 1 where nu is enormous and the series loses
hundreds of digits.  Eigenvalues are isolated by rigorous windows

    nu_k^2 in [(k pi / (a L'))^2 + (m chi1)^2,
               (k pi / (a L'))^2 + (m chi2)^2]

obtained by bounding the monotone potential, so each root is a sign
change inside its own window whenever the windows are disjoint; a global
scan with a sub-spacing step covers the overlapping case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Any

from scipy.integrate import solve_ivp

from . import specfun
from .errors import (
    BracketingError,
    DomainError,
    NumericalError,
    PrecisionLossError,
)
from .numerics import adaptive_simpson, bracketed_root, frequency_spacing_scan

if TYPE_CHECKING:  # geometry base type lives with the inertial closed forms
    from .inertial import CavityGeometry

__all__ = [
    "RindlerGeometry",
    "RindlerMode",
    "massless_frequency",
    "massless_modes",
    "solve_eigenfrequencies",
    "normalize_mode",
    "mode_value",
]

# Predicted-cancellation ceiling (natural-log units) below which the
# series route is trusted; eps_mach * e^14 ~ 3e-10 keeps comfortably
# inside the 1e-9 measured-loss ceiling the kernels enforce.
_SERIES_LOSS_MAX = 14.0

_ODE_RTOL = 1.0e-11
_ODE_ATOL = 1.0e-14

_ROUTES = ("auto", "series", "ode")


@dataclass(frozen=True)
class RindlerGeometry:
    """Accelerated-cavity geometry derived from a rest geometry and a."""

    base: "CavityGeometry"
    accel: float

    def __post_init__(self) -> None:
        a = self.accel
        if not (a > 0.0 and math.isfinite(a)):
            raise DomainError(f"proper acceleration must be > 0, got {a!r}")
        if a * self.base.length >= 2.0:
            raise DomainError(
                f"a*L = {a * self.base.length:g} >= 2 puts the rear mirror "
                "at or behind the horizon"
            )

    @property
    def length(self) -> float:
        return self.base.length

    @property
    def mass(self) -> float:
        return self.base.mass

    @property
    def chi1(self) -> float:
        """Rear mirror coordinate 1/a - L/2."""
        return 1.0 / self.accel - 0.5 * self.length

    @property
    def chi2(self) -> float:
        """Front mirror coordinate 1/a + L/2."""
        return 1.0 / self.accel + 0.5 * self.length

    @property
    def w1(self) -> float:
        """Stretched coordinate ln(a chi) of the rear mirror (< 0)."""
        return math.log1p(-0.5 * self.accel * self.length)

    @property
    def w2(self) -> float:
        """Stretched coordinate ln(a chi) of the front mirror (> 0)."""
        return math.log1p(0.5 * self.accel * self.length)

    @property
    def xi1(self) -> float:
        """Tortoise coordinate of the rear mirror."""
        return self.w1 / self.accel

    @property
    def xi2(self) -> float:
        """Tortoise coordinate of the front mirror."""
        return self.w2 / self.accel

    @property
    def lprime(self) -> float:
        """Stretched cavity length xi2 - xi1; exceeds L and grows with a."""
        return (self.w2 - self.w1) / self.accel


@dataclass(frozen=True)
class RindlerMode:
    """One accelerated-cavity eigenmode.

    ``N`` multiplies the route's raw profile (defaults to 1 until
    ``normalize_mode`` fixes it); ``route`` records how values are
    produced: "series" holds the scaled Bessel value at the front mirror
    in ``wall``, "ode" holds the dense w-space solution in ``dense``
    together with its norm integral, and "massless" is closed-form.
    """

    k: int
    Omega: float
    N: float = 1.0
    route: str = "series"
    wall: complex | None = field(default=None, repr=False, compare=False)
    dense: Any = field(default=None, repr=False, compare=False)
    norm_integral: float | None = field(default=None, repr=False, compare=False)


def _check_index(k: int) -> int:
    if not (isinstance(k, int) and k >= 1):
        raise DomainError(f"mode index must be an integer >= 1, got {k!r}")
    return k


def massless_frequency(geom: RindlerGeometry, k: int) -> float:
    """Closed-form massless eigenfrequency Omega_k = k pi / L'."""
    _check_index(k)
    if geom.mass != 0.0:
        raise DomainError("massless_frequency requires a massless geometry")
    return k * math.pi / geom.lprime


def massless_modes(geom: RindlerGeometry, k_max: int) -> list[RindlerMode]:
    """The first k_max massless modes, already normalized (N = 1/sqrt(k pi))."""
    _check_index(k_max)
    if geom.mass != 0.0:
        raise DomainError("massless_modes requires a massless geometry")
    return [
        RindlerMode(
            k=k,
            Omega=massless_frequency(geom, k),
            N=1.0 / math.sqrt(k * math.pi),
            route="massless",
        )
        for k in range(1, k_max + 1)
    ]


def _window(geom: RindlerGeometry, k: int) -> tuple[float, float]:
    """Rigorous bounds on nu_k from freezing the potential at either mirror."""
    c = math.pi / (geom.w2 - geom.w1)
    return (
        math.hypot(k * c, geom.mass * geom.chi1),
        math.hypot(k * c, geom.mass * geom.chi2),
    )


def _series_route_ok(geom: RindlerGeometry, nu: float) -> bool:
    x2 = geom.mass * geom.chi2
    if x2 > specfun.SCALED_X_MAX or nu > specfun.SCALED_NU_MAX:
        return False
    x1 = geom.mass * geom.chi1
    loss = max(
        specfun.series_loss_exponent(nu, x1),
        specfun.series_loss_exponent(nu, x2),
    )
    return loss <= _SERIES_LOSS_MAX


def _g_series(geom: RindlerGeometry, nu: float) -> float:
    """Quantization function: scaled S(nu, m chi1, m chi2)."""
    return specfun.bessel_cross_product_scaled(
        nu, geom.mass * geom.chi1, geom.mass * geom.chi2
    )


def _ode_endpoint(geom: RindlerGeometry, nu: float) -> float:
    """Quantization function via the w-equation.

    Integrates from the front mirror (G = 0, G' = nu, matching the sign
    and zero structure of the series route up to a positive factor) down
    to the rear mirror and returns G(w1).
    """
    m_over_a = geom.mass / geom.accel
    nu2 = nu * nu

    def rhs(w: float, y):
        v = m_over_a * math.exp(w)
        return (y[1], (v * v - nu2) * y[0])

    sol = solve_ivp(
        rhs,
        (geom.w2, geom.w1),
        (0.0, nu),
        method="DOP853",
        rtol=_ODE_RTOL,
        atol=_ODE_ATOL,
    )
    if not sol.success:
        raise NumericalError(
            f"mode ODE integration failed at nu={nu:g}: {sol.message}"
        )
    return float(sol.y[0, -1])


def _ode_solution(geom: RindlerGeometry, nu: float):
    """Dense w-space mode profile plus its norm integral.

    Returns (dense_solution, integral of G^2 dw over the cavity); the
    integral rides along as an extra quadrature state of the same solve.
    """
    m_over_a = geom.mass / geom.accel
    nu2 = nu * nu

    def rhs(w: float, y):
        v = m_over_a * math.exp(w)
        return (y[1], (v * v - nu2) * y[0], y[0] * y[0])

    sol = solve_ivp(
        rhs,
        (geom.w2, geom.w1),
        (0.0, nu, 0.0),
        method="DOP853",
        rtol=_ODE_RTOL,
        atol=_ODE_ATOL,
        dense_output=True,
    )
    if not sol.success:
        raise NumericalError(
            f"mode ODE integration failed at nu={nu:g}: {sol.message}"
        )
    return sol.sol, abs(float(sol.y[2, -1]))


def _g_auto(geom: RindlerGeometry, nu: float) -> float:
    """Route-dispatched quantization function.

    Both routes share zeros and sign (the ODE solution equals the series
    one times the positive factor 2 pi nu / (1 - e^{-2 pi nu})), so a
    per-point switch cannot flip a bracket.
    """
    if _series_route_ok(geom, nu):
        try:
            return _g_series(geom, nu)
        except PrecisionLossError:
            pass
    return _ode_endpoint(geom, nu)


def _make_g(geom: RindlerGeometry, route: str):
    if route == "series":
        return lambda nu: _g_series(geom, nu)
    if route == "ode":
        return lambda nu: _ode_endpoint(geom, nu)
    return lambda nu: _g_auto(geom, nu)


def _root_in_window(geom: RindlerGeometry, k: int, route: str) -> float:
    lo, hi = _window(geom, k)
    # The window always contains the root.  At tiny m*chi it collapses to
    # tens of ulps, where g is roundoff noise and bracketing on its sign
    # is meaningless; the midpoint is then already converged, with error
    # at most half the window, i.e. a few ulps of nu.
    if hi - lo <= 1.0e-13 + 64.0 * math.ulp(hi):
        return 0.5 * (lo + hi)
    g = _make_g(geom, route)
    try:
        return bracketed_root(g, lo, hi)
    except BracketingError:
        # Endpoint rounding can hide the guaranteed sign change; look for
        # it on progressively finer interior grids before giving up.
        for n_sub in (8, 64, 512):
            brackets = frequency_spacing_scan(g, lo, hi, (hi - lo) / n_sub)
            if brackets:
                b_lo, b_hi = brackets[0]
                if b_lo == b_hi:
                    return b_lo
                return bracketed_root(g, b_lo, b_hi)
        raise BracketingError(
            f"no eigenvalue sign change inside the k={k} window",
            window=(lo, hi),
        ) from None


def _roots_by_scan(
    geom: RindlerGeometry, k_top: int, route: str
) -> list[float]:
    """Global scan fallback for overlapping windows.

    Eigenvalues are simple, so a step below the smallest predicted
    spacing cannot jump over a sign change; the i-th crossing above the
    k=1 lower bound is nu_i.
    """
    lo = _window(geom, 1)[0] * (1.0 - 1.0e-9)
    hi = _window(geom, k_top)[1] * (1.0 + 1.0e-12)
    x_mid = geom.mass * (0.5 * (geom.chi1 + geom.chi2))
    c = math.pi / (geom.w2 - geom.w1)
    centers = [math.hypot(k * c, x_mid) for k in range(1, k_top + 2)]
    spacing = min(b - a for a, b in zip(centers, centers[1:]))
    step = 0.2 * spacing
    g = _make_g(geom, route)
    for _ in range(4):
        brackets = frequency_spacing_scan(g, lo, hi, step)
        if len(brackets) >= k_top:
            break
        step *= 0.25
    else:
        raise BracketingError(
            f"scan found {len(brackets)} of {k_top} eigenvalues",
            window=(lo, hi),
        )
    roots = []
    for b_lo, b_hi in brackets[:k_top]:
        roots.append(b_lo if b_lo == b_hi else bracketed_root(g, b_lo, b_hi))
    for k, root in enumerate(roots, start=1):
        w_lo, w_hi = _window(geom, k)
        if not (w_lo <= root <= w_hi):
            raise BracketingError(
                f"scan root {root:g} escaped the k={k} window",
                window=(w_lo, w_hi),
            )
    return roots


def _build_mode(geom: RindlerGeometry, k: int, nu: float, route: str) -> RindlerMode:
    if route == "auto":
        route = "series" if _series_route_ok(geom, nu) else "ode"
    if route == "series":
        try:
            wall = specfun.bessel_I_imag_order_scaled(nu, geom.mass * geom.chi2)
            return RindlerMode(
                k=k, Omega=nu * geom.accel, route="series", wall=wall
            )
        except PrecisionLossError:
            pass
    dense, integral = _ode_solution(geom, nu)
    return RindlerMode(
        k=k,
        Omega=nu * geom.accel,
        route="ode",
        dense=dense,
        norm_integral=integral,
    )


def solve_eigenfrequencies(
    geom: RindlerGeometry,
    k_max: int,
    *,
    indices: list[int] | None = None,
    route: str = "auto",
) -> list[RindlerMode]:
    """First k_max massive eigenfrequencies, in increasing order.

    Each returned mode is unnormalized (N = 1); pass it through
    ``normalize_mode`` before evaluating probabilities.  ``indices``
    restricts the solve to a subset of 1..k_max (the windows still
    guarantee correct labeling); ``route`` forces "series" or "ode"
    evaluation, mainly for cross-checking.

    Raises:
        DomainError: for a massless geometry (that spectrum is closed
            form) or invalid indices.
        BracketingError: if a root cannot be isolated.
    """
    if geom.mass <= 0.0:
        raise DomainError(
            "massive solver requires m > 0; use massless_modes instead"
        )
    _check_index(k_max)
    if route not in _ROUTES:
        raise DomainError(f"route must be one of {_ROUTES}, got {route!r}")
    if indices is None:
        ks = list(range(1, k_max + 1))
    else:
        ks = sorted(set(indices))
        if not ks or ks[0] < 1 or ks[-1] > k_max or not all(
            isinstance(k, int) for k in ks
        ):
            raise DomainError(
                f"indices must be integers within 1..{k_max}, got {indices!r}"
            )
    k_top = ks[-1]
    disjoint = all(
        _window(geom, k + 1)[0] > _window(geom, k)[1] for k in range(1, k_top)
    )
    if disjoint:
        roots = {k: _root_in_window(geom, k, route) for k in ks}
    else:
        scan = _roots_by_scan(geom, k_top, route)
        roots = {k: scan[k - 1] for k in ks}
    return [_build_mode(geom, k, roots[k], route) for k in ks]


def _profile(geom: RindlerGeometry, mode: RindlerMode, chi: float) -> float:
    """Raw (N = 1) mode profile at chi for the mode's route."""
    nu = mode.Omega / geom.accel
    if mode.route == "series":
        iu = specfun.bessel_I_imag_order_scaled(nu, geom.mass * chi)
        wall = mode.wall
        return 2.0 * (iu.imag * wall.real - iu.real * wall.imag)
    if mode.route == "ode":
        w = math.log(geom.accel * chi)
        return float(mode.dense(w)[0])
    raise DomainError(f"unknown mode route {mode.route!r}")


def normalize_mode(geom: RindlerGeometry, mode: RindlerMode) -> RindlerMode:
    """Fix N so the Klein-Gordon norm 2 (Omega/a) int F^2 dchi/chi is 1.

    Series-route modes integrate the squared profile with adaptive
    Simpson quadrature (1e-10 relative); ODE-route modes reuse the norm
    integral accumulated during their solve at the same tolerance.  A
    series mode whose quadrature trips the cancellation guard is rebuilt
    on the ODE route and normalized there.
    """
    if mode.route == "massless":
        return replace(mode, N=1.0 / math.sqrt(mode.k * math.pi))
    nu = mode.Omega / geom.accel
    if mode.route == "series":
        try:
            # Mode k has ~k half-waves across the cavity; the bootstrap
            # mesh must resolve them or Simpson refinement aliases.
            integral = adaptive_simpson(
                lambda w: _profile(geom, mode, math.exp(w) / geom.accel) ** 2,
                geom.w1,
                geom.w2,
                initial_panels=max(16, 4 * mode.k),
            )
        except PrecisionLossError:
            mode = _build_mode(geom, mode.k, nu, "ode")
        else:
            return replace(mode, N=1.0 / math.sqrt(2.0 * nu * integral))
    if mode.norm_integral is None or mode.norm_integral <= 0.0:
        raise NumericalError(
            f"mode k={mode.k} has no usable norm integral"
        )
    return replace(mode, N=1.0 / math.sqrt(2.0 * nu * mode.norm_integral))


def mode_value(geom: RindlerGeometry, mode: RindlerMode, chi: float) -> float:
    """Normalized mode amplitude N * F(chi); sign convention is arbitrary.

    Raises:
        DomainError: for chi outside the mirrors (a relative slack of
            1e-12 absorbs roundoff at the walls).
    """
    slack = 1.0e-12 / geom.accel
    if not (geom.chi1 - slack <= chi <= geom.chi2 + slack):
        raise DomainError(
            f"chi = {chi!r} outside the mirrors "
            f"[{geom.chi1:g}, {geom.chi2:g}]"
        )
    chi = min(max(chi, geom.chi1), geom.chi2)
    if mode.route == "massless":
        nu = mode.Omega / geom.accel
        w = math.log(geom.accel * chi)
        return mode.N * math.sin(nu * (w - geom.w1))
    return mode.N * _profile(geom, mode, chi)
