"""Pure-Python special-function kernels.

Reference implementation of the hot numerical kernels; a Cython build of
the same algorithms lives in ``_kernels``.  The public API is re-exported
with domain checking by :mod:`rindler_purcell.specfun`, which picks the
fastest available backend at import time.

Conventions
-----------
* ``cgamma(z)`` evaluates the gamma function for complex ``z`` with a
  Lanczos approximation (g = 7, 9 coefficients) plus the reflection
  formula for ``Re z < 0.5``.  Poles return NaN; the wrapper turns that
  into an error.
* ``bessel_i_scaled(nu, x)`` sums the ascending series of the modified
  Bessel function of imaginary order ``I_{i nu}(x)`` and returns it
  scaled by ``exp(-pi*|nu|/2)``.  The scaling keeps values representable
  at large order, where ``|I_{i nu}|`` grows like ``exp(pi*nu/2)``.
* Cross products are returned with an estimate of the series
  cancellation (peak term over final sum) so callers can reject results
  that lost too many digits.

Functions return status information instead of raising so that the
compiled and interpreted backends stay line-for-line comparable.
"""

import cmath
import math

BACKEND = "pure-python"

# Term-magnitude cutoff relative to the partial sum, and the iteration cap.
SERIES_EPS = 1e-16
SERIES_MAX_TERMS = 10_000

# Lanczos parameters (g = 7, 9 coefficients).
_LANCZOS_G = 7
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_NAN = complex(float("nan"), float("nan"))


def cgamma(z):
    """Gamma function for complex argument.

    Returns NaN+NaN*i at the poles (non-positive integers).
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return _NAN
    if z.real < 0.5:
        # Reflection: gamma(z) = pi / (sin(pi z) * gamma(1 - z)).
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    w = z - 1.0
    acc = _LANCZOS_P[0]
    for i in range(1, len(_LANCZOS_P)):
        acc += _LANCZOS_P[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (w + 0.5) * cmath.exp(-t) * acc


def _im_lngamma_one_plus_i(nu):
    """Imaginary part of ln gamma(1 + i*nu), any real nu.

    Only defined modulo 2*pi as used here (the caller exponentiates).
    """
    if nu == 0.0:
        return 0.0
    # Lanczos in log form at z = 1 + i*nu; no reflection needed (Re z = 1).
    acc_re = _LANCZOS_P[0]
    acc_im = 0.0
    for i in range(1, len(_LANCZOS_P)):
        d = _LANCZOS_P[i] / (i * i + nu * nu)
        acc_re += d * i
        acc_im -= d * nu
    tr = _LANCZOS_G + 0.5  # t = 7.5 + i*nu
    log_abs_t = 0.5 * math.log(tr * tr + nu * nu)
    arg_t = math.atan2(nu, tr)
    # Im[(z - 0.5) * log t] - Im t + arg(series), z - 0.5 = 0.5 + i*nu.
    return 0.5 * arg_t + nu * log_abs_t - nu + math.atan2(acc_im, acc_re)


def _series_seed(nu):
    """exp(-pi*|nu|/2) / gamma(1 + i*nu) without overflow at large |nu|.

    Uses |gamma(1 + i*nu)|^2 = pi*nu / sinh(pi*nu), which gives the
    modulus sqrt((1 - exp(-2*pi*|nu|)) / (2*pi*|nu|)) after scaling.
    """
    if nu == 0.0:
        return complex(1.0, 0.0)
    anu = abs(nu)
    mag = math.sqrt(-math.expm1(-2.0 * math.pi * anu) / (2.0 * math.pi * anu))
    phase = -_im_lngamma_one_plus_i(nu)
    return complex(mag * math.cos(phase), mag * math.sin(phase))


def bessel_i_scaled(nu, x):
    """Scaled modified Bessel function of imaginary order.

    Sums the ascending series of I_{i*nu}(x) term by term and returns

        (exp(-pi*|nu|/2) * I_{i*nu}(x), peak_ratio, n_terms)

    where ``peak_ratio`` is the largest term magnitude over the final sum
    magnitude (the cancellation factor; relative rounding error is about
    ``peak_ratio * 1e-16``) and ``n_terms`` is the number of terms taken,
    or -1 if the iteration cap was hit before the terms fell below
    ``SERIES_EPS`` times the partial sum.
    """
    lq = math.log(0.5 * x)
    q2 = 0.25 * x * x
    term = _series_seed(nu) * cmath.exp(complex(0.0, nu * lq))
    total = term
    # Magnitudes are tracked with hypot, not squares: |term|^2 can
    # overflow while |term| itself is still representable.
    peak = math.hypot(term.real, term.imag)
    n = -1
    for j in range(1, SERIES_MAX_TERMS + 1):
        term *= q2 / complex(j * j, j * nu)
        total += term
        tm = math.hypot(term.real, term.imag)
        if tm > peak:
            peak = tm
        if tm <= SERIES_EPS * math.hypot(total.real, total.imag):
            n = j
            break
    sm = math.hypot(total.real, total.imag)
    peak_ratio = float("inf") if sm == 0.0 else peak / sm
    return total, peak_ratio, n


def bessel_cross_scaled(nu, u, v):
    """Scaled cross product of imaginary-order Bessel functions.

    Returns ``(s, loss, n_terms)`` with

        s = exp(-pi*|nu|) * Im[ I_{i*nu}(u) * conj(I_{i*nu}(v)) ],

    ``loss`` the larger of the two series cancellation factors, and
    ``n_terms`` the larger term count (-1 if either series failed to
    converge).  ``s`` is real and antisymmetric under u <-> v.
    """
    iu, lu, mu = bessel_i_scaled(nu, u)
    iv, lv, mv = bessel_i_scaled(nu, v)
    s = iu.imag * iv.real - iu.real * iv.imag
    n = -1 if (mu < 0 or mv < 0) else max(mu, mv)
    return s, max(lu, lv), n
