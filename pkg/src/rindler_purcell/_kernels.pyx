# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled special-function kernels.

Same algorithms and return conventions as ``_kernels_py``; see that
module for documentation.  Kept free of Python-object work inside the
series loops so the hot path stays in C.
"""

from libc.math cimport INFINITY, NAN, atan2, cos, exp, expm1, fabs, floor, hypot, log, sin, sqrt

BACKEND = "compiled"

SERIES_EPS = 1e-16
SERIES_MAX_TERMS = 10_000

cdef double _SERIES_EPS = 1e-16
cdef int _SERIES_MAX_TERMS = 10_000

cdef double _PI = 3.141592653589793238462643383279503

cdef int _NP = 9
cdef double[9] _LP
_LP[0] = 0.99999999999980993
_LP[1] = 676.5203681218851
_LP[2] = -1259.1392167224028
_LP[3] = 771.32342877765313
_LP[4] = -176.61502916214059
_LP[5] = 12.507343278686905
_LP[6] = -0.13857109526572012
_LP[7] = 9.9843695780195716e-6
_LP[8] = 1.5056327351493116e-7

cdef double _LANCZOS_G = 7.0


cdef inline double complex _cexp(double complex z) noexcept:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * (m * sin(z.imag))


cdef inline double complex _csin(double complex z) noexcept:
    # sin(a + ib) = sin a cosh b + i cos a sinh b
    cdef double ep = exp(z.imag), em = 1.0 / ep
    return sin(z.real) * (0.5 * (ep + em)) + 1j * (cos(z.real) * (0.5 * (ep - em)))


cdef inline double complex _cpow_of(double complex base, double complex expo) noexcept:
    # base**expo via exp(expo * log base), principal log
    cdef double lr = 0.5 * log(base.real * base.real + base.imag * base.imag)
    cdef double th = atan2(base.imag, base.real)
    return _cexp(expo * (lr + 1j * th))


cdef double complex _cgamma_c(double complex z) noexcept:
    cdef double complex w, acc, t
    cdef int i
    if z.imag == 0.0 and z.real <= 0.0 and z.real == floor(z.real):
        return NAN + 1j * NAN
    if z.real < 0.5:
        return _PI / (_csin(_PI * z) * _cgamma_c(1.0 - z))
    w = z - 1.0
    acc = _LP[0]
    for i in range(1, _NP):
        acc = acc + _LP[i] / (w + i)
    t = w + _LANCZOS_G + 0.5
    return sqrt(2.0 * _PI) * _cpow_of(t, w + 0.5) * _cexp(-t) * acc


def cgamma(z):
    """Gamma function for complex argument (NaN at the poles)."""
    return _cgamma_c(complex(z))


cdef double _im_lngamma_one_plus_i_c(double nu) noexcept:
    cdef double acc_re, acc_im, d, tr, log_abs_t, arg_t
    cdef int i
    if nu == 0.0:
        return 0.0
    acc_re = _LP[0]
    acc_im = 0.0
    for i in range(1, _NP):
        d = _LP[i] / (i * i + nu * nu)
        acc_re += d * i
        acc_im -= d * nu
    tr = _LANCZOS_G + 0.5
    log_abs_t = 0.5 * log(tr * tr + nu * nu)
    arg_t = atan2(nu, tr)
    return 0.5 * arg_t + nu * log_abs_t - nu + atan2(acc_im, acc_re)


cdef double complex _series_seed_c(double nu) noexcept:
    cdef double anu, mag, phase
    if nu == 0.0:
        return 1.0 + 0j
    anu = fabs(nu)
    mag = sqrt(-expm1(-2.0 * _PI * anu) / (2.0 * _PI * anu))
    phase = -_im_lngamma_one_plus_i_c(nu)
    return mag * cos(phase) + 1j * (mag * sin(phase))


cdef int _bessel_i_scaled_c(double nu, double x,
                            double complex *out, double *peak_ratio) noexcept:
    cdef double lq = log(0.5 * x)
    cdef double q2 = 0.25 * x * x
    cdef double complex term, total, den
    cdef double peak, tm, sm
    cdef int j, n
    term = _series_seed_c(nu) * _cexp(1j * (nu * lq))
    total = term
    peak = hypot(term.real, term.imag)
    n = -1
    for j in range(1, _SERIES_MAX_TERMS + 1):
        den = (<double> (j * j)) + 1j * (j * nu)
        term = term * (q2 / den)
        total = total + term
        tm = hypot(term.real, term.imag)
        if tm > peak:
            peak = tm
        if tm <= _SERIES_EPS * hypot(total.real, total.imag):
            n = j
            break
    sm = hypot(total.real, total.imag)
    if sm == 0.0:
        peak_ratio[0] = INFINITY
    else:
        peak_ratio[0] = peak / sm
    out[0] = total
    return n


def bessel_i_scaled(double nu, double x):
    """exp(-pi*|nu|/2) * I_{i*nu}(x) with cancellation diagnostics.

    Returns ``(value, peak_ratio, n_terms)``; ``n_terms`` is -1 when the
    term cap was reached before convergence.
    """
    cdef double complex val
    cdef double loss
    cdef int n = _bessel_i_scaled_c(nu, x, &val, &loss)
    return val, loss, n


def bessel_cross_scaled(double nu, double u, double v):
    """exp(-pi*|nu|) * Im[I_{i*nu}(u) * conj(I_{i*nu}(v))] plus diagnostics.

    Returns ``(s, loss, n_terms)`` as in the pure-Python backend.
    """
    cdef double complex iu, iv
    cdef double lu, lv, s
    cdef int mu, mv, n
    mu = _bessel_i_scaled_c(nu, u, &iu, &lu)
    mv = _bessel_i_scaled_c(nu, v, &iv, &lv)
    s = iu.imag * iv.real - iu.real * iv.imag
    n = -1 if (mu < 0 or mv < 0) else (mu if mu > mv else mv)
    return s, (lu if lu > lv else lv), n
