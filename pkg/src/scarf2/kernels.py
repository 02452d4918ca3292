"""Hot numeric kernels: complex log-gamma and the Scarf II wavefunction on a grid.

Each kernel exists as a pure-numpy (or pure-Python, for scalars) version and a
loop version that numba compiles. ``loggamma`` and ``f_values`` are bound to
the compiled versions when numba is enabled (see :mod:`scarf2._accel`).
"""
import cmath
import math

import numpy as np

from scarf2._accel import NUMBA_ENABLED, njit

LN2 = math.log(2.0)
LN_PI = math.log(math.pi)
LN_SQRT_2PI = math.log(2.5066282746310005)

# Lanczos coefficients, g = 671/128 (Numerical Recipes, 3rd ed.)
LANCZOS_G = 5.24218750000000000
LANCZOS_C0 = 0.999999999999997092
LANCZOS_COEF = np.array([
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, .339946499848118887e-4, .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3, -.210264441724104883e-3,
    .217439618115212643e-3, -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5,
])


def _lanczos(z, coef):
    # valid for Re z >= 1/2
    tmp = z + LANCZOS_G
    tmp = (z + 0.5) * cmath.log(tmp) - tmp
    ser = LANCZOS_C0 + 0j
    y = z
    for c in coef:
        y += 1.0
        ser += c / y
    return tmp + LN_SQRT_2PI + cmath.log(ser) - cmath.log(z)


def _log_abs_sinpi(x, y):
    # log|sin(pi (x + i y))| without cancellation near the zeros
    ay = abs(y)
    if ay > 20.0:
        e = math.exp(-2.0 * math.pi * ay)
        r = 1.0 + e * e - 2.0 * math.cos(2.0 * math.pi * x) * e
        return math.pi * ay - LN2 + 0.5 * math.log(r)
    k = math.floor(x + 0.5)
    s = math.sin(math.pi * (x - k))
    sh = math.sinh(math.pi * y)
    return 0.5 * math.log(s * s + sh * sh)


def _loggamma(z, coef):
    if z.real >= 0.5:
        return _lanczos(z, coef)
    # real part via reflection, imaginary part continued along the recurrence
    # so the branch is the analytic continuation from the right half-plane
    refl = _lanczos(1.0 - z, coef)
    re = LN_PI - _log_abs_sinpi(z.real, z.imag) - refl.real
    shift = int(math.ceil(0.5 - z.real))
    im = _lanczos(z + shift, coef).imag
    for k in range(shift):
        w = z + k
        im -= math.atan2(w.imag, w.real)
    return complex(re, im)


def loggamma_py(z):
    """Principal-branch log-gamma of a complex scalar (no pole check)."""
    return _loggamma(complex(z), LANCZOS_COEF)


_lanczos_jit = njit(_lanczos)
_log_abs_sinpi_jit = njit(_log_abs_sinpi)


@njit
def _loggamma_compiled(z, coef):
    if z.real >= 0.5:
        return _lanczos_jit(z, coef)
    refl = _lanczos_jit(1.0 - z, coef)
    re = LN_PI - _log_abs_sinpi_jit(z.real, z.imag) - refl.real
    shift = int(math.ceil(0.5 - z.real))
    im = _lanczos_jit(z + shift, coef).imag
    for k in range(shift):
        w = z + k
        im -= math.atan2(w.imag, w.real)
    return complex(re, im)


def loggamma_compiled(z):
    return _loggamma_compiled(complex(z), LANCZOS_COEF)


loggamma = loggamma_compiled if NUMBA_ENABLED else loggamma_py


# --- wavefunction kernel -------------------------------------------------
#
# (1 - i sinh x)^A (1 + i sinh x)^B = exp((A + B) lc(x) + i (B - A) gd(x)),
# lc = log cosh, gd = atan(sinh x); both principal since Re(1 -+ i sinh x) = 1.
# With the Jacobi sum folded in, F_n(x) = exp(esum lc + i d0 gd) * sum_m w_m z^m,
# z = exp(2 i gd).


def log_cosh_gd_numpy(x):
    ax = np.abs(x)
    lc = ax + np.log1p(np.exp(-2.0 * ax)) - LN2
    gd = 2.0 * np.arctan(np.tanh(0.5 * x))
    return lc, gd


def f_values_numpy(x, weights, esum, d0):
    """Vectorised F_n evaluation; ``weights`` are the Jacobi-sum coefficients.

    ``np.longdouble`` input is kept in extended precision.
    """
    x = np.asarray(x)
    if x.dtype != np.longdouble:
        x = x.astype(np.float64)
    lc, gd = log_cosh_gd_numpy(x)
    z = np.exp(2j * gd)
    acc = np.full(x.shape, weights[-1], dtype=np.complex128)
    for w in weights[-2::-1]:
        acc = acc * z + w
    return np.exp(esum * lc + 1j * d0 * gd) * acc


def _f_values_loop(x, weights, esum, d0):
    # same quantities as f_values_numpy with fewer transcendental calls:
    # cos gd = sech x, sin gd = tanh x, both from t = exp(-|x|)
    out = np.empty(x.shape[0], dtype=np.complex128)
    m = weights.shape[0]
    er, ei, dr, di = esum.real, esum.imag, d0.real, d0.imag
    for i in range(x.shape[0]):
        xi = x[i]
        t = math.exp(-abs(xi))
        t2 = t * t
        sech = 2.0 * t / (1.0 + t2)
        th = math.copysign((1.0 - t2) / (1.0 + t2), xi)
        lc = abs(xi) + math.log1p(t2) - LN2
        gd = math.atan2(th, sech)
        zr = sech * sech - th * th
        zi = 2.0 * sech * th
        ar = weights[m - 1].real
        ai = weights[m - 1].imag
        for j in range(m - 2, -1, -1):
            ar, ai = ar * zr - ai * zi + weights[j].real, ar * zi + ai * zr + weights[j].imag
        mod = math.exp(er * lc - di * gd)
        ph = ei * lc + dr * gd
        c = mod * math.cos(ph)
        s = mod * math.sin(ph)
        out[i] = complex(c * ar - s * ai, c * ai + s * ar)
    return out


_f_values_jit = njit(_f_values_loop)


def f_values_compiled(x, weights, esum, d0):
    x = np.ascontiguousarray(x, dtype=np.float64)
    shape = x.shape
    out = _f_values_jit(x.ravel(), np.ascontiguousarray(weights, dtype=np.complex128),
                        complex(esum), complex(d0))
    return out.reshape(shape)


f_values = f_values_compiled if NUMBA_ENABLED else f_values_numpy
