"""Complex gamma machinery, generalized binomials and Jacobi polynomials.

Gamma ratios are evaluated in log space and exponentiated once. Arguments that
sit on (or within ``POLE_TOL`` of) a non-positive integer are treated as poles:
denominator poles make the ratio vanish, and poles matched between numerator
and denominator are resolved through the residues of Gamma.
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from scarf2 import kernels

POLE_TOL = 1e-8
_LOGGAMMA_POLE_TOL = 4 * np.finfo(float).eps


class PoleError(ArithmeticError):
    """A Gamma function pole that no matching limit can cancel."""


def as_complex(z, name="value"):
    """Coerce to ``complex``, rejecting NaN and infinities."""
    w = complex(z)
    if not (math.isfinite(w.real) and math.isfinite(w.imag)):
        raise ValueError(f"{name} must be finite, got {w!r}")
    return w


def pole_order(z, tol=POLE_TOL):
    """Return ``k`` if ``z`` lies within ``tol`` of the pole ``-k``, else ``None``."""
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return None
    k = round(-z.real)
    if abs(z.real + k) <= tol:
        return int(k)
    return None


def log_gamma(z):
    """Principal branch of ln Gamma(z) for complex ``z``.

    Lanczos approximation for Re z >= 1/2 and reflection below that; the
    imaginary part is the analytic continuation from the positive real axis.
    """
    z = as_complex(z, "z")
    k = pole_order(z, tol=_LOGGAMMA_POLE_TOL * max(1.0, abs(z)))
    if k is not None:
        raise PoleError(f"log_gamma: pole at z = {-k}")
    return kernels.loggamma(z)


def gamma(z):
    return cmath.exp(log_gamma(z))


def rgamma(z):
    """1/Gamma(z); entire, so exactly zero at the poles of Gamma."""
    if pole_order(z) is not None:
        return 0j
    return cmath.exp(-log_gamma(z))


@dataclass(frozen=True)
class GammaRatioSpec:
    numerator_args: tuple
    denominator_args: tuple

    def __post_init__(self):
        if not self.numerator_args and not self.denominator_args:
            raise ValueError("gamma ratio needs at least one argument")


def _residue_log(k):
    # Gamma(-k + eps) ~ (-1)^k / (k! eps)
    return complex(-math.lgamma(k + 1), math.pi * (k % 2))


def gamma_ratio(numerator, denominator=()):
    """prod Gamma(numerator) / prod Gamma(denominator).

    ``numerator`` may also be a :class:`GammaRatioSpec`. Matched poles are
    resolved as limits with a common perturbation of every pole argument,
    Gamma(-k+e)/Gamma(-m+e) -> (-1)^(k-m) m!/k!.
    """
    if isinstance(numerator, GammaRatioSpec):
        numerator, denominator = numerator.numerator_args, numerator.denominator_args
    log_value = 0j
    excess = 0
    all_real = True
    for sign, args in ((1, numerator), (-1, denominator)):
        for z in args:
            z = as_complex(z, "gamma argument")
            all_real = all_real and z.imag == 0.0
            k = pole_order(z)
            if k is None:
                log_value += sign * log_gamma(z)
            else:
                excess += sign
                log_value += sign * _residue_log(k)
    if excess > 0:
        raise PoleError("gamma_ratio: unmatched pole in the numerator")
    if excess < 0:
        return 0j
    value = cmath.exp(log_value)
    # real arguments: the phase is a multiple of pi, drop the rounding residue
    return complex(value.real, 0.0) if all_real else value


def _nonneg_int(b):
    b = complex(b)
    if b.imag == 0.0 and b.real >= 0.0 and b.real == int(b.real):
        return int(b.real)
    return None


def gen_binomial(a, b):
    """Generalized binomial Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)).

    A non-negative integer ``b`` takes the falling-factorial product, which
    equals the gamma-ratio limit and is exact for any complex ``a``.
    """
    a = as_complex(a, "a")
    k = _nonneg_int(b)
    if k is not None:
        value = 1 + 0j
        for i in range(k):
            value *= (a - i) / (i + 1)
        return value
    b = as_complex(b, "b")
    return gamma_ratio([a + 1], [b + 1, a - b + 1])


def jacobi_coefficients(n, alpha, beta):
    """Weights w_m of P_n(z) = sum_m w_m (1-z)^(n-m) (1+z)^m."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    alpha = as_complex(alpha, "alpha")
    beta = as_complex(beta, "beta")
    w = np.empty(n + 1, dtype=np.complex128)
    for m in range(n + 1):
        w[m] = (gen_binomial(n + alpha, m) * gen_binomial(n + beta, n - m)
                * (-1) ** (n - m) / 2 ** n)
    return w


def jacobi_poly(n, alpha, beta, z):
    """Jacobi polynomial P_n^(alpha, beta)(z) from the explicit binomial sum.

    Works for complex parameters and argument; ``z`` may be an array.
    """
    w = jacobi_coefficients(n, alpha, beta)
    z = np.asarray(z, dtype=np.complex128)
    u, v = 1 - z, 1 + z
    total = np.zeros_like(z)
    for m in range(n + 1):
        total = total + w[m] * u ** (n - m) * v ** m
    return total[()] if total.ndim == 0 else total


__all__ = [
    "PoleError", "GammaRatioSpec", "as_complex", "pole_order", "log_gamma",
    "gamma", "rgamma", "gamma_ratio", "gen_binomial", "jacobi_coefficients",
    "jacobi_poly",
]

