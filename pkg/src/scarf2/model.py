"""The Scarf II potential family.

    V(x) = -sech^2 x [(a^2 + b^2)/2 - 1/4] + i (b^2 - a^2) sinh x / (2 cosh^2 x)

with bound states

    E_n = -(n + (a + b + 1)/2)^2
    F_n(x) = (1 - i sinh x)^(a/2+1/4) (1 + i sinh x)^(b/2+1/4) P_n^(a,b)(i sinh x)

for n < -(Re(a + b) + 1)/2. Quasi-parity q = -1 selects the second solution
set with a -> -a. All complex powers are principal; 1 -+ i sinh x has real
part 1, so they are continuous in x.
"""
import enum
import math
from dataclasses import dataclass

import numpy as np

from scarf2 import kernels
from scarf2.special_functions import as_complex, jacobi_coefficients

REGIME_TOL = 1e-14


class DomainError(ValueError):
    """Parameters or state indices outside an operation's domain."""


class UnsupportedRegimeError(DomainError):
    pass


class Regime(enum.Enum):
    HERMITIAN = "Hermitian"
    PT_UNBROKEN = "PTUnbroken"
    PT_BROKEN = "PTBroken"
    GENERAL_COMPLEX = "GeneralComplex"
    NO_BOUND_STATES = "NoBoundStates"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ScarfParams:
    alpha: complex
    beta: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_complex(self.alpha, "alpha"))
        object.__setattr__(self, "beta", as_complex(self.beta, "beta"))

    def upper_indices(self, quasi_parity):
        """The (alpha, beta) pair carried by the ``quasi_parity`` branch."""
        return _sign(quasi_parity) * self.alpha, self.beta


@dataclass(frozen=True)
class StateIndex:
    n: int
    quasi_parity: int = 1

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "quasi_parity", _sign(self.quasi_parity))


@dataclass(frozen=True)
class PotentialValue:
    """V(x) and its split V = U + i W.

    ``u`` and ``w`` are complex in general and real whenever the parameters
    put the potential in a PT-symmetric or Hermitian regime.
    """
    u: complex
    w: complex
    total: complex


def _sign(q):
    if q in (1, -1):
        return int(q)
    raise DomainError(f"quasi-parity must be +1 or -1, got {q!r}")


def is_real(z, tol=REGIME_TOL):
    return abs(z.imag) <= tol


def is_imaginary(z, tol=REGIME_TOL):
    """Purely imaginary with a non-zero imaginary part."""
    return abs(z.real) <= tol and abs(z.imag) > tol


def bound_state_count(params, quasi_parity=1, tol=1e-12):
    """Number of n >= 0 with n < -(Re(q alpha + beta) + 1)/2."""
    a, b = params.upper_indices(quasi_parity)
    bound = -((a + b).real + 1.0) / 2.0
    if bound <= tol:
        return 0
    return int(math.ceil(bound - tol))


def total_bound_states(params):
    return bound_state_count(params, 1) + bound_state_count(params, -1)


def is_hermitian(params, tol=REGIME_TOL):
    return abs(params.alpha.conjugate() - params.beta) <= tol


def is_pt_symmetric(params, tol=REGIME_TOL):
    """alpha and beta each real or purely imaginary."""
    a, b = params.alpha, params.beta
    return ((is_real(a, tol) or is_imaginary(a, tol))
            and (is_real(b, tol) or is_imaginary(b, tol)))


def classify_regime(params, tol=REGIME_TOL):
    """Regime of ``params``.

    Hermitian takes precedence, so real alpha = beta is Hermitian. alpha = 0
    counts as real, which keeps the real-alpha family continuous.
    """
    a, b = params.alpha, params.beta
    if is_imaginary(a, tol) and is_imaginary(b, tol):
        return Regime.NO_BOUND_STATES
    if total_bound_states(params) == 0:
        return Regime.NO_BOUND_STATES
    if is_hermitian(params, tol):
        return Regime.HERMITIAN
    if is_real(a, tol) and is_real(b, tol):
        return Regime.PT_UNBROKEN
    if ((is_imaginary(a, tol) and is_real(b, tol))
            or (is_real(a, tol) and is_imaginary(b, tol))):
        return Regime.PT_BROKEN
    return Regime.GENERAL_COMPLEX


def check_state(params, idx):
    count = bound_state_count(params, idx.quasi_parity)
    if idx.n >= count:
        raise DomainError(
            f"n={idx.n} is not a bound state of the q={idx.quasi_parity:+d} branch "
            f"(alpha={params.alpha}, beta={params.beta}; {count} states)")


def energy(params, idx):
    """E_n = -(n + (q alpha + beta + 1)/2)^2."""
    check_state(params, idx)
    a, b = params.upper_indices(idx.quasi_parity)
    return -(idx.n + (a + b + 1) / 2) ** 2


def potential(params, x):
    """V(x) from the two-term form, with its U/W split."""
    a, b = params.alpha, params.beta
    x = float(x)
    sech2 = 1.0 / math.cosh(x) ** 2
    first = -sech2 * (((a + b) / 2) ** 2 + ((a - b) / 2) ** 2 - 0.25)
    second = 2j * math.sinh(x) * sech2 * ((b + a) / 2) * ((b - a) / 2)
    u = -sech2 * ((a * a + b * b) / 2 - 0.25)
    w = (b * b - a * a) * math.sinh(x) * sech2 / 2
    return PotentialValue(u=u, w=w, total=first + second)


def potential_values(params, x):
    """Vectorised V(x)."""
    a, b = params.alpha, params.beta
    x = np.asarray(x, dtype=float)
    sech2 = 1.0 / np.cosh(x) ** 2
    return -sech2 * ((a * a + b * b) / 2 - 0.25) + 0.5j * (b * b - a * a) * np.sinh(x) * sech2


def imaginary_weight(params):
    """W(x) = (beta^2 - alpha^2) sinh x / (2 cosh^2 x), vectorised."""
    c = (params.beta ** 2 - params.alpha ** 2) / 2

    def weight(x):
        x = np.asarray(x, dtype=float)
        e = np.exp(-np.abs(x))
        # tanh x sech x without overflow
        return c * np.tanh(x) * 2 * e / (1 + e * e)

    return weight


@dataclass(frozen=True)
class Wavefunction:
    """F_n^(a,b) as a callable on real x (scalar or array)."""
    n: int
    a: complex
    b: complex

    def __post_init__(self):
        w = jacobi_coefficients(self.n, self.a, self.b)
        object.__setattr__(self, "_weights", w)

    def __call__(self, x, kernel=None):
        kernel = kernel or kernels.f_values
        arr = np.asarray(x, dtype=float)
        esum = (self.a + self.b) / 2 + 0.5 + self.n
        d0 = (self.b - self.a) / 2 - self.n
        out = kernel(np.atleast_1d(arr), self._weights, esum, d0)
        return complex(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def wavefunction(a, b, n):
    """Unnormalised F_n^(a,b) for arbitrary upper indices (no bound-state check)."""
    return Wavefunction(int(n), as_complex(a, "a"), as_complex(b, "b"))


def wavefunction_unnormalized(params, idx, x):
    check_state(params, idx)
    a, b = params.upper_indices(idx.quasi_parity)
    return wavefunction(a, b, idx.n)(x)


def wavefunction_normalized(params, idx, x):
    """C_n F_n(x), defined for the Hermitian regime only."""
    from scarf2.closed_forms import normalization_constant

    if classify_regime(params) is not Regime.HERMITIAN:
        raise UnsupportedRegimeError("normalised wavefunctions are defined for Hermitian parameters only")
    if idx.quasi_parity != 1:
        raise DomainError("the Hermitian problem has a single (q=+1) set of bound states")
    check_state(params, idx)
    c = normalization_constant(params.alpha, idx.n)
    return c * wavefunction_unnormalized(params, idx, x)


def schrodinger_residual(params, idx, x, h=1e-4):
    """max |-F'' + V F - E F| / |E| over ``x``, with F'' by central differences.

    F is evaluated in extended precision (``np.longdouble``) so that the
    second difference is not swamped by rounding, eps |F| / h^2, for states
    with small |E|. Where longdouble is plain double this is a no-op.
    """
    x = np.asarray(x, dtype=np.longdouble)
    h = np.longdouble(h)
    a, b = params.upper_indices(idx.quasi_parity)
    f = wavefunction(a, b, idx.n)
    e = energy(params, idx)
    esum = (a + b) / 2 + 0.5 + idx.n
    d0 = (b - a) / 2 - idx.n
    w = f._weights.astype(np.clongdouble)

    def ev(t):
        return kernels.f_values_numpy(t, w, np.clongdouble(esum), np.clongdouble(d0))

    f0 = ev(x)
    d2 = (ev(x + h) - 2 * f0 + ev(x - h)) / (h * h)
    v = potential_values(params, x.astype(float)).astype(np.clongdouble)
    res = -d2 + v * f0 - np.clongdouble(e) * f0
    return float(np.max(np.abs(res)) / abs(e))


def states(params, parities=(1, -1)):
    """All bound-state indices, ordered by parity (+1 first) then n."""
    return [StateIndex(n, q) for q in parities for n in range(bound_state_count(params, q))]
