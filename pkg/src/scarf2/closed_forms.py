"""Closed-form integrals of Scarf II bound states.

Every overlap reduces to the base integrals

    A0(p, q) = int (1 - i sinh x)^p (1 + i sinh x)^q dx
             = 2^(p+q+1) pi Gamma(-p-q) / (Gamma(1/2-p) Gamma(1/2-q))
    A1(p, q) = int sinh x (...) dx = i (p-q)/(p+q+1) A0(p, q)

summed over the two Jacobi expansions. Two evaluation routes are offered
wherever a formula has them:

* ``form="gamma"`` (default) keeps the Gamma(-p-q)/Gamma(1/2-p)Gamma(1/2-q)
  structure. It has no removable singularities: 1/Gamma vanishes exactly
  where a sine factor would, so integer parameter sums need no special care.
* ``form="sine"`` uses the reflected, sine-prefactored form. It is a 0/0 or
  0*inf whenever a sine argument is an integer and then raises
  :class:`PoleError`; it serves as an independent cross-check elsewhere.

PT-regime results use the unnormalised functions (normalisation constant 1).
"""
import cmath
import math
from dataclasses import dataclass

from scarf2.model import DomainError, REGIME_TOL
from scarf2.special_functions import PoleError, as_complex, gamma_ratio, gen_binomial

LN2 = math.log(2.0)
SINE_TOL = 1e-8


class DivergenceError(ArithmeticError):
    """The defining integral does not converge."""


@dataclass(frozen=True)
class OverlapSpec:
    """Q_nl = int F_n^(alpha,beta)(x) [F_l^(gamma,delta)(x)]* dx."""
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    n: int
    l: int

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, as_complex(getattr(self, name), name))
        for name in ("n", "l"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise DomainError(f"{name} must be a non-negative integer")
            object.__setattr__(self, name, int(v))


@dataclass(frozen=True)
class PseudoNormResult:
    value: complex
    sign: int
    vanishing_reason: str = None


@dataclass(frozen=True)
class ImEnergyRelation:
    ratio: complex
    formula: complex
    residual: float


def _pow2(z):
    return cmath.exp(z * LN2)


def _fsum(terms):
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def a0(p, q):
    """Base integral A0(p, q); needs Re(p + q) < 0."""
    p, q = as_complex(p, "p"), as_complex(q, "q")
    if (p + q).real >= 0:
        raise DivergenceError(f"A0 diverges for Re(p+q) = {(p + q).real} >= 0")
    return _pow2(p + q + 1) * math.pi * gamma_ratio([-p - q], [0.5 - p, 0.5 - q])


def a1(p, q):
    """A1(p, q) = i (p-q)/(p+q+1) A0(p, q).

    The defining integral converges for Re(p+q) < -1; between -1 and 0 this is
    the analytic continuation.
    """
    p, q = as_complex(p, "p"), as_complex(q, "q")
    if (p + q).real >= 0:
        raise DivergenceError(f"A1 diverges for Re(p+q) = {(p + q).real} >= 0")
    if p == q:
        return 0j
    if abs(p + q + 1) <= 1e-14:
        raise PoleError("A1 has a pole at p + q = -1")
    return 1j * (p - q) / (p + q + 1) * a0(p, q)


def _jacobi_weights(n, a, b):
    # (-1)^(n-m) C(n+a, m) C(n+b, n-m)
    return [(-1) ** (n - m) * gen_binomial(n + a, m) * gen_binomial(n + b, n - m)
            for m in range(n + 1)]


def _expansion(alpha, beta, gamma, delta, n, l, weighted=False):
    """Sum of A0 (or A1 for the sinh/cosh^2 weight) over both Jacobi sums."""
    gs, ds = gamma.conjugate(), delta.conjugate()
    c = _jacobi_weights(n, alpha, beta)
    d = _jacobi_weights(l, gs, ds)
    # conjugated bra term k carries (1 + i s)^(l-k) (1 - i s)^k
    p0 = (alpha + ds) / 2 + 0.5 + n
    q0 = (beta + gs) / 2 + 0.5 + l
    terms = []
    for m, cm in enumerate(c):
        if cm == 0:
            continue
        for k, dk in enumerate(d):
            if dk == 0:
                continue
            p = p0 - m + k
            q = q0 + m - k
            base = a1(p - 1, q - 1) if weighted else a0(p, q)
            terms.append(cm * dk * base)
    return _fsum(terms) / 2 ** (n + l)


def _sine_double_sum(alpha, beta, gs, ds, n, l, shift):
    # sum_m sum_m' (-1)^(m+m') C C C C Gamma(..+n-m+m'+shift) Gamma(..+l+m-m'+shift) / Gamma(S/2+n+l+2*shift)
    half = (alpha + beta + gs + ds) / 2
    terms = []
    for m in range(n + 1):
        cm = (-1) ** m * gen_binomial(n + alpha, m) * gen_binomial(n + beta, n - m)
        for k in range(l + 1):
            dk = (-1) ** k * gen_binomial(l + gs, k) * gen_binomial(l + ds, l - k)
            if cm == 0 or dk == 0:
                continue
            g = gamma_ratio([(alpha + ds) / 2 + n - m + k + shift,
                             (beta + gs) / 2 + l + m - k + shift],
                            [half + n + l + 2 * shift])
            terms.append((m, k, cm * dk * g))
    return terms


def _sine_prefactor(num1, num2, den):
    s_den = cmath.sin(math.pi * den)
    if abs(s_den) < SINE_TOL:
        raise PoleError("sine form is degenerate here (integer sine argument); use form='gamma'")
    return cmath.sin(math.pi * num1) * cmath.sin(math.pi * num2) / s_den


def q_sum(spec, form="gamma"):
    """General overlap Q_nl, no star condition assumed."""
    al, be, ga, de, n, l = spec.alpha, spec.beta, spec.gamma, spec.delta, spec.n, spec.l
    if form == "gamma":
        return _expansion(al, be, ga, de, n, l)
    if form != "sine":
        raise ValueError(f"unknown form {form!r}")
    gs, ds = ga.conjugate(), de.conjugate()
    half = (al + be + gs + ds) / 2
    pre = (-1) ** (n + l) * _pow2(half + 2) * _sine_prefactor(
        (al + ds) / 2, (be + gs) / 2, half)
    return pre * _fsum([t for _, _, t in _sine_double_sum(al, be, gs, ds, n, l, 1)])


def diagonal_gamma_form(alpha, beta, n):
    """pi 2^(a+b+2) Gamma(-a-b-n) / [(-a-b-2n-1) n! Gamma(-a-n) Gamma(-b-n)]."""
    g = gamma_ratio([-alpha - beta - n], [-alpha - n, -beta - n, n + 1])
    return math.pi * _pow2(alpha + beta + 2) / (-alpha - beta - 2 * n - 1) * g


def q_closed(alpha, beta, n, l, form="gamma"):
    """Q_nl under the star conditions delta* = alpha, gamma* = beta."""
    alpha, beta = as_complex(alpha, "alpha"), as_complex(beta, "beta")
    if n != l:
        return 0j
    if form == "gamma":
        return diagonal_gamma_form(alpha, beta, n)
    if form != "sine":
        raise ValueError(f"unknown form {form!r}")
    top = alpha + beta + 2 * n
    inv = gen_binomial(top, n + beta)
    if inv == 0:
        raise PoleError("sine form is degenerate here (vanishing binomial); use form='gamma'")
    return ((-1) ** n * _pow2(alpha + beta + 2) / (alpha + beta + 2 * n + 1)
            * _sine_prefactor(alpha, beta, alpha + beta)
            * gen_binomial(top, n) / inv)


def _state_count(a, b):
    bound = -((a + b).real + 1.0) / 2.0
    return 0 if bound <= 1e-12 else int(math.ceil(bound - 1e-12))


def _check_index(a, b, n, what="n"):
    if int(n) != n or n < 0 or n >= _state_count(a, b):
        raise DomainError(f"{what}={n} is not a bound state for upper indices ({a}, {b})")


def _check_pt(alpha, beta, tol=REGIME_TOL):
    if abs(beta.imag) > tol:
        raise DomainError("beta must be real here")
    if not (abs(alpha.imag) <= tol or abs(alpha.real) <= tol):
        raise DomainError("alpha must be real or purely imaginary here")


def _sign_of(z):
    if z == 0:
        return 0
    x = z.real if z.real != 0 else z.imag
    return 1 if x > 0 else -1


def pseudo_inner(alpha, beta, delta_sign, n, l, tol=REGIME_TOL):
    """PT inner product int F_n^(alpha,beta)(x) [F_l^(delta,beta)(-x)]* dx, delta = +-alpha.

    Vanishes identically when alpha = -delta* (same quasi-parity with
    imaginary alpha, opposite quasi-parity with real alpha); the bra's
    normalisability is not required then. Otherwise diagonal in n, l with
    value (-1)^n times :func:`diagonal_gamma_form`.
    """
    alpha, beta = as_complex(alpha, "alpha"), as_complex(beta, "beta")
    if delta_sign not in (1, -1):
        raise DomainError("delta_sign must be +1 or -1")
    _check_pt(alpha, beta, tol)
    delta = delta_sign * alpha
    _check_index(alpha, beta, n, "n")
    if abs(alpha + delta.conjugate()) <= tol:
        return PseudoNormResult(0j, 0, "sine_factor_zero")
    _check_index(delta, beta, l, "l")
    if n != l:
        return PseudoNormResult(0j, 0, "off_diagonal")
    value = (-1) ** n * diagonal_gamma_form(alpha, beta, n)
    if abs(alpha.imag) <= tol:
        value = complex(value.real, 0.0)
    if value == 0:
        # 1/Gamma(-alpha-n) or 1/Gamma(-beta-n) at a pole: sin(pi alpha) or sin(pi beta) = 0
        return PseudoNormResult(0j, 0, "sine_factor_zero")
    return PseudoNormResult(value, _sign_of(value), None)


def _hermitian_beta(alpha, beta, tol=REGIME_TOL):
    if beta is None:
        return alpha.conjugate()
    beta = as_complex(beta, "beta")
    if abs(beta - alpha.conjugate()) > tol:
        raise DomainError("Hermitian formulas need beta = conj(alpha)")
    return beta


def hermitian_norm(alpha, n, l, beta=None):
    """Standard inner product K_nl of Hermitian states (beta = alpha*)."""
    alpha = as_complex(alpha, "alpha")
    beta = _hermitian_beta(alpha, beta)
    _check_index(alpha, beta, n, "n")
    _check_index(alpha, beta, l, "l")
    if n != l:
        return 0j
    return diagonal_gamma_form(alpha, beta, n)


def normalization_constant(alpha, n, beta=None):
    """Real positive C_n with C_n^2 K_nn = 1."""
    alpha = as_complex(alpha, "alpha")
    beta = _hermitian_beta(alpha, beta)
    _check_index(alpha, beta, n, "n")
    s = (alpha + beta).real
    radicand = (gamma_ratio([-alpha - n, -beta - n, n + 1], [-alpha - beta - n])
                * (-alpha - beta - 2 * n - 1) / math.pi)
    return 2.0 ** (-s / 2 - 1) * math.sqrt(radicand.real)


def _check_pt_state(alpha, beta, n):
    alpha, beta = as_complex(alpha, "alpha"), as_complex(beta, "beta")
    _check_pt(alpha, beta)
    _check_index(alpha, beta, n)
    return alpha, beta


def l_norm_sum(alpha, beta, n, form="gamma"):
    """L_nn = int |F_n^(alpha,beta)|^2 dx for a PT-symmetric state."""
    alpha, beta = _check_pt_state(alpha, beta, n)
    return q_sum(OverlapSpec(alpha, beta, alpha, beta, n, n), form=form)


def j_w_element_sum(alpha, beta, n, form="gamma"):
    """J_nn = int F_n W |F_n|^2 ... i.e. the matrix element of W(x) in the standard product."""
    alpha, beta = _check_pt_state(alpha, beta, n)
    pref = (beta * beta - alpha * alpha) / 2
    if form == "gamma":
        return pref * _expansion(alpha, beta, alpha, beta, n, n, weighted=True)
    if form != "sine":
        raise ValueError(f"unknown form {form!r}")
    ac = alpha.conjugate()
    s2 = (alpha + ac) / 2 + beta
    sines = _sine_prefactor((ac + beta.conjugate()) / 2, (alpha + beta) / 2, s2)
    terms = []
    for m in range(n + 1):
        cm = (-1) ** m * gen_binomial(n + alpha, m) * gen_binomial(n + beta, n - m)
        for k in range(n + 1):
            dk = (-1) ** k * gen_binomial(n + ac, k) * gen_binomial(n + beta, n - k)
            if cm == 0 or dk == 0:
                continue
            g = gamma_ratio([(alpha + beta) / 2 + n - m + k, (ac + beta) / 2 + n + m - k],
                            [s2 + 2 * n + 1])
            terms.append(cm * dk * ((alpha - ac) / 2 - 2 * m + 2 * k) * g)
    return 1j * pref * _pow2(s2) * sines * _fsum(terms)


def im_energy_formula(alpha, beta, n):
    """(i/8)(alpha - alpha*)(alpha + alpha* + 2 beta + 4n + 2)."""
    ac = alpha.conjugate()
    return 0.125j * (alpha - ac) * (alpha + ac + 2 * beta + 4 * n + 2)


def im_energy_relation(alpha, beta, n, form="gamma"):
    """Compare J/L with the imaginary part of E_n."""
    alpha, beta = _check_pt_state(alpha, beta, n)
    ratio = j_w_element_sum(alpha, beta, n, form) / l_norm_sum(alpha, beta, n, form)
    formula = im_energy_formula(alpha, beta, n)
    return ImEnergyRelation(ratio, formula, abs(ratio - formula))
