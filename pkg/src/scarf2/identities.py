"""Exact checks of the binomial sums behind the overlap reduction.

All arithmetic is over ``fractions.Fraction``. Binomials with a rational or
polynomial upper index are falling-factorial products

    C(x, k) = x (x-1) ... (x-k+1) / k!

so ``new_sum_rule_prove`` expands both sides as polynomials in (a, b) and
checks that every coefficient of the difference vanishes. That is a complete
proof for each fixed (n, m).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

MAX_PROOF_N = 12


class BivariatePolynomial:
    """Polynomial in (a, b) with exact rational coefficients.

    ``coeffs`` maps (deg_a, deg_b) -> Fraction; zeros are never stored.
    """
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for key, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                self.coeffs[(int(key[0]), int(key[1]))] = c

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def a(cls):
        return cls({(1, 0): 1})

    @classmethod
    def b(cls):
        return cls({(0, 1): 1})

    def _coerce(self, other):
        return other if isinstance(other, BivariatePolynomial) else BivariatePolynomial.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return BivariatePolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for (i, j), c in self.coeffs.items():
            for (k, l), d in other.coeffs.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return self.coeffs == self._coerce(other).coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def total_degree(self):
        return max((i + j for i, j in self.coeffs), default=-1)

    def __call__(self, a, b):
        a, b = Fraction(a), Fraction(b)
        return sum((c * a ** i * b ** j for (i, j), c in self.coeffs.items()), Fraction(0))

    def __repr__(self):
        terms = " + ".join(f"({c})a^{i}b^{j}" for (i, j), c in sorted(self.coeffs.items()))
        return f"BivariatePolynomial({terms or '0'})"


def falling_binomial(x, k):
    """C(x, k) for integer k >= 0; ``x`` may be a Fraction or a polynomial."""
    if k < 0:
        return 0 * x if isinstance(x, BivariatePolynomial) else Fraction(0)
    out = BivariatePolynomial.constant(1) if isinstance(x, BivariatePolynomial) else Fraction(1)
    for i in range(k):
        out = out * (x - i)
    return out * Fraction(1, factorial(k))


def binomial_moment_sum(l, j):
    """sum_{m=0}^{l} (-1)^m C(l, m) m^j, exactly (0^0 = 1)."""
    if l < 0 or j < 0:
        raise ValueError("l and j must be non-negative")
    return Fraction(sum((-1) ** m * comb(l, m) * m ** j for m in range(l + 1)))


def _check_nm(n, m):
    if n < 0 or not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got n={n}, m={m}")


def _lhs_terms(n, m, a, b):
    return [falling_binomial(a - m - k, n - m) * falling_binomial(b + m + k, m)
            * ((-1) ** k * comb(n, k)) for k in range(n + 1)]


def _lhs(n, m, a, b):
    return sum(_lhs_terms(n, m, a, b), 0 * a)


def new_sum_rule_eval(n, m, a, b):
    """(lhs, rhs) of sum_k (-1)^k C(n,k) C(a-m-k, n-m) C(b+m+k, m) = (-1)^m C(n,m)."""
    _check_nm(n, m)
    a, b = Fraction(a), Fraction(b)
    return _lhs(n, m, a, b), Fraction((-1) ** m * comb(n, m))


@dataclass(frozen=True)
class ProofResult:
    n: int
    m: int
    holds: bool
    offending: tuple = None  # ((deg_a, deg_b), coefficient) of lhs - rhs
    degree: int = -1         # largest total degree among the lhs terms, before cancellation

    def __bool__(self):
        return self.holds


def new_sum_rule_prove(n, m, rhs_sign=1, max_n=MAX_PROOF_N):
    """Expand lhs - rhs in (a, b) and check it is identically zero.

    ``rhs_sign=-1`` flips the right-hand side, a negative control that must fail.
    """
    _check_nm(n, m)
    if n > max_n:
        raise ValueError(f"n={n} exceeds the configured bound {max_n}")
    terms = _lhs_terms(n, m, BivariatePolynomial.a(), BivariatePolynomial.b())
    degree = max(t.total_degree() for t in terms)
    diff = sum(terms, BivariatePolynomial()) - rhs_sign * (-1) ** m * comb(n, m)
    if diff.is_zero():
        return ProofResult(n, m, True, None, degree)
    key = min(diff.coeffs)
    return ProofResult(n, m, False, (key, diff.coeffs[key]), degree)


def lhs_polynomial(n, m):
    """Left-hand side as a polynomial in (a, b), for structural checks."""
    _check_nm(n, m)
    return _lhs(n, m, BivariatePolynomial.a(), BivariatePolynomial.b())
