"""Closed forms against the quadrature oracle, state by state.

Everything here is sequential and deterministic: grid points, states and
entries are visited in a fixed order and spot checks draw from a seeded
generator.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from scarf2 import closed_forms as cf
from scarf2.model import (
    DomainError, Regime, ScarfParams, StateIndex, bound_state_count, classify_regime,
    energy, imaginary_weight, is_imaginary, is_real, states, wavefunction,
)
from scarf2.quadrature import IntegrationError, QuadratureControls, overlap_numeric, product_integral
from scarf2.special_functions import PoleError

DEFAULT_TOL = 1e-8
DEFAULT_REL_TOL = 1e-6
SPOT_FRACTION = 0.2

PT_REAL_ALPHAS = (-1.2, -2.0, -3.7, -4.5)
PT_REAL_BETAS = (-1.1, -2.5, -3.0)
BROKEN_ALPHAS = (0.25j, 0.5j, 1.0j)
BROKEN_BETAS = (-2.5, -3.0, -4.5)
HERMITIAN_S = (1.0, 2.5)
HERMITIAN_LAMBDA = (0.0, 0.7, 1.3)


@dataclass(frozen=True)
class GridPoint:
    label: str
    alpha: complex
    beta: complex

    @property
    def params(self):
        return ScarfParams(self.alpha, self.beta)


def standard_grid():
    """Real-alpha PT points, broken points and Hermitian points."""
    pts = [GridPoint(f"pt_real({a},{b})", a, b) for a in PT_REAL_ALPHAS for b in PT_REAL_BETAS]
    pts += [GridPoint(f"pt_broken({a.imag}i,{b})", a, b) for a in BROKEN_ALPHAS for b in BROKEN_BETAS]
    for s in HERMITIAN_S:
        for lam in HERMITIAN_LAMBDA:
            a = complex(-s - 0.5, -lam)
            pts.append(GridPoint(f"hermitian(s={s},lambda={lam})", a, a.conjugate()))
    return pts


def grid_from_pairs(pairs):
    return [GridPoint(f"custom({complex(a)},{complex(b)})", complex(a), complex(b)) for a, b in pairs]


@dataclass(frozen=True)
class ComparisonEntry:
    case_id: str
    closed_value: complex
    oracle_value: complex
    abs_diff: float
    passed: bool
    tolerance: float = math.nan
    oracle_error_est: float = math.nan
    note: str = ""


@dataclass(frozen=True)
class ComparisonReport:
    entries: tuple
    max_abs_diff: float
    all_pass: bool

    @classmethod
    def from_entries(cls, entries):
        entries = tuple(sorted(entries, key=lambda e: e.case_id))
        diffs = [e.abs_diff for e in entries if math.isfinite(e.abs_diff)]
        return cls(entries, max(diffs, default=0.0), all(e.passed for e in entries))


def _is_pt(params):
    a, b = params.alpha, params.beta
    return is_real(b) and (is_real(a) or is_imaginary(a))


def _compare(case_id, closed_fn, oracle_fn, tol, rel_tol):
    try:
        closed = complex(closed_fn())
    except (PoleError, cf.DivergenceError, DomainError) as exc:
        return ComparisonEntry(case_id, None, None, math.inf, False, note=f"closed form: {exc}")
    try:
        est = oracle_fn()
    except IntegrationError as exc:
        return ComparisonEntry(case_id, closed, None, math.inf, False, note=f"oracle: {exc}")
    if isinstance(est, complex):
        oracle, err = est, math.nan
    else:
        oracle, err = est.value, est.abs_error_est
    diff = abs(closed - oracle)
    bound = max(tol, rel_tol * abs(closed))
    note = "" if getattr(est, "converged", True) else "oracle budget exhausted"
    return ComparisonEntry(case_id, closed, oracle, diff, diff <= bound, bound, err, note)


def _point_cases(idx, pt, controls):
    """(case_id, closed, oracle) triples for one grid point."""
    p = pt.params
    tag = f"{idx:03d}:{pt.label}"
    regime = classify_regime(p)
    cases = []
    if regime is Regime.NO_BOUND_STATES:
        return cases

    def quad(ket, bra, reflect=False, weight=None):
        return lambda: overlap_numeric(p, bra, ket, reflect, True, weight, controls)

    # base integrals at the exponents of the F_0 prefactor
    ap, bp = p.alpha / 2, p.beta / 2
    if (ap + bp).real < 0:
        f0 = lambda x: (1 - 1j * np.sinh(x)) ** ap * (1 + 1j * np.sinh(x)) ** bp
        cases.append((f"{tag}:a0", lambda: cf.a0(ap, bp),
                      lambda: product_integral(f0, lambda x: 1.0, False, False, None, controls)))
    if (ap + bp).real < -1:
        cases.append((f"{tag}:a1", lambda: cf.a1(ap, bp),
                      lambda: product_integral(f0, np.sinh, False, False, None, controls)))

    for q in (1, -1):
        a, b = p.upper_indices(q)
        branch = states(p, (q,))
        for ket in branch:
            for bra in branch:
                n, l = ket.n, bra.n
                cases.append((f"{tag}:q_sum:q{q:+d}:n{n}:l{l}",
                              lambda a=a, b=b, n=n, l=l: cf.q_sum(cf.OverlapSpec(a, b, a, b, n, l)),
                              quad(ket, bra)))
                # star partner: gamma = beta*, delta = alpha*
                if l < bound_state_count(ScarfParams(b.conjugate(), a.conjugate())):
                    fk = wavefunction(a, b, n)
                    fb = wavefunction(b.conjugate(), a.conjugate(), l)
                    cases.append((f"{tag}:q_closed:q{q:+d}:n{n}:l{l}",
                                  lambda a=a, b=b, n=n, l=l: cf.q_closed(a, b, n, l),
                                  lambda fk=fk, fb=fb: product_integral(fk, fb, False, True, None, controls)))

    if _is_pt(p):
        every = states(p)
        for ket in every:
            for bra in every:
                qa = ket.quasi_parity * p.alpha
                ds = ket.quasi_parity * bra.quasi_parity
                cases.append((f"{tag}:pseudo_inner:q{ket.quasi_parity:+d}{bra.quasi_parity:+d}"
                              f":n{ket.n}:l{bra.n}",
                              lambda qa=qa, ds=ds, n=ket.n, l=bra.n: cf.pseudo_inner(qa, p.beta, ds, n, l).value,
                              quad(ket, bra, reflect=True)))
        w = imaginary_weight(p)
        for s in every:
            qa = s.quasi_parity * p.alpha
            cases.append((f"{tag}:l_norm:q{s.quasi_parity:+d}:n{s.n}",
                          lambda qa=qa, n=s.n: cf.l_norm_sum(qa, p.beta, n), quad(s, s)))
            cases.append((f"{tag}:j_w:q{s.quasi_parity:+d}:n{s.n}",
                          lambda qa=qa, n=s.n: cf.j_w_element_sum(qa, p.beta, n), quad(s, s, weight=w)))

    if regime is Regime.HERMITIAN:
        branch = states(p, (1,))
        for ket in branch:
            for bra in branch:
                cases.append((f"{tag}:hermitian_norm:n{ket.n}:l{bra.n}",
                              lambda n=ket.n, l=bra.n: cf.hermitian_norm(p.alpha, n, l, p.beta),
                              quad(ket, bra)))
            c2 = cf.normalization_constant(p.alpha, ket.n, p.beta) ** 2
            cases.append((f"{tag}:normalized_norm:n{ket.n}",
                          lambda: 1.0,
                          lambda ket=ket, c2=c2: _scaled(overlap_numeric(p, ket, ket, False, True, None, controls), c2)))
    return cases


@dataclass(frozen=True)
class _Scaled:
    value: complex
    abs_error_est: float
    converged: bool


def _scaled(est, c):
    return _Scaled(est.value * c, est.abs_error_est * abs(c), est.converged)


def verify_closed_forms(grid=None, tol=DEFAULT_TOL, rel_tol=None, controls=None):
    """Compare every closed form with quadrature over ``grid``.

    An entry passes when |closed - oracle| <= max(tol, rel_tol * |closed|);
    ``rel_tol`` defaults to 100 * tol. Failures of either side are recorded,
    never raised.
    """
    grid = standard_grid() if grid is None else list(grid)
    rel_tol = 100 * tol if rel_tol is None else rel_tol
    controls = controls or QuadratureControls()
    entries = []
    for idx, pt in enumerate(grid):
        try:
            cases = _point_cases(idx, pt, controls)
        except DomainError as exc:
            entries.append(ComparisonEntry(f"{idx:03d}:{pt.label}:setup", None, None, math.inf,
                                           False, note=str(exc)))
            continue
        for case_id, closed_fn, oracle_fn in cases:
            entries.append(_compare(case_id, closed_fn, oracle_fn, tol, rel_tol))
    return ComparisonReport.from_entries(entries)


@dataclass(frozen=True)
class SpotCheck:
    row: int
    col: int
    closed_value: complex
    oracle_value: complex
    abs_diff: float


@dataclass(frozen=True)
class OrthogonalityResult:
    labels: tuple
    matrix: np.ndarray
    max_off_diagonal: float
    spot_checks: tuple = field(default=())

    @property
    def max_spot_residual(self):
        return max((s.abs_diff for s in self.spot_checks), default=0.0)


def orthogonality_matrix(params, product="pt_inner", include_both_parities=True, seed=0,
                         spot_fraction=SPOT_FRACTION, controls=None):
    """Closed-form overlap matrix over all bound states of ``params``.

    Entry (i, j) is the product of ket i with bra j. ``pt_inner`` needs PT
    parameters; ``standard_inner`` uses the normalised Hermitian norm when
    the parameters are Hermitian and the general Q sum otherwise.
    A seeded ``spot_fraction`` of the entries (at least one) is recomputed by
    quadrature.
    """
    regime = classify_regime(params)
    if product not in ("pt_inner", "standard_inner"):
        raise ValueError(f"unknown product {product!r}")
    if product == "pt_inner" and not _is_pt(params):
        raise DomainError("pt_inner needs beta real and alpha real or purely imaginary")
    hermitian = regime is Regime.HERMITIAN
    if product == "standard_inner" and not (hermitian or _is_pt(params)):
        raise DomainError("standard_inner is defined here for PT or Hermitian parameters")
    labels = tuple(states(params, (1, -1) if include_both_parities else (1,)))
    size = len(labels)
    mat = np.zeros((size, size), dtype=np.complex128)

    def closed(ket, bra):
        qa = ket.quasi_parity * params.alpha
        if product == "pt_inner":
            return cf.pseudo_inner(qa, params.beta, ket.quasi_parity * bra.quasi_parity,
                                   ket.n, bra.n).value
        if hermitian:
            c = (cf.normalization_constant(params.alpha, ket.n, params.beta)
                 * cf.normalization_constant(params.alpha, bra.n, params.beta))
            return c * cf.hermitian_norm(params.alpha, ket.n, bra.n, params.beta)
        qb = bra.quasi_parity * params.alpha
        return cf.q_sum(cf.OverlapSpec(qa, params.beta, qb, params.beta, ket.n, bra.n))

    for i, ket in enumerate(labels):
        for j, bra in enumerate(labels):
            mat[i, j] = closed(ket, bra)
    off = mat - np.diag(np.diag(mat))
    max_off = float(np.max(np.abs(off))) if size else 0.0

    spots = []
    if size:
        rng = np.random.default_rng(seed)
        count = max(1, int(round(spot_fraction * size * size)))
        picks = np.sort(rng.choice(size * size, size=min(count, size * size), replace=False))
        for flat in picks:
            i, j = divmod(int(flat), size)
            est = overlap_numeric(params, labels[j], labels[i], product == "pt_inner", True,
                                  None, controls)
            value = est.value
            if product == "standard_inner" and hermitian:
                value *= (cf.normalization_constant(params.alpha, labels[i].n, params.beta)
                          * cf.normalization_constant(params.alpha, labels[j].n, params.beta))
            spots.append(SpotCheck(i, j, complex(mat[i, j]), value, abs(mat[i, j] - value)))
    return OrthogonalityResult(labels, mat, max_off, tuple(spots))


@dataclass(frozen=True)
class SignRow:
    n: int
    sign: int
    value: float
    follows_alternation: bool
    note: str = ""


def _gamma_arg_note(alpha, beta, n):
    args = {"-alpha-n": -alpha - n, "-beta-n": -beta - n, "-alpha-beta-n": -alpha - beta - n,
            "-alpha-beta-2n-1": -alpha - beta - 2 * n - 1}
    neg = [k for k, v in args.items() if v < 0]
    return "negative: " + ", ".join(neg) if neg else ""


def sign_table(alpha, beta):
    """Sign of the diagonal pseudo-norm for every bound state of real (alpha, beta)."""
    alpha, beta = complex(alpha), complex(beta)
    if not (is_real(alpha) and is_real(beta)):
        raise DomainError("sign_table needs real alpha and beta")
    params = ScarfParams(alpha, beta)
    count = bound_state_count(params, 1)
    if count == 0:
        raise DomainError("no bound states for these parameters")
    rows = []
    for n in range(count):
        r = cf.pseudo_inner(alpha, beta, 1, n, n)
        follows = r.sign == (-1) ** n
        note = ""
        if r.sign == 0:
            note = f"vanishes ({r.vanishing_reason})"
        elif not follows:
            note = _gamma_arg_note(alpha.real, beta.real, n)
        rows.append(SignRow(n, r.sign, r.value.real, follows, note))
    return rows


@dataclass(frozen=True)
class SweepRecord:
    alpha: complex
    beta: float
    n: int
    quasi_parity: int
    has_state: bool
    energy: complex = None
    im_energy_formula: float = None
    im_energy_ratio: float = None
    im_energy_quadrature: float = None
    pseudo_norm: complex = None
    pseudo_norm_sign: int = None
    vanishing_reason: str = None
    closed_residual: float = None
    oracle_residual: float = None
    closed_vs_oracle: float = None


def sweep_point(alpha, beta, n, quasi_parity=1, controls=None):
    params = ScarfParams(alpha, beta)
    base = dict(alpha=params.alpha, beta=params.beta.real, n=n, quasi_parity=quasi_parity)
    if n >= bound_state_count(params, quasi_parity):
        return SweepRecord(has_state=False, **base)
    if not _is_pt(params):
        raise DomainError(f"sweep point alpha={alpha} is neither real nor imaginary")
    idx = StateIndex(n, quasi_parity)
    qa = quasi_parity * params.alpha
    e = energy(params, idx)
    rel = cf.im_energy_relation(qa, params.beta, n)
    num = overlap_numeric(params, idx, idx, False, True, imaginary_weight(params), controls)
    den = overlap_numeric(params, idx, idx, False, True, None, controls)
    quad_ratio = num.value / den.value
    pn = cf.pseudo_inner(qa, params.beta, 1, n, n)
    return SweepRecord(
        has_state=True, energy=e,
        im_energy_formula=rel.formula.real,
        im_energy_ratio=rel.ratio.real,
        im_energy_quadrature=quad_ratio.real,
        pseudo_norm=pn.value, pseudo_norm_sign=pn.sign, vanishing_reason=pn.vanishing_reason,
        closed_residual=rel.residual,
        oracle_residual=abs(quad_ratio - rel.formula),
        closed_vs_oracle=abs(quad_ratio - rel.ratio),
        **base)


def pt_breaking_sweep(beta, path, n, quasi_parity=1, controls=None):
    """One record per alpha on ``path``; points without state n are kept, marked."""
    return [sweep_point(a, beta, n, quasi_parity, controls) for a in path]
