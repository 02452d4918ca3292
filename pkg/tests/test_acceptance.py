"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every test appends a PASS/FAIL line to ``conftest.ACCEPTANCE_LINES`` (printed
in the terminal summary) and prints it. Criterion 1 has a second, literal part
whose stated value disagrees with the defining integral; it is run as written
and marked as an expected failure.
"""
import json
import math
import time

import numpy as np
import pytest

import conftest
from conftest import grid_states
from scarf2.cli import main
from scarf2.closed_forms import (
    a0, hermitian_norm, im_energy_formula, im_energy_relation, normalization_constant,
    pseudo_inner,
)
from scarf2.identities import binomial_moment_sum, new_sum_rule_prove
from scarf2.model import ScarfParams, imaginary_weight, schrodinger_residual, states
from scarf2.quadrature import integrate_line, overlap_numeric
from scarf2.verification import orthogonality_matrix, standard_grid


def record(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}"
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def a0_oracle(p, q):
    def f(x):
        s = np.sinh(x)
        return np.exp(p * np.log(1 - 1j * s) + q * np.log(1 + 1j * s))
    return integrate_line(f).value


def sech(x):
    return 1 / np.cosh(x)


def test_criterion_1_base_integral():
    t0 = time.perf_counter()
    v1, v2 = a0(-1, -1), a0(-1.5, -0.5)
    d1 = abs(v1 - 2)
    q1 = abs(v1 - a0_oracle(-1, -1))
    q2 = abs(v2 - a0_oracle(-1.5, -0.5))
    elapsed = time.perf_counter() - t0
    ok = d1 <= 1e-9 and q1 <= 1e-9 and q2 <= 1e-9 and elapsed < 1.0
    record("1", ok, f"a0(-1,-1)={v1.real:.15g}; |a0 - quad| = {q1:.1e}, {q2:.1e}; {elapsed:.2f} s")


@pytest.mark.xfail(strict=True, reason="stated value (2/3)sqrt(pi) differs from the defining "
                                       "integral, which is pi/2 (see decisions ledger)")
def test_criterion_1_literal_value():
    v = a0(-1.5, -0.5)
    stated = 2 / 3 * math.sqrt(math.pi)
    record("1 (literal)", abs(v - stated) <= 1e-9,
           f"a0(-3/2,-1/2) = {v.real:.10f} vs stated (2/3)sqrt(pi) = {stated:.10f}; "
           f"quadrature gives {a0_oracle(-1.5, -0.5).real:.10f}")


def test_criterion_2_pseudo_norm_values():
    r0 = pseudo_inner(-4.5, -4.5, 1, 0, 0).value
    r1 = pseudo_inner(-4.5, -4.5, 1, 1, 1).value
    o0 = integrate_line(lambda x: sech(x) ** 8).value
    o1 = -12.25 * integrate_line(lambda x: np.sinh(x) ** 2 * sech(x) ** 8).value
    signs = [pseudo_inner(-4.5, -4.5, 1, n, n).sign for n in range(4)]
    d = max(abs(r0 - 32 / 35), abs(r0 - o0), abs(r1 + 28 / 15), abs(r1 - o1))
    ok = d <= 1e-8 and signs == [1, -1, 1, -1]
    record(2, ok, f"n=0: {r0.real:.12f}, n=1: {r1.real:.12f}, max |diff| {d:.1e}, signs {signs}")


def test_criterion_3_four_case_table():
    worst_off, worst_iv, cases_iv, worst_spot = 0.0, 0.0, 0, 0.0
    ok = True
    for pt in standard_grid():
        p = pt.params
        if pt.label.startswith("pt_real"):
            # every entry is also recomputed by quadrature
            res = orthogonality_matrix(p, include_both_parities=True, spot_fraction=1.0)
            worst_spot = max(worst_spot, res.max_spot_residual)
            labels = res.labels
            for i, ket in enumerate(labels):
                for j, bra in enumerate(labels):
                    v = res.matrix[i, j]
                    if ket.quasi_parity != bra.quasi_parity:
                        ok &= v == 0  # (ii) identically zero
                    elif i != j:
                        worst_off = max(worst_off, abs(v))  # (i)
        elif pt.label.startswith("pt_broken"):
            for ket in states(p):
                for bra in states(p):
                    r = pseudo_inner(ket.quasi_parity * p.alpha, p.beta,
                                     ket.quasi_parity * bra.quasi_parity, ket.n, bra.n)
                    if ket.quasi_parity == bra.quasi_parity:
                        ok &= r.value == 0  # (iii)
                    elif ket.n == bra.n:
                        oracle = overlap_numeric(p, bra, ket, True, True).value
                        ok &= abs(r.value) > 0
                        worst_iv = max(worst_iv, abs(r.value - oracle))  # (iv)
                        cases_iv += 1
    ok = ok and worst_off <= 1e-9 and worst_spot <= 1e-9 and worst_iv <= 1e-8 and cases_iv > 0
    record(3, ok, f"max off-diagonal {worst_off:.1e} (quadrature {worst_spot:.1e}); "
                  f"cross-parity (n,n) vs oracle {worst_iv:.1e} over {cases_iv} entries")


def test_criterion_4_hermitian_norm():
    k = hermitian_norm(-1.5, 0, 0)
    c = normalization_constant(-1.5, 0)
    ok = abs(k - 2) <= 1e-12 and abs(c - 1 / math.sqrt(2)) <= 1e-12
    worst = 0.0
    for _, p, s in grid_states("hermitian"):
        kn = hermitian_norm(p.alpha, s.n, s.n)
        ok &= kn.real > 0 and abs(kn.imag) <= 1e-12 * kn.real
        cn = normalization_constant(p.alpha, s.n)
        est = overlap_numeric(p, s, s, False, True).value
        worst = max(worst, abs(cn * cn * est - 1))
    ok = ok and worst <= 1e-8
    record(4, ok, f"K(0,0)={k.real:.15g}, C={c:.15g}; max |C^2 K_quad - 1| = {worst:.1e}")


def test_criterion_5_im_energy_triple_agreement():
    t0 = time.perf_counter()
    worst_closed = worst_quad = 0.0
    count = 0
    for alpha in (0.25j, 0.5j, 1.0j):
        for beta in (-2.5, -3.0, -4.5):
            p = ScarfParams(alpha, beta)
            for s in states(p, (1,)):
                formula = im_energy_formula(alpha, beta, s.n)
                rel = im_energy_relation(alpha, beta, s.n)
                lq = overlap_numeric(p, s, s, False, True).value
                jq = overlap_numeric(p, s, s, False, True, weight=imaginary_weight(p)).value
                worst_closed = max(worst_closed, abs(rel.ratio - formula))
                worst_quad = max(worst_quad, abs(jq / lq - formula))
                count += 1
    example = im_energy_relation(0.5j, -3, 0).ratio
    elapsed = time.perf_counter() - t0
    ok = (worst_closed <= 1e-8 and worst_quad <= 1e-7 and abs(example - 0.5) <= 1e-8
          and elapsed < 30)
    record(5, ok, f"{count} states; closed {worst_closed:.1e}, quadrature {worst_quad:.1e}; "
                  f"Im E(0.5i,-3,0) = {example.real:.12f}; {elapsed:.2f} s")


def test_criterion_6_sweep(tmp_path):
    out = tmp_path / "sweep.json"
    code = main(["sweep", "--beta=-3", "--path=real:-1..0:5,imag:0..0.5:5", "--n=0",
                 "--format=json", "-o", str(out)])
    rows = json.loads(out.read_text())["rows"]
    real_rows = [r for r in rows if r["alpha_im"] == 0]
    imag_rows = [r for r in rows if r["alpha_re"] == 0]
    worst_real = max(max(abs(r["energy_im"]), abs(r["im_energy_ratio"])) for r in real_rows)
    worst_imag = max(max(abs(r["energy_im"] - r["alpha_im"]),
                         abs(r["im_energy_ratio"] - r["alpha_im"])) for r in imag_rows)
    ok = code == 0 and len(rows) == 10 and worst_real <= 1e-12 and worst_imag <= 1e-8
    record(6, ok, f"{len(rows)} rows; real segment max |Im E| {worst_real:.1e}; "
                  f"imaginary segment max |Im E - t| {worst_imag:.1e}")


def test_criterion_7_identities():
    t0 = time.perf_counter()
    moments = all(binomial_moment_sum(l, j) == (0 if j < l else (-1) ** l * math.factorial(l))
                  for l in range(21) for j in range(l + 1))
    proofs = [new_sum_rule_prove(n, m) for n in range(13) for m in range(n + 1)]
    elapsed = time.perf_counter() - t0
    ok = moments and all(proofs) and elapsed < 60
    record(7, ok, f"moment law l<=20 {'holds' if moments else 'fails'}; "
                  f"{sum(map(bool, proofs))}/{len(proofs)} sum-rule proofs; {elapsed:.1f} s")


def test_criterion_8_full_verify(tmp_path, capsys):
    t0 = time.perf_counter()
    code = main(["verify", "-o", str(tmp_path / "verify.csv")])
    elapsed = time.perf_counter() - t0
    err = capsys.readouterr().err
    summary = dict(kv.split("=") for kv in err.split())
    max_diff = float(summary["max_abs_diff"])
    ok = code == 0 and max_diff <= 1e-8 and elapsed < 300
    record(8, ok, f"exit {code}; {summary['entries']} entries, max_abs_diff {max_diff:.2e}; "
                  f"{elapsed:.1f} s")


def test_criterion_9_schrodinger_residual():
    x = np.linspace(-10, 10, 2001)
    worst, where = 0.0, None
    for label, p, s in grid_states():
        r = schrodinger_residual(p, s, x)
        if r > worst:
            worst, where = r, (label, s.n, s.quasi_parity)
    record(9, worst <= 1e-5, f"max residual / |E| = {worst:.1e} (at {where})")
