import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import grid_states
from scarf2.model import (
    DomainError, Regime, ScarfParams, StateIndex, UnsupportedRegimeError, bound_state_count,
    classify_regime, energy, imaginary_weight, potential, potential_values, schrodinger_residual,
    states, wavefunction, wavefunction_normalized, wavefunction_unnormalized,
)
from scarf2.quadrature import integrate_line


@pytest.mark.parametrize("alpha, beta, regime", [
    (-2.3, -1.1, Regime.PT_UNBROKEN),
    (0.5j, -3, Regime.PT_BROKEN),
    (-1.5 - 0.7j, -1.5 + 0.7j, Regime.HERMITIAN),
    (-3, 0.5j, Regime.PT_BROKEN),
    (0.5j, 0.3j, Regime.NO_BOUND_STATES),
    (1, 1, Regime.NO_BOUND_STATES),
    (-2 + 0.3j, -3 + 0.1j, Regime.GENERAL_COMPLEX),
    (-4.5, -4.5, Regime.HERMITIAN),  # real alpha = beta: Hermitian takes precedence
    (0, -3, Regime.PT_UNBROKEN),     # alpha = 0 counts as real
])
def test_classify_regime(alpha, beta, regime):
    assert classify_regime(ScarfParams(alpha, beta)) is regime


def test_classify_regime_tolerance_is_configurable():
    p = ScarfParams(-2 + 1e-10j, -1.1)
    assert classify_regime(p) is Regime.GENERAL_COMPLEX
    assert classify_regime(p, tol=1e-8) is Regime.PT_UNBROKEN


def test_bound_state_count():
    assert bound_state_count(ScarfParams(-4.5, -4.5), 1) == 4
    p = ScarfParams(0.5j, -3)
    assert bound_state_count(p, 1) == bound_state_count(p, -1) == 1
    assert bound_state_count(ScarfParams(1, 1), 1) == 0
    # strict inequality: n < 2 exactly gives n = 0, 1
    assert bound_state_count(ScarfParams(-2, -3), 1) == 2


def test_energy_examples():
    assert energy(ScarfParams(-3, -3), StateIndex(0)) == pytest.approx(-6.25)
    p = ScarfParams(0.5j, -3)
    ep, em = energy(p, StateIndex(0, 1)), energy(p, StateIndex(0, -1))
    assert ep == em.conjugate()
    assert ep.imag == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DomainError):
        energy(p, StateIndex(1))
    with pytest.raises(DomainError):
        StateIndex(-1)
    with pytest.raises(DomainError):
        StateIndex(0, 2)


def test_spectral_pairing_and_reality():
    for label, p, s in grid_states():
        e = energy(p, s)
        if label.startswith("pt_broken"):
            assert e == energy(p, StateIndex(s.n, -s.quasi_parity)).conjugate()
        else:
            assert abs(e.imag) <= 1e-14


def test_potential_examples():
    v = potential(ScarfParams(-1.5, -1.5), 0.0)
    assert v.total == pytest.approx(-2) and v.u == pytest.approx(-2) and v.w == 0
    p = ScarfParams(0.5j, -3)
    v = potential(p, 1.0)
    expected_w = 9.25 * math.sinh(1) / (2 * math.cosh(1) ** 2)
    assert v.w == pytest.approx(expected_w, rel=1e-14)
    assert v.total == pytest.approx(v.u + 1j * v.w, rel=1e-14)
    assert imaginary_weight(p)(1.0) == pytest.approx(expected_w, rel=1e-14)


def test_pt_symmetry_of_potential():
    x = np.linspace(-10, 10, 401)
    for pt_label, p, _ in grid_states():
        if pt_label.startswith("hermitian"):
            continue
        for xi in x[::20]:
            assert abs(potential(p, -xi).total.conjugate() - potential(p, xi).total) <= 1e-12
        assert np.allclose(np.conj(potential_values(p, -x)), potential_values(p, x), atol=1e-12)


def test_weight_is_finite_far_out():
    w = imaginary_weight(ScarfParams(0.5j, -3))(np.array([-800.0, 0.0, 800.0]))
    assert np.all(np.isfinite(w)) and w[1] == 0


def test_wavefunction_examples():
    p = ScarfParams(-1.5, -1.5)
    assert wavefunction_unnormalized(p, StateIndex(0), 0.0) == pytest.approx(1)
    x = np.linspace(-8, 8, 33)
    assert np.allclose(wavefunction_unnormalized(p, StateIndex(0), x), 1 / np.cosh(x), rtol=1e-14)
    lhs = wavefunction(-3, -2, 2)(-0.7)
    rhs = wavefunction(-2, -3, 2)(0.7)
    assert lhs == pytest.approx(rhs, rel=1e-13)  # (-1)^2 = 1
    with pytest.raises(DomainError):
        wavefunction_unnormalized(p, StateIndex(1), 0.0)


def test_wavefunction_matches_mpmath_definition():
    for a, b, n, x in [(-4.5 + 0.3j, -2.1, 2, 0.8), (0.5j, -3, 0, -1.7), (-3.7, -2.5, 2, 3.1)]:
        s = mpmath.sinh(x)
        ref = ((1 - 1j * s) ** (a / 2 + 0.25) * (1 + 1j * s) ** (b / 2 + 0.25)
               * mpmath.jacobi(n, a, b, 1j * s))
        assert abs(wavefunction(a, b, n)(x) - complex(ref)) <= 1e-13 * max(1, abs(complex(ref)))


cplx = st.builds(complex, st.floats(-6, 2), st.floats(-3, 3))


@settings(max_examples=100, deadline=None)
@given(a=cplx, b=cplx, n=st.integers(0, 5), x=st.floats(-6, 6))
def test_parity_transfer(a, b, n, x):
    f = wavefunction(a, b, n)
    lhs = f(-x)
    rhs = (-1) ** n * wavefunction(b, a, n)(x)
    # relative to the local size of F, so nodes of F do not count as failures
    scale = max(abs(lhs), abs(f(-x - 0.5)), abs(f(-x + 0.5)), 1e-300)
    assert abs(lhs - rhs) <= 1e-10 * scale


def test_wavefunction_array_and_scalar_shapes():
    f = wavefunction(-3, -2, 1)
    assert isinstance(f(0.3), complex)
    assert f(np.zeros((2, 3))).shape == (2, 3)


def test_normalized_wavefunction():
    p = ScarfParams(-1.5, -1.5)
    x = np.linspace(-3, 3, 13)
    assert np.allclose(wavefunction_normalized(p, StateIndex(0), x), 1 / (np.sqrt(2) * np.cosh(x)))
    norm = integrate_line(lambda t: np.abs(wavefunction_normalized(p, StateIndex(0), t)) ** 2)
    assert norm.value == pytest.approx(1, abs=1e-10)
    h = ScarfParams(-1.5 - 0.7j, -1.5 + 0.7j)
    norm = integrate_line(lambda t: np.abs(wavefunction_normalized(h, StateIndex(0), t)) ** 2)
    assert abs(norm.value - 1) <= 1e-8
    with pytest.raises(UnsupportedRegimeError):
        wavefunction_normalized(ScarfParams(0.5j, -3), StateIndex(0), 0.0)


def test_schrodinger_residual_all_grid_states():
    x = np.linspace(-5, 5, 1001)
    worst = max(schrodinger_residual(p, s, x) for _, p, s in grid_states())
    assert worst <= 1e-5


def test_schrodinger_residual_detects_wrong_energy():
    # the other quasi-parity branch has a different energy: its F fails this equation
    p = ScarfParams(-3.7, -2.5)
    q = ScarfParams(-3.7, -1.1)
    x = np.linspace(-5, 5, 201)
    assert schrodinger_residual(p, StateIndex(1), x) <= 1e-5
    assert schrodinger_residual(q, StateIndex(1), x) <= 1e-5
    # mixing: F from p, V and E from q
    f = wavefunction(-3.7, -2.5, 1)
    e = energy(q, StateIndex(1))
    h = 1e-4
    d2 = (f(x + h) - 2 * f(x) + f(x - h)) / h ** 2
    res = np.max(np.abs(-d2 + potential_values(q, x) * f(x) - e * f(x))) / abs(e)
    assert res > 1e-2


def test_states_ordering():
    p = ScarfParams(0.5j, -4.5)
    assert states(p) == [StateIndex(0, 1), StateIndex(1, 1), StateIndex(0, -1), StateIndex(1, -1)]
