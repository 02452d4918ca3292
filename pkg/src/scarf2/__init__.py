"""Scarf II potential: spectra, pseudo-norms and overlap integrals in closed form,
with an adaptive quadrature oracle and exact checks of the underlying sums."""
from scarf2._accel import backend
from scarf2.closed_forms import (
    DivergenceError, OverlapSpec, PseudoNormResult, a0, a1, hermitian_norm, im_energy_relation,
    j_w_element_sum, l_norm_sum, normalization_constant, pseudo_inner, q_closed, q_sum,
)
from scarf2.model import (
    DomainError, Regime, ScarfParams, StateIndex, UnsupportedRegimeError, classify_regime,
    energy, potential, wavefunction, wavefunction_normalized, wavefunction_unnormalized,
)
from scarf2.special_functions import PoleError, gamma_ratio, gen_binomial, jacobi_poly, log_gamma

__version__ = "0.1.0"
