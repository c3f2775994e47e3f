from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orthoforms import classical as cl
from orthoforms.exact import LaurentPoly
from orthoforms.jacobi import psi_n
from orthoforms.lifts import (FJSeries, bivariate_agree, borcherds_input_prec, borcherds_lift, borcherds_rank0,
                              divisor_order, fj_to_bivariate, gritsenko_lift, lift_input_prec,
                              proportionality, theta_block)
from orthoforms.qseries import bivariate_tensor
from orthoforms.vgs import chi_input, eisenstein_jacobi_reference

Q, S = 4, 4


@pytest.fixture(scope="module")
def siegel_e4():
    e41 = eisenstein_jacobi_reference(lift_input_prec(Q, S))[0]
    return gritsenko_lift(e41, Q, S, "L1").scale(240)


@pytest.fixture(scope="module")
def chi10():
    return gritsenko_lift(chi_input(1, 10, lift_input_prec(Q, S)), Q, S, "L1")


def _c(F, n, r, m):
    return F.layers[m].coeff(n).coeff((r,))


@given(st.integers(0, Q - 1), st.integers(0, S - 1), st.integers(-3, 3))
def test_lifts_are_symmetric_in_q_and_s(siegel_e4, n, m, r):
    assert _c(siegel_e4, n, r, m) == _c(siegel_e4, m, r, n)


def test_siegel_eisenstein_leading_coefficients(siegel_e4):
    assert _c(siegel_e4, 0, 0, 0) == 1
    assert _c(siegel_e4, 1, 0, 0) == 240
    assert _c(siegel_e4, 1, 2, 1) == 240
    assert _c(siegel_e4, 1, 1, 1) == 13440
    assert _c(siegel_e4, 1, 0, 1) == 30240


def test_igusa_cusp_form_leading_layer(chi10):
    assert chi10.layers[1].coeff(1) == LaurentPoly.from_dict(1, {(1,): 1, (0,): -2, (-1,): 1})
    assert chi10.layers[0].is_zero()


def test_restriction_of_siegel_eisenstein_is_a_tensor_square(siegel_e4):
    r = siegel_e4.restrict(1, "L0")
    e4 = cl.eisenstein(4, Q)
    assert bivariate_agree(fj_to_bivariate(r), bivariate_tensor(e4, e4), Q - 1, S - 1) is None


def test_proportionality_detects_scalars(chi10):
    assert proportionality(chi10.scale(-7), chi10, Q, S) == -7
    bent = FJSeries(chi10.weight, chi10.nvars, chi10.layers[:2] + [chi10.layers[2].scale(2)] + chi10.layers[3:])
    assert proportionality(bent, chi10, Q, S) is None


def test_theta_block_of_psi1_is_delta_times_phi_minus2():
    tb = theta_block(psi_n(1, 5).series.coeff(0), 4)
    d = cl.delta(4).map(lambda c: LaurentPoly.constant(1, c), zero=LaurentPoly.zero(1))
    want = (cl.phi_m2_1(4) * d).truncate(4)
    assert [tb.coeff(n) for n in range(4)] == [want.coeff(n) for n in range(4)]


def test_borcherds_product_of_psi1_is_chi10(chi10):
    q, s = 4, 3
    B = borcherds_lift(psi_n(1, borcherds_input_prec(q, s, 0)), q, s, "L1")
    assert proportionality(B, chi10.truncate(q, s), q, s) == 1


def test_double_zero_along_the_mirror():
    for n in (1, 2, 3):
        assert divisor_order(psi_n(n, 4), 0, [1] + [0] * (n - 1)) == 2


def test_rank0_product_weyl_vector():
    psi = (cl.j_invariant(10).scale(2) - cl.eisenstein(4, 10).truncate(10).scale(0)).truncate(10)
    psi = psi + type(psi)({0: Fraction(-1440)}, None)
    _, h = borcherds_rank0(psi.truncate(10), 3, 3)
    assert h == (0, 2)


def test_lift_input_precision():
    assert lift_input_prec(5, 4) == 13
    assert lift_input_prec(3, 1) == 3
