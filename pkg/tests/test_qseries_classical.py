from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from orthoforms import classical as cl
from orthoforms.exact import LaurentPoly, PoleFraction
from orthoforms.qseries import QSeries, UNIT, bivariate_coeff, bivariate_tensor

small = st.fractions(min_value=-9, max_value=9, max_denominator=4)


def series(prec=6, unit=True):
    return st.lists(small, min_size=prec, max_size=prec).map(
        lambda xs: QSeries.from_list([Fraction(1)] + xs[1:] if unit else xs, prec=prec))


@given(series(), series(), series())
def test_multiplication_is_commutative_and_associative(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@given(series())
def test_inverse_of_a_unit(a):
    inv = a.inverse()
    prod = (a * inv).truncate(a.prec)
    assert prod == QSeries.from_list([1] + [0] * (int(a.prec) - 1), prec=a.prec)


@given(st.lists(small, min_size=5, max_size=5))
def test_exp_turns_sums_into_products(xs):
    a = QSeries.from_list([0] + xs[1:], prec=5)
    b = QSeries.from_list([0] + xs[:4], prec=5)
    assert (a + b).exp() == (a.exp() * b.exp()).truncate(5)


@given(series(), st.integers(0, 4))
def test_pow_matches_repeated_product(a, k):
    expect = QSeries.from_list([1] + [0] * (int(a.prec) - 1), prec=a.prec)
    for _ in range(k):
        expect = (expect * a).truncate(a.prec)
    assert (a ** k).truncate(a.prec) == expect


def test_sympy_oracle_for_eta_quotient():
    q = sympy.symbols("q")
    poly = sympy.Poly(q, q)
    for n in range(1, 8):
        poly = poly * sympy.Poly((1 - q ** n) ** 24, q)
        poly = sympy.Poly(sum(c * q ** m for (m,), c in poly.terms() if m < 8), q)
    want = [poly.coeff_monomial(q ** n) for n in range(8)]
    got = cl.delta(8)
    assert [got.coeff(n) for n in range(8)] == [Fraction(int(w)) for w in want]


def test_fractional_exponents_are_kept_on_the_24th_lattice():
    e = cl.eta(3)
    assert e.coeff(Fraction(1, 24)) == 1
    assert e.coeff(Fraction(25, 24)) == -1


def test_reading_past_the_truncation_raises():
    with pytest.raises(IndexError):
        cl.eisenstein(4, 3).coeff(3)


def test_bernoulli_and_eisenstein_normalization():
    assert cl.bernoulli(2) == Fraction(1, 6)
    assert cl.bernoulli(12) == Fraction(-691, 2730)
    e2 = cl.eisenstein(2, 4)
    assert [e2.coeff(n) for n in range(4)] == [1, -24, -72, -96]


def test_j_invariant_leading_terms():
    j = cl.j_invariant(3)
    assert (j.coeff(-1), j.coeff(0), j.coeff(1), j.coeff(2)) == (1, 744, 196884, 21493760)


def test_level_two_reference_series():
    e = cl.e2_level2(4)
    assert [e.coeff(n) for n in range(4)] == [1, 24, 24, 96]


def test_jacobi_triple_product_for_theta11():
    # theta11^2 / eta^6 = phi_{-2,1}: leading coefficients (zeta - 2 + zeta^-1), then -2 zeta^2 + 8 zeta - 12 ...
    phi = cl.phi_m2_1(3)
    assert phi.coeff(0) == LaurentPoly.from_dict(1, {(1,): 1, (0,): -2, (-1,): 1})
    assert phi.coeff(1) == LaurentPoly.from_dict(1, {(2,): -2, (1,): 8, (0,): -12, (-1,): 8, (-2,): -2})


def test_phi0_leading_terms():
    phi = cl.phi_0_1(2)
    assert phi.coeff(0) == LaurentPoly.from_dict(1, {(1,): 1, (0,): 10, (-1,): 1})
    assert phi.coeff(1) == LaurentPoly.from_dict(1, {(2,): 10, (1,): -64, (0,): 108, (-1,): -64, (-2,): 10})


def test_weierstrass_constant_term_has_the_double_pole():
    wp = cl.wp_expansion(0, 2)
    lead = wp.coeff(0)
    assert isinstance(lead, PoleFraction)
    assert lead.pole_orders == (1,)


def test_bivariate_tensor_coefficients():
    f = cl.eisenstein(4, 3)
    g = cl.delta(3)
    F = bivariate_tensor(f, g)
    assert bivariate_coeff(F, 1, 1) == 240
    assert bivariate_coeff(F, 2, 2) == 2160 * -24
    assert bivariate_coeff(F, 0, 0) == 0
    assert F.prec24 == 3 * UNIT
