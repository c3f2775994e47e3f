from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orthoforms.symbolic import (FormalPoly, discriminant, elementary_from_power_sums, elementary_symmetric,
                                 flint_resultant, multiplicity, power_sums_from_elementary, resultant,
                                 symbols, verify_symbolic)

NAMES = ("x", "a")
small = st.integers(-4, 4)


def poly(max_deg=3):
    exps = st.tuples(st.integers(0, max_deg), st.integers(0, 2))
    return st.dictionaries(exps, small, min_size=1, max_size=5).map(lambda d: FormalPoly.from_terms(NAMES, d))


def to_sympy(p):
    x, a = sympy.symbols(NAMES)
    return sum(sympy.Rational(c.numerator, c.denominator) * x ** e[0] * a ** e[1] for e, c in p.terms().items())


@settings(max_examples=30)
@given(poly(), poly())
def test_resultant_matches_sympy(p, q):
    if p.degree("x") < 1 or q.degree("x") < 1:
        return
    if p.degree("x") < q.degree("x"):
        # sympy's sign is off in this ordering (it returns -1 for res(x, x^3 + 1))
        p, q = q, p
    x = sympy.symbols("x")
    want = sympy.expand(sympy.resultant(to_sympy(p), to_sympy(q), x))
    assert sympy.expand(to_sympy(resultant(p, q, "x")) - want) == 0
    assert resultant(p, q, "x") == flint_resultant(p, q, "x")


@settings(max_examples=30)
@given(poly())
def test_discriminant_matches_sympy(p):
    if p.degree("x") < 2:
        return
    x = sympy.symbols("x")
    want = sympy.expand(sympy.discriminant(to_sympy(p), x))
    assert sympy.expand(to_sympy(discriminant(p, "x")) - want) == 0


@settings(max_examples=30)
@given(poly(), poly())
def test_resultant_swap_sign(p, q):
    dp, dq = p.degree("x"), q.degree("x")
    if dp < 1 or dq < 1:
        return
    sign = -1 if (dp * dq) % 2 else 1
    assert resultant(p, q, "x") == resultant(q, p, "x") * sign


def test_resultant_against_sylvester_by_hand():
    x, = symbols("x")
    assert resultant(x, x ** 3 + 1, "x") == FormalPoly.constant(("x",), 1)
    assert resultant(x - 2, x ** 2 + 1, "x") == FormalPoly.constant(("x",), 5)


def test_quadratic_discriminant():
    x, b, c = symbols("x b c")
    assert discriminant(x ** 2 + b * x + c, "x") == b ** 2 - 4 * c


def test_multiplicity_counts_repeated_factors():
    x, y = symbols("x y")
    assert multiplicity(x - y, (x - y) ** 3 * (x + y)) == 3
    assert multiplicity(x + 2 * y, x ** 2) == 0


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=3), min_size=1, max_size=5))
def test_newton_identities_round_trip(xs):
    n = len(xs)
    e = [elementary_symmetric(xs, k) for k in range(n + 1)]
    p = power_sums_from_elementary(e, n)
    assert p == [sum(x ** k for x in xs) for k in range(1, n + 1)]
    assert elementary_from_power_sums(p, n) == e


def test_formal_poly_arithmetic():
    x, y = symbols("x y")
    f = (x + y) ** 2
    assert f.coefficient("x", 1) == 2 * y
    assert f.derivative("y") == 2 * x + 2 * y
    assert f.subs(y=1) == x ** 2 + 2 * x + 1
    assert f.divexact(x + y) == x + y
    assert f.evaluate({"x": Fraction(1, 2), "y": 3}) == Fraction(49, 4)
    g = f.extend(("x", "y", "z"))
    assert g.symbols == ("x", "y", "z") and g.degree("z") == 0
    assert (f / 2).coefficient("x", 2).constant_value() == Fraction(1, 2)


def test_symbolic_suite_passes():
    rep = verify_symbolic()
    assert rep.passed, [c.label for c in rep.checks if not c.passed]
