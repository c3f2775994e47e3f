from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orthoforms import classical as cl
from orthoforms.exact import LaurentPoly
from orthoforms.jacobi import (classify, coefficient_reduced, elliptic_violations, external_product,
                               fk_symmetric, hecke_v, hecke_v0, is_elliptic_invariant, phi_basic,
                               psi_n, psi_rank17, reduce_index, solve_jacobi, workbench_basis)
from orthoforms.vgs import eisenstein_jacobi_reference, unit_q0


@pytest.fixture(scope="module")
def e41():
    return eisenstein_jacobi_reference(6)[0]


def test_basic_forms_are_weak_and_elliptic_invariant():
    for kind in ("-2", "0"):
        phi = phi_basic(kind, 6)
        assert is_elliptic_invariant(phi)
        assert classify(phi).weak
        assert not classify(phi).holomorphic


def test_e41_is_holomorphic_but_not_cusp(e41):
    rep = classify(e41)
    assert rep.holomorphic and not rep.cusp
    assert e41.coefficient(1, (2,)) == 1
    assert e41.coefficient(1, (1,)) == 56


def test_products_stay_elliptic_invariant():
    phi = external_product([phi_basic("-2", 4), phi_basic("0", 4), phi_basic("-2", 4)])
    assert phi.nvars == 3
    assert is_elliptic_invariant(phi)
    assert elliptic_violations(phi) == []


@given(st.integers(0, 6), st.lists(st.integers(-6, 6), min_size=2, max_size=2))
def test_reduction_preserves_the_hyperbolic_norm(n, r):
    n2, r2 = reduce_index(n, r, 1)
    assert Fraction(n) - sum(Fraction(x * x, 4) for x in r) == n2 - sum(Fraction(x * x, 4) for x in r2)
    assert all(-1 <= x <= 1 for x in r2)


def test_reduced_coefficients_agree_with_stored_ones():
    phi = fk_symmetric(2, 1, 6)
    for n, r in [(1, (1, 1)), (2, (2, 1)), (3, (3, 0)), (4, (3, 3))]:
        assert coefficient_reduced(phi, n, r) == phi.coefficient(n, r)


def test_weight_two_solution_on_two_variables(e41):
    sol = solve_jacobi(2, 2, q0=unit_q0(2, 0))
    assert sol.unique
    got = sol.build(5)
    want = external_product([phi_basic("-2", 5), e41.truncate(5)])
    assert got.agrees(want, Fraction(5))


def test_non_symmetric_ambiguity_is_reported():
    full = solve_jacobi(4, 5, q0=LaurentPoly.one(5))
    sym = solve_jacobi(4, 5, q0=LaurentPoly.one(5), symmetric=True)
    assert len(full.kernel) == 4
    assert sym.unique


def test_infeasible_constraints():
    sol = solve_jacobi(2, 1, q0=LaurentPoly.one(1))
    assert not sol.feasible
    with pytest.raises(ValueError):
        sol.build(3)


def test_workbench_basis_counts():
    # weight 0 on one variable: phi_0 alone; weight -2: phi_-2 alone
    assert workbench_basis(0, 1) == [(0, 0, (0,))]
    assert workbench_basis(-2, 1) == [(0, 0, (-2,))]
    assert len(workbench_basis(4, 1)) == 2


def test_hecke_v1_is_identity_and_v2_is_elliptic_invariant():
    phi = fk_symmetric(2, 1, 8)
    assert hecke_v(phi, 1).series == phi.series
    v2 = hecke_v(phi, 2, 4)
    assert v2.index == 2
    assert is_elliptic_invariant(v2)


def test_hecke_v0_of_e41_contains_the_eisenstein_term(e41):
    v0 = hecke_v0(e41, 3)
    # -c(0,0) B_4 / 8 E_4 with c(0,0) = 1 gives 1/240 at q^0
    assert v0.series.coeff(0).constant_value() == Fraction(1, 240)


def test_psi_forms():
    p2 = psi_n(2, 2)
    assert p2.weight == 0
    # c(0,0)/2 = 8 is the weight of the product, 12 - 2n
    assert p2.series.coeff(0) == LaurentPoly.from_dict(2, {(1, 0): 2, (-1, 0): 2, (0, 1): 2, (0, -1): 2,
                                                          (0, 0): 16})
    assert is_elliptic_invariant(p2)
    p17 = psi_rank17(2)
    assert p17.series.coeff(-1) == LaurentPoly.constant(1, 2)
    assert p17.series.coeff(0).coeff((0,)) == 120


def test_delta_hecke_eigenvalue():
    d = cl.delta(12)
    s = d.map(lambda c: LaurentPoly.constant(0, c), zero=LaurentPoly.zero(0))
    from orthoforms.jacobi import JacobiSeries
    phi = JacobiSeries(12, 0, 1, s)
    assert hecke_v(phi, 2, 6).series == s.truncate(6).scale(-24)
    assert hecke_v(phi, 3, 4).series == s.truncate(4).scale(252)
