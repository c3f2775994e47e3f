"""Elliptic modular forms, theta functions and the Weierstrass layer.

All series here are exact :class:`QSeries`; Jacobi variables enter as
one-variable :class:`LaurentPoly` coefficients.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import List

from .exact import LaurentPoly, PoleFraction, D_poly
from .qseries import QSeries, UNIT, _e24


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli number with ``B_1 = -1/2``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    B = [Fraction(1)]
    for m in range(1, k + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[k]


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


def divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def eisenstein(k: int, prec: int) -> QSeries:
    """Normalized ``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``; ``k`` even >= 2."""
    if k < 2 or k % 2:
        raise ValueError("Eisenstein series need even weight >= 2")
    c = -Fraction(2 * k) / bernoulli(k)
    vals = [Fraction(1)] + [c * sigma(k - 1, n) for n in range(1, prec)]
    return QSeries.from_list(vals, prec=prec)


def _euler_product(prec24: int) -> QSeries:
    """``prod (1 - q^n)`` via the pentagonal number theorem, exponents < prec24/24."""
    top = -(-prec24 // UNIT)
    data = {}
    k = 0
    while True:
        done = True
        for kk in ((k,) if k == 0 else (k, -k)):
            e = kk * (3 * kk - 1) // 2
            if e < top:
                data[e * UNIT] = Fraction(-1 if kk % 2 else 1)
                done = False
        if done and k > 0:
            break
        k += 1
    return QSeries(data, top * UNIT)


def eta_power(k: int, prec) -> QSeries:
    """``eta^k`` with exponents below ``prec`` (any integer ``k``)."""
    p24 = _e24(prec)
    shift = k  # q^(k/24)
    need = p24 - shift
    if need <= 0:
        return QSeries({}, p24)
    base = _euler_product(need)
    if k >= 0:
        s = base ** k
    else:
        s = base.inverse() ** (-k)
    return s.mul_q(Fraction(shift, UNIT)).truncate24(p24)


def eta(prec) -> QSeries:
    return eta_power(1, prec)


def delta(prec: int) -> QSeries:
    return eta_power(24, prec)


def j_invariant(prec: int) -> QSeries:
    """``j = E4^3 / Delta`` with exponents below ``prec`` (starts at ``q^-1``)."""
    e4 = eisenstein(4, prec + 1)
    d = delta(prec + 2)
    return (e4 ** 3 * d.mul_q(-1).inverse()).mul_q(-1).truncate(prec)


def e2_level2(prec: int) -> QSeries:
    """``2 E_2(2 tau) - E_2(tau) = 1 + 24 q + 24 q^2 + 96 q^3 + ...``."""
    e2 = eisenstein(2, prec)
    return (e2.scale_variable(2).truncate(prec) * 2 - e2).truncate(prec)


def f6_level2(prec: int) -> QSeries:
    """Weight-6 level-2 form ``sum_{d | n, n/d odd} d^5 q^n``."""
    vals = [Fraction(0)] + [Fraction(sum(d ** 5 for d in divisors(n) if (n // d) % 2))
                            for n in range(1, prec)]
    return QSeries.from_list(vals, prec=prec)


# -- theta functions ---------------------------------------------------------

def _theta(prec, half_index: bool, signed: bool, with_z: bool) -> QSeries:
    """``sum q^(nu^2/2) zeta^nu`` over ``nu`` in ``Z`` or ``Z + 1/2``."""
    p24 = _e24(prec)
    data = {}
    bound = isqrt(2 * p24 // UNIT + 2) + 2
    rng = range(-bound - 1, bound + 1)
    for n in rng:
        nu = Fraction(2 * n + 1, 2) if half_index else Fraction(n)
        e24 = nu * nu * UNIT / 2
        if e24 >= p24:
            continue
        sign = -1 if (signed and n % 2) else 1
        e24 = int(e24)
        if with_z:
            term = LaurentPoly.from_dict(1, {(nu,): sign})
            data[e24] = data[e24] + term if e24 in data else term
        else:
            data[e24] = data.get(e24, Fraction(0)) + sign
    zero = LaurentPoly.zero(1) if with_z else Fraction(0)
    return QSeries(data, p24, zero)


def theta00(prec, z: bool = True) -> QSeries:
    return _theta(prec, False, False, z)


def theta01(prec, z: bool = True) -> QSeries:
    return _theta(prec, False, True, z)


def theta10(prec, z: bool = True) -> QSeries:
    return _theta(prec, True, False, z)


def theta11(prec) -> QSeries:
    """Odd Jacobi theta ``q^(1/8) (zeta^(1/2) - zeta^(-1/2)) prod(...)``."""
    return _theta(prec, True, True, True)


def thetanull(which: str, prec) -> QSeries:
    return {"00": theta00, "01": theta01, "10": theta10}[which](prec, z=False)


# -- Weierstrass layer -------------------------------------------------------

def theta_derivative_fraction(f):
    """Apply ``zeta d/dzeta`` to a one-variable polynomial or pole fraction."""
    if isinstance(f, LaurentPoly):
        return _theta_poly(f)
    num, e = f.numerator, f.pole_orders[0]
    d = D_poly(1, 1)
    dD = LaurentPoly.from_dict(1, {(1,): 1, (-1,): -1})
    new = _theta_poly(num) * d - num * dD * e
    return PoleFraction.make(new, (e + 1,))


def _theta_poly(p: LaurentPoly) -> LaurentPoly:
    return LaurentPoly.from_doubled(p.nvars, {e: c * Fraction(e[0], 2) for e, c in p.doubled_terms()})


@lru_cache(maxsize=64)
def wp_expansion(order: int, prec: int) -> QSeries:
    """``(zeta d/dzeta)^order`` applied to ``(2 pi i)^-2 wp(tau, z)``.

    The ``q^0`` term is a :class:`PoleFraction` with pole along ``zeta = 1``.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    lead = PoleFraction(LaurentPoly.one(1), (1,))
    if order == 0:
        lead = lead + Fraction(1, 12)
    for _ in range(order):
        lead = theta_derivative_fraction(lead)
    data = {0: lead}
    for n in range(1, prec):
        terms = {}
        for d in divisors(n):
            w = d * d ** order
            terms[(d,)] = terms.get((d,), 0) + w
            terms[(-d,)] = terms.get((-d,), 0) + (w if order % 2 == 0 else -w)
            if order == 0:
                terms[(0,)] = terms.get((0,), 0) - 2 * d
        data[n * UNIT] = LaurentPoly.from_dict(1, terms)
    return QSeries(data, prec * UNIT, LaurentPoly.zero(1))


def phi_m2_1(prec: int) -> QSeries:
    """``phi_{-2,1} = theta11^2 / eta^6``."""
    t = theta11(prec + 1)
    return (t * t * eta_power(-6, prec + 1)).truncate(prec)


def phi_0_1(prec: int) -> QSeries:
    """``phi_{0,1} = 12 wp phi_{-2,1}``, reduced to a polynomial series."""
    s = wp_expansion(0, prec) * phi_m2_1(prec)
    s = s.scale(12)
    return s.map(lambda c: c.to_laurent() if isinstance(c, PoleFraction) else c,
                 zero=LaurentPoly.zero(1))
