"""Fourier-Jacobi series of orthogonal modular forms: additive (Gritsenko)
and multiplicative (Borcherds) lifts of Jacobi forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from . import classical as cl
from .exact import LaurentPoly, PoleFraction, to_fraction
from .jacobi import (JacobiSeries, coefficient_reduced, hecke_v, hecke_v0, hyperbolic_norm,
                     _lift_scalar_series)
from .qseries import QSeries, UNIT, _e24


@dataclass
class FJSeries:
    """``sum_m phi_m(tau, z) s^m`` truncated at ``s^s_prec`` (exclusive).

    Layer ``m`` is a q-series with Laurent (or pole-fraction) coefficients,
    of Jacobi index ``m`` in the elliptic variables.
    """

    weight: int
    nvars: int
    layers: List[QSeries]
    lattice: str = ""

    @property
    def s_prec(self) -> int:
        return len(self.layers)

    def layer(self, m: int) -> JacobiSeries:
        return JacobiSeries(self.weight, self.nvars, m, self.layers[m])

    def q_prec(self) -> Optional[int]:
        ps = [l.prec24 for l in self.layers if l.prec24 is not None]
        return min(ps) // UNIT if ps else None

    def _zero(self, prec24) -> QSeries:
        return QSeries({}, prec24, LaurentPoly.zero(self.nvars))

    # -- arithmetic -------------------------------------------------------------
    def _binary(self, other: "FJSeries"):
        if self.nvars != other.nvars:
            raise ValueError("Fourier-Jacobi series on different lattices")
        return min(self.s_prec, other.s_prec)

    def __add__(self, other: "FJSeries") -> "FJSeries":
        if self.weight != other.weight:
            raise ValueError("cannot add forms of different weight")
        n = self._binary(other)
        return FJSeries(self.weight, self.nvars,
                        [self.layers[m] + other.layers[m] for m in range(n)], self.lattice)

    def __sub__(self, other: "FJSeries") -> "FJSeries":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "FJSeries":
        c = to_fraction(c)
        return FJSeries(self.weight, self.nvars, [l.scale(c) for l in self.layers], self.lattice)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, FJSeries):
            return NotImplemented
        n = self._binary(other)
        out = []
        for m in range(n):
            acc = None
            for a in range(m + 1):
                t = self.layers[a] * other.layers[m - a]
                acc = t if acc is None else acc + t
            out.append(acc)
        return FJSeries(self.weight + other.weight, self.nvars, out, self.lattice)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "FJSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        if k == 0:
            return self.one_like()
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def one_like(self) -> "FJSeries":
        one = QSeries({0: LaurentPoly.one(self.nvars)}, None, LaurentPoly.zero(self.nvars))
        layers = [one] + [self._zero(None) for _ in range(self.s_prec - 1)]
        return FJSeries(0, self.nvars, layers, self.lattice)

    def truncate(self, q_prec: int, s_prec: Optional[int] = None) -> "FJSeries":
        s = self.s_prec if s_prec is None else min(s_prec, self.s_prec)
        return FJSeries(self.weight, self.nvars, [l.truncate(q_prec) for l in self.layers[:s]],
                        self.lattice)

    def restrict(self, i: int, lattice: str = "") -> "FJSeries":
        """Set ``z_i = 0`` in every layer."""
        n = self.nvars - 1
        layers = [l.map(lambda c: c.substitute_one(i), zero=LaurentPoly.zero(n)) for l in self.layers]
        return FJSeries(self.weight, n, layers, lattice)

    def map_coeffs(self, f) -> "FJSeries":
        return FJSeries(self.weight, self.nvars, [l.map(f) for l in self.layers], self.lattice)

    # -- comparison ---------------------------------------------------------------
    def difference_report(self, other: "FJSeries", q_prec: Optional[int] = None,
                          s_prec: Optional[int] = None):
        """First ``(s, q, coefficient)`` where the two differ, or ``None``."""
        n = self._binary(other)
        if s_prec is not None:
            n = min(n, s_prec)
        for m in range(n):
            d = self.layers[m] - other.layers[m]
            for e, c in d.items():
                if q_prec is not None and e >= q_prec * UNIT:
                    break
                if c:
                    return m, Fraction(e, UNIT), c
        return None

    def agrees(self, other: "FJSeries", q_prec: Optional[int] = None, s_prec: Optional[int] = None) -> bool:
        return self.difference_report(other, q_prec, s_prec) is None

    def is_zero(self, q_prec: Optional[int] = None) -> bool:
        for l in self.layers:
            for e, c in l.items():
                if q_prec is not None and e >= q_prec * UNIT:
                    break
                if c:
                    return False
        return True

    def leading_term(self):
        """First nonzero ``(s, q, coefficient)`` in (s, q) order."""
        for m, l in enumerate(self.layers):
            for e, c in l.items():
                if c:
                    return m, Fraction(e, UNIT), c
        return None

    def pole_free(self) -> bool:
        return all(not isinstance(c, PoleFraction) for l in self.layers for c in l.coeffs.values())

    def to_json(self) -> dict:
        return {"weight": self.weight, "lattice": self.lattice or f"L{self.nvars}",
                "layers": [l.to_json() for l in self.layers]}

    def __str__(self) -> str:
        parts = []
        for m, l in enumerate(self.layers):
            if l:
                parts.append(f"s^{m}: {l}")
        return "\n".join(parts) if parts else "0"


def proportionality(a: FJSeries, b: FJSeries, q_prec: int, s_prec: int) -> Optional[Fraction]:
    """The scalar ``k`` with ``a = k b`` at the truncation, or ``None``."""
    lead = b.truncate(q_prec, s_prec).leading_term()
    if lead is None:
        return Fraction(0) if a.is_zero(q_prec) else None
    m, q, cb = lead
    ca = a.layers[m].coeff(q)
    if isinstance(cb, PoleFraction) or isinstance(ca, PoleFraction):
        return None
    (e, x), = list(cb.doubled_terms())[:1]
    k = ca.coeff(tuple(Fraction(v, 2) for v in e)) / x
    if (a - b.scale(k)).truncate(q_prec, s_prec).is_zero():
        return k
    return None


# -- additive lift ---------------------------------------------------------------

def lift_input_prec(q_prec: int, s_prec: int) -> int:
    """q precision a Jacobi form needs so that every lift layer reaches ``q_prec``."""
    return max(q_prec, (q_prec - 1) * (s_prec - 1) + 1)


def gritsenko_lift(phi: JacobiSeries, q_prec: int, s_prec: int, lattice: str = "") -> FJSeries:
    """``G(phi) = sum_{m >= 0} (phi | V_m) s^m`` for ``m < s_prec``."""
    if phi.index != 1:
        raise ValueError("additive lift expects an index-1 input")
    layers = [hecke_v0(phi, q_prec).series]
    for m in range(1, s_prec):
        v = hecke_v(phi, m, q_prec)
        layers.append(v.series.truncate(q_prec))
    return FJSeries(phi.weight, phi.nvars, layers, lattice)


# -- multiplicative lift ----------------------------------------------------------

def _is_positive(r) -> bool:
    for x in r:
        if x:
            return x > 0
    return False


def theta_block(q0: LaurentPoly, prec) -> QSeries:
    """``eta^{c(0,0)} prod_{r>0} (theta(<r,z>)/eta)^{c(0,r)}`` via its product
    expansion ``q^A prod_{r>0}(zeta^{r/2}-zeta^{-r/2})^{c(0,r)}
    prod_{n>=1, r}(1 - q^n zeta^r)^{c(0,r)}``."""
    n = q0.nvars
    terms = list(q0.integral_terms())
    total = sum(c for _, c in terms)
    a24 = total * UNIT / 24
    if Fraction(a24).denominator != 1:
        raise ArithmeticError("theta block with non-lattice q exponent")
    a24 = int(a24)
    num = LaurentPoly.one(n)
    den = LaurentPoly.one(n)
    for r, c in terms:
        if not _is_positive(r):
            continue
        if c.denominator != 1:
            raise ArithmeticError("theta block needs integral q^0 coefficients")
        half = LaurentPoly.from_dict(n, {tuple(Fraction(x, 2) for x in r): 1,
                                         tuple(Fraction(-x, 2) for x in r): -1})
        if c > 0:
            num = num * half ** int(c)
        else:
            den = den * half ** int(-c)
    lead = num.div_exact(den)
    p24 = _e24(prec)
    rel = p24 - a24
    zero = LaurentPoly.zero(n)
    if rel <= 0:
        return QSeries({}, p24, zero)
    top = -(-rel // UNIT)
    log = {}
    for N in range(1, top):
        acc = None
        for k in cl.divisors(N):
            t = q0.inflate(k) * Fraction(-1, k)
            acc = t if acc is None else acc + t
        if acc:
            log[N * UNIT] = acc
    prod = QSeries(log, rel, zero).exp()
    return prod.scale(lead).mul_q(Fraction(a24, UNIT))


def borcherds_constant(q0: LaurentPoly, index: int = 1) -> Fraction:
    """``C = (1/rank K) sum_r c(0, r) <r, r>/2`` with ``<r,r>/2 = sum r_i^2/(4m)``."""
    n = q0.nvars
    if n == 0:
        return Fraction(0)
    tot = sum(c * sum(Fraction(x * x) for x in r) for r, c in q0.integral_terms())
    return tot / (4 * index) / n


def borcherds_lift(phi: JacobiSeries, q_prec: int, s_prec: int, lattice: str = "") -> FJSeries:
    """``Theta_phi s^C exp(-sum_{m>=1} (phi|V_m) s^m)``, layers ``< s_prec``.

    ``phi`` must be known far enough in ``q`` for ``V_m`` up to the needed
    ``m``; insufficient input raises.
    """
    if phi.weight != 0:
        raise ValueError("Borcherds lifts take weight-0 input")
    n = phi.nvars
    q0 = phi.series.coeff(0)
    C = borcherds_constant(q0, phi.index)
    if C.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl vector component C = {C}")
    C = int(C)
    c00 = q0.coeff((0,) * n)
    weight = c00 / 2
    if weight.denominator != 1:
        raise ArithmeticError("odd c(0,0): half-integral weight not supported")
    M = s_prec - 1 - C
    zero = LaurentPoly.zero(n)
    layers = [QSeries({}, q_prec * UNIT, zero) for _ in range(s_prec)]
    if M < 0:
        return FJSeries(int(weight), n, layers, lattice)
    val = min(0, phi.series.valuation24 // UNIT)
    # the j-th exponential coefficient reaches down to q^(j*val)
    slack = -val * M
    theta = theta_block(q0, q_prec + slack)
    logs = [None] + [hecke_v(phi, m, q_prec + slack).series.scale(-1) for m in range(1, M + 1)]
    F = [QSeries({0: LaurentPoly.one(n)}, None, zero)]
    for m in range(1, M + 1):
        acc = None
        for k in range(1, m + 1):
            t = logs[k] * F[m - k]
            t = t.scale(k) if k != 1 else t
            acc = t if acc is None else acc + t
        F.append(acc.scale(Fraction(1, m)))
    for j in range(M + 1):
        layer = (theta * F[j]).truncate(q_prec)
        if layer.prec24 is None or layer.prec24 < q_prec * UNIT:
            raise ArithmeticError(f"input precision too low for layer s^{C + j}")
        layers[C + j] = layer
    return FJSeries(int(weight), n, layers, lattice)


def borcherds_input_prec(q_prec: int, s_prec: int, valuation: int = 0) -> int:
    """q precision of the input needed by :func:`borcherds_lift`."""
    M = max(1, s_prec - 1)
    slack = -min(0, valuation) * M
    return (q_prec + slack - 1) * M + 1


def divisor_order(phi: JacobiSeries, n0, r: Sequence[int]) -> Fraction:
    """Multiplicity ``sum_{lambda >= 1} c(lambda^2 n0, lambda r)`` of ``B(phi)``
    along the hyperplane of the negative-norm index ``(n0, r)``."""
    nm = hyperbolic_norm(n0, r, phi.index)
    if nm >= 0:
        raise ValueError("divisor order needs an index of negative norm")
    val = Fraction(phi.series.valuation24 or 0, UNIT)
    top = Fraction(phi.nvars * phi.index, 4) - val
    lam_max = isqrt(int(top / -nm)) + 1
    tot = Fraction(0)
    for lam in range(1, lam_max + 1):
        if lam * lam * nm + Fraction(phi.nvars * phi.index, 4) < val:
            break
        tot += coefficient_reduced(phi, lam * lam * n0, [lam * x for x in r])
    return tot


# -- rank-0 products -----------------------------------------------------------

def bivariate_zero(inner_prec24: int) -> QSeries:
    return QSeries({}, inner_prec24, Fraction(0))


def borcherds_rank0(psi: QSeries, n1: int, n2: int) -> Tuple[QSeries, Tuple[Fraction, Fraction]]:
    """``q1^h1 q2^h2 (1 - q1/q2)^{c(-1)} prod (1 - q1^m q2^n)^{c(mn)}`` over
    ``m > 0, n >= 0`` and ``m = 0, n > 0``, as a series in ``q2`` with ``q1``
    series coefficients, through bi-order ``(n1, n2)`` inclusive.

    ``h = (c(0)/24 - c(-1), c(0)/24)`` so that the ``(1, -1)`` factor combines
    with ``q2^h2`` into the polynomial ``q2^(h2 - c(-1)) (q2 - q1)^c(-1)``.
    """
    if psi.valuation24 is not None and psi.valuation24 < -UNIT:
        raise ValueError("principal part deeper than q^-1 is not supported")
    cm1 = psi.coeffs.get(-UNIT, Fraction(0))
    c0 = psi.coeffs.get(0, Fraction(0))
    h2 = c0 / 24
    h1 = h2 - cm1
    if h1.denominator != 1 or h2.denominator != 1 or cm1.denominator != 1:
        raise ArithmeticError("non-integral Weyl vector")
    p1, p2 = (n1 + 1) * UNIT, (n2 + 1) * UNIT

    def c(k):
        return psi.coeff(k) if k * UNIT < psi.prec24 else None

    # log of the product: -sum c(mn) sum_k q1^{mk} q2^{nk} / k
    inner0 = {}
    outer: Dict[int, Dict[int, Fraction]] = {}
    for m in range(0, n1 + 1):
        for n in range(0, n2 + 1):
            if m == 0 and n == 0:
                continue
            cm = c(m * n)
            if cm is None:
                raise ArithmeticError("psi not known far enough")
            if not cm:
                continue
            k = 1
            while m * k <= n1 and n * k <= n2:
                v = -cm / k
                if n == 0:
                    inner0[m * k * UNIT] = inner0.get(m * k * UNIT, 0) + v
                else:
                    d = outer.setdefault(n * k * UNIT, {})
                    d[m * k * UNIT] = d.get(m * k * UNIT, 0) + v
                k += 1
    L0 = QSeries(inner0, p1).exp()
    Lp = QSeries({e: QSeries(d, p1) for e, d in outer.items()}, p2, bivariate_zero(p1))
    prod = Lp.exp()
    prod = QSeries({e: x * L0 for e, x in prod.coeffs.items()}, prod.prec24, bivariate_zero(p1))
    # q1^h1 * q2^(h2 - c(-1)) * (q2 - q1)^c(-1)
    poly = QSeries({0: QSeries({0: Fraction(1)}, None)}, None, bivariate_zero(None))
    lin = QSeries({0: QSeries({UNIT: Fraction(-1)}, None), UNIT: QSeries({0: Fraction(1)}, None)},
                  None, bivariate_zero(None))
    if cm1 < 0:
        raise ValueError("negative c(-1) not supported")
    for _ in range(int(cm1)):
        poly = poly * lin
    poly = poly.mul_q(h2 - cm1).map(lambda s: s.mul_q(h1))
    out = poly * prod
    out = QSeries({e: x.truncate24(p1) for e, x in out.coeffs.items()}, p2, bivariate_zero(p1))
    return out, (h1, h2)


def fj_to_bivariate(F: FJSeries) -> QSeries:
    """A Fourier-Jacobi series on ``L0`` as a series in ``s`` with ``q`` series
    coefficients."""
    if F.nvars:
        raise ValueError("only rank-0 series are bivariate")
    layers = {}
    pmin = None
    for m, l in enumerate(F.layers):
        inner = l.map(lambda c: c.constant_value() if isinstance(c, LaurentPoly) else c,
                      zero=Fraction(0))
        pmin = inner.prec24 if pmin is None else min(pmin, inner.prec24)
        if inner:
            layers[m * UNIT] = inner
    return QSeries(layers, F.s_prec * UNIT, bivariate_zero(pmin))


def bivariate_agree(a: QSeries, b: QSeries, n1: int, n2: int):
    """First ``(i, j, a_ij, b_ij)`` with ``i <= n1, j <= n2`` that differs, else None."""
    for j in range(n2 + 1):
        ai = a.coeff(j)
        bi = b.coeff(j)
        for i in range(n1 + 1):
            x = ai.coeff(i) if isinstance(ai, QSeries) else Fraction(0)
            y = bi.coeff(i) if isinstance(bi, QSeries) else Fraction(0)
            if x != y:
                return i, j, x, y
    return None
