"""Jacobi forms of lattice index ``A1(m)^n`` as truncated Fourier expansions.

A Fourier index ``(n, r)`` pairs a ``q`` exponent with an integer vector of
``zeta`` exponents; its hyperbolic norm is ``n - sum r_i^2 / (4m)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from . import classical as cl
from .exact import LaurentPoly, PoleFraction, to_fraction
from .qseries import QSeries, UNIT, _e24


def _lift_scalar_series(s: QSeries, nvars: int) -> QSeries:
    """Scalar q-series as a series of constant Laurent polynomials."""
    return QSeries({e: LaurentPoly.constant(nvars, c) for e, c in s.coeffs.items()},
                   s.prec24, LaurentPoly.zero(nvars))


def _embed_series(s: QSeries, nvars: int, positions: Sequence[int]) -> QSeries:
    return QSeries({e: c.embed(nvars, positions) for e, c in s.coeffs.items()},
                   s.prec24, LaurentPoly.zero(nvars))


def _embed_coeff(c, nvars: int, positions: Sequence[int]):
    if isinstance(c, PoleFraction):
        orders = [0] * nvars
        for p, e in zip(positions, c.pole_orders):
            orders[p] = e
        return PoleFraction(c.numerator.embed(nvars, positions), orders, reduce=False)
    return c.embed(nvars, positions)


@dataclass
class JacobiSeries:
    """Fourier expansion ``sum c(n, r) q^n zeta^r`` of a Jacobi form.

    ``index`` is the scale ``m`` of every ``A1`` summand; layer 0 of a lift has
    index 0 and may carry :class:`PoleFraction` coefficients.
    """

    weight: int
    nvars: int
    index: int
    series: QSeries

    # -- basic access -------------------------------------------------------
    @property
    def prec(self) -> Optional[Fraction]:
        return self.series.prec

    @property
    def q_prec(self) -> int:
        """Exclusive bound on integral ``q`` exponents."""
        p = self.series.prec24
        return -(-p // UNIT)

    def coeff_poly(self, n):
        return self.series.coeff(n)

    def coefficient(self, n, r: Sequence[int]) -> Fraction:
        c = self.series.coeff(n)
        if isinstance(c, PoleFraction):
            raise ArithmeticError("coefficient of a pole fraction is not a number")
        return c.coeff(r)

    def norm(self, n, r: Sequence) -> Fraction:
        return hyperbolic_norm(n, r, self.index)

    def terms(self):
        """Yield ``(n, r, c)`` over the stored coefficients."""
        for e, poly in self.series.items():
            n = Fraction(e, UNIT)
            n = int(n) if n.denominator == 1 else n
            for r, c in poly.terms():
                yield n, r, c

    # -- arithmetic -----------------------------------------------------------
    def _check(self, other: "JacobiSeries"):
        if self.nvars != other.nvars:
            raise ValueError("Jacobi series live on different lattices")

    def __add__(self, other: "JacobiSeries") -> "JacobiSeries":
        self._check(other)
        if self.weight != other.weight or self.index != other.index:
            raise ValueError("cannot add Jacobi series of different weight or index")
        return JacobiSeries(self.weight, self.nvars, self.index, self.series + other.series)

    def __sub__(self, other: "JacobiSeries") -> "JacobiSeries":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "JacobiSeries":
        return JacobiSeries(self.weight, self.nvars, self.index, self.series.scale(to_fraction(c)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, JacobiSeries):
            self._check(other)
            return JacobiSeries(self.weight + other.weight, self.nvars,
                                self.index + other.index, self.series * other.series)
        return NotImplemented

    __rmul__ = __mul__

    def times_modular(self, f: QSeries, weight: int) -> "JacobiSeries":
        """Multiply by a scalar modular form of the given weight."""
        return JacobiSeries(self.weight + weight, self.nvars, self.index,
                            self.series * _lift_scalar_series(f, self.nvars))

    def truncate(self, prec) -> "JacobiSeries":
        return JacobiSeries(self.weight, self.nvars, self.index, self.series.truncate(prec))

    def agrees(self, other: "JacobiSeries", prec=None) -> bool:
        return self.series.agrees(other.series, prec)

    def restrict(self, i: int) -> "JacobiSeries":
        """Set ``z_i = 0`` (1-based)."""
        s = self.series.map(lambda c: c.substitute_one(i), zero=LaurentPoly.zero(self.nvars - 1))
        return JacobiSeries(self.weight, self.nvars - 1, self.index, s)

    def permute(self, perm: Sequence[int]) -> "JacobiSeries":
        return JacobiSeries(self.weight, self.nvars, self.index,
                            self.series.map(lambda c: c.permute(perm)))

    def to_json(self) -> dict:
        return {"weight": self.weight, "nvars": self.nvars, "index": self.index,
                "series": self.series.to_json()}

    def __str__(self) -> str:
        return str(self.series)


def hyperbolic_norm(n, r: Sequence, m: int) -> Fraction:
    if m == 0:
        return Fraction(n)
    return Fraction(n) - sum(Fraction(x) ** 2 for x in r) / (4 * m)


@dataclass
class SingularReport:
    weak: bool
    holomorphic: bool
    cusp: bool
    singular: List[Tuple[object, tuple, Fraction, Fraction]] = field(default_factory=list)

    @property
    def classification(self) -> str:
        if self.cusp:
            return "cusp"
        if self.holomorphic:
            return "holomorphic"
        if self.weak:
            return "weak"
        return "weakly holomorphic"


# -- building blocks -----------------------------------------------------------

@lru_cache(maxsize=32)
def phi_basic(kind: str, prec: int) -> JacobiSeries:
    """``phi_{-2,1}`` (``kind='-2'``) or ``phi_{0,1}`` (``kind='0'``)."""
    if kind in ("-2", "m2"):
        return JacobiSeries(-2, 1, 1, cl.phi_m2_1(prec))
    if kind == "0":
        return JacobiSeries(0, 1, 1, cl.phi_0_1(prec))
    raise ValueError(f"unknown basic form {kind!r}")


def external_product(factors: Sequence[JacobiSeries]) -> JacobiSeries:
    """Tensor product: variables of the factors are concatenated in order."""
    nvars = sum(f.nvars for f in factors)
    indices = {f.index for f in factors if f.nvars}
    if len(indices) > 1:
        raise ValueError("external product needs a common index scale")
    index = indices.pop() if indices else 0
    pos = 0
    out = None
    for f in factors:
        emb = _embed_series(f.series, nvars, range(pos, pos + f.nvars))
        pos += f.nvars
        out = emb if out is None else out * emb
    weight = sum(f.weight for f in factors)
    return JacobiSeries(weight, nvars, index, out)


def basis_monomial(eps: Sequence[int], prec: int) -> JacobiSeries:
    """``prod_i phi_{eps_i, 1}(z_i)`` with ``eps_i`` in ``{-2, 0}``."""
    return external_product([phi_basic("-2" if e == -2 else "0", prec) for e in eps])


@lru_cache(maxsize=16)
def _elementary_tables(n: int, prec: int) -> Tuple[JacobiSeries, ...]:
    """Coefficients of ``t^k`` in ``prod_i (phi_0(z_i) + t phi_{-2}(z_i))``."""
    a = phi_basic("0", prec)
    b = phi_basic("-2", prec)
    if n == 0:
        return (JacobiSeries(0, 0, 1, QSeries({0: LaurentPoly.one(0)}, None, LaurentPoly.zero(0))),)
    rows: List[Optional[QSeries]] = [None] * (n + 1)
    for i in range(n):
        ai = _embed_series(a.series, n, [i])
        bi = _embed_series(b.series, n, [i])
        new: List[Optional[QSeries]] = [None] * (n + 1)
        if i == 0:
            new[0], new[1] = ai, bi
        else:
            for k in range(i + 2):
                acc = None
                if rows[k] is not None:
                    acc = rows[k] * ai
                if k >= 1 and rows[k - 1] is not None:
                    t = rows[k - 1] * bi
                    acc = t if acc is None else acc + t
                new[k] = acc
        rows = new
    return tuple(JacobiSeries(-2 * k, n, 1, rows[k]) for k in range(n + 1))


def fk_symmetric(n: int, k: int, prec: int) -> JacobiSeries:
    """Weyl-invariant ``f_k``: sum over ``k``-subsets of ``phi_{-2,1}`` positions,
    ``phi_{0,1}`` elsewhere.  Weight ``-2k``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    return _elementary_tables(n, prec)[k]


def delta_times(phi: JacobiSeries, prec: int) -> JacobiSeries:
    return phi.times_modular(cl.delta(prec), 12).truncate(prec)


@lru_cache(maxsize=16)
def psi_n(n: int, prec: int) -> JacobiSeries:
    """Weight-0 weak form from theta functions whose Borcherds lift has
    divisor ``2 * sum r_i^perp`` (minus ``2 r^perp`` when ``n = 5``)."""
    if not 0 <= n <= 6:
        raise ValueError("psi_n is defined for 0 <= n <= 6")
    extra = Fraction(1, 2)
    p = prec + extra
    total = None
    for which, sign in (("00", 1), ("01", -1), ("10", -1)):
        zf = {"00": cl.theta00, "01": cl.theta01, "10": cl.theta10}[which](p)
        sq = zf * zf
        part = None
        for i in range(n):
            emb = _embed_series(sq, n, [i])
            part = emb if part is None else part * emb
        null = cl.thetanull(which, p) ** (12 - 2 * n)
        nullz = _lift_scalar_series(null, n)
        part = nullz if part is None else part * nullz
        part = part.scale(sign)
        total = part if total is None else total + part
    eta12 = _lift_scalar_series(cl.eta_power(-12, p + 1), n)
    out = (total * eta12).scale(Fraction(1, 2)).truncate(prec)
    if not out.is_integral():
        raise ArithmeticError("psi_n has non-integral q exponents; theta inputs are inconsistent")
    for c in out.coeffs.values():
        if c.half:
            raise ArithmeticError("psi_n has half-integral zeta exponents")
    return JacobiSeries(0, n, 1, out)


def psi_rank17(prec: int) -> JacobiSeries:
    """``(29/24) E4^2 E_{4,1}/Delta + (19/24) E6 E_{6,1}/Delta``, weight 0 index 1."""
    p = prec + 2
    e4 = cl.eisenstein(4, p)
    e6 = cl.eisenstein(6, p)
    a = phi_basic("0", p)
    b = phi_basic("-2", p)
    e41 = (a.times_modular(e4, 4) - b.times_modular(e6, 6)).scale(Fraction(1, 12))
    e61 = (a.times_modular(e6, 6) - b.times_modular(e4 * e4, 8)).scale(Fraction(1, 12))
    inv_delta = cl.delta(p + 1).inverse()
    first = e41.times_modular(e4 * e4 * inv_delta, -4).scale(Fraction(29, 24))
    second = e61.times_modular(e6 * inv_delta, -6).scale(Fraction(19, 24))
    return (first + second).truncate(prec)


# -- Hecke operators -------------------------------------------------------------

def hecke_v(phi: JacobiSeries, N: int, q_prec: Optional[int] = None) -> JacobiSeries:
    """``phi | V_N`` for ``N >= 1``:
    ``c_N(n, r) = sum_{d | (n, r, N)} d^(k-1) c(nN/d^2, r/d)``."""
    if N < 1:
        raise ValueError("use hecke_v0 for N = 0")
    if not phi.series.is_integral():
        raise ValueError("Hecke operators need integral q exponents")
    k = phi.weight
    src = phi.series
    if N == 1:
        s = src if q_prec is None else src.truncate(q_prec)
        return JacobiSeries(k, phi.nvars, phi.index, s)
    p24 = src.prec24
    avail = -(-(p24 // UNIT) // N) if p24 is not None else None
    top = avail if q_prec is None else (q_prec if avail is None else min(avail, q_prec))
    if top is None:
        raise ValueError("exact input needs q_prec")
    if avail is not None and q_prec is not None and q_prec > avail:
        top = avail
    val = src.valuation24 // UNIT if src.coeffs else 0
    start = min(val, val * N)
    zero = LaurentPoly.zero(phi.nvars)
    data = {}
    divs = cl.divisors(N)
    for n in range(start, top):
        acc = None
        for d in divs:
            if n % d:
                continue
            m = n * N // (d * d)
            c = src.coeffs.get(m * UNIT)
            if c is None:
                continue
            w = Fraction(d) ** (k - 1)
            t = c.inflate(d) * w
            acc = t if acc is None else acc + t
        if acc is not None and acc:
            data[n * UNIT] = acc
    return JacobiSeries(k, phi.nvars, phi.index * N, QSeries(data, top * UNIT, zero))


def _is_positive(r: Sequence[int]) -> bool:
    for x in r:
        if x:
            return x > 0
    return False


def hecke_v0(phi: JacobiSeries, q_prec: int) -> JacobiSeries:
    """The ``s^0`` layer of the additive lift.

    ``-c(0,0) B_k/(2k) E_k + sum_{r>0} c(0, r) (zeta d/dzeta)^(k-2) wp(zeta^r)``
    with the Eisenstein term dropped in weight 2.  Only poles along the
    coordinate hyperplanes (``r`` a unit vector) are supported.
    """
    k = phi.weight
    n = phi.nvars
    lead = phi.series.coeffs.get(0, LaurentPoly.zero(n))
    if any(e < 0 for e in phi.series.coeffs):
        raise ValueError("V_0 of a form with negative q powers is not supported")
    zero = LaurentPoly.zero(n)
    total = QSeries({}, q_prec * UNIT, zero)
    c00 = lead.coeff((0,) * n)
    if c00 and k != 2:
        if k % 2:
            raise ValueError("odd weight with nonzero c(0,0)")
        ek = cl.eisenstein(k, q_prec)
        total = total + _lift_scalar_series(ek, n).scale(-c00 * cl.bernoulli(k) / (2 * k))
    for r, c in lead.integral_terms():
        if not any(r) or not _is_positive(r):
            continue
        nz = [i for i, x in enumerate(r) if x]
        if len(nz) != 1 or abs(r[nz[0]]) != 1:
            raise NotImplementedError(f"V_0 pole along non-coordinate vector {r}")
        if k < 2:
            raise ValueError("V_0 needs weight >= 2 when c(0, r) != 0")
        i = nz[0]
        wp = cl.wp_expansion(k - 2, q_prec)
        layer = QSeries({e: _embed_coeff(x, n, [i]) for e, x in wp.coeffs.items()}, wp.prec24, zero)
        total = total + layer.scale(c)
    return JacobiSeries(k, n, 0, total)


# -- analysis ------------------------------------------------------------------

def classify(phi: JacobiSeries) -> SingularReport:
    weak = True
    holo = True
    cusp = True
    sing = []
    for n, r, c in phi.terms():
        nm = phi.norm(n, r)
        if n < 0:
            weak = False
        if nm < 0:
            holo = False
            sing.append((n, r, nm, c))
        if nm <= 0:
            cusp = False
    return SingularReport(weak and True, holo, cusp and holo, sing)


def reduce_index(n, r: Sequence[int], m: int) -> Tuple[Fraction, tuple]:
    """Canonical elliptic representative: each ``r_i`` moved into ``(-m, m]``."""
    rr = []
    for x in r:
        y = ((x + m - 1) % (2 * m)) - (m - 1) if m else x
        rr.append(y)
    nm = hyperbolic_norm(n, r, m)
    return nm + sum(Fraction(y * y) for y in rr) / (4 * m), tuple(rr)


def coefficient_reduced(phi: JacobiSeries, n, r: Sequence[int]) -> Fraction:
    """``c(n, r)`` using elliptic invariance to move into the known range."""
    n2, r2 = reduce_index(n, r, phi.index)
    if n2.denominator != 1:
        return Fraction(0)
    p = phi.series.prec24
    if p is not None and n2 * UNIT >= p:
        raise IndexError("coefficient beyond truncation even after reduction")
    return phi.coefficient(int(n2), r2)


def elliptic_violations(phi: JacobiSeries, limit: int = 10) -> list:
    """Pairs of indices related by a unit elliptic translation whose stored
    coefficients differ (within the truncation)."""
    m = phi.index
    p24 = phi.series.prec24
    bad = []
    for n, r, c in phi.terms():
        for i in range(phi.nvars):
            for lam in (1, -1):
                n2 = n + lam * r[i] + m * lam * lam
                if p24 is not None and n2 * UNIT >= p24:
                    continue
                r2 = list(r)
                r2[i] += 2 * m * lam
                if phi.coefficient(n2, r2) != c:
                    bad.append(((n, r), (n2, tuple(r2))))
                    if len(bad) >= limit:
                        return bad
    return bad


def is_elliptic_invariant(phi: JacobiSeries) -> bool:
    return not elliptic_violations(phi, limit=1)


def restrict_var(phi: JacobiSeries, i: int) -> JacobiSeries:
    return phi.restrict(i)


# -- linear solving on the phi_{-2,1}/phi_{0,1} workbench -----------------------

@dataclass
class JacobiSolution:
    labels: list
    particular: Optional[list]
    kernel: List[list]
    weight: int
    nvars: int

    @property
    def feasible(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.feasible and not self.kernel

    def build(self, prec: int, coeffs: Optional[list] = None) -> JacobiSeries:
        """Assemble the series for a coefficient vector (default: particular)."""
        vec = self.particular if coeffs is None else coeffs
        if vec is None:
            raise ValueError("infeasible constraints")
        return combine_basis(self.weight, self.nvars, self.labels, vec, prec)

    def forms(self, prec: int) -> List[JacobiSeries]:
        out = []
        if self.particular is not None:
            out.append(self.build(prec))
        for v in self.kernel:
            out.append(self.build(prec, v))
        return out


def workbench_basis(weight: int, n: int) -> list:
    """Labels ``(a, b, eps)`` for ``E4^a E6^b prod phi_{eps_i}`` of the weight."""
    labels = []
    for eps in itertools.product((-2, 0), repeat=n):
        rest = weight - sum(eps)
        if rest < 0 or rest % 2:
            continue
        for b in range(rest // 6 + 1):
            r4 = rest - 6 * b
            if r4 % 4 == 0:
                labels.append((r4 // 4, b, eps))
    return labels


def combine_basis(weight: int, n: int, labels, coeffs, prec: int) -> JacobiSeries:
    """``sum coeff * E4^a E6^b prod phi_{eps_i}`` computed pattern by pattern
    with shared prefix products."""
    by_eps: Dict[tuple, QSeries] = {}
    e4 = cl.eisenstein(4, prec)
    e6 = cl.eisenstein(6, prec)
    for (a, b, eps), c in zip(labels, coeffs):
        c = to_fraction(c)
        if not c:
            continue
        term = (e4 ** a * e6 ** b).truncate(prec).scale(c)
        by_eps[eps] = by_eps[eps] + term if eps in by_eps else term
    zero = LaurentPoly.zero(n)
    if not by_eps:
        return JacobiSeries(weight, n, 1, QSeries({}, prec * UNIT, zero))
    a_ser = phi_basic("0", prec).series
    b_ser = phi_basic("-2", prec).series
    cache: Dict[tuple, QSeries] = {}

    def prefix(eps: tuple) -> QSeries:
        if eps in cache:
            return cache[eps]
        last = _embed_series(b_ser if eps[-1] == -2 else a_ser, n, [len(eps) - 1])
        out = last if len(eps) == 1 else prefix(eps[:-1]) * last
        cache[eps] = out
        return out

    total = None
    for eps, scal in sorted(by_eps.items()):
        part = _lift_scalar_series(scal, n)
        if n:
            part = prefix(eps) * part
        total = part if total is None else total + part
    return JacobiSeries(weight, n, 1, total.truncate(prec))


def _coefficient_table(labels, n: int, depth: int):
    """Coefficients of each basis monomial at ``q^0..q^depth``."""
    prec = depth + 1
    e4 = cl.eisenstein(4, prec)
    e6 = cl.eisenstein(6, prec)
    a = phi_basic("0", prec).series
    b = phi_basic("-2", prec).series
    out = []
    for (ea, eb, eps) in labels:
        s = _lift_scalar_series((e4 ** ea * e6 ** eb).truncate(prec), n)
        for i, e in enumerate(eps):
            s = s * _embed_series(b if e == -2 else a, n, [i])
        out.append(s.truncate(prec))
    return out


def _nullspace(rows: List[List[Fraction]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)], []
    M = flint.fmpq_mat(len(rows), ncols, [flint.fmpq(x.numerator, x.denominator) for row in rows for x in row])
    R, rank = M.rref()
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if R[i, j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x = R[i, f]
            v[p] = -Fraction(int(x.p), int(x.q))
        basis.append(v)
    return basis, pivots


def solve_jacobi(weight: int, n: int, q0: Optional[LaurentPoly] = None, c00=None,
                 vanish_q0_nonconstant: bool = False, n_sing: Optional[int] = 2,
                 labels=None, symmetric: bool = False) -> JacobiSolution:
    """Affine space of workbench combinations meeting the constraints.

    ``q0`` prescribes the whole ``q^0`` coefficient.  ``c00`` fixes ``c(0,0)``
    and ``vanish_q0_nonconstant`` kills ``c(0, r)`` for ``r != 0``.  With
    ``n_sing`` set, every singular coefficient whose elliptic representative
    sits at ``q^1..q^n_sing`` must vanish, so all singular coefficients are
    carried by the ``q^0`` term.  ``symmetric`` restricts to forms invariant
    under permuting the elliptic variables.
    """
    labels = workbench_basis(weight, n) if labels is None else labels
    depth = max(1, n_sing or 0)
    table = _coefficient_table(labels, n, depth)
    rows, rhs = [], []
    box = list(itertools.product((-1, 0, 1), repeat=n))
    if q0 is not None or c00 is not None or vanish_q0_nonconstant:
        for r in box:
            if q0 is not None:
                target = q0.coeff(r)
            elif not any(r):
                if c00 is None:
                    continue
                target = to_fraction(c00)
            elif vanish_q0_nonconstant:
                target = Fraction(0)
            else:
                continue
            rows.append([t.coeff(0).coeff(r) for t in table])
            rhs.append(target)
    if n_sing:
        for level in range(1, n_sing + 1):
            for r in box:
                if hyperbolic_norm(level, r, 1) >= 0:
                    continue
                rows.append([t.coeff(level).coeff(r) for t in table])
                rhs.append(Fraction(0))
    ncols = len(labels)
    if symmetric:
        where = {lab: i for i, lab in enumerate(labels)}
        for i, (a, b, eps) in enumerate(labels):
            j = where[(a, b, tuple(sorted(eps)))]
            if i != j:
                row = [Fraction(0)] * ncols
                row[i], row[j] = Fraction(1), Fraction(-1)
                rows.append(row)
                rhs.append(Fraction(0))
    aug = [row + [b] for row, b in zip(rows, rhs)]
    null_aug, pivots = _nullspace(aug, ncols + 1)
    if ncols in pivots:
        return JacobiSolution(labels, None, [], weight, n)
    particular = None
    kernel = []
    for v in null_aug:
        if v[ncols] != 0:
            particular = [x / -v[ncols] for x in v[:ncols]]
    homog, _ = _nullspace(rows, ncols)
    kernel = homog
    if particular is None:
        particular = [Fraction(0)] * ncols
    return JacobiSolution(labels, particular, kernel, weight, n)
