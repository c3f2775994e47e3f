"""Truncated Laurent series in ``q`` with exponents on the 1/24 lattice.

Coefficients may live in any exact ring that supports ``+ - *`` and
``bool``: ``Fraction``, :class:`LaurentPoly`, :class:`PoleFraction`, or another
``QSeries`` (which gives bivariate series).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Iterable, Iterator, Optional, Tuple

from .exact import LaurentPoly, PoleFraction, to_fraction

UNIT = 24


def _e24(e) -> int:
    x = Fraction(e) * UNIT
    if x.denominator != 1:
        raise ValueError(f"exponent {e} is not on the 1/24 lattice")
    return int(x)


def _min(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_opt(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


def _invert(c):
    if isinstance(c, (Fraction, int)):
        return 1 / Fraction(c)
    if isinstance(c, LaurentPoly):
        return c.inverse_monomial()
    if isinstance(c, QSeries):
        return c.inverse()
    raise ArithmeticError(f"cannot invert coefficient of type {type(c).__name__}")


class QSeries:
    """``sum c_e q^(e/24)`` for ``e < prec24``; ``prec24 = None`` means exact.

    ``zero`` is the zero element of the coefficient ring, used for absent
    coefficients and to decide the ring of derived series.
    """

    __slots__ = ("coeffs", "prec24", "zero")

    def __init__(self, coeffs: Dict[int, object], prec24: Optional[int], zero=Fraction(0)):
        if prec24 is not None:
            coeffs = {e: c for e, c in coeffs.items() if e < prec24 and c}
        else:
            coeffs = {e: c for e, c in coeffs.items() if c}
        self.coeffs = coeffs
        self.prec24 = prec24
        self.zero = zero

    # -- construction ----------------------------------------------------
    @classmethod
    def from_list(cls, values: Iterable, offset=0, prec=None, zero=Fraction(0), step=1) -> "QSeries":
        """Coefficients of ``q^(offset + i*step)``; ``prec`` is an exponent bound
        (``None`` means the list is exact)."""
        o24, s24 = _e24(offset), _e24(step)
        data = {o24 + i * s24: (to_fraction(v) if isinstance(v, int) else v) for i, v in enumerate(values)}
        return cls(data, None if prec is None else _e24(prec), zero)

    @classmethod
    def constant(cls, c, zero=Fraction(0), prec=None) -> "QSeries":
        return cls({0: c}, None if prec is None else _e24(prec), zero)

    @classmethod
    def monomial(cls, e, c=Fraction(1), zero=Fraction(0)) -> "QSeries":
        return cls({_e24(e): c}, None, zero)

    # -- inspection ------------------------------------------------------
    @property
    def prec(self) -> Optional[Fraction]:
        return None if self.prec24 is None else Fraction(self.prec24, UNIT)

    @property
    def valuation24(self) -> Optional[int]:
        if self.coeffs:
            return min(self.coeffs)
        return self.prec24

    @property
    def offset24(self) -> int:
        v = self.valuation24
        return 0 if v is None else v

    def coeff(self, e):
        return self.coeff24(_e24(e))

    def __getitem__(self, e):
        return self.coeff(e)

    def coeff24(self, e24: int):
        if self.prec24 is not None and e24 >= self.prec24:
            raise IndexError(f"q^{Fraction(e24, UNIT)} is beyond the truncation q^{self.prec}")
        return self.coeffs.get(e24, self.zero)

    def items(self) -> Iterator[Tuple[int, object]]:
        for e in sorted(self.coeffs):
            yield e, self.coeffs[e]

    def exponents(self) -> list:
        return [Fraction(e, UNIT) for e in sorted(self.coeffs)]

    def is_integral(self) -> bool:
        return all(e % UNIT == 0 for e in self.coeffs)

    def step24(self) -> int:
        g = 0
        for e in self.coeffs:
            g = gcd(g, e)
        return g

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if self.prec24 != other.prec24:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, self.zero) == other.coeffs.get(k, other.zero) for k in keys)

    __hash__ = None

    def agrees(self, other: "QSeries", prec=None) -> bool:
        """Equality of the coefficients both series know (or below ``prec``)."""
        p = _min(self.prec24, other.prec24)
        if prec is not None:
            p = _min(p, _e24(prec))
        diff = self - other
        return all(not c for e, c in diff.coeffs.items() if p is None or e < p)

    def first_difference(self, other: "QSeries"):
        d = self - other
        for e, c in d.items():
            return Fraction(e, UNIT), c
        return None

    # -- arithmetic ------------------------------------------------------
    def _wrap(self, x) -> "QSeries":
        if isinstance(x, QSeries):
            return x
        return QSeries({0: x}, None, self.zero)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Fraction, LaurentPoly, PoleFraction)):
                other = self._wrap(other)
            else:
                return NotImplemented
        prec = _min(self.prec24, other.prec24)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            if prec is not None and e >= prec:
                continue
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
        return QSeries(out, prec, self.zero + other.zero)

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.prec24, self.zero)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "QSeries":
        if isinstance(c, (int, Fraction)) and c == 0:
            return QSeries({}, self.prec24, self.zero)
        return QSeries({e: x * c for e, x in self.coeffs.items()}, self.prec24, self.zero * c)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            if isinstance(other, (int, Fraction, LaurentPoly, PoleFraction)):
                return self.scale(other)
            return NotImplemented
        va, vb = self.valuation24, other.valuation24
        prec = _min(_add_opt(self.prec24, vb), _add_opt(other.prec24, va))
        zero = self.zero * other.zero
        if not self.coeffs or not other.coeffs:
            return QSeries({}, prec, zero)
        a = sorted(self.coeffs.items())
        b = sorted(other.coeffs.items())
        out: Dict[int, object] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = ea + eb
                if prec is not None and e >= prec:
                    break
                t = ca * cb
                if e in out:
                    out[e] = out[e] + t
                else:
                    out[e] = t
        return QSeries(out, prec, zero)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly, PoleFraction)):
            return QSeries({e: other * x for e, x in self.coeffs.items()}, self.prec24, other * self.zero)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.inverse()
        return NotImplemented

    def mul_q(self, e) -> "QSeries":
        """Multiply by ``q^e``."""
        s = _e24(e)
        return QSeries({k + s: c for k, c in self.coeffs.items()},
                       None if self.prec24 is None else self.prec24 + s, self.zero)

    def truncate(self, prec) -> "QSeries":
        p = _e24(prec)
        return QSeries(self.coeffs, _min(self.prec24, p), self.zero)

    def truncate24(self, p24: int) -> "QSeries":
        return QSeries(self.coeffs, _min(self.prec24, p24), self.zero)

    def map(self, f: Callable, zero=None) -> "QSeries":
        z = f(self.zero) if zero is None else zero
        return QSeries({e: f(c) for e, c in self.coeffs.items()}, self.prec24, z)

    def scale_variable(self, m: int) -> "QSeries":
        """``q -> q^m``."""
        if m <= 0:
            raise ValueError("scale factor must be positive")
        return QSeries({e * m: c for e, c in self.coeffs.items()},
                       None if self.prec24 is None else self.prec24 * m, self.zero)

    def inverse(self, prec=None) -> "QSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero series")
        v = self.valuation24
        c0 = self.coeffs[v]
        inv0 = _invert(c0)
        rel = {e - v: c for e, c in self.coeffs.items() if e != v}
        if self.prec24 is None:
            if not rel:
                return QSeries({-v: inv0}, None, self.zero)
            if prec is None:
                raise ValueError("inverse of an exact non-monomial series needs prec")
            top = _e24(prec) + v
        else:
            top = self.prec24 - v
            if prec is not None:
                top = min(top, _e24(prec) + v)
        out_prec = top - v
        g = 0
        for k in rel:
            g = gcd(g, k)
        res = {0: inv0}
        if g:
            rel_items = sorted(rel.items())
            for j in range(g, top, g):
                acc = None
                for k, ck in rel_items:
                    if k > j:
                        break
                    bj = res.get(j - k)
                    if bj is None:
                        continue
                    t = ck * bj
                    acc = t if acc is None else acc + t
                if acc is not None:
                    val = -(inv0 * acc)
                    if val:
                        res[j] = val
        return QSeries({e - v: c for e, c in res.items()}, out_prec, self.zero)

    def exp(self, prec=None) -> "QSeries":
        """``exp`` of a series with positive valuation."""
        one = self.zero + 1
        if not self.coeffs:
            return QSeries({0: one}, self.prec24, self.zero)
        if min(self.coeffs) <= 0:
            raise ArithmeticError("exp needs a series of positive valuation")
        top = self.prec24
        if prec is not None:
            top = _min(top, _e24(prec))
        if top is None:
            raise ValueError("exp of an exact series needs prec")
        g = 0
        for k in self.coeffs:
            g = gcd(g, k)
        items = sorted(self.coeffs.items())
        res = {0: one}
        for e in range(g, top, g):
            acc = None
            for k, ak in items:
                if k > e:
                    break
                fe = res.get(e - k)
                if fe is None:
                    continue
                t = ak * fe * k
                acc = t if acc is None else acc + t
            if acc is not None:
                val = acc * Fraction(1, e)
                if val:
                    res[e] = val
        return QSeries(res, top, self.zero)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = QSeries({0: self.zero + 1}, None, self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- output ----------------------------------------------------------
    def to_json(self) -> dict:
        off = self.offset24
        last = self.prec24 if self.prec24 is not None else (max(self.coeffs) + 1 if self.coeffs else off)
        return {"offset24": off, "prec24": self.prec24,
                "coeffs": [coeff_to_json(self.coeffs.get(e, self.zero)) for e in range(off, last)]}

    def __str__(self) -> str:
        parts = []
        for e, c in self.items():
            ex = Fraction(e, UNIT)
            mono = "" if ex == 0 else ("q" if ex == 1 else f"q^{ex if ex.denominator == 1 else '(' + str(ex) + ')'}")
            cs = str(c)
            if mono:
                if isinstance(c, Fraction) and c == 1:
                    parts.append(mono)
                elif isinstance(c, Fraction) and c == -1:
                    parts.append("-" + mono)
                elif isinstance(c, Fraction) and c.denominator == 1:
                    parts.append(f"{cs}*{mono}")
                else:
                    parts.append(f"({cs})*{mono}")
            else:
                parts.append(cs if isinstance(c, Fraction) else f"({cs})")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.prec24 is None:
            return body
        return f"{body} + O(q^{self.prec})"

    def __repr__(self) -> str:
        return f"QSeries({self})"


def coeff_to_json(c):
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return {"num": str(c.numerator), "den": str(c.denominator)}
    return c.to_json()


def qseries_from_json(data: dict, coeff_from_json=None, zero=Fraction(0)) -> QSeries:
    if coeff_from_json is None:
        def coeff_from_json(d):
            return Fraction(int(d["num"]), int(d["den"]))
    off = data["offset24"]
    coeffs = {off + i: coeff_from_json(d) for i, d in enumerate(data["coeffs"])}
    return QSeries(coeffs, data["prec24"], zero)


def bivariate_tensor(f: QSeries, g: QSeries) -> QSeries:
    """``f(tau1) * g(tau2)`` as a series in ``q2`` with coefficients in ``q1``."""
    zero_inner = QSeries({}, f.prec24, f.zero)
    return QSeries({e: f.scale(c) for e, c in g.coeffs.items()}, g.prec24, zero_inner)


def bivariate_coeff(F: QSeries, n1, n2):
    inner = F.coeff(n2)
    if isinstance(inner, QSeries):
        return inner.coeff(n1)
    return inner
