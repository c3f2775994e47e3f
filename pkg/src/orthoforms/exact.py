"""Exact Laurent polynomials in the elliptic variables and fractions with
poles along ``zeta_i = 1``.

Exponents are stored internally on an integer lattice, either in units of 1
or in units of 1/2 (``half`` mode), on top of a python-flint ``fmpq_mpoly``.
The public canonical encoding doubles every exponent so that it is always an
integer.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

import flint

Rational = Fraction

Exp = Tuple[int, ...]


@lru_cache(maxsize=None)
def _ctx(nvars: int):
    names = tuple(f"z{i + 1}" for i in range(nvars))
    return flint.fmpq_mpoly_ctx.get(names, "degrevlex")


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, flint.fmpz):
        return Fraction(int(x))
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    f = to_fraction(x)
    return flint.fmpq(f.numerator, f.denominator)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, flint.fmpq, flint.fmpz)) and not isinstance(x, bool)


class LaurentPoly:
    """Laurent polynomial in ``zeta_1..zeta_n`` with rational coefficients.

    Value is ``x^shift * poly`` where ``x_i = zeta_i`` or ``x_i = zeta_i^(1/2)``
    when ``half`` is set.  ``poly`` has minimal exponent 0 in every variable,
    which makes the representation canonical.
    """

    __slots__ = ("nvars", "half", "shift", "poly")

    def __init__(self, nvars: int, poly, shift: Exp | None = None, half: bool = False,
                 _normalized: bool = False):
        self.nvars = nvars
        self.half = half
        self.poly = poly
        self.shift = tuple(shift) if shift is not None else (0,) * nvars
        if not _normalized:
            self._normalize()

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, _ctx(nvars).from_dict({}), _normalized=True)

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def constant(cls, nvars: int, c) -> "LaurentPoly":
        c = _fmpq(c)
        if c == 0:
            return cls.zero(nvars)
        return cls(nvars, _ctx(nvars).from_dict({(0,) * nvars: c}), _normalized=True)

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence, coeff=1) -> "LaurentPoly":
        return cls.from_dict(nvars, {tuple(exp): coeff})

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping) -> "LaurentPoly":
        """Build from ``{exponent tuple: coefficient}``; exponents may be
        integers or halves (``Fraction`` with denominator 2)."""
        doubled = {}
        for e, c in terms.items():
            if len(e) != nvars:
                raise ValueError("exponent length does not match nvars")
            d = []
            for x in e:
                x2 = Fraction(x) * 2
                if x2.denominator != 1:
                    raise ValueError(f"exponent {x} is not a multiple of 1/2")
                d.append(int(x2))
            d = tuple(d)
            doubled[d] = doubled.get(d, Fraction(0)) + to_fraction(c)
        return cls.from_doubled(nvars, doubled)

    @classmethod
    def from_doubled(cls, nvars: int, terms: Mapping[Exp, object]) -> "LaurentPoly":
        terms = {tuple(e): c for e, c in terms.items() if c != 0}
        if not terms:
            return cls.zero(nvars)
        half = any(x % 2 for e in terms for x in e)
        if not half:
            terms = {tuple(x // 2 for x in e): c for e, c in terms.items()}
        lo = tuple(min(e[i] for e in terms) for i in range(nvars))
        data = {tuple(x - l for x, l in zip(e, lo)): _fmpq(c) for e, c in terms.items()}
        return cls(nvars, _ctx(nvars).from_dict(data), lo, half, _normalized=True)

    def _normalize(self) -> None:
        p = self.poly
        if p.is_zero():
            self.shift = (0,) * self.nvars
            self.half = False
            return
        if self.nvars:
            lo = tuple(int(x) for x in p.term_content().degrees())
            if any(lo):
                mono = _ctx(self.nvars).from_dict({tuple(lo): 1})
                p = p / mono
                self.shift = tuple(s + l for s, l in zip(self.shift, lo))
        self.poly = p
        if self.half:
            self._try_integral()

    def _try_integral(self) -> None:
        if any(s % 2 for s in self.shift):
            return
        if any(x % 2 for m in self.poly.monoms() for x in m):
            return
        data = {tuple(int(x) // 2 for x in m): c for m, c in zip(self.poly.monoms(), self.poly.coeffs())}
        self.poly = _ctx(self.nvars).from_dict(data)
        self.shift = tuple(s // 2 for s in self.shift)
        self.half = False

    def _as_half(self) -> Tuple[Exp, object]:
        if self.half:
            return self.shift, self.poly
        if self.nvars == 0:
            return self.shift, self.poly
        return tuple(2 * s for s in self.shift), self.poly.inflate([2] * self.nvars)

    @staticmethod
    def _align(a: "LaurentPoly", b: "LaurentPoly"):
        if a.nvars != b.nvars:
            raise ValueError("LaurentPoly variable counts differ")
        if a.half == b.half:
            return a.half, a.shift, a.poly, b.shift, b.poly
        sa, pa = a._as_half()
        sb, pb = b._as_half()
        return True, sa, pa, sb, pb

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if _is_scalar(other):
            other = LaurentPoly.constant(self.nvars, other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.poly.is_zero():
            return self
        if self.poly.is_zero():
            return other
        half, sa, pa, sb, pb = self._align(self, other)
        n = self.nvars
        if sa == sb:
            return LaurentPoly(n, pa + pb, sa, half)
        lo = tuple(min(x, y) for x, y in zip(sa, sb))
        ctx = _ctx(n)
        if sa != lo:
            pa = pa * ctx.from_dict({tuple(x - l for x, l in zip(sa, lo)): 1})
        if sb != lo:
            pb = pb * ctx.from_dict({tuple(x - l for x, l in zip(sb, lo)): 1})
        return LaurentPoly(n, pa + pb, lo, half)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, -self.poly, self.shift, self.half, _normalized=True)

    def __sub__(self, other):
        if _is_scalar(other):
            return self + (-to_fraction(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = _fmpq(other)
            if c == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly(self.nvars, self.poly * c, self.shift, self.half, _normalized=True)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.poly.is_zero() or other.poly.is_zero():
            return LaurentPoly.zero(self.nvars)
        half, sa, pa, sb, pb = self._align(self, other)
        shift = tuple(x + y for x, y in zip(sa, sb))
        out = LaurentPoly(self.nvars, pa * pb, shift, half, _normalized=True)
        if half:
            out._try_integral()
        return out

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / to_fraction(other))
        if isinstance(other, LaurentPoly):
            return self.div_exact(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse_monomial() ** (-k)
        out = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Quotient when ``other`` divides ``self`` in the Laurent ring."""
        if other.poly.is_zero():
            raise ZeroDivisionError("division by zero LaurentPoly")
        half, sa, pa, sb, pb = self._align(self, other)
        q, r = divmod(pa, pb)
        if not r.is_zero():
            raise ArithmeticError("LaurentPoly division is not exact")
        return LaurentPoly(self.nvars, q, tuple(x - y for x, y in zip(sa, sb)), half)

    def inverse_monomial(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ArithmeticError("only monomials are invertible in the Laurent ring")
        (e, c), = self.doubled_terms()
        return LaurentPoly.from_doubled(self.nvars, {tuple(-x for x in e): 1 / c})

    # -- inspection ---------------------------------------------------
    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __bool__(self) -> bool:
        return not self.poly.is_zero()

    def __len__(self) -> int:
        return len(self.poly)

    def is_monomial(self) -> bool:
        return len(self.poly) == 1

    def is_constant(self) -> bool:
        return self.poly.is_zero() or (len(self.poly) == 1 and not any(self.shift)
                                        and not any(self.poly.monoms()[0]))

    def constant_value(self) -> Fraction:
        return self.coeff((0,) * self.nvars)

    def __eq__(self, other) -> bool:
        if _is_scalar(other):
            other = LaurentPoly.constant(self.nvars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.nvars == other.nvars and self.half == other.half
                and self.shift == other.shift and self.poly == other.poly)

    __hash__ = None

    def doubled_terms(self) -> Iterator[Tuple[Exp, Fraction]]:
        """Yield ``(doubled exponent, coefficient)`` pairs."""
        mult = 1 if self.half else 2
        sh = self.shift
        for m, c in zip(self.poly.monoms(), self.poly.coeffs()):
            yield tuple(mult * (int(x) + s) for x, s in zip(m, sh)), Fraction(int(c.p), int(c.q))

    def terms(self) -> Iterator[Tuple[tuple, Fraction]]:
        """Yield ``(exponent, coefficient)`` with int or half-integer exponents."""
        for e, c in self.doubled_terms():
            yield tuple(x // 2 if x % 2 == 0 else Fraction(x, 2) for x in e), c

    def to_dict(self) -> Dict[tuple, Fraction]:
        return dict(self.terms())

    def integral_terms(self) -> Iterator[Tuple[Exp, Fraction]]:
        """Like :meth:`terms` but insists on integral exponents."""
        if self.half:
            raise ValueError("half-integral exponents present")
        sh = self.shift
        for m, c in zip(self.poly.monoms(), self.poly.coeffs()):
            yield tuple(int(x) + s for x, s in zip(m, sh)), Fraction(int(c.p), int(c.q))

    def coeff(self, exp: Sequence) -> Fraction:
        if self.poly.is_zero():
            return Fraction(0)
        d = []
        for x in exp:
            x = Fraction(x)
            if self.half:
                x = x * 2
            if x.denominator != 1:
                return Fraction(0)
            d.append(int(x))
        rel = tuple(x - s for x, s in zip(d, self.shift))
        if any(x < 0 for x in rel):
            return Fraction(0)
        return to_fraction(self.poly[rel])

    def support_bounds(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        """Per-variable (min, max) exponent."""
        if self.poly.is_zero():
            return tuple((Fraction(0), Fraction(0)) for _ in range(self.nvars))
        unit = Fraction(1, 2) if self.half else Fraction(1)
        hi = [int(x) for x in self.poly.degrees()]
        return tuple((unit * s, unit * (s + h)) for s, h in zip(self.shift, hi))

    # -- variable operations -------------------------------------------
    def substitute_one(self, i: int) -> "LaurentPoly":
        """Set ``zeta_i = 1`` (1-based) and drop that variable."""
        if not 1 <= i <= self.nvars:
            raise IndexError("variable index out of range")
        n = self.nvars
        if self.poly.is_zero():
            return LaurentPoly.zero(n - 1)
        name = f"z{i}"
        p = self.poly.subs({name: 1})
        # rename z_{j+1} -> z_j for j >= i by composing with the smaller context's generators
        small = _ctx(n - 1)
        gens = list(small.gens())
        images = gens[: i - 1] + [small.from_dict({(0,) * (n - 1): 1})] + gens[i - 1:]
        p = p.compose(*images, ctx=small) if n > 1 else small.from_dict({(): p.coeffs()[0]} if not p.is_zero() else {})
        shift = self.shift[: i - 1] + self.shift[i:]
        return LaurentPoly(n - 1, p, shift, self.half)

    def inflate(self, d: int) -> "LaurentPoly":
        """``zeta_i -> zeta_i^d`` for every variable."""
        if d == 1 or self.poly.is_zero() or self.nvars == 0:
            return self
        if d <= 0:
            raise ValueError("inflation factor must be positive")
        return LaurentPoly(self.nvars, self.poly.inflate([d] * self.nvars),
                           tuple(d * s for s in self.shift), self.half, _normalized=True)

    def negate_variables(self) -> "LaurentPoly":
        """``zeta -> zeta^-1`` in every variable."""
        return LaurentPoly.from_doubled(
            self.nvars, {tuple(-x for x in e): c for e, c in self.doubled_terms()})

    def permute(self, perm: Sequence[int]) -> "LaurentPoly":
        """New variable ``perm[j]`` (0-based) receives old variable ``j``."""
        n = self.nvars
        out = {}
        for e, c in self.doubled_terms():
            new = [0] * n
            for j, x in enumerate(e):
                new[perm[j]] = x
            out[tuple(new)] = c
        return LaurentPoly.from_doubled(n, out)

    def embed(self, nvars: int, positions: Sequence[int]) -> "LaurentPoly":
        """Place the variables of ``self`` at ``positions`` of a larger space."""
        out = {}
        for e, c in self.doubled_terms():
            new = [0] * nvars
            for j, x in zip(positions, e):
                new[j] = x
            out[tuple(new)] = c
        return LaurentPoly.from_doubled(nvars, out)

    def compose_monomial(self, nvars: int, r: Sequence[int]) -> "LaurentPoly":
        """For a one-variable ``p(zeta)`` return ``p(zeta^r)`` in ``nvars`` variables."""
        if self.nvars != 1:
            raise ValueError("compose_monomial expects a one-variable polynomial")
        out = {}
        for (e,), c in self.doubled_terms():
            key = tuple(e * ri for ri in r)
            out[key] = out.get(key, 0) + c
        return LaurentPoly.from_doubled(nvars, out)

    def external(self, other: "LaurentPoly") -> "LaurentPoly":
        """Tensor product: variables of ``other`` are appended after ours."""
        n = self.nvars + other.nvars
        a = self.embed(n, range(self.nvars))
        b = other.embed(n, range(self.nvars, n))
        return a * b

    # -- poles ---------------------------------------------------------
    def _d_factor(self, i: int, half: bool):
        ctx = _ctx(self.nvars)
        g = ctx.gens()[i - 1]
        one = ctx.from_dict({(0,) * self.nvars: 1})
        base = g * g - one if half else g - one
        return base * base

    def divides_by_D(self, i: int) -> bool:
        """Whether ``zeta_i - 2 + zeta_i^-1`` divides this polynomial."""
        if self.poly.is_zero():
            return True
        _, r = divmod(self.poly, self._d_factor(i, self.half))
        return r.is_zero()

    def div_by_D(self, i: int) -> "LaurentPoly":
        q, r = divmod(self.poly, self._d_factor(i, self.half))
        if not r.is_zero():
            raise ArithmeticError("not divisible by D_i")
        # D_i = zeta_i^-1 (zeta_i - 1)^2, so dividing multiplies by zeta_i
        shift = list(self.shift)
        shift[i - 1] += 2 if self.half else 1
        return LaurentPoly(self.nvars, q, tuple(shift), self.half)

    def mul_by_D(self, i: int, k: int = 1) -> "LaurentPoly":
        return self * D_poly(self.nvars, i) ** k if k else self

    # -- output ---------------------------------------------------------
    def to_json(self) -> list:
        items = sorted(self.doubled_terms(), key=lambda t: _glex_key(t[0]), reverse=True)
        return [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in items]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable[dict]) -> "LaurentPoly":
        return cls.from_doubled(nvars, {tuple(d["exp"]): Fraction(int(d["num"]), int(d["den"]))
                                        for d in data})

    def __str__(self) -> str:
        return render_terms(self.doubled_terms(), [f"zeta{i + 1}" for i in range(self.nvars)])

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self})"


def _glex_key(e: Exp):
    return (sum(e), e)


def _fmt_exp(x: int) -> str:
    if x % 2 == 0:
        v = x // 2
        return str(v) if v >= 0 else f"({v})"
    return f"({x}/2)"


def render_terms(terms, names: Sequence[str]) -> str:
    """Graded-lex rendering of doubled-exponent terms, highest first."""
    items = sorted(terms, key=lambda t: _glex_key(t[0]), reverse=True)
    if not items:
        return "0"
    parts = []
    for e, c in items:
        mono = []
        for name, x in zip(names, e):
            if x == 0:
                continue
            mono.append(name if x == 2 else f"{name}^{_fmt_exp(x)}")
        mono_s = "*".join(mono)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono_s:
            body = str(a)
        elif a == 1:
            body = mono_s
        else:
            body = f"{a}*{mono_s}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def D_poly(nvars: int, i: int) -> LaurentPoly:
    """``zeta_i - 2 + zeta_i^-1``."""
    e = [0] * nvars
    terms = {}
    e[i - 1] = 1
    terms[tuple(e)] = 1
    e[i - 1] = -1
    terms[tuple(e)] = 1
    terms[(0,) * nvars] = -2
    return LaurentPoly.from_dict(nvars, terms)


class PoleFraction:
    """``numerator / prod_i D_i^{e_i}`` with ``D_i = zeta_i - 2 + zeta_i^-1``.

    Kept reduced: no ``D_i`` with ``e_i > 0`` divides the numerator.
    Arithmetic collapses pole-free results to plain :class:`LaurentPoly`.
    """

    __slots__ = ("numerator", "pole_orders")

    def __init__(self, numerator: LaurentPoly, pole_orders: Sequence[int], reduce: bool = True):
        if len(pole_orders) != numerator.nvars:
            raise ValueError("pole_orders length must equal nvars")
        if any(e < 0 for e in pole_orders):
            raise ValueError("pole orders are nonnegative")
        self.numerator = numerator
        self.pole_orders = tuple(pole_orders)
        if reduce:
            self._reduce()

    @property
    def nvars(self) -> int:
        return self.numerator.nvars

    def _reduce(self) -> None:
        num = self.numerator
        if num.is_zero():
            self.pole_orders = (0,) * num.nvars
            return
        orders = list(self.pole_orders)
        for i in range(len(orders)):
            while orders[i] > 0 and num.divides_by_D(i + 1):
                num = num.div_by_D(i + 1)
                orders[i] -= 1
        self.numerator = num
        self.pole_orders = tuple(orders)

    @classmethod
    def make(cls, numerator: LaurentPoly, pole_orders: Sequence[int]):
        """Reduced fraction, or a LaurentPoly when no pole survives."""
        f = cls(numerator, pole_orders)
        return f.simplify()

    @classmethod
    def lift(cls, x) -> "PoleFraction":
        if isinstance(x, PoleFraction):
            return x
        if isinstance(x, LaurentPoly):
            return cls(x, (0,) * x.nvars, reduce=False)
        raise TypeError(f"cannot view {type(x).__name__} as PoleFraction")

    def simplify(self):
        if not any(self.pole_orders):
            return self.numerator
        return self

    def is_polynomial(self) -> bool:
        return not any(self.pole_orders)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_polynomial():
            raise ArithmeticError("fraction has poles")
        return self.numerator

    def _common(self, other: "PoleFraction"):
        top = tuple(max(a, b) for a, b in zip(self.pole_orders, other.pole_orders))
        na, nb = self.numerator, other.numerator
        for i, (t, a, b) in enumerate(zip(top, self.pole_orders, other.pole_orders)):
            if t > a:
                na = na * D_poly(self.nvars, i + 1) ** (t - a)
            if t > b:
                nb = nb * D_poly(self.nvars, i + 1) ** (t - b)
        return top, na, nb

    def __add__(self, other):
        if _is_scalar(other):
            other = LaurentPoly.constant(self.nvars, other)
        if isinstance(other, LaurentPoly):
            other = PoleFraction.lift(other)
        if not isinstance(other, PoleFraction):
            return NotImplemented
        top, na, nb = self._common(other)
        return PoleFraction.make(na + nb, top)

    __radd__ = __add__

    def __neg__(self):
        return PoleFraction(-self.numerator, self.pole_orders, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            if to_fraction(other) == 0:
                return LaurentPoly.zero(self.nvars)
            return PoleFraction(self.numerator * other, self.pole_orders, reduce=False)
        if isinstance(other, LaurentPoly):
            other = PoleFraction.lift(other)
        if not isinstance(other, PoleFraction):
            return NotImplemented
        orders = tuple(a + b for a, b in zip(self.pole_orders, other.pole_orders))
        return PoleFraction.make(self.numerator * other.numerator, orders)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / to_fraction(other))
        return NotImplemented

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __bool__(self) -> bool:
        return not self.numerator.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentPoly, int, Fraction)):
            other = PoleFraction.lift(other if isinstance(other, LaurentPoly)
                                      else LaurentPoly.constant(self.nvars, other))
        if not isinstance(other, PoleFraction):
            return NotImplemented
        top, na, nb = self._common(other)
        return na == nb

    __hash__ = None

    def substitute_one(self, i: int):
        if self.pole_orders[i - 1]:
            raise ArithmeticError(f"pole along zeta{i} = 1; cannot restrict")
        orders = self.pole_orders[: i - 1] + self.pole_orders[i:]
        return PoleFraction.make(self.numerator.substitute_one(i), orders)

    def inflate(self, d: int):
        raise ArithmeticError("inflation of a pole fraction is not supported")

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "pole_orders": list(self.pole_orders)}

    def __str__(self) -> str:
        den = "*".join(f"D{i + 1}" + (f"^{e}" if e > 1 else "")
                       for i, e in enumerate(self.pole_orders) if e)
        return f"({self.numerator})/({den})" if den else str(self.numerator)

    def __repr__(self) -> str:
        return f"PoleFraction({self})"


def coerce_laurent(x, nvars: int):
    """Interpret scalars as constants of the given variable count."""
    if isinstance(x, (LaurentPoly, PoleFraction)):
        return x
    return LaurentPoly.constant(nvars, x)
