"""Exact arithmetic: the extended rationals and Puiseux-fraction coefficients.

Everything is kept in log scale. A coefficient ``c`` in the valued field is
never exponentiated; we only ever need ``log|c| = -ord_t(c)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import lcm
from typing import Iterable, Mapping, Union

from sympy.polys.densearith import dup_exquo
from sympy.polys.domains import QQ
from sympy.polys.euclidtools import dup_gcd

from .errors import DivisionByZero


@total_ordering
class NegInf:
    """The bottom element of the extended rationals. Use the ``NEG_INF`` singleton."""

    _instance: "NegInf | None" = None

    def __new__(cls) -> "NegInf":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __hash__(self) -> int:
        return hash("tropgr.NEG_INF")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, (int, Fraction)):
            return True
        return NotImplemented

    def __add__(self, other: object) -> "NegInf":
        if other is self or isinstance(other, (int, Fraction)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other: object) -> "NegInf":
        if isinstance(other, (int, Fraction)):
            return self
        if other is self:
            raise ArithmeticError("-inf - (-inf) is undefined")
        return NotImplemented

    def __rsub__(self, other: object):
        raise ArithmeticError("subtracting -inf from a finite value leaves the extended rationals")

    def __mul__(self, other: object) -> "NegInf":
        # Only positive scalings are meaningful in log scale.
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        raise ArithmeticError(f"-inf * {other!r} is not an extended rational")

    __rmul__ = __mul__

    def __reduce__(self):
        return (NegInf, ())


NEG_INF = NegInf()

ExtRat = Union[Fraction, NegInf]


def is_finite(a: ExtRat) -> bool:
    return a is not NEG_INF


def ext(a: "int | str | Fraction | NegInf") -> ExtRat:
    """Coerce to an ExtRat. Strings use the same spelling as :func:`format_ext`."""
    if a is NEG_INF:
        return NEG_INF
    if isinstance(a, str):
        return parse_ext(a)
    return Fraction(a)


def ext_add(a: ExtRat, b: ExtRat) -> ExtRat:
    if a is NEG_INF or b is NEG_INF:
        return NEG_INF
    return a + b


def ext_max(a: ExtRat, b: ExtRat) -> ExtRat:
    if a is NEG_INF:
        return b
    if b is NEG_INF:
        return a
    return a if a >= b else b


def ext_sum(values: Iterable[ExtRat]) -> ExtRat:
    total: ExtRat = Fraction(0)
    for v in values:
        total = ext_add(total, v)
    return total


def parse_ext(text: str) -> ExtRat:
    s = text.strip()
    if s in ("-inf", "-infinity", "−∞", "-∞"):
        return NEG_INF
    return Fraction(s)


def format_ext(a: ExtRat) -> str:
    if a is NEG_INF:
        return "-inf"
    return format_rational(a)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class PuiseuxPoly:
    """A finite sum ``sum q_e t^e`` with rational exponents and coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Fraction, Fraction] | Iterable[tuple] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, Fraction] = {}
        for e, q in items:
            e = Fraction(e)
            acc[e] = acc.get(e, Fraction(0)) + Fraction(q)
        self.terms: tuple[tuple[Fraction, Fraction], ...] = tuple(
            sorted((e, q) for e, q in acc.items() if q != 0)
        )
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: tuple) -> "PuiseuxPoly":
        # Caller guarantees sorted exponents and nonzero coefficients.
        p = object.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, q: Fraction | int) -> "PuiseuxPoly":
        return cls._raw(((Fraction(0), Fraction(q)),)) if q != 0 else cls._raw(())

    @classmethod
    def monomial(cls, q: Fraction | int, e: Fraction | int) -> "PuiseuxPoly":
        return cls._raw(((Fraction(e), Fraction(q)),)) if q != 0 else cls._raw(())

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def ord(self) -> Fraction:
        if not self.terms:
            raise ValueError("ord of the zero polynomial")
        return self.terms[0][0]

    def leading(self) -> Fraction:
        """Coefficient of the lowest power of t."""
        return self.terms[0][1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PuiseuxPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        acc = dict(self.terms)
        for e, q in other.terms:
            v = acc.get(e, 0) + q
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        return PuiseuxPoly._raw(tuple(sorted(acc.items())))

    def __neg__(self) -> "PuiseuxPoly":
        return PuiseuxPoly._raw(tuple((e, -q) for e, q in self.terms))

    def __sub__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        return self + (-other)

    def __mul__(self, other: "PuiseuxPoly") -> "PuiseuxPoly":
        if len(other.terms) == 1:
            f, r = other.terms[0]
            return PuiseuxPoly._raw(tuple((e + f, q * r) for e, q in self.terms))
        if len(self.terms) == 1:
            return other * self
        acc: dict[Fraction, Fraction] = {}
        for e, q in self.terms:
            for f, r in other.terms:
                acc[e + f] = acc.get(e + f, 0) + q * r
        return PuiseuxPoly._raw(tuple(sorted((e, q) for e, q in acc.items() if q)))

    def shift(self, e: Fraction) -> "PuiseuxPoly":
        return PuiseuxPoly._raw(tuple((f + e, q) for f, q in self.terms))

    def scale(self, c: Fraction) -> "PuiseuxPoly":
        if c == 0:
            return PuiseuxPoly._raw(())
        return PuiseuxPoly._raw(tuple((e, q * c) for e, q in self.terms))

    def exponent_denominator(self) -> int:
        d = 1
        for e, _ in self.terms:
            d = lcm(d, e.denominator)
        return d

    def __repr__(self) -> str:
        return f"PuiseuxPoly({format_puiseux(self)!r})"


_ONE_POLY = PuiseuxPoly.constant(1)
_ZERO_POLY = PuiseuxPoly._raw(())


def _to_dense(p: PuiseuxPoly, d: int, shift: Fraction) -> list:
    """Dense coefficient list (highest degree first) of p * t^-shift in s = t^(1/d)."""
    degs = [int((e - shift) * d) for e, _ in p.terms]
    top = degs[-1]
    out = [QQ(0)] * (top + 1)
    for k, (_, q) in zip(degs, p.terms):
        out[top - k] = QQ(q.numerator, q.denominator)
    return out


def _from_dense(coeffs: list, d: int, shift: Fraction) -> PuiseuxPoly:
    top = len(coeffs) - 1
    terms = []
    for idx, c in enumerate(coeffs):
        if c:
            terms.append((Fraction(top - idx, d) + shift, Fraction(int(c.numerator), int(c.denominator))))
    terms.sort()
    return PuiseuxPoly._raw(tuple(terms))


class ValuedCoeff:
    """An element ``num/den`` of the Puiseux-fraction field, kept in canonical form.

    Canonical form: the denominator has constant term (lowest exponent 0)
    and leading (highest exponent) coefficient 1, and shares no common factor
    with the numerator once exponents are scaled to integers.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PuiseuxPoly | Fraction | int = 0, den: PuiseuxPoly | Fraction | int = 1):
        if not isinstance(num, PuiseuxPoly):
            num = PuiseuxPoly.constant(num)
        if not isinstance(den, PuiseuxPoly):
            den = PuiseuxPoly.constant(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def _raw(cls, num: PuiseuxPoly, den: PuiseuxPoly) -> "ValuedCoeff":
        c = object.__new__(cls)
        c.num = num
        c.den = den
        return c

    @classmethod
    def monomial(cls, q: Fraction | int, e: Fraction | int = 0) -> "ValuedCoeff":
        return cls._raw(PuiseuxPoly.monomial(q, e), _ONE_POLY)

    @classmethod
    def t(cls) -> "ValuedCoeff":
        return cls.monomial(1, 1)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_rational(self) -> bool:
        return self.den.terms == _ONE_POLY.terms and (
            self.num.is_zero() or (len(self.num.terms) == 1 and self.num.terms[0][0] == 0)
        )

    def is_monomial(self) -> bool:
        return self.den.terms == _ONE_POLY.terms and len(self.num.terms) == 1

    def ord(self) -> Fraction:
        return self.num.ord() - self.den.ord()

    def log_abs(self) -> ExtRat:
        if self.num.is_zero():
            return NEG_INF
        return -(self.num.ord() - self.den.ord())

    def residue(self) -> Fraction:
        """Leading rational coefficient: the image of c / t^ord(c) in the residue field."""
        if self.num.is_zero():
            return Fraction(0)
        return self.num.leading() / self.den.leading()

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return ValuedCoeff(self.num + other.num, self.den)
        return ValuedCoeff(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "ValuedCoeff":
        return ValuedCoeff._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return ZERO
        if self.den.terms == _ONE_POLY.terms and other.den.terms == _ONE_POLY.terms:
            return ValuedCoeff._raw(self.num * other.num, _ONE_POLY)
        return ValuedCoeff(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "ValuedCoeff":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero")
        return ValuedCoeff(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "ValuedCoeff":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        other_c = _coerce(other)
        if other_c is None:
            return NotImplemented
        return self.num == other_c.num and self.den == other_c.den

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.num.terms[0][1] if self.num.terms else Fraction(0))
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __str__(self) -> str:
        return format_coeff(self)

    def __repr__(self) -> str:
        return f"ValuedCoeff({format_coeff(self)!r})"


def _coerce(x) -> ValuedCoeff | None:
    if isinstance(x, ValuedCoeff):
        return x
    if isinstance(x, (int, Fraction)):
        return ValuedCoeff._raw(PuiseuxPoly.constant(x), _ONE_POLY)
    return None


def _canonical(num: PuiseuxPoly, den: PuiseuxPoly) -> tuple[PuiseuxPoly, PuiseuxPoly]:
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_monomial():
        e, q = den.terms[0]
        return num.shift(-e).scale(1 / q), _ONE_POLY
    d = lcm(num.exponent_denominator(), den.exponent_denominator())
    n0, d0 = num.ord(), den.ord()
    fn = _to_dense(num, d, n0)
    fd = _to_dense(den, d, d0)
    g = dup_gcd(fn, fd, QQ)
    if len(g) > 1:
        fn = dup_exquo(fn, g, QQ)
        fd = dup_exquo(fd, g, QQ)
    lead = fd[0]
    if lead != 1:
        fn = [c / lead for c in fn]
        fd = [c / lead for c in fd]
    # After dividing out the gcd the lowest terms are still nonzero, so the
    # monomial factor t^(n0 - d0) moves entirely into the numerator.
    return _from_dense(fn, d, n0 - d0), _from_dense(fd, d, Fraction(0))


ZERO = ValuedCoeff._raw(_ZERO_POLY, _ONE_POLY)
ONE = ValuedCoeff._raw(_ONE_POLY, _ONE_POLY)

Coeff = Union[int, Fraction, ValuedCoeff]


def as_coeff(c: Coeff) -> ValuedCoeff:
    out = _coerce(c)
    if out is None:
        raise TypeError(f"not a coefficient: {c!r}")
    return out


def log_abs(c: Coeff) -> ExtRat:
    """log|c| = -ord_t(c); rationals are units of valuation zero."""
    if isinstance(c, ValuedCoeff):
        return c.log_abs()
    return NEG_INF if c == 0 else Fraction(0)


def residue(c: Coeff) -> Fraction:
    if isinstance(c, ValuedCoeff):
        return c.residue()
    return Fraction(c)


def coeff_arith(op: str, a: Coeff, b: Coeff) -> ValuedCoeff:
    a, b = as_coeff(a), as_coeff(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by zero coefficient")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# text form ---------------------------------------------------------------


def _format_t_power(e: Fraction) -> str:
    if e == 1:
        return "t"
    return f"t^({format_rational(e)})"


def format_puiseux(p: PuiseuxPoly) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for idx, (e, q) in enumerate(p.terms):
        sign = "-" if q < 0 else "+"
        mag = abs(q)
        if e == 0:
            body = format_rational(mag)
        elif mag == 1:
            body = _format_t_power(e)
        else:
            body = f"{format_rational(mag)}*{_format_t_power(e)}"
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def format_coeff(c: Coeff) -> str:
    c = as_coeff(c)
    num = format_puiseux(c.num)
    if c.den.terms == _ONE_POLY.terms:
        return num
    if len(c.num.terms) > 1:
        num = f"({num})"
    return f"{num}/({format_puiseux(c.den)})"


def parse_coeff(text: str) -> ValuedCoeff:
    """Parse the coefficient grammar (``t``, rationals, ``+ - * / ^``, parentheses)."""
    from .grammar import parse_coeff as _parse

    return _parse(text)
