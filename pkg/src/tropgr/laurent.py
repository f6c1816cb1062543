"""Sparse Laurent polynomials in the Plücker-ratio variables u_kl.

A monomial is a dense exponent tuple indexed like ``all_pairs(n)``; the
dense layout keeps multiplication a single ``map(add, ...)`` which matters
for the rewrite expansions. Coefficients may be ints, Fractions or
ValuedCoeffs and are mixed freely.
"""

from __future__ import annotations

from fractions import Fraction
from operator import add, neg
from typing import Callable, Iterable, Iterator, Mapping

from .errors import LocalizationViolation
from .exact import Coeff, ValuedCoeff, format_coeff, format_rational
from .plucker import Pair, all_pairs, pair, pair_index

Monomial = tuple[int, ...]


class LaurentPoly:
    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, Coeff] | None = None):
        self.n = n
        self.terms: dict[Monomial, Coeff] = {}
        if terms:
            for m, c in terms.items():
                if c != 0:
                    self.terms[m] = c

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, Coeff]) -> "LaurentPoly":
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c: Coeff) -> "LaurentPoly":
        return cls._raw(n, {(0,) * len(all_pairs(n)): c} if c != 0 else {})

    @classmethod
    def var(cls, n: int, p: Pair, exp: int = 1, coeff: Coeff = 1) -> "LaurentPoly":
        m = [0] * len(all_pairs(n))
        m[pair_index(n)[pair(*p)]] = exp
        return cls._raw(n, {tuple(m): coeff} if coeff != 0 else {})

    @classmethod
    def monomial(cls, n: int, exps: Mapping[Pair, int], coeff: Coeff = 1) -> "LaurentPoly":
        m = [0] * len(all_pairs(n))
        idx = pair_index(n)
        for p, e in exps.items():
            m[idx[pair(*p)]] += e
        return cls._raw(n, {tuple(m): coeff} if coeff != 0 else {})

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Coeff]]:
        return iter(self.terms.items())

    def support(self) -> frozenset[Pair]:
        """Pairs whose variable occurs with a nonzero exponent somewhere."""
        used = [False] * len(all_pairs(self.n))
        for m in self.terms:
            for k, e in enumerate(m):
                if e:
                    used[k] = True
        ps = all_pairs(self.n)
        return frozenset(ps[k] for k, u in enumerate(used) if u)

    def negative_support(self) -> frozenset[Pair]:
        ps = all_pairs(self.n)
        return frozenset(ps[k] for m in self.terms for k, e in enumerate(m) if e < 0)

    def exponents(self, m: Monomial) -> dict[Pair, int]:
        ps = all_pairs(self.n)
        return {ps[k]: e for k, e in enumerate(m) if e}

    # arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.n, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v == 0:
                    del out[m]
                else:
                    out[m] = v
        return LaurentPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.n, other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            if other == 0:
                return LaurentPoly.zero(self.n)
            return LaurentPoly._raw(self.n, {m: c * other for m, c in self.terms.items()})
        if len(other.terms) == 1 and len(self.terms) != 1:
            return other * self
        out: dict[Monomial, Coeff] = {}
        other_items = list(other.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in other_items:
                m = tuple(map(add, m1, m2))
                v = out.get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return LaurentPoly._raw(self.n, {m: c for m, c in out.items() if c != 0})

    __rmul__ = __mul__

    def monomial_inverse(self) -> "LaurentPoly":
        if len(self.terms) != 1:
            raise LocalizationViolation("only monomials are invertible in a Laurent ring")
        ((m, c),) = self.terms.items()
        inv = Fraction(1, 1) / c if not isinstance(c, ValuedCoeff) else c.inverse()
        if isinstance(c, int) and c in (1, -1):
            inv = c
        elif isinstance(inv, Fraction) and inv.denominator == 1:
            inv = inv.numerator
        return LaurentPoly._raw(self.n, {tuple(map(neg, m)): inv})

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            return self.monomial_inverse() ** (-k)
        out = LaurentPoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.n == other.n and self.terms == other.terms
        if isinstance(other, (int, Fraction, ValuedCoeff)):
            return self == LaurentPoly.const(self.n, other)
        return NotImplemented

    __hash__ = None  # mutable-looking container; compare by value only

    def substitute(self, images: Callable[[Pair], "LaurentPoly"]) -> "LaurentPoly":
        """Replace each variable u_p by ``images(p)``; negative powers need monomial images."""
        ps = all_pairs(self.n)
        out = LaurentPoly.zero(self.n)
        cache: dict[tuple[int, int], LaurentPoly] = {}
        for m, c in self.terms.items():
            term = LaurentPoly.const(self.n, c)
            for k, e in enumerate(m):
                if e:
                    key = (k, e)
                    img = cache.get(key)
                    if img is None:
                        img = images(ps[k]) ** e
                        cache[key] = img
                    term = term * img
            out = out + term
        return out

    def drop_variables(self, pairs: Iterable[Pair]) -> "LaurentPoly":
        """Set the given variables to zero (terms with a positive power vanish)."""
        idx = pair_index(self.n)
        ks = [idx[pair(*p)] for p in pairs]
        out = {}
        for m, c in self.terms.items():
            if any(m[k] > 0 for k in ks):
                continue
            if any(m[k] < 0 for k in ks):
                raise LocalizationViolation("cannot set an inverted variable to zero")
            out[m] = c
        return LaurentPoly._raw(self.n, out)

    # text ---------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        return sorted(self.terms.items(), key=lambda mc: monomial_key(mc[0]))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly(n={self.n}, {format_poly(self)!r})"


def monomial_key(m: Monomial) -> tuple:
    """Canonical term order: higher total degree first, then lexicographic in the pairs."""
    return (-sum(m), tuple(-e for e in m))


def format_monomial(n: int, m: Monomial) -> str:
    ps = all_pairs(n)
    parts = []
    for k, e in enumerate(m):
        if e == 0:
            continue
        name = f"u_{ps[k][0]}_{ps[k][1]}"
        if e == 1:
            parts.append(name)
        elif e > 0:
            parts.append(f"{name}^{e}")
        else:
            parts.append(f"{name}^({e})")
    return "*".join(parts)


def _coeff_sign_and_body(c: Coeff) -> tuple[bool, str]:
    if isinstance(c, ValuedCoeff):
        if c.is_rational():
            c = c.residue()
        else:
            if len(c.num.terms) == 1 and c.num.terms[0][1] < 0 and c.den.terms == ((0, 1),):
                return True, format_coeff(-c)
            body = format_coeff(c)
            if len(c.num.terms) > 1 or c.den.terms != ((0, 1),):
                body = f"({body})"
            return False, body
    q = Fraction(c)
    return q < 0, format_rational(abs(q))


def format_poly(f: LaurentPoly) -> str:
    if f.is_zero():
        return "0"
    out: list[str] = []
    for idx, (m, c) in enumerate(f.sorted_terms()):
        negative, body = _coeff_sign_and_body(c)
        mono = format_monomial(f.n, m)
        if mono:
            text = mono if body == "1" else f"{body}*{mono}"
        else:
            text = body
        if idx == 0:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)
