"""Recursive-descent parser shared by the coefficient and polynomial grammars.

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := unary (('*'|'/') unary)*
    unary    := '-' unary | power
    power    := atom ['^' exponent]
    exponent := ['-'] INT | '(' ['+'|'-'] NUMBER ['/' INT] ')'
    atom     := NUMBER | 't' | 'u_<i>_<j>' | '(' expr ')'

Coefficients are the variable-free fragment. Division is allowed by any
single term, which covers rational and Puiseux-fraction denominators.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, LocalizationViolation, ParseError
from .exact import ValuedCoeff
from .laurent import LaurentPoly

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<var>u_(?P<vi>\d+)_(?P<vj>\d+))"
    r"|(?P<t>t)"
    r"|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text: str, n: int, allow_vars: bool):
        self.text = text
        self.n = n
        self.allow_vars = allow_vars
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                self.fail("unexpected character", self._first_nonspace(pos))
            start = m.start(m.lastgroup) if m.lastgroup else pos
            kind = "op" if m.group("op") else "num" if m.group("num") else "var" if m.group("var") else "t"
            self.tokens.append((kind, m.group(kind if kind != "var" else "var"), start))
            pos = m.end()
        self.k = 0

    def _first_nonspace(self, pos: int) -> int:
        while pos < len(self.text) and self.text[pos].isspace():
            pos += 1
        return pos

    def offset(self, char_pos: int) -> int:
        return len(self.text[:char_pos].encode())

    def fail(self, message: str, char_pos: int | None = None):
        if char_pos is None:
            char_pos = self.tokens[self.k][2] if self.k < len(self.tokens) else len(self.text)
        raise ParseError(message, self.offset(char_pos))

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.k] if self.k < len(self.tokens) else None

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of input")
        if value is not None and tok[1] != value:
            self.fail(f"expected {value!r}")
        self.k += 1
        return tok

    def at(self, *values: str) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "op" and tok[1] in values

    # grammar ------------------------------------------------------------

    def parse(self) -> LaurentPoly:
        if not self.tokens:
            self.fail("empty input", 0)
        out = self.expr()
        if self.peek() is not None:
            self.fail("unexpected trailing input")
        return out

    def expr(self) -> LaurentPoly:
        if self.at("+", "-"):
            sign = self.take()[1]
            value = self.term()
            if sign == "-":
                value = -value
        else:
            value = self.term()
        while self.at("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> LaurentPoly:
        value = self.unary()
        while self.at("*", "/"):
            op, _, pos = self.take()[1], None, self.tokens[self.k - 1][2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    self.fail("division by zero", pos)
                if not rhs.is_monomial():
                    self.fail("division by a non-monomial", pos)
                try:
                    value = value * rhs.monomial_inverse()
                except DivisionByZero:
                    self.fail("division by zero", pos)
        return value

    def unary(self) -> LaurentPoly:
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> LaurentPoly:
        base = self.atom()
        if not self.at("^"):
            return base
        pos = self.take()[2]
        exp = self.exponent()
        if exp.denominator == 1:
            e = exp.numerator
            if e < 0 and not base.is_monomial():
                self.fail("negative power of a non-monomial", pos)
            try:
                return base**e
            except (DivisionByZero, LocalizationViolation):
                self.fail("cannot invert zero", pos)
        # Rational powers are only meaningful for pure powers of t.
        if base.is_monomial():
            ((m, c),) = base.terms.items()
            if not any(m) and isinstance(c, ValuedCoeff) and c.is_monomial() and c.num.terms[0][1] == 1:
                return LaurentPoly.const(self.n, ValuedCoeff.monomial(1, c.num.terms[0][0] * exp))
        self.fail("rational exponents apply to powers of t only", pos)

    def exponent(self) -> Fraction:
        if self.at("("):
            self.take()
            sign = 1
            if self.at("+", "-"):
                sign = -1 if self.take()[1] == "-" else 1
            kind, text, pos = self.take()
            if kind != "num":
                self.fail("expected a number", pos)
            value = Fraction(text)
            if self.at("/"):
                self.take()
                kind, text, pos = self.take()
                if kind != "num" or not text.isdigit() or int(text) == 0:
                    self.fail("expected a positive integer denominator", pos)
                value /= int(text)
            self.take(")")
            return sign * value
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        kind, text, pos = self.take()
        if kind != "num" or not text.isdigit():
            self.fail("expected an integer exponent", pos)
        return Fraction(sign * int(text))

    def atom(self) -> LaurentPoly:
        kind, text, pos = self.take()
        if kind == "num":
            return LaurentPoly.const(self.n, Fraction(text))
        if kind == "t":
            return LaurentPoly.const(self.n, ValuedCoeff.t())
        if kind == "var":
            if not self.allow_vars:
                self.fail("variables are not allowed in a coefficient", pos)
            m = re.fullmatch(r"u_(\d+)_(\d+)", text)
            a, b = int(m.group(1)), int(m.group(2))
            if a == b or min(a, b) < 1 or max(a, b) > self.n:
                self.fail(f"bad variable {text}", pos)
            return LaurentPoly.var(self.n, (a, b))
        if text == "(":
            inner = self.expr()
            self.take(")")
            return inner
        self.fail(f"unexpected {text!r}", pos)


def _max_index(text: str) -> int:
    best = 0
    for m in re.finditer(r"u_(\d+)_(\d+)", text):
        best = max(best, int(m.group(1)), int(m.group(2)))
    return best


def parse_poly(text: str, n: int | None = None) -> LaurentPoly:
    """Parse ``<coeff> * u_<i>_<j>^<int> * ...`` joined by + and -."""
    need = _max_index(text)
    if n is None:
        n = max(need, 2)
    return _Parser(text, n, allow_vars=True).parse()


def parse_coeff(text: str) -> ValuedCoeff:
    f = _Parser(text, 0, allow_vars=False).parse()
    if f.is_zero():
        return ValuedCoeff(0)
    ((_, c),) = f.terms.items()
    return c if isinstance(c, ValuedCoeff) else ValuedCoeff(c)
