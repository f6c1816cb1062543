"""Pairs, tropical Plücker points, the four-point condition and boundary strata."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import InvalidMetric, NotSaturated, RankDeficient
from .exact import NEG_INF, Coeff, ExtRat, ValuedCoeff, as_coeff, format_ext, parse_ext

Pair = tuple[int, int]


def pair(a: int, b: int) -> Pair:
    if a == b:
        raise ValueError(f"degenerate pair ({a},{b})")
    return (a, b) if a < b else (b, a)


@lru_cache(maxsize=None)
def all_pairs(n: int) -> tuple[Pair, ...]:
    return tuple(combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[Pair, int]:
    return {p: idx for idx, p in enumerate(all_pairs(n))}


def format_pair(p: Pair) -> str:
    return f"{p[0]}{p[1]}" if max(p) < 10 else f"{p[0]},{p[1]}"


def parse_pair(text: str) -> Pair:
    parts = text.replace(" ", "").split(",")
    if len(parts) != 2:
        raise ValueError(f"expected 'i,j', got {text!r}")
    return pair(int(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class TropPoint:
    """A point of tropical projective space over pairs of [n].

    ``values`` is indexed like :func:`all_pairs` and is stored normalized so
    that the anchor (lexicographically least finite pair) has value 0. Two
    points are equal exactly when they agree modulo ``c * (1,...,1)``.
    """

    n: int
    values: tuple[ExtRat, ...]

    def __post_init__(self):
        if len(self.values) != len(all_pairs(self.n)):
            raise InvalidMetric(f"expected {len(all_pairs(self.n))} entries for n={self.n}")
        finite = [v for v in self.values if v is not NEG_INF]
        if not finite:
            raise InvalidMetric("all entries are -inf")
        base = finite[0]
        if base != 0:
            object.__setattr__(
                self, "values", tuple(v if v is NEG_INF else Fraction(v) - base for v in self.values)
            )
        else:
            object.__setattr__(self, "values", tuple(v if v is NEG_INF else Fraction(v) for v in self.values))

    @classmethod
    def from_mapping(cls, n: int, entries: Mapping[Pair, ExtRat | int | str]) -> "TropPoint":
        vals = []
        for p in all_pairs(n):
            v = entries.get(p, entries.get((p[1], p[0])) if isinstance(entries, Mapping) else None)
            if v is None:
                raise InvalidMetric(f"missing entry {p[0]},{p[1]}")
            vals.append(parse_ext(v) if isinstance(v, str) else (NEG_INF if v is NEG_INF else Fraction(v)))
        return cls(n, tuple(vals))

    def __getitem__(self, p: Pair) -> ExtRat:
        return self.values[pair_index(self.n)[pair(*p)]]

    def items(self) -> Iterable[tuple[Pair, ExtRat]]:
        return zip(all_pairs(self.n), self.values)

    @property
    def anchor(self) -> Pair:
        for p, v in self.items():
            if v is not NEG_INF:
                return p
        raise AssertionError("unreachable")

    def finite_pairs(self) -> list[Pair]:
        return [p for p, v in self.items() if v is not NEG_INF]

    def is_finite(self) -> bool:
        return all(v is not NEG_INF for v in self.values)

    def __add__(self, other: "Sequence[Fraction] | TropPoint") -> "TropPoint":
        """Add a finite vector (indexed like all_pairs); -inf entries stay -inf."""
        vec = other.values if isinstance(other, TropPoint) else other
        return TropPoint(
            self.n, tuple(NEG_INF if (a is NEG_INF or b is NEG_INF) else a + b for a, b in zip(self.values, vec))
        )

    def to_json(self) -> dict:
        return {"n": self.n, "entries": {f"{p[0]},{p[1]}": format_ext(v) for p, v in self.items()}}

    @classmethod
    def from_json(cls, data: dict) -> "TropPoint":
        if not isinstance(data, dict) or "n" not in data or "entries" not in data:
            raise InvalidMetric("metric JSON needs keys 'n' and 'entries'")
        n = data["n"]
        if not isinstance(n, int) or n < 3:
            raise InvalidMetric(f"bad leaf count {n!r}")
        entries: dict[Pair, ExtRat] = {}
        for key, val in data["entries"].items():
            try:
                i, j = (int(s) for s in key.split(","))
            except ValueError:
                raise InvalidMetric(f"bad pair key {key!r}") from None
            if not (1 <= i < j <= n):
                raise InvalidMetric(f"pair key {key!r} must satisfy 1 <= i < j <= {n}")
            try:
                entries[(i, j)] = parse_ext(str(val))
            except (ValueError, ZeroDivisionError):
                raise InvalidMetric(f"bad value {val!r} for {key}") from None
        return cls.from_mapping(n, entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def __str__(self) -> str:
        return " ".join(f"{format_pair(p)}:{format_ext(v)}" for p, v in self.items())


def load_metric(text: str) -> TropPoint:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        from .errors import ParseError

        raise ParseError(f"invalid JSON: {exc.msg}", len(text[: exc.pos].encode())) from None
    return TropPoint.from_json(data)


# matrices ------------------------------------------------------------------


@dataclass(frozen=True)
class PluckerMatrix:
    """A 2 x n matrix over the Puiseux-fraction field."""

    rows: tuple[tuple[ValuedCoeff, ...], tuple[ValuedCoeff, ...]]

    @classmethod
    def of(cls, rows: Sequence[Sequence[Coeff]]) -> "PluckerMatrix":
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise ValueError("expected a 2 x n matrix")
        return cls((tuple(as_coeff(c) for c in rows[0]), tuple(as_coeff(c) for c in rows[1])))

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def minor(self, k: int, l: int) -> ValuedCoeff:
        """p_kl, the determinant of columns k and l (1-indexed)."""
        a, b = self.rows
        return a[k - 1] * b[l - 1] - a[l - 1] * b[k - 1]

    def minors(self) -> dict[Pair, ValuedCoeff]:
        return {p: self.minor(*p) for p in all_pairs(self.n)}


def trop_pluecker(M: PluckerMatrix) -> TropPoint:
    vals = [M.minor(k, l).log_abs() for k, l in all_pairs(M.n)]
    if all(v is NEG_INF for v in vals):
        raise RankDeficient("all 2x2 minors vanish")
    return TropPoint(M.n, tuple(vals))


# four-point machinery -----------------------------------------------------


@dataclass(frozen=True)
class QuartetType:
    """``kind`` is 'cherry', 'star' or 'violation'; a cherry carries its split."""

    kind: str
    split: tuple[Pair, Pair] | None = None

    def __str__(self) -> str:
        if self.kind == "cherry":
            a, b = self.split
            return f"cherry({format_pair(a)}|{format_pair(b)})"
        return self.kind


def quartet_sums(x: TropPoint, quartet: Iterable[int]) -> tuple[ExtRat, ExtRat, ExtRat]:
    i, j, k, l = sorted(quartet)
    return (x[i, j] + x[k, l], x[i, k] + x[j, l], x[i, l] + x[j, k])


def quartet_classify(x: TropPoint, quartet: Iterable[int]) -> QuartetType:
    i, j, k, l = sorted(quartet)
    sums = quartet_sums(x, (i, j, k, l))
    splits = (((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k)))
    top = max(sums)
    winners = [idx for idx, s in enumerate(sums) if s == top]
    if len(winners) == 3:
        return QuartetType("star")
    if len(winners) == 1:
        return QuartetType("violation")
    (loser,) = {0, 1, 2} - set(winners)
    return QuartetType("cherry", splits[loser])


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: tuple[int, int, int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_point(x: TropPoint) -> Verdict:
    for q in combinations(range(1, x.n + 1), 4):
        if quartet_classify(x, q).kind == "violation":
            return Verdict(False, q)
    return Verdict(True)


def vanishing_set(x: TropPoint) -> frozenset[Pair]:
    return frozenset(p for p, v in x.items() if v is NEG_INF)


# saturation ----------------------------------------------------------------


def is_saturated(J: Iterable[Pair], ij: Pair, n: int) -> bool:
    """The two closure conditions on J that make the stratum Gr_J nonempty.

    (i)  kl, ls in J with ks != ij  =>  ks in J, or both il and jl in J
    (ii) ik, jk in J                =>  kl in J for every l
    The alternative ``{il, jl} in J`` is impossible when l is i or j.
    """
    Js = {pair(*p) for p in J}
    i, j = ij = pair(*ij)
    if ij in Js:
        raise ValueError("anchor pair must not lie in J")
    leaves = range(1, n + 1)
    for k in leaves:
        if k in (i, j):
            continue
        if pair(i, k) in Js and pair(j, k) in Js:
            if any(pair(k, l) not in Js for l in leaves if l != k):
                return False
    for k, l, s in _ordered_triples(n):
        if pair(k, l) in Js and pair(l, s) in Js and pair(k, s) != ij and pair(k, s) not in Js:
            both = l not in (i, j) and pair(i, l) in Js and pair(j, l) in Js
            if not both:
                return False
    return True


@lru_cache(maxsize=None)
def _ordered_triples(n: int) -> tuple[tuple[int, int, int], ...]:
    r = range(1, n + 1)
    return tuple((k, l, s) for k in r for l in r for s in r if len({k, l, s}) == 3)


def stratum_classes(J: Iterable[Pair], ij: Pair, n: int) -> tuple[frozenset[int], list[list[int]]]:
    """Z0 and the classes of k ~ l <=> kl in J on the remaining leaves.

    Raises NotSaturated when ~ is not transitive or Z0 leaves are not isolated.
    The class containing i comes first, the class of j second.
    """
    Js = {pair(*p) for p in J}
    i, j = pair(*ij)
    Z0 = frozenset(l for l in range(1, n + 1) if l not in (i, j) and pair(i, l) in Js and pair(j, l) in Js)
    for k in Z0:
        for l in range(1, n + 1):
            if l != k and pair(k, l) not in Js:
                raise NotSaturated(f"leaf {k} has ik, jk in J but {format_pair(pair(k, l))} is not in J")
    rest = [l for l in range(1, n + 1) if l not in Z0]
    classes: list[list[int]] = []
    for l in rest:
        for cls in classes:
            if pair(cls[0], l) in Js:
                cls.append(l)
                break
        else:
            classes.append([l])
    for cls in classes:
        for a, b in combinations(cls, 2):
            if pair(a, b) not in Js:
                raise NotSaturated(f"relation kl in J is not transitive at {format_pair(pair(a, b))}")
    for c1, c2 in combinations(classes, 2):
        for a in c1:
            for b in c2:
                if pair(a, b) in Js:
                    raise NotSaturated(f"relation kl in J is not transitive at {format_pair(pair(a, b))}")
    ci = next(c for c in classes if i in c)
    cj = next(c for c in classes if j in c)
    others = sorted((c for c in classes if c is not ci and c is not cj), key=min)
    return Z0, [ci, cj] + others


def realize_stratum(J: Iterable[Pair], ij: Pair, n: int) -> PluckerMatrix:
    """A constant 2 x n matrix whose vanishing minors are exactly J.

    Columns: (1,0) on the class of i, (0,1) on the class of j, (1, c) with
    distinct c = 1, 2, ... on the remaining classes, and zero on Z0.
    """
    Js = frozenset(pair(*p) for p in J)
    Z0, classes = stratum_classes(Js, ij, n)
    top: list[Coeff] = [0] * n
    bottom: list[Coeff] = [0] * n
    for idx, cls in enumerate(classes, start=1):
        col = (1, 0) if idx == 1 else (0, 1) if idx == 2 else (1, idx - 2)
        for l in cls:
            top[l - 1], bottom[l - 1] = col
    M = PluckerMatrix.of([top, bottom])
    got = frozenset(p for p, m in M.minors().items() if m.is_zero())
    if got != Js:
        raise NotSaturated(f"constructed matrix has vanishing set {sorted(got)} instead of {sorted(Js)}")
    return M


# Plücker relations ----------------------------------------------------------

ThreeTerm = tuple[tuple[int, Pair, Pair], tuple[int, Pair, Pair], tuple[int, Pair, Pair]]


def three_term_relations(n: int) -> list[ThreeTerm]:
    """p_ij p_kl - p_ik p_jl + p_il p_jk for every i < j < k < l."""
    return [
        ((1, (i, j), (k, l)), (-1, (i, k), (j, l)), (1, (i, l), (j, k)))
        for i, j, k, l in combinations(range(1, n + 1), 4)
    ]
