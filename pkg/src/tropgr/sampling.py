"""Seeded random generators for trees, matrices and test polynomials."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .errors import RankDeficient
from .exact import ValuedCoeff
from .laurent import LaurentPoly
from .plucker import Pair, PluckerMatrix, TropPoint, all_pairs, trop_pluecker
from .trees import PhyloTree, metric_from_tree


def random_rational(rng: random.Random, lo: int = -6, hi: int = 6, max_den: int = 3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_trivalent_tree(n: int, rng: random.Random, positive_internal: bool = True) -> PhyloTree:
    """Random trivalent topology by leaf insertion; random rational weights."""
    edges = [(1, n + 1), (2, n + 1), (3, n + 1)]
    nxt = n + 2
    for leaf in range(4, n + 1):
        u, v = edges.pop(rng.randrange(len(edges)))
        w = nxt
        nxt += 1
        edges += [(u, w), (v, w), (leaf, w)]
    weights = {}
    for u, v in edges:
        if u > n and v > n:
            lo = 1 if positive_internal else 0
            weights[(u, v)] = Fraction(rng.randint(lo, 12), rng.randint(1, 4))
        else:
            weights[(u, v)] = random_rational(rng)
    return PhyloTree(n, weights)


def random_tree_metric(n: int, rng: random.Random) -> TropPoint:
    return metric_from_tree(random_trivalent_tree(n, rng))


def random_monomial_coeff(rng: random.Random, exps: Sequence[Fraction] | None = None) -> ValuedCoeff:
    c = rng.choice([1, -1, 2, -2, 3, -3, Fraction(1, 2)])
    e = rng.choice(exps) if exps else Fraction(rng.randint(-4, 4), 2)
    return ValuedCoeff.monomial(c, e)


def random_matrix(n: int, rng: random.Random, degenerate: float = 0.35) -> PluckerMatrix:
    """A rank-2 matrix with monomial entries c t^e.

    With probability ``degenerate`` some columns are zeroed or made
    proportional to earlier ones, so that boundary strata are sampled too.
    """
    while True:
        cols = [[random_monomial_coeff(rng), random_monomial_coeff(rng)] for _ in range(n)]
        if rng.random() < degenerate:
            for k in range(n):
                r = rng.random()
                if r < 0.12:
                    cols[k] = [ValuedCoeff(0), ValuedCoeff(0)]
                elif r < 0.3 and k > 0:
                    src = cols[rng.randrange(k)]
                    scale = random_monomial_coeff(rng)
                    cols[k] = [src[0] * scale, src[1] * scale]
                elif r < 0.38:
                    cols[k][rng.randrange(2)] = ValuedCoeff(0)
        M = PluckerMatrix.of([[c[0] for c in cols], [c[1] for c in cols]])
        try:
            trop_pluecker(M)
        except RankDeficient:
            continue
        return M


def random_quadratic(n: int, variables: Sequence[Pair], rng: random.Random) -> LaurentPoly:
    f = LaurentPoly.zero(n)
    for _ in range(rng.randint(2, 4)):
        c = rng.choice([1, -1, 2, -3, ValuedCoeff.monomial(1, 1), ValuedCoeff.monomial(-1, -1)])
        degree = rng.choice([1, 2, 2])
        exps: dict[Pair, int] = {}
        for _ in range(degree):
            p = rng.choice(list(variables))
            exps[p] = exps.get(p, 0) + 1
        f = f + LaurentPoly.monomial(n, exps, c)
    return f


def random_legal_laurent(
    n: int, ij: Pair, invertible: Sequence[Pair], rng: random.Random, monomial: bool = False
) -> LaurentPoly:
    """Random Laurent polynomial whose negative powers sit on invertible variables only."""
    variables = [p for p in all_pairs(n) if p != ij]
    f = LaurentPoly.zero(n)
    terms = 1 if monomial else rng.randint(2, 4)
    while len(f) < terms:
        exps: dict[Pair, int] = {}
        for _ in range(rng.randint(0, 3)):
            p = rng.choice(variables)
            exps[p] = exps.get(p, 0) + 1
        if invertible and rng.random() < 0.4:
            p = rng.choice(list(invertible))
            exps[p] = exps.get(p, 0) - rng.randint(1, 2)
        c: object = random_monomial_coeff(rng)
        if rng.random() < 0.15:
            c = c * (ValuedCoeff(1) + ValuedCoeff.monomial(rng.choice([1, -1]), Fraction(rng.randint(1, 3), 2)))
        f = f + LaurentPoly.monomial(n, exps, c)
    return f
