"""The section of tropicalization over TGr(2,n), evaluated exactly in log scale.

For an anchor pair ij with finite coordinate, the coordinate ring of the
chart is generated by u_kl = p_kl / p_ij. Given a trivalent type T whose
closed cone contains x, a cherry order on the leaves hanging off the i-j
path selects a compatible index set I of 2(n-2) pairs. Every other u_kl
is rewritten as a Laurent polynomial in the I-variables, and the section
is the monomial max-norm of that rewrite with weights x_kl - x_ij.

Signs are handled with the antisymmetric ratio U(a,b) = P(a,b)/P(i,j),
which satisfies U(a,b) = U(i,a) U(j,b) - U(i,b) U(j,a) for all a, b.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .errors import IncompatibleInputs, LocalizationViolation
from .exact import NEG_INF, ExtRat, PuiseuxPoly, ValuedCoeff, format_ext, log_abs
from .laurent import LaurentPoly
from .plucker import (
    Pair,
    TropPoint,
    all_pairs,
    format_pair,
    pair,
    pair_index,
    three_term_relations,
    vanishing_set,
)
from .trees import Topology, cone_membership, infer_type

Side = str  # "i" keeps the row u_ik, "j" keeps the row u_jk


# cherry orders ----------------------------------------------------------------


@dataclass(frozen=True)
class CherryOrder:
    """Total orders (smallest first) on the leaves of each subtree off the i-j path."""

    ij: Pair
    chains: tuple[tuple[int, ...], ...]

    def chain_of(self, leaf: int) -> int:
        for idx, chain in enumerate(self.chains):
            if leaf in chain:
                return idx
        raise KeyError(leaf)

    def precedes(self, a: int, b: int) -> bool:
        """Strict a < b in the order; leaves of different subtrees are incomparable."""
        for chain in self.chains:
            if a in chain and b in chain:
                return chain.index(a) < chain.index(b)
        return False

    def relation(self) -> frozenset[tuple[int, int]]:
        return frozenset((a, b) for chain in self.chains for a, b in combinations(chain, 2))


CherryPicker = Callable[[list[tuple[int, int]]], tuple[int, int]]


def _default_pick(options: list[tuple[int, int]]) -> tuple[int, int]:
    return min(options)


def path_between(T: Topology, a: int, b: int) -> list[int]:
    parent = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        for w in T.adj[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    out = [b]
    while out[-1] != a:
        out.append(parent[out[-1]])
    return out[::-1]


def _chain(T: Topology, v: int, parent: int, pick: CherryPicker) -> list[int]:
    if v <= T.n:
        return [v]
    # every internal vertex below v with at least two leaf children offers cherries
    options: list[tuple[int, int]] = []
    where: dict[tuple[int, int], int] = {}
    up: dict[int, int] = {v: parent}
    stack = [v]
    while stack:
        u = stack.pop()
        kids = [w for w in T.adj[u] if w != up[u]]
        leaves = sorted(w for w in kids if w <= T.n)
        for t, s in combinations(leaves, 2):
            options.append((t, s))
            options.append((s, t))
            where[(t, s)] = where[(s, t)] = u
        for w in kids:
            if w > T.n:
                up[w] = u
                stack.append(w)
    t, s = pick(sorted(options))
    c = where[(t, s)]
    spine = [c]
    while spine[-1] != v:
        spine.append(up[spine[-1]])
    spine.reverse()  # v ... c
    on_spine = set(spine)
    out: list[int] = []
    for u in spine:
        hanging = [w for w in T.children(u, up[u]) if w not in on_spine and w not in (s, t)]
        for w in hanging:
            out.extend(_chain(T, w, u, pick))
    return out + [t, s]


def cherry_order(T: Topology, ij: Pair, pick: CherryPicker | None = None) -> CherryOrder:
    """Inductive peeling: a cherry {t, s} sits on top (t before s), the groups
    hanging off the way down to it come first, ordered from the path outward.
    The default picker takes the cherry with the smallest leaves, smaller label first.
    """
    i, j = pair(*ij)
    pick = pick or _default_pick
    path = path_between(T, i, j)
    on_path = set(path)
    chains = []
    for idx in range(1, len(path) - 1):
        u = path[idx]
        for w in T.children(u, path[idx - 1]):
            if w not in on_path:
                chains.append(tuple(_chain(T, w, u, pick)))
    order = CherryOrder((i, j), tuple(chains))
    check_cherry_property(order, T)
    return order


def check_cherry_property(order: CherryOrder, T: Topology) -> None:
    i, j = order.ij
    seen = [l for chain in order.chains for l in chain]
    if sorted(seen) != [l for l in range(1, T.n + 1) if l not in (i, j)]:
        raise IncompatibleInputs("cherry order does not cover the leaves off the anchor")
    for chain in order.chains:
        for k, l, v in combinations(chain, 3):
            if not (T.is_cherry_of_quartet(k, l, (i, v)) or T.is_cherry_of_quartet(l, v, (i, k))):
                raise IncompatibleInputs(f"cherry property fails for {k} < {l} < {v}")


# compatible index sets ----------------------------------------------------------


@dataclass(frozen=True)
class IndexSet:
    ij: Pair
    pairs: frozenset[Pair]
    sides: tuple[Side, ...]

    def __contains__(self, p: Pair) -> bool:
        return pair(*p) in self.pairs

    def __iter__(self):
        return iter(sorted(self.pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def H(self) -> frozenset[Pair]:
        i, j = self.ij
        return frozenset(p for p in self.pairs if i in p or j in p)


def compatible_index_set(
    ij: Pair, T: Topology | None, J: Iterable[Pair], order: CherryOrder, sides: Sequence[Side] | None = None
) -> IndexSet:
    """Walk each chain upward. A leaf k keeps both ik and jk while every
    smaller leaf has il or jl in J; otherwise it takes kt for the largest such
    free t, plus ik (side "i") or jk (side "j"). The side is fixed per chain.
    """
    i, j = ij = pair(*ij)
    Js = frozenset(pair(*p) for p in J)
    if sides is None:
        sides = ("i",) * len(order.chains)
    if len(sides) != len(order.chains):
        raise IncompatibleInputs("one side choice per chain is required")
    I: set[Pair] = set()
    for chain, side in zip(order.chains, sides):
        for p, k in enumerate(chain):
            free = [l for l in chain[:p] if pair(i, l) not in Js and pair(j, l) not in Js]
            if not free:
                I |= {pair(i, k), pair(j, k)}
            else:
                t = free[-1]
                I |= {pair(k, t), pair(i, k) if side == "i" else pair(j, k)}
    out = IndexSet(ij, frozenset(I), tuple(sides))
    n = T.n if T is not None else max(max(c) for c in order.chains + ((j,),))
    check_compatible(out, order, Js, n)
    return out


def check_compatible(I: IndexSet, order: CherryOrder, J: Iterable[Pair], n: int) -> None:
    """Exactly one of the three compatibility conditions holds at each leaf."""
    i, j = order.ij
    Js = frozenset(pair(*p) for p in J)
    if len(I.pairs) != 2 * (n - 2) or order.ij in I.pairs:
        raise IncompatibleInputs(f"index set has {len(I.pairs)} pairs, expected {2 * (n - 2)} avoiding the anchor")

    def free(l: int) -> bool:
        return pair(i, l) not in Js and pair(j, l) not in Js

    for chain in order.chains:
        for p, k in enumerate(chain):
            below = chain[:p]
            frees = [l for l in below if free(l)]
            t = frees[-1] if frees else None
            c1 = pair(i, k) in I and pair(j, k) in I and not frees
            c2 = (
                pair(i, k) not in I
                and all(pair(j, l) in I for l in chain)
                and t is not None
                and pair(k, t) in I
            )
            c3 = (
                pair(j, k) not in I
                and all(pair(i, l) in I for l in chain)
                and t is not None
                and pair(k, t) in I
            )
            if c1 + c2 + c3 != 1:
                raise IncompatibleInputs(f"leaf {k} satisfies {c1 + c2 + c3} compatibility conditions")


# rewriting -------------------------------------------------------------------


@dataclass
class RewriteTable:
    """Image of every u_kl (kl != ij) as a Laurent polynomial in the I-variables."""

    n: int
    ij: Pair
    images: dict[Pair, LaurentPoly]

    def U(self, a: int, b: int) -> LaurentPoly:
        """The antisymmetric ratio P(a,b)/P(i,j) in I-coordinates."""
        if pair(a, b) == self.ij:
            return LaurentPoly.const(self.n, 1 if a < b else -1)
        img = self.images[pair(a, b)]
        return img if a < b else -img

    def rewrite(self, f: LaurentPoly, invertible: Callable[[Pair], bool]) -> LaurentPoly:
        ij_slot = pair_index(self.n)[self.ij]
        ps = all_pairs(self.n)

        def image(p: Pair) -> LaurentPoly:
            if p == self.ij:
                return LaurentPoly.const(self.n, 1)
            return self.images[p]

        for m in f.terms:
            for k, e in enumerate(m):
                if e < 0 and k != ij_slot:
                    p = ps[k]
                    if not (self.images[p].is_monomial() and invertible(p)):
                        raise LocalizationViolation(f"u_{p[0]}_{p[1]} is not invertible here")
        return f.substitute(image)


def build_rewrite(ij: Pair, T: Topology | None, J: Iterable[Pair], order: CherryOrder, I: IndexSet, n: int | None = None) -> RewriteTable:
    i, j = ij = pair(*ij)
    n = n if n is not None else T.n
    var = lambda a, b: LaurentPoly.var(n, pair(a, b))  # noqa: E731
    table = RewriteTable(n, ij, {})
    images = table.images
    for p in I.pairs:
        images[p] = var(*p)
    Js = frozenset(pair(*p) for p in J)
    for chain, side in zip(order.chains, I.sides):
        for pos, k in enumerate(chain):
            if pair(i, k) in I.pairs and pair(j, k) in I.pairs:
                continue
            t = [l for l in chain[:pos] if pair(i, l) not in Js and pair(j, l) not in Js][-1]
            if side == "i":
                # U(k,t) = U(i,k)U(j,t) - U(i,t)U(j,k)
                Ujk = table.U(i, t).monomial_inverse() * (table.U(i, k) * table.U(j, t) - table.U(k, t))
                images[pair(j, k)] = Ujk if j < k else -Ujk
            else:
                Uik = table.U(j, t).monomial_inverse() * (table.U(k, t) + table.U(i, t) * table.U(j, k))
                images[pair(i, k)] = Uik if i < k else -Uik
    for k, l in all_pairs(n):
        if (k, l) in images or (k, l) == ij:
            continue
        images[(k, l)] = table.U(i, k) * table.U(j, l) - table.U(i, l) * table.U(j, k)
    check_triangular(table, order, I)
    return table


def check_triangular(table: RewriteTable, order: CherryOrder, I: IndexSet) -> None:
    i, j = table.ij
    for chain in order.chains:
        for pos, k in enumerate(chain):
            allowed = set(chain[: pos + 1]) | {i, j}
            for p in (pair(i, k), pair(j, k)):
                for q in table.images[p].support():
                    if q not in I.pairs or not set(q) <= allowed:
                        raise IncompatibleInputs(f"rewrite of u_{format_pair(p)} uses u_{format_pair(q)}")


def check_pluecker_consistency(table: RewriteTable) -> None:
    """Every three-term relation must rewrite to exactly zero."""
    for terms in three_term_relations(table.n):
        total = LaurentPoly.zero(table.n)
        for sign, (a, b), (c, d) in terms:
            prod = table.U(a, b) * table.U(c, d)
            total = total + prod if sign > 0 else total - prod
        if not total.is_zero():
            raise IncompatibleInputs(f"relation on {terms[0][1] + terms[0][2]} rewrites to {total}")


# the seminorm -------------------------------------------------------------------


@dataclass
class Seminorm:
    x: TropPoint
    ij: Pair
    T: Topology | None
    J: frozenset[Pair]
    order: CherryOrder | None
    I: IndexSet
    table: RewriteTable
    y: tuple[ExtRat, ...] = field(init=False, repr=False)

    def __post_init__(self):
        base = self.x[self.ij]
        self.y = tuple(NEG_INF if v is NEG_INF else v - base for v in self.x.values)

    @property
    def n(self) -> int:
        return self.x.n

    def invertible(self, p: Pair) -> bool:
        return self.x[p] is not NEG_INF

    def rewrite(self, f: LaurentPoly) -> LaurentPoly:
        return self.table.rewrite(f, self.invertible)

    def monomial_value(self, m: tuple[int, ...]) -> ExtRat:
        total = Fraction(0)
        y = self.y
        for k, e in enumerate(m):
            if e:
                v = y[k]
                if v is NEG_INF:
                    if e > 0:
                        return NEG_INF
                    raise LocalizationViolation("inverting a variable with value -inf")
                total += e * v
        return total

    def trop_value(self, g: LaurentPoly) -> ExtRat:
        best: ExtRat = NEG_INF
        for m, c in g.terms.items():
            v = self.monomial_value(m)
            if v is NEG_INF:
                continue
            v = v + log_abs(c)
            if best is NEG_INF or v > best:
                best = v
        return best

    def log_eval(self, f: LaurentPoly) -> ExtRat:
        if f.n != self.n:
            raise ValueError("polynomial lives over a different number of leaves")
        return self.trop_value(self.rewrite(f))

    def log_u(self, p: Pair) -> ExtRat:
        return self.log_eval(LaurentPoly.var(self.n, p))

    def describe(self) -> dict:
        return {
            "ij": format_pair(self.ij),
            "T": self.T.code if self.T is not None else None,
            "J": sorted(format_pair(p) for p in self.J),
            "order": [list(c) for c in self.order.chains] if self.order else None,
            "I": sorted(format_pair(p) for p in self.I.pairs),
            "sides": list(self.I.sides),
        }


def seminorm_log_eval(sigma: Seminorm, f: LaurentPoly) -> ExtRat:
    return sigma.log_eval(f)


def section_point(
    x: TropPoint,
    ij: Pair | None = None,
    T: Topology | None = None,
    sides: Sequence[Side] | None = None,
    pick: CherryPicker | None = None,
    check: bool = True,
) -> Seminorm:
    ij = pair(*ij) if ij is not None else x.anchor
    if x[ij] is NEG_INF:
        raise IncompatibleInputs(f"anchor {format_pair(ij)} has coordinate -inf")
    J = vanishing_set(x)
    if T is None:
        T, _ = infer_type(x)
    elif not cone_membership(x, T):
        raise IncompatibleInputs(f"point is not in the closed cone of {T.code}")
    order = cherry_order(T, ij, pick)
    I = compatible_index_set(ij, T, J, order, sides)
    table = build_rewrite(ij, T, J, order, I)
    sigma = Seminorm(x, ij, T, J, order, I, table)
    if check:
        check_pluecker_consistency(table)
        report = verify_section(sigma)
        if not report.ok:
            raise IncompatibleInputs(f"section property fails: {report.failures[0]}")
    return sigma


def naive_seminorm(x: TropPoint, ij: Pair | None = None) -> Seminorm:
    """The skeleton choice I = I(ij) for every point, which is not a section in general."""
    ij = pair(*ij) if ij is not None else x.anchor
    i, j = ij
    n = x.n
    leaves = tuple(l for l in range(1, n + 1) if l not in ij)
    order = CherryOrder(ij, tuple((l,) for l in leaves))
    I = IndexSet(ij, frozenset(pair(a, l) for l in leaves for a in ij), ("i",) * len(leaves))
    table = build_rewrite(ij, None, vanishing_set(x), order, I, n=n)
    return Seminorm(x, ij, None, vanishing_set(x), order, I, table)


@dataclass
class SectionReport:
    ok: bool
    checked: int
    failures: list[tuple[Pair, ExtRat, ExtRat]]

    def lines(self) -> list[str]:
        if self.ok:
            return [f"section property holds on {self.checked} coordinates"]
        return [
            f"u_{format_pair(p)}: got {format_ext(got)}, expected {format_ext(want)}" for p, got, want in self.failures
        ]


def verify_section(sigma: Seminorm) -> SectionReport:
    """log sigma(u_kl) = x_kl - x_ij for every kl != ij, with -inf exactly on J."""
    failures = []
    count = 0
    base = sigma.x[sigma.ij]
    for p in all_pairs(sigma.n):
        if p == sigma.ij:
            continue
        count += 1
        want = NEG_INF if sigma.x[p] is NEG_INF else sigma.x[p] - base
        got = sigma.log_u(p)
        if got != want:
            failures.append((p, got, want))
    return SectionReport(not failures, count, failures)


# gluing ------------------------------------------------------------------------------


def gluing_battery(n: int, pq: Pair, seed: int = 0, quadratics: int = 20) -> list[LaurentPoly]:
    """Functions on the pq chart: all v_kl, the expansions f_kl, the three-term
    relations, and seeded random quadratics."""
    from .sampling import random_quadratic

    p, q = pq = pair(*pq)
    rng = random.Random(seed)
    V = lambda a, b: (  # noqa: E731
        LaurentPoly.const(n, 1 if a < b else -1) if pair(a, b) == pq else
        (LaurentPoly.var(n, (a, b)) if a < b else -LaurentPoly.var(n, (b, a)))
    )
    battery = [LaurentPoly.var(n, r) for r in all_pairs(n) if r != pq]
    for k, l in all_pairs(n):
        if p in (k, l) or q in (k, l):
            continue
        battery.append(V(p, k) * V(q, l) - V(p, l) * V(q, k))
    for terms in three_term_relations(n):
        total = LaurentPoly.zero(n)
        for sign, (a, b), (c, d) in terms:
            prod = V(a, b) * V(c, d)
            total = total + prod if sign > 0 else total - prod
        battery.append(total)
    for _ in range(quadratics):
        battery.append(random_quadratic(n, [r for r in all_pairs(n) if r != pq], rng))
    return battery


def transport(g: LaurentPoly, pq: Pair, ij: Pair) -> tuple[LaurentPoly, int]:
    """Write a pq-chart polynomial g (nonnegative exponents) in the ij chart.

    v_ab = u_ab / u_pq, and v_ij = 1 / u_pq. Returns (h, D) with
    g = h / u_pq^D, h a polynomial in the u-variables.
    """
    n = g.n
    idx = pair_index(n)
    ij_slot, pq_slot = idx[pair(*ij)], idx[pair(*pq)]
    if any(e < 0 for m in g.terms for e in m):
        raise ValueError("transport expects a polynomial")
    D = max((sum(m) - m[pq_slot] for m in g.terms), default=0)
    out: dict[tuple[int, ...], object] = {}
    for m, c in g.terms.items():
        mm = list(m)
        deg = sum(m) - m[pq_slot]
        mm[pq_slot] = D - deg
        mm[ij_slot] = 0  # u_ij == 1 in the ij chart
        key = tuple(mm)
        out[key] = out[key] + c if key in out else c
    return LaurentPoly(n, out), D


def log_eval_transported(sigma: Seminorm, g: LaurentPoly, pq: Pair) -> ExtRat:
    h, D = transport(g, pq, sigma.ij)
    val = sigma.log_eval(h)
    if val is NEG_INF:
        return NEG_INF
    return val - D * (sigma.x[pq] - sigma.x[sigma.ij])


@dataclass
class GluingReport:
    ok: bool
    checked: int
    mismatches: list[str]


def gluing_report(
    x: TropPoint, ij: Pair, pq: Pair, seed: int = 0, sigma_ij: Seminorm | None = None, sigma_pq: Seminorm | None = None
) -> GluingReport:
    sigma_ij = sigma_ij or section_point(x, ij)
    sigma_pq = sigma_pq or section_point(x, pq)
    bad = []
    battery = gluing_battery(x.n, pq, seed)
    for g in battery:
        a = sigma_pq.log_eval(g)
        b = log_eval_transported(sigma_ij, g, pq)
        if a != b:
            bad.append(f"{g}: chart {format_pair(pq)} gives {format_ext(a)}, chart {format_pair(ij)} gives {format_ext(b)}")
    return GluingReport(not bad, len(battery), bad)


def verify_gluing(x: TropPoint, ij: Pair, pq: Pair, seed: int = 0) -> bool:
    return gluing_report(x, ij, pq, seed).ok


def assemble(x: TropPoint, ij: Pair, T: Topology, order: CherryOrder, sides: Sequence[Side] | None = None) -> Seminorm:
    """Build the seminorm from explicit choices of type, cherry order and sides."""
    J = vanishing_set(x)
    I = compatible_index_set(ij, T, J, order, sides)
    return Seminorm(x, pair(*ij), T, J, order, I, build_rewrite(ij, T, J, order, I))


def alternative_sections(x: TropPoint, ij: Pair, seed: int = 0, limit: int = 4) -> list[Seminorm]:
    """Different admissible (T, cherry order, side) choices for the same point and anchor."""
    from .trees import all_cones_containing

    ij = pair(*ij)
    rng = random.Random(seed)
    base_T = infer_type(x)[0]
    types = [base_T]
    if vanishing_set(x) or x.n <= 6:
        types += [T for T in all_cones_containing(x) if T != base_T]
    out: list[Seminorm] = []
    seen = set()
    for attempt in range(8 * limit):
        if len(out) >= limit:
            break
        T = base_T if attempt == 0 else rng.choice(types)
        pick = None if attempt == 0 else (lambda opts: rng.choice(opts))
        order = cherry_order(T, ij, pick)
        sides = None if attempt == 0 else tuple(rng.choice("ij") for _ in order.chains)
        sigma = assemble(x, ij, T, order, sides)
        key = (sigma.I.pairs, order.chains, T.code)
        if key not in seen:
            seen.add(key)
            out.append(sigma)
    return out


# maximality on fibers ---------------------------------------------------------------


@dataclass
class FiberReport:
    n: int
    seed: int
    matrices: int
    polynomials: int
    strict: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def rho_log(minors: dict[Pair, ValuedCoeff], f: LaurentPoly, ij: Pair) -> ExtRat:
    """log|f(u)| with u_kl = p_kl / p_ij, computed exactly.

    When the minors and coefficients have trivial denominators the
    expression is cleared to a single polynomial in t first, avoiding gcds:
    f = N / (p_ij^D * prod p_kl^(-m_kl)) with m_kl the lowest exponent of u_kl.
    """
    if f.is_zero():
        return NEG_INF
    ps = all_pairs(f.n)
    ij_slot = pair_index(f.n)[ij]
    coeffs = [c if isinstance(c, ValuedCoeff) else ValuedCoeff(c) for c in f.terms.values()]
    polynomial = all(c.den.terms == ((0, 1),) for c in coeffs) and all(
        minors[p].den.terms == ((0, 1),) for p in ps
    )
    if not polynomial:
        total = ValuedCoeff(0)
        for m, c in zip(f.terms, coeffs):
            term = c
            for k, e in enumerate(m):
                if e and k != ij_slot:
                    term = term * (minors[ps[k]] / minors[ij]) ** e
            total = total + term
        return total.log_abs()
    slots = [k for k in range(len(ps)) if k != ij_slot]
    low = {k: min(m[k] for m in f.terms) for k in slots}
    degs = [sum(m[k] for k in slots) for m in f.terms]
    top = max(degs)
    powers: dict[tuple[int, int], PuiseuxPoly] = {}

    def power(k: int, e: int) -> PuiseuxPoly:
        key = (k, e)
        if key not in powers:
            base = minors[ps[k]].num
            out = PuiseuxPoly.constant(1)
            for _ in range(e):
                out = out * base
            powers[key] = out
        return powers[key]

    N = PuiseuxPoly()
    for (m, _), c, deg in zip(f.terms.items(), coeffs, degs):
        term = c.num
        for k in slots:
            e = m[k] - min(low[k], 0)
            if e:
                term = term * power(k, e)
        if top - deg:
            term = term * power(ij_slot, top - deg)
        N = N + term
    if N.is_zero():
        return NEG_INF
    shift = top * minors[ij].num.ord()
    for k in slots:
        if low[k] < 0:
            shift += -low[k] * minors[ps[k]].num.ord()
    return -(N.ord() - shift)


def sample_fiber_and_check_max(n: int, seed: int = 0, poly_count: int = 20, matrices: int = 1) -> FiberReport:
    """Compare the evaluation seminorm of random matrices against the section.

    For each sampled M with x = trop(M): log|f(M)| <= log sigma(x)(f) for
    random legal Laurent f, with equality on monomials.
    """
    from .plucker import trop_pluecker
    from .sampling import random_legal_laurent, random_matrix

    rng = random.Random(seed)
    failures: list[str] = []
    strict = 0
    for _ in range(matrices):
        M = random_matrix(n, rng)
        x = trop_pluecker(M)
        sigma = section_point(x)
        ij = sigma.ij
        minors = M.minors()
        invertible = [p for p in all_pairs(n) if p != ij and sigma.invertible(p) and sigma.table.images[p].is_monomial()]
        for k in range(poly_count):
            f = random_legal_laurent(n, ij, invertible, rng, monomial=(k % 4 == 0))
            lhs = rho_log(minors, f, ij)
            rhs = sigma.log_eval(f)
            if f.is_monomial():
                if lhs != rhs:
                    failures.append(f"monomial {f}: rho={format_ext(lhs)} sigma={format_ext(rhs)} at {x}")
            elif not (lhs <= rhs):
                failures.append(f"{f}: rho={format_ext(lhs)} > sigma={format_ext(rhs)} at {x}")
            elif lhs != rhs:
                strict += 1
    return FiberReport(n, seed, matrices, matrices * poly_count, strict, failures)
