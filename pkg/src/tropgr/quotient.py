"""Cut metrics, the lineality quotient, the split complex and descent checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import InvalidMetric, LocalizationViolation
from .exact import NEG_INF, ExtRat
from .plucker import Pair, TropPoint, all_pairs, pair
from .section import Seminorm, section_point
from .trees import PhyloTree, enumerate_trivalent, metric_from_tree, neighbor_joining


@dataclass(frozen=True)
class CutLattice:
    n: int
    generators: tuple[tuple[int, ...], ...]

    def l(self, k: int) -> tuple[int, ...]:
        return self.generators[k - 1]

    def combination(self, lam: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(sum((Fraction(c) * g[a] for c, g in zip(lam, self.generators)), Fraction(0)) for a in range(len(all_pairs(self.n))))


def cut_metrics(n: int) -> CutLattice:
    if n < 3:
        raise ValueError("need n >= 3")
    gens = tuple(tuple(1 if k in p else 0 for p in all_pairs(n)) for k in range(1, n + 1))
    return CutLattice(n, gens)


def _finite_values(x: TropPoint) -> tuple[Fraction, ...]:
    if not x.is_finite():
        raise InvalidMetric("projection needs a point with all entries finite")
    return tuple(x.values)


def lineality_coefficients(values: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    """Solve the normal equations G lam = b with Gram matrix (n-2) Id + ones.

    Summing the rows gives (2n-2) sum(lam) = sum(b), after which each
    coordinate is lam_k = (b_k - sum(lam)) / (n-2).
    """
    L = cut_metrics(n)
    b = [sum((v * g for v, g in zip(values, gen)), Fraction(0)) for gen in L.generators]
    s = sum(b, Fraction(0)) / (2 * n - 2)
    return tuple((bk - s) / (n - 2) for bk in b)


def project_mod_lineality(x: TropPoint) -> tuple[Fraction, ...]:
    """The representative of x orthogonal to every cut metric (a plain vector, not normalized)."""
    vals = _finite_values(x)
    lam = lineality_coefficients(vals, x.n)
    shift = cut_metrics(x.n).combination(lam)
    return tuple(v - s for v, s in zip(vals, shift))


def shift_by_lineality(x: TropPoint, lam: Sequence[Fraction]) -> TropPoint:
    shift = cut_metrics(x.n).combination(lam)
    return TropPoint(x.n, tuple(NEG_INF if v is NEG_INF else v + s for v, s in zip(x.values, shift)))


# the split complex ------------------------------------------------------------------


def _small_side(side: frozenset[int], n: int) -> frozenset[int]:
    other = frozenset(range(1, n + 1)) - side
    if len(side) != len(other):
        return side if len(side) < len(other) else other
    return side if 1 not in side else other


@dataclass
class SplitComplex:
    n: int
    vertices: list[frozenset[int]]
    edges: set[frozenset[frozenset[int]]]
    checks: dict = field(default_factory=dict)

    def adjacent(self, a: Sequence[int], b: Sequence[int]) -> bool:
        return frozenset((frozenset(a), frozenset(b))) in self.edges

    def neighbours(self, v: frozenset[int]) -> list[frozenset[int]]:
        return [w for w in self.vertices if frozenset((v, w)) in self.edges]

    def degrees(self) -> list[int]:
        return [len(self.neighbours(v)) for v in self.vertices]

    def girth(self) -> int | None:
        """Shortest cycle length by BFS from every vertex (None for a forest)."""
        best = None
        adj = {v: self.neighbours(v) for v in self.vertices}
        for root in self.vertices:
            dist = {root: 0}
            parent = {root: None}
            q = deque([root])
            while q:
                v = q.popleft()
                for w in adj[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        q.append(w)
                    elif parent[v] != w:
                        c = dist[v] + dist[w] + 1
                        if best is None or c < best:
                            best = c
        return best

    def to_json(self) -> dict:
        def name(v):
            return "".join(str(k) for k in sorted(v))

        edges = sorted(sorted(name(v) for v in e) for e in self.edges)
        return {
            "n": self.n,
            "vertices": [name(v) for v in self.vertices],
            "edges": edges,
            "checks": self.checks,
        }


def _kneser_edges(vertices: list[frozenset[int]]) -> set[frozenset[frozenset[int]]]:
    return {frozenset((a, b)) for a, b in combinations(vertices, 2) if not a & b}


def _is_vertex_transitive_s5(sc: SplitComplex) -> bool:
    """Every permutation of the leaves acts on the 2-subsets preserving edges, and moves {1,2} anywhere."""
    from itertools import permutations

    leaves = list(range(1, sc.n + 1))
    orbit = set()
    for perm in permutations(leaves):
        m = dict(zip(leaves, perm))
        img = lambda v: frozenset(m[k] for k in v)  # noqa: E731
        if any(frozenset((img(a), img(b))) not in sc.edges for a, b in (tuple(e) for e in sc.edges)):
            return False
        orbit.add(img(frozenset((1, 2))))
    return orbit == set(sc.vertices)


def split_complex(n: int, all_splits: bool = False) -> SplitComplex:
    """Vertices are the splits ab|rest (all nontrivial splits with ``all_splits``);
    two are joined when some trivalent topology has both as distinct internal edges.
    """
    if not 4 <= n <= 7:
        raise ValueError("split complex is built for 4 <= n <= 7")
    if all_splits:
        vs = {_small_side(frozenset(c), n) for r in range(2, n // 2 + 1) for c in combinations(range(1, n + 1), r)}
        vertices = sorted(vs, key=lambda v: (len(v), sorted(v)))
    else:
        vertices = [frozenset(c) for c in combinations(range(1, n + 1), 2)]
    wanted = set(vertices)
    edges: set[frozenset[frozenset[int]]] = set()
    for T in enumerate_trivalent(n):
        sides = [_small_side(frozenset(s), n) for s in T.splits()]
        sides = [s for s in sides if s in wanted]
        for a, b in combinations(sides, 2):
            if a != b:
                edges.add(frozenset((a, b)))
    sc = SplitComplex(n, vertices, edges)
    degs = sc.degrees()
    sc.checks = {
        "vertices": len(vertices),
        "edges": len(edges),
        "regular": len(set(degs)) == 1,
        "degree": degs[0] if len(set(degs)) == 1 else None,
        "girth": sc.girth(),
    }
    if n == 5 and not all_splits:
        sc.checks["kneser"] = edges == _kneser_edges(vertices)
        sc.checks["vertex_transitive"] = _is_vertex_transitive_s5(sc)
        sc.checks["petersen"] = (
            len(vertices) == 10
            and len(edges) == 15
            and sc.checks["regular"]
            and sc.checks["degree"] == 3
            and sc.checks["girth"] == 5
            and sc.checks["kneser"]
            and sc.checks["vertex_transitive"]
        )
    return sc


# invariants and descent ---------------------------------------------------------------


def invariant_monomials(ij: Pair, n: int) -> list[tuple[int, ...]]:
    """Exponent vectors over all pairs of u_kl u_ij / (u_ik u_jl) and u_kl u_ij / (u_il u_jk).

    The u_ij factor makes each monomial homogeneous of degree 0; on the chart
    u_ij = 1 these are the generators of the torus-invariant ring.
    """
    if n < 4:
        raise ValueError("need n >= 4")
    i, j = pair(*ij)
    idx = {p: a for a, p in enumerate(all_pairs(n))}
    rest = [k for k in range(1, n + 1) if k not in (i, j)]
    out = []
    for k, l in combinations(rest, 2):
        for a, b in (((i, k), (j, l)), ((i, l), (j, k))):
            v = [0] * len(idx)
            v[idx[pair(k, l)]] += 1
            v[idx[(i, j)]] += 1
            v[idx[pair(*a)]] -= 1
            v[idx[pair(*b)]] -= 1
            out.append(tuple(v))
    return out


def format_invariant(n: int, v: tuple[int, ...], ij: Pair) -> str:
    drop = all_pairs(n).index(pair(*ij))
    parts = []
    for a, e in enumerate(v):
        if e and a != drop:
            p = all_pairs(n)[a]
            parts.append(f"u_{p[0]}_{p[1]}" + ("" if e == 1 else f"^({e})"))
    return "*".join(parts)


@dataclass
class DescentReport:
    ok: bool
    values: list[tuple[str, Fraction, Fraction]]

    def mismatches(self) -> list[tuple[str, Fraction, Fraction]]:
        return [t for t in self.values if t[1] != t[2]]


def log_eval_monomial(sigma: Seminorm, v: Sequence[int]) -> ExtRat:
    """Multiplicative extension to Laurent monomials: sum of e_kl log sigma(u_kl).

    The rewrite only inverts I-variables, but on the torus every u_kl is a
    unit and a multiplicative seminorm sends u^-1 to the inverse value.
    """
    total: ExtRat = Fraction(0)
    for p, e in zip(all_pairs(sigma.n), v):
        if e == 0 or p == sigma.ij:
            continue
        val = sigma.log_u(p)
        if val is NEG_INF:
            if e < 0:
                raise LocalizationViolation(f"u_{p[0]}_{p[1]} vanishes and cannot be inverted")
            return NEG_INF
        total += e * val
    return total


def descent_report(x: TropPoint, y: TropPoint, ij: Pair | None = None) -> DescentReport:
    """Compare log sigma(x) and log sigma(y) on every invariant monomial."""
    ij = pair(*ij) if ij is not None else x.anchor
    sx = section_point(x, ij)
    sy = section_point(y, ij)
    rows = []
    for v in invariant_monomials(ij, x.n):
        rows.append((format_invariant(x.n, v, ij), log_eval_monomial(sx, v), log_eval_monomial(sy, v)))
    return DescentReport(all(a == b for _, a, b in rows), rows)


def verify_descent(x: TropPoint, lam: Sequence[Fraction]) -> bool:
    if len(lam) != x.n:
        raise ValueError(f"need {x.n} lineality coefficients, got {len(lam)}")
    return descent_report(x, shift_by_lineality(x, lam)).ok


def internal_shift(x: TropPoint, delta: Fraction = Fraction(1)) -> TropPoint:
    """Lengthen the first internal edge of the tree of x: a move inside the cone that is not lineal."""
    tree = neighbor_joining(x)
    internal = tree.internal_weights()
    if not internal:
        raise InvalidMetric("point is the star tree; there is no internal edge to lengthen")
    e = min(internal)
    weights = dict(tree.weights)
    weights[e] = weights[e] + delta
    return metric_from_tree(PhyloTree(x.n, weights))
