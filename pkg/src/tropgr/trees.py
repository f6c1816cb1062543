"""Phylogenetic trees, tree metrics, exact neighbor joining and cone membership."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Mapping

from .errors import BoundExceeded, InvalidTree, NoConeFound, NotTreeMetric
from .plucker import Pair, TropPoint, all_pairs, pair, validate_point, vanishing_set

MAX_ENUMERATION_LEAVES = 9


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Topology:
    """An unweighted tree with leaves 1..n and no internal vertex of degree 2.

    Equality and hashing use the canonical code: the nested-parenthesis
    encoding of the tree rooted at the neighbour of leaf 1, children sorted
    by smallest descendant leaf.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        self.adj: dict[int, tuple[int, ...]] = {v: tuple(sorted(nb)) for v, nb in adj.items()}
        for leaf in range(1, n + 1):
            if len(self.adj.get(leaf, ())) != 1:
                raise InvalidTree(f"leaf {leaf} must have degree 1")
        for v, nb in self.adj.items():
            if v > n and len(nb) < 3:
                raise InvalidTree(f"internal vertex {v} has degree {len(nb)}")
        if len(self.edges) != len(self.adj) - 1:
            raise InvalidTree("not a tree")
        self.code = self._encode()

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({_edge(u, v) for u, nb in self.adj.items() for v in nb}))

    def internal_edges(self) -> list[tuple[int, int]]:
        return [e for e in self.edges if e[0] > self.n and e[1] > self.n]

    def is_trivalent(self) -> bool:
        return all(len(nb) == 3 for v, nb in self.adj.items() if v > self.n)

    def _min_leaf(self) -> dict[tuple[int, int], int]:
        # smallest leaf behind each directed edge (u -> v), computed on demand
        memo: dict[tuple[int, int], int] = {}

        def rec(u: int, v: int) -> int:
            key = (u, v)
            if key not in memo:
                if v <= self.n:
                    memo[key] = v
                else:
                    memo[key] = min(rec(v, w) for w in self.adj[v] if w != u)
            return memo[key]

        for u in self.adj:
            for v in self.adj[u]:
                rec(u, v)
        return memo

    @cached_property
    def min_leaf(self) -> dict[tuple[int, int], int]:
        return self._min_leaf()

    def children(self, v: int, parent: int) -> list[int]:
        """Neighbours of v away from parent, sorted by smallest leaf behind them."""
        return sorted((w for w in self.adj[v] if w != parent), key=lambda w: self.min_leaf[(v, w)])

    def leaves_below(self, v: int, parent: int) -> list[int]:
        if v <= self.n:
            return [v]
        out: list[int] = []
        stack = [(v, parent)]
        while stack:
            a, p = stack.pop()
            for w in self.adj[a]:
                if w == p:
                    continue
                if w <= self.n:
                    out.append(w)
                else:
                    stack.append((w, a))
        return sorted(out)

    def _encode(self) -> str:
        (root,) = self.adj[1]

        def enc(v: int, parent: int) -> str:
            if v <= self.n:
                return str(v)
            return "(" + ",".join(enc(w, v) for w in self.children(v, parent)) + ")"

        return enc(root, 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Topology) and self.n == other.n and self.code == other.code

    def __hash__(self) -> int:
        return hash((self.n, self.code))

    def __repr__(self) -> str:
        return f"Topology({self.code})"

    @cached_property
    def leaf_distance(self) -> dict[tuple[int, int], int]:
        """Number of edges on the path between two leaves."""
        out: dict[tuple[int, int], int] = {}
        for a in range(1, self.n + 1):
            dist = {a: 0}
            stack = [a]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        stack.append(w)
            for b in range(1, self.n + 1):
                out[(a, b)] = dist[b]
        return out

    def quartet(self, a: int, b: int, c: int, d: int) -> int:
        """Which pairing of sorted (a,b,c,d) is the quartet's cherry split.

        0 for ab|cd, 1 for ac|bd, 2 for ad|bc, 3 for a star quartet.
        """
        a, b, c, d = sorted((a, b, c, d))
        D = self.leaf_distance
        sums = (D[a, b] + D[c, d], D[a, c] + D[b, d], D[a, d] + D[b, c])
        low = min(sums)
        if sums.count(low) > 1:
            return 3
        return sums.index(low)

    @cached_property
    def quartet_table(self) -> tuple[int, ...]:
        return tuple(self.quartet(*q) for q in combinations(range(1, self.n + 1), 4))

    def is_cherry_of_quartet(self, s: int, t: int, others: tuple[int, int]) -> bool:
        """Whether {s,t} is a cherry of the quartet {s,t} u others (star quartets count)."""
        q = sorted((s, t) + tuple(others))
        kind = self.quartet(*q)
        if kind == 3:
            return True
        a, b, c, d = q
        split = (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c)))[kind]
        return pair(s, t) in split

    def splits(self) -> list[frozenset[int]]:
        """Leaf sets on the side of each internal edge away from leaf 1."""
        out = []
        for u, v in self.internal_edges():
            side_v = frozenset(self.leaves_below(v, u))
            side = side_v if 1 not in side_v else frozenset(self.leaves_below(u, v))
            out.append(side)
        return out


@dataclass
class PhyloTree:
    """A tree on leaves 1..n with rational edge weights.

    Internal edges carry nonnegative weights; leaf edges may carry any
    rational (that is the lineality freedom of tree metrics).
    """

    n: int
    weights: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.weights = {_edge(*e): Fraction(w) for e, w in self.weights.items()}
        self.topology = Topology(self.n, self.weights.keys())
        for (u, v), w in self.weights.items():
            if u > self.n and v > self.n and w < 0:
                raise InvalidTree(f"internal edge {u}-{v} has negative weight {w}")

    def weight(self, u: int, v: int) -> Fraction:
        return self.weights[_edge(u, v)]

    def internal_weights(self) -> dict[tuple[int, int], Fraction]:
        return {e: w for e, w in self.weights.items() if e[0] > self.n and e[1] > self.n}


def build_tree(n: int, weights: Mapping[tuple[int, int], Fraction], suppress_degree_two: bool = True) -> PhyloTree:
    """Normalize a weighted graph: drop degree-2 internal vertices by merging edges."""
    w = {_edge(*e): Fraction(x) for e, x in weights.items()}
    adj: dict[int, set[int]] = {}
    for u, v in w:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    changed = True
    while changed:
        changed = False
        for v in list(adj):
            if v > n and len(adj[v]) == 2:
                if not suppress_degree_two:
                    raise InvalidTree(f"internal vertex {v} has degree 2")
                a, b = adj[v]
                w[_edge(a, b)] = w.pop(_edge(a, v)) + w.pop(_edge(b, v))
                adj[a].discard(v)
                adj[b].discard(v)
                adj[a].add(b)
                adj[b].add(a)
                del adj[v]
                changed = True
    # renumber internal vertices consecutively for stable output
    internal = sorted(v for v in adj if v > n)
    rename = {v: n + 1 + k for k, v in enumerate(internal)}
    rename.update({v: v for v in range(1, n + 1)})
    return PhyloTree(n, {(rename[u], rename[v]): x for (u, v), x in w.items()})


def contract_zero_internal(tree: PhyloTree) -> PhyloTree:
    """Contract internal edges of weight zero (the minimal cone's type)."""
    n = tree.n
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    for (u, v), w in tree.weights.items():
        if u > n and v > n and w == 0:
            parent[find(max(u, v))] = find(min(u, v))
    merged = {}
    for (u, v), w in tree.weights.items():
        a, b = find(u), find(v)
        if a != b:
            merged[_edge(a, b)] = w
    return build_tree(n, merged)


def star_tree(leaf_weights: Iterable[Fraction]) -> PhyloTree:
    ws = list(leaf_weights)
    n = len(ws)
    return PhyloTree(n, {(k, n + 1): w for k, w in enumerate(ws, start=1)})


def metric_from_tree(tree: PhyloTree) -> TropPoint:
    n = tree.n
    adj = tree.topology.adj
    dist: dict[tuple[int, int], Fraction] = {}
    for a in range(1, n + 1):
        seen = {a: Fraction(0)}
        stack = [a]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen[v] = seen[u] + tree.weight(u, v)
                    stack.append(v)
        for b in range(a + 1, n + 1):
            dist[(a, b)] = seen[b]
    return TropPoint(n, tuple(dist[p] for p in all_pairs(n)))


# neighbor joining -----------------------------------------------------------


def _nj_binary(x: TropPoint) -> PhyloTree:
    """Exact neighbor joining; returns a trivalent tree (zero internal edges kept)."""
    n = x.n
    if not x.is_finite():
        raise NotTreeMetric("neighbor joining needs a finite metric")
    verdict = validate_point(x)
    if not verdict.ok:
        raise NotTreeMetric(f"four-point condition fails on quartet {verdict.witness}")
    D: dict[tuple[int, int], Fraction] = {}
    for (a, b), v in x.items():
        D[(a, b)] = D[(b, a)] = v
    nodes = list(range(1, n + 1))
    weights: dict[tuple[int, int], Fraction] = {}
    nxt = n + 1
    while len(nodes) > 3:
        r = len(nodes)
        R = {a: sum(D[(a, k)] for k in nodes if k != a) for a in nodes}
        best = None
        for a, b in combinations(nodes, 2):
            q = (r - 2) * D[(a, b)] - R[a] - R[b]
            if best is None or q < best[0]:
                best = (q, a, b)
        _, a, b = best
        u = nxt
        nxt += 1
        la = D[(a, b)] / 2 + (R[a] - R[b]) / (2 * (r - 2))
        weights[(a, u)] = la
        weights[(b, u)] = D[(a, b)] - la
        for k in nodes:
            if k not in (a, b):
                D[(u, k)] = D[(k, u)] = (D[(a, k)] + D[(b, k)] - D[(a, b)]) / 2
        nodes = [k for k in nodes if k not in (a, b)] + [u]
    a, b, c = nodes
    w = nxt
    weights[(a, w)] = (D[(a, b)] + D[(a, c)] - D[(b, c)]) / 2
    weights[(b, w)] = (D[(a, b)] + D[(b, c)] - D[(a, c)]) / 2
    weights[(c, w)] = (D[(a, c)] + D[(b, c)] - D[(a, b)]) / 2
    for (u, v), wt in weights.items():
        if u > n and v > n and wt < 0:
            raise NotTreeMetric("negative internal edge; not a tree metric")
    tree = build_tree(n, weights)
    if metric_from_tree(tree) != x:
        raise NotTreeMetric("neighbor joining did not reproduce the metric")
    return tree


def neighbor_joining(x: TropPoint) -> PhyloTree:
    """The weighted tree realizing a finite tree metric, zero internal edges contracted."""
    return contract_zero_internal(_nj_binary(x))


# enumeration and cones ------------------------------------------------------


@lru_cache(maxsize=None)
def enumerate_trivalent(n: int) -> tuple[Topology, ...]:
    """All (2n-5)!! trivalent topologies on n leaves, sorted by canonical code."""
    if n < 3:
        raise ValueError("need at least three leaves")
    if n > MAX_ENUMERATION_LEAVES:
        raise BoundExceeded(f"enumeration is capped at n = {MAX_ENUMERATION_LEAVES}")
    # Internal vertex ids start high so leaves can be added freely.
    base = 100
    trees = [((1, base), (2, base), (3, base))]
    for leaf in range(4, n + 1):
        grown = []
        for edges in trees:
            w = base + leaf - 3
            for k, (u, v) in enumerate(edges):
                rest = edges[:k] + edges[k + 1 :]
                grown.append(rest + ((u, w), (v, w), (leaf, w)))
        trees = grown
    tops = [Topology(n, _relabel(n, edges)) for edges in trees]
    return tuple(sorted(tops, key=lambda t: t.code))


def _relabel(n: int, edges) -> list[tuple[int, int]]:
    internal = sorted({v for e in edges for v in e if v > n})
    ren = {v: n + 1 + k for k, v in enumerate(internal)}
    return [(u if u <= n else ren[u], v if v <= n else ren[v]) for u, v in edges]


def cone_membership(x: TropPoint, T: Topology) -> bool:
    """Whether x lies in the closure of the cone of tree type T.

    For each quartet with T-cherries {k,l} | {a,b}:
        x_kl + x_ab <= x_ak + x_bl == x_al + x_bk
    in extended arithmetic; a star quartet of T needs all three sums equal.
    """
    if T.n != x.n:
        raise ValueError("leaf count mismatch")
    for q, kind in zip(combinations(range(1, x.n + 1), 4), T.quartet_table):
        a, b, c, d = q
        sums = (x[a, b] + x[c, d], x[a, c] + x[b, d], x[a, d] + x[b, c])
        if kind == 3:
            if not (sums[0] == sums[1] == sums[2]):
                return False
            continue
        lo = sums[kind]
        o1, o2 = (s for idx, s in enumerate(sums) if idx != kind)
        if not (lo <= o1 and o1 == o2):
            return False
    return True


# beyond this size the scan is too slow and the NJ resolution is returned as is
CANONICAL_SCAN_LEAVES = 7


def infer_type(x: TropPoint) -> tuple[Topology, frozenset[Pair]]:
    """A trivalent T whose closed cone contains x, together with J(x)."""
    J = vanishing_set(x)
    if not J:
        try:
            tree = _nj_binary(x)
        except NotTreeMetric as exc:
            raise NoConeFound(str(exc)) from None
        if x.n > CANONICAL_SCAN_LEAVES or all(w > 0 for w in tree.internal_weights().values()):
            return tree.topology, J
        # on a lower-dimensional cone every containing type is admissible; take the canonical first
    for T in enumerate_trivalent(x.n):
        if cone_membership(x, T):
            return T, J
    raise NoConeFound("no trivalent cone closure contains the point")


def all_cones_containing(x: TropPoint) -> list[Topology]:
    return [T for T in enumerate_trivalent(x.n) if cone_membership(x, T)]


def caterpillar(order: Iterable[int]) -> Topology:
    """The caterpillar tree with leaves attached in the given order."""
    leaves = list(order)
    n = len(leaves)
    spine = list(range(n + 1, 2 * n - 1))
    edges = [(leaves[0], spine[0]), (leaves[1], spine[0])]
    for k in range(1, len(spine)):
        edges.append((spine[k - 1], spine[k]))
        edges.append((leaves[k + 1], spine[k]))
    edges.append((leaves[-1], spine[-1]))
    return Topology(n, edges)

