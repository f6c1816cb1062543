"""Newick reading and writing with exact branch lengths."""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import InvalidTree, ParseError
from .exact import format_rational
from .trees import PhyloTree, build_tree

_LENGTH = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?")
_LABEL = re.compile(r"[^\s(),:;\[\]]+")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.next_internal = -1
        self.edges: dict[tuple[int, int], Fraction] = {}
        self.leaf_ids: dict[int, int] = {}

    def fail(self, message: str, pos: int | None = None):
        p = self.pos if pos is None else pos
        raise ParseError(message, len(self.text[:p].encode()))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def subtree(self) -> int:
        """Parse a clade and return its vertex id (leaves keep their label)."""
        if self.peek() == "(":
            self.pos += 1
            node = self.next_internal
            self.next_internal -= 1
            while True:
                child = self.subtree()
                self.edges[(child, node)] = self.length()
                if self.peek() == ",":
                    self.pos += 1
                    continue
                self.expect(")")
                break
            self.label()  # internal labels (e.g. support values) are ignored
            return node
        start = self.pos
        text = self.label()
        if text is None:
            self.fail("expected a leaf label")
        if not text.isdigit() or int(text) < 1:
            raise InvalidTree(f"leaf label {text!r} at byte {len(self.text[:start].encode())} is not a positive integer")
        leaf = int(text)
        if leaf in self.leaf_ids:
            raise InvalidTree(f"duplicate leaf {leaf}")
        self.leaf_ids[leaf] = start
        return leaf

    def label(self) -> str | None:
        self.skip()
        m = _LABEL.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def length(self) -> Fraction:
        if self.peek() != ":":
            return Fraction(0)
        self.pos += 1
        self.skip()
        m = _LENGTH.match(self.text, self.pos)
        if not m:
            self.fail("expected a branch length")
        self.pos = m.end()
        try:
            return Fraction(m.group(0))
        except (ValueError, ZeroDivisionError):
            self.fail("bad branch length", m.start())


def parse_newick(text: str, suppress_degree_two: bool = False) -> PhyloTree:
    """Read a Newick string with integer leaf labels 1..n.

    A degree-2 root is always suppressed (its two edges merge). Other
    degree-2 vertices are rejected unless ``suppress_degree_two`` is set.
    """
    r = _Reader(text)
    if r.peek() != "(":
        r.fail("expected '('")
    root = r.subtree()
    r.length()
    r.expect(";")
    if r.peek():
        r.fail("trailing input after ';'")
    leaves = sorted(r.leaf_ids)
    n = len(leaves)
    if leaves != list(range(1, n + 1)):
        raise InvalidTree(f"leaf labels must be exactly 1..{n}, got {leaves}")
    if n < 3:
        raise InvalidTree("need at least three leaves")
    # internal ids were negative; shift them above n
    ren = lambda v: v if v > 0 else n - v  # noqa: E731
    weights = {(ren(a), ren(b)): w for (a, b), w in r.edges.items()}
    root_id = ren(root)
    degree = sum(1 for e in weights if root_id in e)
    if degree == 2:
        (e1, w1), (e2, w2) = [(e, w) for e, w in weights.items() if root_id in e]
        a = e1[0] if e1[1] == root_id else e1[1]
        b = e2[0] if e2[1] == root_id else e2[1]
        del weights[e1], weights[e2]
        weights[(a, b)] = w1 + w2
    elif degree < 2:
        raise InvalidTree("root has fewer than two children")
    return build_tree(n, weights, suppress_degree_two=suppress_degree_two)


def format_newick(tree: PhyloTree) -> str:
    """Canonical Newick: rooted at the neighbour of leaf 1, children sorted by smallest leaf."""
    T = tree.topology

    def enc(v: int, parent: int) -> str:
        w = format_rational(tree.weight(v, parent))
        if v <= tree.n:
            return f"{v}:{w}"
        inner = ",".join(enc(c, v) for c in T.children(v, parent))
        return f"({inner}):{w}"

    (root,) = T.adj[1]
    kids = sorted(T.adj[root], key=lambda c: T.min_leaf[(root, c)])
    return "(" + ",".join(enc(c, root) for c in kids) + ");"
