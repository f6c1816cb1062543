import random
from fractions import Fraction
from itertools import combinations

import pytest

from tropgr.plucker import TropPoint, all_pairs
from tropgr.quotient import (
    cut_metrics,
    descent_report,
    internal_shift,
    invariant_monomials,
    project_mod_lineality,
    shift_by_lineality,
    split_complex,
    verify_descent,
)
from tropgr.sampling import random_tree_metric
from tropgr.trees import PhyloTree, metric_from_tree


def test_cut_metrics():
    L = cut_metrics(4)
    assert L.l(1) == (1, 1, 1, 0, 0, 0)
    for n in (3, 5):
        assert cut_metrics(n).combination([1] * n) == (2,) * len(all_pairs(n))


def test_projection_examples():
    L = cut_metrics(4)
    assert project_mod_lineality(TropPoint(4, tuple(Fraction(v) for v in L.l(1)))) == (0,) * 6
    assert project_mod_lineality(TropPoint(4, (Fraction(0),) * 6)) == (0,) * 6


def test_projection_forgets_leaf_weights():
    def q(leaves, w):
        a, b, c, d = leaves
        return metric_from_tree(PhyloTree(4, {(1, 5): a, (2, 5): b, (3, 6): c, (4, 6): d, (5, 6): w}))

    base = project_mod_lineality(q((0, 0, 0, 0), 2))
    assert project_mod_lineality(q((3, -1, Fraction(1, 2), 7), 2)) == base
    assert project_mod_lineality(q((0, 0, 0, 0), 3)) != base


def test_projection_is_orthogonal_and_idempotent():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(3, 7)
        x = TropPoint(n, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in all_pairs(n)))
        r = project_mod_lineality(x)
        for g in cut_metrics(n).generators:
            assert sum(a * b for a, b in zip(r, g)) == 0
        assert project_mod_lineality(TropPoint(n, r)) == r
        lam = [Fraction(rng.randint(-5, 5), 3) for _ in range(n)]
        assert project_mod_lineality(shift_by_lineality(x, lam)) == r


def test_petersen():
    sc = split_complex(5)
    assert sc.checks["petersen"]
    assert sc.checks["vertices"] == 10 and sc.checks["edges"] == 15
    assert sc.checks["girth"] == 5 and sc.checks["degree"] == 3
    assert sc.adjacent((1, 2), (3, 4))
    assert not sc.adjacent((1, 2), (2, 3))
    for a, b in combinations(sc.vertices, 2):
        assert sc.adjacent(a, b) == (not (a & b))


def test_split_complex_n4_has_no_edges():
    sc = split_complex(4)
    assert sc.checks["vertices"] == 6 and sc.checks["edges"] == 0


def test_split_complex_n6_against_scan():
    sc = split_complex(6)
    assert sc.checks["vertices"] == 15
    # two cherries {a,b} and {c,d} fit in one trivalent tree exactly when disjoint
    expected = sum(1 for a, b in combinations(sc.vertices, 2) if not a & b)
    assert sc.checks["edges"] == expected == 45


def test_split_complex_range():
    with pytest.raises(ValueError):
        split_complex(8)


def test_invariant_monomials():
    gens = invariant_monomials((1, 2), 4)
    # pairs order 12,13,14,23,24,34; u12 u34 / (u13 u24) and u12 u34 / (u14 u23)
    assert gens == [(1, -1, 0, 0, -1, 1), (1, 0, -1, -1, 0, 1)]
    assert len(invariant_monomials((1, 2), 5)) == 6
    for n in (4, 5, 6):
        for v in invariant_monomials((2, 3), n):
            for g in cut_metrics(n).generators:
                assert sum(a * b for a, b in zip(v, g)) == 0


def test_descent():
    rng = random.Random(4)
    x = random_tree_metric(5, rng)
    assert verify_descent(x, [0] * 5)
    assert verify_descent(x, [Fraction(1, 2), -3, 2, Fraction(7, 5), 0])


def test_descent_negative_control():
    rng = random.Random(8)
    for _ in range(10):
        x = random_tree_metric(rng.randint(4, 6), rng)
        assert not descent_report(x, internal_shift(x)).ok
