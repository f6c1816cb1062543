"""Acceptance suite: one PASS/FAIL line per criterion, printed to the terminal.

Run with ``pytest tests/test_acceptance.py -v`` or ``python scripts/run_acceptance.py``.
"""

import random
import time
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

import pytest

from golden import GOLDEN
from tropgr.degeneration import gr24_catalog, multiplicity_certificate
from tropgr.errors import NotSaturated
from tropgr.exact import NEG_INF, ValuedCoeff
from tropgr.grammar import parse_poly
from tropgr.limits import sample_family, settle
from tropgr.newick import format_newick, parse_newick
from tropgr.plucker import (
    PluckerMatrix,
    TropPoint,
    all_pairs,
    is_saturated,
    pair,
    realize_stratum,
    trop_pluecker,
    validate_point,
    vanishing_set,
)
from tropgr.quotient import descent_report, internal_shift, split_complex, verify_descent
from tropgr.sampling import random_matrix, random_rational, random_tree_metric, random_trivalent_tree
from tropgr.section import (
    alternative_sections,
    gluing_battery,
    gluing_report,
    naive_seminorm,
    sample_fiber_and_check_max,
    section_point,
    verify_section,
)
from tropgr.trees import PhyloTree, metric_from_tree, neighbor_joining


@pytest.fixture
def criterion(request):
    reporter = request.config.pluginmanager.getplugin("terminalreporter")

    @contextmanager
    def run(number, title, limit=None):
        state = {"detail": ""}
        start = time.perf_counter()
        try:
            yield state
            elapsed = time.perf_counter() - start
            if limit is not None:
                assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
        except BaseException as exc:
            elapsed = time.perf_counter() - start
            _emit(reporter, f"FAIL criterion {number:>2} {title} ({elapsed:.2f}s): {exc}")
            raise
        _emit(reporter, f"PASS criterion {number:>2} {title} ({elapsed:.2f}s) {state['detail']}".rstrip())

    return run


def _emit(reporter, line):
    if reporter is not None:
        reporter.write_line("")
        reporter.write_line(line)
    else:
        print(line)


# shared corpora -----------------------------------------------------------------


def _scaled(M: PluckerMatrix, rng: random.Random) -> PluckerMatrix:
    """Multiply each column by a random c t^a; the vanishing set is unchanged."""
    rows = [list(M.rows[0]), list(M.rows[1])]
    for k in range(M.n):
        s = ValuedCoeff.monomial(rng.choice([1, -1, 2, 3]), Fraction(rng.randint(-6, 6), 2))
        rows[0][k] = rows[0][k] * s
        rows[1][k] = rows[1][k] * s
    return PluckerMatrix.of(rows)


@lru_cache(maxsize=None)
def interior_corpus() -> tuple[TropPoint, ...]:
    rng = random.Random(20240501)
    return tuple(random_tree_metric(4 + k % 5, rng) for k in range(500))


@lru_cache(maxsize=None)
def boundary_corpus() -> tuple[TropPoint, ...]:
    rng = random.Random(77)
    points = []
    for n in (4, 5):
        rest = [p for p in all_pairs(n) if p != (1, 2)]
        for r in range(1, len(rest) + 1):
            for J in combinations(rest, r):
                if is_saturated(J, (1, 2), n):
                    M = realize_stratum(J, (1, 2), n)
                    points.append(trop_pluecker(M))
                    points.append(trop_pluecker(_scaled(M, rng)))
    return tuple(points)


# criteria -------------------------------------------------------------------------


def test_c01_gr24_catalog(criterion):
    with criterion(1, "Gr(2,4) golden catalog", limit=1.0) as st:
        entries = {e.case: e for e in gr24_catalog()}
        for case, (J, I, gens) in GOLDEN.items():
            e = entries[case]
            assert e.J == frozenset(pair(int(a), int(b)) for a, b in J), case
            assert e.I == frozenset(pair(int(a), int(b)) for a, b in I), case
            got = sorted(str(parse_poly(g, 4)) for g in e.generators)
            assert got == sorted(str(parse_poly(g, 4)) for g in gens), case
        st["detail"] = f"{len(GOLDEN)} golden cases, {len(entries)} entries"


def test_c02_section_property(criterion):
    with criterion(2, "section property", limit=60.0) as st:
        interior, boundary = interior_corpus(), boundary_corpus()
        assert len(interior) >= 500 and len(boundary) >= 100
        assert all(vanishing_set(x) for x in boundary)
        for x in interior + boundary:
            rep = verify_section(section_point(x))
            assert rep.ok, (str(x), rep.failures[:3])
        st["detail"] = f"{len(interior)} interior + {len(boundary)} boundary points"


def test_c03_naive_skeleton(criterion):
    with criterion(3, "naive skeleton counterexample") as st:
        q = PhyloTree(4, {(1, 5): 0, (2, 5): 0, (3, 6): 0, (4, 6): 0, (5, 6): 1})
        x = metric_from_tree(q)
        naive = naive_seminorm(x).log_u((3, 4))
        good = section_point(x).log_u((3, 4))
        assert naive == 2 and good == 0
        st["detail"] = f"naive u34 -> {naive}, compatible u34 -> {good}"


def test_c04_maximality(criterion):
    with criterion(4, "maximality on fibers", limit=120.0) as st:
        total = strict = 0
        for n in (4, 5, 6, 7):
            rep = sample_fiber_and_check_max(n, seed=1000 + n, poly_count=20, matrices=50)
            assert rep.ok, rep.failures[:3]
            total += rep.matrices
            strict += rep.strict
        assert total >= 200
        st["detail"] = f"{total} matrices x 20 polynomials, {strict} strict inequalities"


def test_c05_gluing_and_choices(criterion):
    with criterion(5, "gluing and choice independence") as st:
        rng = random.Random(5)
        points = [random_tree_metric(rng.choice([4, 5]), rng) for _ in range(30)]
        points += [trop_pluecker(random_matrix(rng.choice([4, 5]), rng, degenerate=1.0)) for _ in range(60)]
        points = [x for x in points if len(x.finite_pairs()) >= 2]
        glued = sections_checked = 0
        chosen = []
        for x in points:
            anchors = x.finite_pairs()
            sections = {ij: section_point(x, ij) for ij in anchors}
            for ij, pq in combinations(anchors, 2):
                rep = gluing_report(x, ij, pq, sigma_ij=sections[ij], sigma_pq=sections[pq])
                assert rep.ok, rep.mismatches[:3]
                glued += 1
            # some strata admit a single compatible index set for every anchor;
            # they still take part in the gluing check above
            for ij in anchors:
                sigmas = alternative_sections(x, ij, seed=11)
                if len(sigmas) >= 2:
                    break
            else:
                continue
            for f in gluing_battery(x.n, ij, seed=3):
                assert len({s.log_eval(f) for s in sigmas}) == 1, (str(x), str(f))
            chosen.append(x)
            sections_checked += len(sigmas)
        boundary = sum(1 for x in chosen if vanishing_set(x))
        assert len(chosen) >= 50 and boundary >= 10, (len(chosen), boundary)
        st["detail"] = (
            f"{len(points)} points glued over {glued} anchor pairs; {len(chosen)} points "
            f"({boundary} boundary) with {sections_checked} alternative sections"
        )


def test_c06_multiplicity_one(criterion):
    with criterion(6, "multiplicity one") as st:
        corpus = interior_corpus() + boundary_corpus()
        for x in corpus:
            assert multiplicity_certificate(x).multiplicity == 1
        st["detail"] = f"{len(corpus)} certificates"


def test_c07_petersen(criterion):
    with criterion(7, "Petersen graph", limit=1.0) as st:
        sc = split_complex(5)
        c = sc.checks
        assert c["vertices"] == 10 and c["edges"] == 15
        assert c["regular"] and c["degree"] == 3 and c["girth"] == 5
        for a, b in combinations(sc.vertices, 2):
            assert sc.adjacent(a, b) == (not a & b)
        st["detail"] = "10 vertices, 15 edges, 3-regular, girth 5, Kneser adjacency"


def _realizable_sets(n):
    # 2 x n matrices with columns zero or one of n - 1 distinct directions cover every
    # possible pattern of zero and proportional columns
    dirs = [(0, 0), (1, 0), (0, 1)] + [(1, c) for c in range(1, n - 1)]
    out = set()
    for cols in product(dirs, repeat=n):
        M = PluckerMatrix.of([[a for a, _ in cols], [b for _, b in cols]])
        out.add(frozenset(p for p in all_pairs(n) if M.minor(*p).is_zero()))
    return out


def test_c08_saturation_realizability(criterion):
    with criterion(8, "saturation iff realizability") as st:
        checked = 0
        for n in (4, 5):
            realizable = _realizable_sets(n)
            for ij in all_pairs(n):
                rest = [p for p in all_pairs(n) if p != ij]
                for r in range(len(rest) + 1):
                    for J in map(frozenset, combinations(rest, r)):
                        sat = is_saturated(J, ij, n)
                        try:
                            got = vanishing_set(trop_pluecker(realize_stratum(J, ij, n)))
                            built = got == J
                        except NotSaturated:
                            built = False
                        assert sat == built == (J in realizable), (n, ij, sorted(J))
                        checked += 1
        st["detail"] = f"{checked} (J, anchor) pairs"


def test_c09_round_trips(criterion):
    with criterion(9, "NJ and Newick round trips") as st:
        rng = random.Random(9)
        for k in range(500):
            tree = random_trivalent_tree(3 + k % 6, rng)
            x = metric_from_tree(tree)
            assert metric_from_tree(neighbor_joining(x)) == x
            assert metric_from_tree(parse_newick(format_newick(tree))) == x
        st["detail"] = "500 trees, n = 3..8"


def test_c10_fundamental_theorem(criterion):
    with criterion(10, "tropicalized matrices are tree points") as st:
        rng = random.Random(10)
        boundary = 0
        for k in range(1000):
            x = trop_pluecker(random_matrix(2 + k % 7, rng))
            assert validate_point(x).ok, str(x)
            boundary += bool(vanishing_set(x))
        st["detail"] = f"1000 matrices, {boundary} on the boundary"


def test_c11_descent(criterion):
    with criterion(11, "descent modulo lineality") as st:
        rng = random.Random(11)
        for k in range(100):
            n = 4 + k % 3
            x = random_tree_metric(n, rng)
            lam = [random_rational(rng) for _ in range(n)]
            assert verify_descent(x, lam)
        controls = 0
        for _ in range(20):
            x = random_tree_metric(rng.choice([4, 5, 6]), rng)
            assert not descent_report(x, internal_shift(x)).ok
            controls += 1
        st["detail"] = f"100 lineality shifts agree, {controls} internal-edge shifts detected"


def test_c12_limit_families(criterion):
    with criterion(12, "limit families") as st:
        rng = random.Random(12)
        halvings = []
        finite = 0
        for k in range(20):
            fam = sample_family(4 + k % 3, rng)
            assert vanishing_set(fam.x) and fam.stays_in_stratum()
            rep, h = settle(fam)
            assert rep.affine and rep.ok, rep.line()
            halvings.append(h)
            finite += rep.limit is not NEG_INF
        assert finite >= 15
        st["detail"] = f"20 families ({finite} with finite limit), extra halvings of d: max {max(halvings)}"
