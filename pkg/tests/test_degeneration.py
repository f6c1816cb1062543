import random
from fractions import Fraction

import pytest

from tropgr.degeneration import (
    caterpillar_strata,
    gr24_catalog,
    initial_degeneration,
    initial_form,
    initial_ideal_gens,
    multiplicity_certificate,
    trop_eval,
)
from tropgr.exact import NEG_INF, ValuedCoeff
from tropgr.grammar import parse_poly
from tropgr.laurent import LaurentPoly
from tropgr.plucker import PluckerMatrix, TropPoint, all_pairs, pair, trop_pluecker
from tropgr.sampling import random_tree_metric
from tropgr.trees import PhyloTree, metric_from_tree

from golden import GOLDEN

t = ValuedCoeff.t()


def pairs(*labels):
    return frozenset(pair(int(s[0]), int(s[1])) for s in labels)


def quartet(a, b, w=1):
    c, d = [k for k in (1, 2, 3, 4) if k not in (a, b)]
    return PhyloTree(4, {(a, 5): 0, (b, 5): 0, (c, 6): 0, (d, 6): 0, (5, 6): w})


def y_of(x):
    return {p: (v if v is NEG_INF else v - x[(1, 2)]) for p, v in x.items()}


def test_trop_eval_on_quartet_14_23():
    x = metric_from_tree(quartet(1, 4))
    f = parse_poly("u_1_3*u_2_4 - u_1_4*u_2_3", 4)
    value, arg = trop_eval(f, y_of(x))
    # x12 = x13 = x24 = x34 = 1 and x14 = x23 = 0, so y13 = y24 = 0, y14 = y23 = -1;
    # the value is x13 + x24 - 2 x12 = 0, attained by u13 u24 alone
    assert value == 0
    assert len(arg) == 1
    assert initial_form(f, y_of(x)) == parse_poly("u_1_3*u_2_4", 4)


def test_trop_eval_constant():
    value, arg = trop_eval(LaurentPoly.const(4, 1), {p: Fraction(0) for p in all_pairs(4)})
    assert value == 0 and arg == [(0,) * 6]


def test_merged_coefficients():
    f = LaurentPoly.var(4, (1, 3), coeff=t) + LaurentPoly.var(4, (1, 3))
    assert len(f) == 1
    value, _ = trop_eval(f, {p: Fraction(0) for p in all_pairs(4)})
    assert value == 0
    assert initial_form(f, {p: Fraction(5) for p in all_pairs(4)}) == LaurentPoly.var(4, (1, 3))


def test_initial_form_star_keeps_everything():
    f = parse_poly("u_1_3^(-1)*u_3_4 + u_1_3^(-1)*u_1_4*u_2_3", 4)
    assert initial_form(f, {p: Fraction(0) for p in all_pairs(4)}) == f


def test_initial_form_residue():
    f = LaurentPoly.var(4, (1, 3), coeff=1 + t) + LaurentPoly.var(4, (1, 4), coeff=t)
    assert initial_form(f, {p: Fraction(0) for p in all_pairs(4)}) == LaurentPoly.var(4, (1, 3))


def gen_polys(x):
    return {g.pair: g.polynomial for g in initial_ideal_gens(x)}


def test_interior_generators():
    assert gen_polys(metric_from_tree(quartet(1, 4))) == {(3, 4): parse_poly("u_3_4 - u_1_3*u_2_4", 4)}
    assert gen_polys(metric_from_tree(quartet(1, 2))) == {
        (2, 4): parse_poly("u_2_4 - u_1_3^(-1)*u_1_4*u_2_3", 4)
    }


def test_star_point_generator():
    x = TropPoint(4, (Fraction(0),) * 6)
    assert gen_polys(x) == {(3, 4): parse_poly("u_3_4 - u_1_3*u_2_4 + u_1_4*u_2_3", 4)}
    assert multiplicity_certificate(x).multiplicity == 1


def test_boundary_anchor_13():
    x = trop_pluecker(PluckerMatrix.of([[1, 1, 0, 0], [0, 0, 1, 1]]))
    cert = multiplicity_certificate(x)
    assert cert.ij == (1, 3) and cert.multiplicity == 1


@pytest.fixture(scope="module")
def catalog():
    return {e.case: e for e in gr24_catalog()}


@pytest.mark.parametrize("case", sorted(GOLDEN))
def test_catalog_matches_golden(catalog, case):
    J, I, gens = GOLDEN[case]
    e = catalog[case]
    assert e.J == pairs(*J)
    assert e.I == pairs(*I)
    assert sorted(map(str, (parse_poly(g, 4) for g in e.generators))) == sorted(
        map(str, (parse_poly(g, 4) for g in gens))
    )


def test_catalog_j2_basis(catalog):
    # I minus J is {13, 23}, so the basis has two elements, not just u13
    e = catalog["12|34 closure, 13,23 not in J: J2"]
    assert e.to_json()["basis"] == ["13", "23"]


def test_caterpillar_closure_family(catalog):
    strata = caterpillar_strata()
    assert len(strata) == 15
    for e in catalog.values():
        if e.case.startswith("caterpillar"):
            assert e.I == pairs("13", "14", "23", "24")
            # f34 has a monomial initial form, or 34 is in J and nothing is left
            assert len(e.generators) == (0 if (3, 4) in e.J else 1)
            for g in e.generators:
                assert len(parse_poly(g, 4)) == 2


def test_unit_verdicts():
    bad = TropPoint.from_mapping(4, {p: 5 if p == (1, 2) else 0 for p in all_pairs(4)})
    assert initial_degeneration(bad).verdict == "unit"
    # valid four-point sums but the vanishing set {13, 34} is not a stratum
    x = TropPoint.from_mapping(4, {p: NEG_INF if p in pairs("13", "34") else 0 for p in all_pairs(4)})
    res = initial_degeneration(x)
    assert res.verdict == "unit"


def test_certificates_on_random_points():
    rng = random.Random(21)
    for _ in range(30):
        n = rng.randint(4, 7)
        x = random_tree_metric(n, rng)
        cert = multiplicity_certificate(x)
        basis = cert.I - cert.J
        assert len(cert.generators) == len(all_pairs(n)) - len(cert.J) - 1 - len(basis)
        for g in cert.generators:
            assert not g.form.is_zero()
            assert g.support() <= basis
