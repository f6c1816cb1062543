"""Initial forms, initial-ideal generators and multiplicity-one certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .errors import CertificateFailure
from .exact import NEG_INF, ExtRat, format_ext, log_abs, residue
from .laurent import LaurentPoly, Monomial, format_poly
from .plucker import (
    Pair,
    TropPoint,
    all_pairs,
    format_pair,
    is_saturated,
    pair,
    realize_stratum,
    trop_pluecker,
    validate_point,
    vanishing_set,
)
from .section import Seminorm, section_point
from .trees import PhyloTree, Topology, cone_membership, metric_from_tree

ResiduePoly = LaurentPoly  # Laurent polynomial with rational coefficients


def _weight(m: Monomial, y: tuple[ExtRat, ...]) -> ExtRat:
    total = Fraction(0)
    for k, e in enumerate(m):
        if e:
            if y[k] is NEG_INF:
                if e > 0:
                    return NEG_INF
                raise ValueError("negative power of a variable with weight -inf")
            total += e * y[k]
    return total


def _as_vector(f: LaurentPoly, y: Mapping[Pair, ExtRat] | tuple) -> tuple[ExtRat, ...]:
    if isinstance(y, tuple):
        return y
    return tuple(y.get(p, NEG_INF) for p in all_pairs(f.n))


def trop_eval(f: LaurentPoly, y: Mapping[Pair, ExtRat] | tuple) -> tuple[ExtRat, list[Monomial]]:
    """max over monomials of log|c| + <alpha, y>, with the monomials attaining it."""
    yv = _as_vector(f, y)
    best: ExtRat = NEG_INF
    arg: list[Monomial] = []
    for m, c in f.terms.items():
        w = _weight(m, yv)
        if w is NEG_INF:
            continue
        v = w + log_abs(c)
        if best is NEG_INF or v > best:
            best, arg = v, [m]
        elif v == best:
            arg.append(m)
    return best, sorted(arg)


def initial_form(f: LaurentPoly, y: Mapping[Pair, ExtRat] | tuple) -> ResiduePoly:
    """Sum of residue(c) u^alpha over the monomials attaining the tropical value."""
    _, arg = trop_eval(f, y)
    return LaurentPoly(f.n, {m: residue(f.terms[m]) for m in arg})


def format_generator(kl: Pair, form: ResiduePoly) -> str:
    head = f"u_{kl[0]}_{kl[1]}"
    if form.is_zero():
        return head
    rest = format_poly(-form)
    return f"{head} - {rest[1:]}" if rest.startswith("-") else f"{head} + {rest}"


@dataclass
class InitialGenerator:
    pair: Pair
    f: LaurentPoly
    form: ResiduePoly
    value: ExtRat

    @property
    def polynomial(self) -> ResiduePoly:
        return LaurentPoly.var(self.f.n, self.pair) - self.form

    def __str__(self) -> str:
        return format_generator(self.pair, self.form)

    def support(self) -> frozenset[Pair]:
        return self.form.support()


def reduced_expansions(sigma: Seminorm) -> dict[Pair, LaurentPoly]:
    """f_kl for kl outside I, J and the anchor: the rewrite with I-variables in J set to zero."""
    dead = sigma.I.pairs & sigma.J
    out = {}
    for p in all_pairs(sigma.n):
        if p == sigma.ij or p in sigma.I.pairs or p in sigma.J:
            continue
        out[p] = sigma.table.images[p].drop_variables(dead)
    return out


def _generators(sigma: Seminorm) -> list[InitialGenerator]:
    out = []
    for p, f in reduced_expansions(sigma).items():
        value, _ = trop_eval(f, sigma.y)
        out.append(InitialGenerator(p, f, initial_form(f, sigma.y), value))
    return out


def initial_ideal_gens(x: TropPoint, sigma: Seminorm | None = None) -> list[InitialGenerator]:
    """Generators u_kl - in_y(f_kl) of the initial ideal at y = (x_kl - x_ij)."""
    return _generators(sigma or section_point(x))


@dataclass
class MultiplicityCertificate:
    x: TropPoint
    ij: Pair
    J: frozenset[Pair]
    I: frozenset[Pair]
    generators: list[InitialGenerator] = field(default_factory=list)
    multiplicity: int = 1

    @property
    def basis(self) -> list[Pair]:
        return sorted(self.I - self.J)

    def to_json(self) -> dict:
        return {
            "verdict": "multiplicity-one",
            "m": self.multiplicity,
            "ij": format_pair(self.ij),
            "J": sorted(format_pair(p) for p in self.J),
            "I": sorted(format_pair(p) for p in self.I),
            "basis": [format_pair(p) for p in self.basis],
            "generators": [
                {"pair": format_pair(g.pair), "generator": str(g), "support": sorted(format_pair(p) for p in g.support())}
                for g in self.generators
            ],
        }


def multiplicity_certificate(x: TropPoint, sigma: Seminorm | None = None) -> MultiplicityCertificate:
    """Certify that in_y Gr_J is the torus on I minus J, hence multiplicity one.

    Every initial form must be nonzero, supported on I minus J only, and the
    tropical value of f_kl must equal y_kl.
    """
    sigma = sigma or section_point(x)
    basis = sigma.I.pairs - sigma.J
    gens = _generators(sigma)
    expected = len(all_pairs(x.n)) - len(sigma.J) - 1 - len(basis)
    if len(gens) != expected:
        raise CertificateFailure(f"{len(gens)} generators, expected {expected}")
    for g in gens:
        if g.form.is_zero():
            raise CertificateFailure(f"initial form of f_{format_pair(g.pair)} vanishes")
        stray = g.support() - basis
        if stray:
            raise CertificateFailure(f"initial form of f_{format_pair(g.pair)} uses {sorted(stray)}")
        want = sigma.y[all_pairs(x.n).index(g.pair)]
        if g.value != want:
            raise CertificateFailure(
                f"trop(f_{format_pair(g.pair)}) = {format_ext(g.value)} but y = {format_ext(want)}"
            )
    return MultiplicityCertificate(x, sigma.ij, sigma.J, sigma.I.pairs, gens)


@dataclass
class InitialDegeneration:
    verdict: str  # "torus" or "unit"
    reason: str
    certificate: MultiplicityCertificate | None = None


def initial_degeneration(x: TropPoint) -> InitialDegeneration:
    """Points off TGr(2,n) give the unit ideal (empty initial degeneration)."""
    v = validate_point(x)
    if not v.ok:
        return InitialDegeneration("unit", f"four-point condition fails on quartet {v.witness}")
    J = vanishing_set(x)
    if J and not is_saturated(J, x.anchor, x.n):
        return InitialDegeneration("unit", "vanishing set is not saturated")
    cert = multiplicity_certificate(x)
    return InitialDegeneration("torus", "multiplicity one", cert)


# the Gr(2,4) catalog --------------------------------------------------------------


def _quartet_tree(split: tuple[int, int], weight: int = 1) -> PhyloTree:
    a, b = split
    c, d = [k for k in (1, 2, 3, 4) if k not in split]
    return PhyloTree(4, {(a, 5): 0, (b, 5): 0, (c, 6): 0, (d, 6): 0, (5, 6): weight})


def _star_point() -> TropPoint:
    return TropPoint(4, (Fraction(0),) * 6)


def _insert_neg_inf(x: TropPoint, J: frozenset[Pair]) -> TropPoint:
    return TropPoint(x.n, tuple(NEG_INF if p in J else v for p, v in x.items()))


def catalog_point(T: Topology, J: frozenset[Pair], split: tuple[int, int]) -> TropPoint:
    """Weight-one quartet metric with -inf inserted on J; the realized stratum point if that is invalid."""
    x = _insert_neg_inf(metric_from_tree(_quartet_tree(split)), J)
    if validate_point(x).ok and cone_membership(x, T):
        return x
    y = trop_pluecker(realize_stratum(J, (1, 2), 4))
    if not cone_membership(y, T):
        raise CertificateFailure(f"no representative of J={sorted(J)} in the closed cone of {T.code}")
    return y


def _pairs(*names: str) -> frozenset[Pair]:
    return frozenset(pair(int(s[0]), int(s[1])) for s in names)


CHERRY_FAMILY = {
    "J1": _pairs("43"),
    "J2": _pairs("14", "24", "43"),
}

# Strata in the closure of the 12|34 cone with 13 or 23 vanishing. The sixth
# set is {13,14,43}; the set {14,23,43} is not saturated (it would force all
# four columns to be parallel and p_12 = 0).
VANISHING_FAMILY = {
    "J1": _pairs("13", "14", "23", "43"),
    "J2": _pairs("13", "23", "24", "43"),
    "J3": _pairs("13", "14", "23", "24", "43"),
    "J4": _pairs("13", "14", "24", "43"),
    "J5": _pairs("23", "24", "43"),
    "J6": _pairs("13", "14", "43"),
    "J7": _pairs("14", "23", "24", "43"),
}


def caterpillar_strata() -> list[frozenset[Pair]]:
    """Nonempty saturated J (12 not in J) meeting the closed cones of 13|24 or 14|23."""
    from .trees import Topology as _T

    t1324 = _T(4, [(1, 5), (3, 5), (5, 6), (2, 6), (4, 6)])
    t1423 = _T(4, [(1, 5), (4, 5), (5, 6), (2, 6), (3, 6)])
    others = [p for p in all_pairs(4) if p != (1, 2)]
    out = []
    for r in range(1, len(others) + 1):
        for J in combinations(others, r):
            Js = frozenset(J)
            if not is_saturated(Js, (1, 2), 4):
                continue
            y = trop_pluecker(realize_stratum(Js, (1, 2), 4))
            if cone_membership(y, t1324) or cone_membership(y, t1423):
                out.append(Js)
    return out


@dataclass
class CatalogEntry:
    case: str
    J: frozenset[Pair]
    ij: Pair
    T: Topology
    I: frozenset[Pair]
    generators: list[str]

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "J": sorted(format_pair(p) for p in self.J),
            "ij": format_pair(self.ij),
            "T": self.T.code,
            "I": sorted(format_pair(p) for p in self.I),
            "basis": sorted(format_pair(p) for p in self.I - self.J),
            "generators": self.generators,
        }


def _entry(case: str, x: TropPoint, T: Topology) -> CatalogEntry:
    sigma = section_point(x, (1, 2), T=T)
    cert = multiplicity_certificate(x, sigma)
    return CatalogEntry(case, sigma.J, sigma.ij, T, sigma.I.pairs, [str(g) for g in cert.generators])


def gr24_catalog() -> list[CatalogEntry]:
    """Initial degenerations of Gr(2,4) over every cone and stratum type, anchored at 12."""
    T12 = _quartet_tree((1, 2)).topology
    T13 = _quartet_tree((1, 3)).topology
    T14 = _quartet_tree((1, 4)).topology
    out = [
        _entry("C_{14|23}", metric_from_tree(_quartet_tree((1, 4))), T14),
        _entry("C_{12|34}", metric_from_tree(_quartet_tree((1, 2))), T12),
        _entry("C_{(1234)}", _star_point(), T12),
    ]
    for k, J in enumerate(caterpillar_strata(), start=1):
        T = T14
        x = None
        for T_try, split in ((T14, (1, 4)), (T13, (1, 3))):
            try:
                x = catalog_point(T_try, J, split)
                T = T_try
                break
            except CertificateFailure:
                continue
        out.append(_entry(f"caterpillar closure #{k}", x, T))
    for name, J in CHERRY_FAMILY.items():
        out.append(_entry(f"12|34 closure, 13,23 not in J: {name}", catalog_point(T12, J, (1, 2)), T12))
    for name, J in VANISHING_FAMILY.items():
        out.append(_entry(f"12|34 closure, 13 or 23 in J: {name}", catalog_point(T12, J, (1, 2)), T12))
    return out
