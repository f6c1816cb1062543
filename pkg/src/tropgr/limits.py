"""Straight-line families x + eps*d approaching a point, and their section values."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exact import NEG_INF, ExtRat, ValuedCoeff, format_ext, log_abs
from .laurent import LaurentPoly
from .plucker import PluckerMatrix, TropPoint, all_pairs, trop_pluecker, validate_point, vanishing_set
from .sampling import random_matrix
from .section import section_point

EPSILONS = (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(1, 8))


def _perturbed(M: PluckerMatrix, g: list[list[Fraction]], eps: Fraction) -> PluckerMatrix:
    rows = []
    for r, row in enumerate(M.rows):
        rows.append([c * ValuedCoeff.monomial(1, eps * g[r][k]) if not c.is_zero() else c for k, c in enumerate(row)])
    return PluckerMatrix.of(rows)


def _class_exponents(M: PluckerMatrix, rng: random.Random) -> list[list[Fraction]]:
    """Random exponent shifts, equal on proportional columns so the vanishing pattern survives."""
    n = M.n
    leader = list(range(n))
    for k in range(n):
        for m in range(k):
            col_zero = M.rows[0][k].is_zero() and M.rows[1][k].is_zero()
            if not col_zero and leader[m] == m and M.minor(m + 1, k + 1).is_zero():
                leader[k] = m
                break
    shifts = {m: (Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))) for m in set(leader)}
    return [[shifts[leader[k]][r] for k in range(n)] for r in range(2)]


def along(x: TropPoint, d: tuple[Fraction, ...], eps: Fraction) -> TropPoint:
    return TropPoint(x.n, tuple(NEG_INF if v is NEG_INF else v + eps * dv for v, dv in zip(x.values, d)))


@dataclass
class LimitFamily:
    x: TropPoint
    d: tuple[Fraction, ...]
    f: LaurentPoly

    def point(self, eps: Fraction) -> TropPoint:
        return along(self.x, self.d, eps)

    def stays_in_stratum(self) -> bool:
        J = vanishing_set(self.x)
        for eps in EPSILONS:
            y = self.point(eps)
            if not validate_point(y).ok or vanishing_set(y) != J:
                return False
        return True


def sample_family(n: int, rng: random.Random, degenerate: float = 1.0, boundary: bool = True) -> LimitFamily:
    """A boundary point trop(M), a direction d read off from perturbing M, and a test polynomial.

    Each nonzero entry of M is multiplied by t^(eps*g); for tiny eps the
    tropical Pluecker vector moves along a straight line, whose slope is d.
    The direction is halved until x + eps*d stays valid with the same
    vanishing set for every eps used. With ``boundary`` the matrix is
    resampled until some minor vanishes.
    """
    M = random_matrix(n, rng, degenerate=degenerate)
    x = trop_pluecker(M)
    while boundary and not vanishing_set(x):
        M = random_matrix(n, rng, degenerate=max(degenerate, 0.5))
        x = trop_pluecker(M)
    g = _class_exponents(M, rng)
    delta = Fraction(1, 1024)
    y = trop_pluecker(_perturbed(M, g, delta))
    # both points are normalized at the same anchor, so the difference is meaningful
    d = tuple(Fraction(0) if a is NEG_INF else (b - a) / delta for a, b in zip(x.values, y.values))
    fam = LimitFamily(x, d, random_polynomial(n, x, rng))
    for _ in range(12):
        if fam.stays_in_stratum():
            return fam
        fam = LimitFamily(x, tuple(v / 2 for v in fam.d), fam.f)
    raise ValueError("could not find a direction staying in the stratum")


def random_polynomial(n: int, x: TropPoint, rng: random.Random) -> LaurentPoly:
    """Three monomials, mostly in coordinates that do not vanish at x so the value is finite."""
    anchor = x.anchor
    J = vanishing_set(x)
    variables = [p for p in all_pairs(n) if p != anchor]
    live = [p for p in variables if p not in J] or variables
    f = LaurentPoly.zero(n)
    while len(f) < 3:
        exps: dict = {}
        for _ in range(rng.randint(1, 3)):
            p = rng.choice(variables if rng.random() < 0.2 else live)
            exps[p] = exps.get(p, 0) + 1
        f = f + LaurentPoly.monomial(n, exps, ValuedCoeff.monomial(rng.choice([1, -1, 2]), Fraction(rng.randint(-2, 2), 2)))
    return f


Piece = tuple[Fraction, Fraction]  # a + b*eps


def value_pieces(fam: LimitFamily, eps: Fraction) -> tuple[list[Piece], bool]:
    """log sigma(x + e*d)(f) as max over affine pieces a + b*e, read off the table at eps.

    The table built at y = x + eps*d is valid for every point of the closed
    cone of its tree type with the same vanishing set. When that closed cone
    also contains x, convexity puts the whole segment e in (0, eps] inside it,
    and the pieces describe the values there exactly. The flag reports this.
    """
    from .trees import cone_membership

    anchor = fam.x.anchor
    sigma = section_point(fam.point(eps), anchor)
    covers = sigma.T is None or cone_membership(fam.x, sigma.T)
    g = sigma.rewrite(fam.f)
    pairs = all_pairs(fam.x.n)
    xa, da = fam.x[anchor], fam.d[pairs.index(anchor)]
    pieces: list[Piece] = []
    for m, c in g.terms.items():
        a, b = log_abs(c), Fraction(0)
        for k, p in enumerate(pairs):
            e = m[k]
            if not e:
                continue
            if fam.x[p] is NEG_INF:
                break  # e > 0 here: the rewrite never inverts a vanishing coordinate
            a += e * (fam.x[p] - xa)
            b += e * (fam.d[k] - da)
        else:
            pieces.append((a, b))
    return pieces, covers


def final_piece(pieces: list[Piece]) -> tuple[ExtRat, Fraction, Fraction | None]:
    """(limit at 0+, slope there, largest eps up to which that piece is the max).

    The last entry is None when the final piece stays maximal for every eps.
    """
    if not pieces:
        return NEG_INF, Fraction(0), None
    a0, b0 = max(pieces)
    crossings = [(a0 - a) / (b - b0) for a, b in pieces if b > b0]
    return a0, b0, min(crossings) if crossings else None


@dataclass
class LimitReport:
    family: LimitFamily
    values: tuple[ExtRat, ...]
    limit: ExtRat
    affine: bool
    extrapolated: ExtRat
    certified: bool = False

    @property
    def ok(self) -> bool:
        return self.affine and self.certified and self.extrapolated == self.limit

    def line(self) -> str:
        vals = ", ".join(format_ext(v) for v in self.values)
        window = "" if self.certified else " (window not yet on the final piece)"
        return (
            f"values [{vals}] extrapolate to {format_ext(self.extrapolated)}; "
            f"sigma(x) gives {format_ext(self.limit)}{window}"
        )


def check_family(fam: LimitFamily) -> LimitReport:
    """Evaluate log sigma(x + eps*d)(f) for eps in 1, 1/2, 1/4, 1/8 and compare the limit.

    The last three values must lie on a line in eps, and extending that line
    to eps = 0 must give log sigma(x)(f) exactly. Three collinear values do
    not by themselves rule out a kink below 1/8, so the report is certified
    only when the affine pieces show that 1/2, 1/4, 1/8 already lie on the
    piece that reaches eps = 0.
    """
    anchor = fam.x.anchor
    vals = tuple(section_point(fam.point(e), anchor).log_eval(fam.f) for e in EPSILONS)
    limit = section_point(fam.x, anchor).log_eval(fam.f)
    v2, v4, v8 = vals[1], vals[2], vals[3]
    if NEG_INF in (v2, v4, v8):
        affine = v2 is v4 is v8 is NEG_INF
        extrapolated = NEG_INF if affine else v8
    else:
        affine = v2 - v4 == 2 * (v4 - v8)
        extrapolated = 2 * v8 - v4
    pieces, covers = value_pieces(fam, EPSILONS[1])
    _, _, reach = final_piece(pieces)
    window = reach is None or reach >= EPSILONS[1]
    if covers:
        # the pieces must reproduce the sampled values
        for e, v in zip(EPSILONS[1:], vals[1:]):
            got = max((a + b * e for a, b in pieces), default=NEG_INF)
            if got != v:
                raise AssertionError(f"affine pieces give {format_ext(got)} at eps={e}, section gives {format_ext(v)}")
    return LimitReport(fam, vals, limit, affine, extrapolated, covers and window)


def settle(fam: LimitFamily, max_halvings: int = 20) -> tuple[LimitReport, int]:
    """Halve d until the sampled window lies on the final affine piece; the limit comparison is untouched.

    Halving d is the same as looking at the family closer to eps = 0, which
    is where the values must become affine.
    """
    report = check_family(fam)
    k = 0
    while not (report.affine and report.certified) and k < max_halvings:
        fam = LimitFamily(fam.x, tuple(v / 2 for v in fam.d), fam.f)
        report = check_family(fam)
        k += 1
    return report, k
