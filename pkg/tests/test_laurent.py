from fractions import Fraction

import pytest

from tropgr.errors import ParseError
from tropgr.exact import ValuedCoeff
from tropgr.grammar import parse_poly
from tropgr.laurent import LaurentPoly, format_poly

t = ValuedCoeff.t()


def u(a, b, n=4, e=1):
    return LaurentPoly.var(n, (a, b), e)


def test_arithmetic_matches_hand_expansion():
    f = u(1, 3) + u(2, 4)
    g = u(1, 3) - u(2, 4)
    # (a+b)(a-b) = a^2 - b^2
    assert f * g == u(1, 3, e=2) - u(2, 4, e=2)
    assert (f - f).is_zero()


def test_zero_coefficients_are_not_stored():
    f = u(1, 3) * LaurentPoly.const(4, 2) + u(1, 3) * LaurentPoly.const(4, -2)
    assert len(f) == 0
    g =LaurentPoly.var(4, (1, 3), coeff=t) + LaurentPoly.var(4, (1, 3), coeff=-t)
    assert g.is_zero()


def test_monomial_inverse_and_powers():
    m = LaurentPoly.monomial(4, {(1, 3): 2, (2, 4): -1}, Fraction(3))
    assert m * m.monomial_inverse() == LaurentPoly.const(4, 1)
    assert (m ** 2) * (m ** -2) == LaurentPoly.const(4, 1)
    with pytest.raises(ValueError):
        (u(1, 3) + 1).monomial_inverse()


def test_support_and_negative_support():
    f = parse_poly("u_1_3^(-1)*u_1_4 + u_3_4", 4)
    assert f.support() == {(1, 3), (1, 4), (3, 4)}
    assert f.negative_support() == {(1, 3)}


def test_drop_variables_sets_them_to_zero():
    f = parse_poly("u_1_3*u_2_4 - u_1_4*u_2_3 + 5", 4)
    assert f.drop_variables({(1, 4)}) == parse_poly("u_1_3*u_2_4 + 5", 4)


def test_substitute():
    # u13 -> u14 + 1 applied to u13^2 gives u14^2 + 2u14 + 1
    f = u(1, 3, e=2)
    img = lambda p: u(1, 4) + 1 if p == (1, 3) else LaurentPoly.var(4, p)  # noqa: E731
    assert f.substitute(img) == parse_poly("u_1_4^2 + 2*u_1_4 + 1", 4)


def test_parse_poly_infers_n_and_reads_coefficients():
    f = parse_poly("u_1_3*u_2_4 - u_1_4*u_2_3 + t*u_3_4^(-2)")
    assert f.n == 4
    assert f == u(1, 3) * u(2, 4) - u(1, 4) * u(2, 3) + LaurentPoly.var(4, (3, 4), -2, t)
    assert parse_poly("u_1_3/u_1_4", 4) == u(1, 3) * u(1, 4, e=-1)
    assert parse_poly("(1 + t)/2 * u_2_3", 4) == LaurentPoly.var(4, (2, 3), coeff=(1 + t) / 2)


def test_variable_order_in_input_does_not_matter():
    assert parse_poly("u_2_4*u_1_3", 4) == parse_poly("u_1_3 * u_2_4", 4)
    assert parse_poly("u_4_2", 4) == parse_poly("u_2_4", 4)


def test_print_parse_round_trip():
    for text in [
        "u_1_3*u_2_4 - u_1_4*u_2_3",
        "u_1_3^(-1)*u_1_4*u_2_3 + u_1_3^(-1)*u_3_4",
        "(1 + t)*u_1_2 - 3/2",
        "t^(1/2)*u_1_4^3 + 1/(1 + t)*u_2_3",
    ]:
        f = parse_poly(text, 4)
        assert parse_poly(format_poly(f), 4) == f
        assert format_poly(parse_poly(format_poly(f), 4)) == format_poly(f)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("u_1_2 +* 3", 7),
        ("u_1_2^(1/2)", 5),
        ("3 u_1_2", 2),
        ("u_0_3", 0),
        ("u_1_3 + (u_1_4", 14),
    ],
)
def test_parse_errors(text, offset):
    with pytest.raises(ParseError) as err:
        parse_poly(text, 4)
    assert err.value.offset == offset


def test_byte_offsets_count_utf8_bytes():
    # the non-ascii character is two bytes wide
    with pytest.raises(ParseError) as err:
        parse_poly("é + u_1_2", 4)
    assert err.value.offset == 0
    with pytest.raises(ParseError) as err:
        parse_poly("u_1_2 + é", 4)
    assert err.value.offset == 8


def test_division_by_polynomial_is_rejected():
    with pytest.raises(ParseError):
        parse_poly("u_1_3/(u_1_4 + 1)", 4)


def test_index_beyond_n_is_rejected():
    with pytest.raises(ParseError):
        parse_poly("u_1_5", 4)
