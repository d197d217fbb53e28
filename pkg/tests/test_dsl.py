from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonarch.dsl import (
    BinOp,
    Pow,
    max_formal_index,
    parse,
    parse_diffpoly,
    parse_poly,
    parse_ratfunc,
    to_text,
)
from nonarch.errors import ContextViolation, DivisionByZeroFunction, ExprSyntaxError
from nonarch.ratfunc import RatFunc
from nonarch.series import ValuedPoly
from strategies import PRIMES, polys, ratfuncs
from test_algebra import diffpolys


def test_parse_shapes():
    node = parse("z^2 - 5*z")
    assert isinstance(node, BinOp) and node.op == "-"
    assert isinstance(node.left, Pow) and node.left.exponent == 2
    assert max_formal_index(parse("(X1 - X0 - 1)")) == 1
    assert parse_diffpoly("(X1 - X0 - 1)", 5).nvars == 2
    assert parse_poly("z^2 - 5*z", 5) == ValuedPoly((Fraction(0), Fraction(-5), Fraction(1)), 5)


def test_negative_exponent_rejected():
    with pytest.raises(ExprSyntaxError) as info:
        parse("z^-1")
    assert info.value.offset == 2
    assert "nonnegative integer exponent" in info.value.expected


def test_elaborate_examples():
    f = parse_ratfunc("1/(z-5)", 5)
    assert f.num == ValuedPoly.const(1, 5)
    assert f.den == ValuedPoly((Fraction(-5), Fraction(1)), 5)
    P = parse_diffpoly("X0^2*X1/z", 5)
    assert list(P.terms) == [((2, 1), parse_ratfunc("1/z", 5))]
    with pytest.raises(ContextViolation):
        parse_ratfunc("X0", 5)
    with pytest.raises(ContextViolation):
        parse_diffpoly("1/X0", 5)
    with pytest.raises(DivisionByZeroFunction):
        parse_ratfunc("z/(z-z)", 5)
    with pytest.raises(ContextViolation):
        parse_poly("1/z", 5)


def test_rationals_and_signs():
    assert parse_ratfunc("-3/4 + z", 7) == RatFunc.from_poly(ValuedPoly((Fraction(-3, 4), Fraction(1)), 7))
    assert parse_ratfunc("  + z ", 7) == RatFunc.z(7)
    # a sign is only allowed at the start of an expression
    with pytest.raises(ExprSyntaxError):
        parse("z * -1")


@pytest.mark.parametrize(
    "text, offset",
    [
        ("z +", 3),
        ("(z + 1", 6),
        ("z $ 1", 2),
        ("z 1", 2),
        ("X", 0),
        ("3 * * z", 4),
        ("z^z", 2),
        ("é + ", 0),
    ],
)
def test_error_offsets(text, offset):
    with pytest.raises(ExprSyntaxError) as info:
        parse(text)
    assert info.value.offset == offset


def test_offsets_are_bytes():
    # the two-byte character shifts the offset of the bad token
    with pytest.raises(ExprSyntaxError) as info:
        parse("z + )")
    assert info.value.offset == len("z + ".encode())


@given(st.text(alphabet="z+-*/^()X0123 ", max_size=14))
def test_error_offset_points_into_token(text):
    try:
        parse(text)
    except ExprSyntaxError as exc:
        raw = text.encode()
        assert 0 <= exc.offset <= len(raw)
        if exc.offset < len(raw):
            assert raw[exc.offset:exc.offset + 1] != b" "
        assert exc.expected or "character" in str(exc)


@given(PRIMES.flatmap(polys))
def test_poly_round_trip(f):
    g = parse_poly(to_text(f), f.prime)
    assert g == f and g.to_json() == f.to_json()


@given(PRIMES.flatmap(ratfuncs))
def test_ratfunc_round_trip(f):
    assert parse_ratfunc(to_text(f), f.prime).to_json() == f.to_json()


@settings(max_examples=40, deadline=None)
@given(diffpolys(3))
def test_diffpoly_round_trip(P):
    Q = parse_diffpoly(to_text(P), P.prime, P.nvars)
    assert Q.to_json() == P.to_json()


def test_printer_samples():
    assert to_text(parse_poly("z^2 - 5*z", 5)) == "z^2 - 5*z"
    assert to_text(parse_ratfunc("1/(z-5)", 5)) == "(1)/(z - 5)"
    assert to_text(parse_diffpoly("X0^2*X1/z", 5)) == "((1)/(z))*X0^2*X1"
    assert to_text(parse_diffpoly("3*X0 - X1 + 2", 5)) == "3*X0 - X1 + 2"
    assert to_text(parse_diffpoly("-X0^2/4 + (z-1)*X1", 5)) == "-1/4*X0^2 + (z - 1)*X1"
