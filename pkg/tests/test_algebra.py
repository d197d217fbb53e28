from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nonarch.algebra import (
    AffineMap,
    DiffPoly,
    OperatorSpec,
    UniPoly,
    apply_operator,
    clunie_split_eval,
    divide_univariate,
    eval_at,
    eval_diffpoly,
    operands,
    substitute_shift_target,
    total_deg,
    validate_family,
)
from nonarch.dsl import parse_diffpoly, parse_ratfunc
from nonarch.errors import ArityMismatch, IdentityMapForDelta, NonUnitMap, ZeroDiffPoly, ZeroDivisor
from nonarch.ratfunc import RatFunc, compose_affine_rat
from strategies import p_adic_scalars, ratfuncs

P5 = 5


def R(text):
    return parse_ratfunc(text, P5)


def D(text, n=None):
    return parse_diffpoly(text, P5, n)


def U(*texts):
    return UniPoly([R(t) for t in texts], P5)


SHIFT1 = OperatorSpec.shift(1, 1)


def test_operator_examples():
    assert apply_operator(R("z^2"), OperatorSpec.delta(1, 1, 1)) == R("2*z + 1")
    assert apply_operator(R("z^2"), OperatorSpec.delta(1, 1, 2)) == R("2")
    assert apply_operator(R("z^3"), OperatorSpec.derivative(2)) == R("6*z")


def test_operator_invariants():
    with pytest.raises(IdentityMapForDelta):
        OperatorSpec.delta(1, 0)
    with pytest.raises(NonUnitMap):
        OperatorSpec.shift(5, 1).validate(5)
    OperatorSpec.shift(5, 1).validate(3)
    with pytest.raises(ValueError):
        OperatorSpec("derivative", None, 0)
    with pytest.raises(ValueError):
        validate_family([SHIFT1, SHIFT1], 5)
    with pytest.raises(ValueError):
        validate_family([OperatorSpec.shift(1, 0)], 5)
    for op in (SHIFT1, OperatorSpec.delta(2, 3, 2), OperatorSpec.derivative(3)):
        assert OperatorSpec.from_json(op.to_json()) == op


def test_eval_examples():
    assert eval_diffpoly(D("X0*X1"), R("z"), [SHIFT1]) == R("z^2 + z")
    assert eval_diffpoly(D("X1 - X0 - 1"), R("z"), [SHIFT1]).is_zero()
    assert eval_diffpoly(D("X0/z"), R("z"), []) == R("1")
    with pytest.raises(ArityMismatch):
        eval_diffpoly(D("X0*X1"), R("z"), [])


def test_total_degree_examples():
    assert total_deg(D("X0^2*X1")) == 3
    assert total_deg(D("z + 3")) == 0
    assert total_deg(D("X0 + X3")) == 1
    with pytest.raises(ZeroDiffPoly):
        total_deg(D("X0 - X0"))


def test_division_examples():
    assert divide_univariate(U("0", "0", "0", "1"), U("0", "0", "1")) == (U("0", "1"), U())
    assert divide_univariate(U("1", "0", "1"), U("0", "0", "1")) == (U("1"), U("1"))
    assert divide_univariate(U("0", "1"), U("0", "0", "1")) == (U(), U("0", "1"))
    with pytest.raises(ZeroDivisor):
        divide_univariate(U("1"), U())


def test_substitution_examples():
    a = R("3")
    psi, const = substitute_shift_target(D("X0^2"), a, [])
    assert psi == D("X0^2 + 6*X0")
    assert const == R("9")
    psi, const = substitute_shift_target(D("X1 - X0 - 1"), R("0"), [SHIFT1])
    assert psi == D("X1 - X0")
    assert const == R("-1")


def test_clunie_residual_examples():
    B = U("0", "1")
    omega = D("X1", 2)
    assert clunie_split_eval(R("z"), B, omega, D("z*(z+1)", 2), [SHIFT1]).is_zero()
    assert clunie_split_eval(R("z"), B, omega, D("z^2", 2), [SHIFT1]) == R("z")
    assert clunie_split_eval(R("z"), B, DiffPoly(2, P5), D("z^2", 2), [SHIFT1]) == R("-z^2")


def test_graded_lex_order():
    P = D("X1 + 1 + X0^2 + X0*X1 + X0")
    assert [e for e, _ in P.terms] == [(2, 0), (1, 1), (1, 0), (0, 1), (0, 0)]
    assert DiffPoly.from_json(P.to_json(), P5, 2) == P


# -- properties --------------------------------------------------------------

@st.composite
def unit_maps(draw, p=P5):
    a = draw(st.integers(1, 30).filter(lambda n: n % p))
    b = draw(st.integers(-20, 20).filter(bool))
    return AffineMap(a, Fraction(b, draw(st.integers(1, 4))))


@st.composite
def diffpolys(draw, nvars, p=P5, max_terms=4, max_deg=3):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms.append((exp, draw(ratfuncs(p, 1))))
    P = DiffPoly(nvars, p)
    for exp, c in terms:
        mono = DiffPoly.constant(c, nvars, p)
        for k, e in enumerate(exp):
            mono = mono * DiffPoly.variable(k, nvars, p) ** e
        P = P + mono
    return P


@st.composite
def op_families(draw, n):
    ops = []
    for _ in range(n):
        kind = draw(st.sampled_from(["shift", "delta", "derivative"]))
        if kind == "derivative":
            ops.append(OperatorSpec.derivative(draw(st.integers(1, 2))))
        else:
            L = draw(unit_maps())
            ops.append(OperatorSpec(kind, L, draw(st.integers(1, 2))))
    return ops


small = settings(max_examples=40, deadline=None)


@small
@given(diffpolys(2), diffpolys(2), ratfuncs(P5, 2), op_families(1))
def test_eval_is_linear(P, Q, f, ops):
    assert eval_diffpoly(P + Q, f, ops) == eval_diffpoly(P, f, ops) + eval_diffpoly(Q, f, ops)


@small
@given(st.lists(ratfuncs(P5, 1), max_size=4), st.lists(ratfuncs(P5, 1), min_size=1, max_size=3))
def test_division_round_trip(phi, b):
    Phi, B = UniPoly(phi, P5), UniPoly(b, P5)
    if B.is_zero():
        return
    q, r = divide_univariate(Phi, B)
    assert q * B + r == Phi
    assert r.degree < B.degree
    assert (q * B + r).to_json() == Phi.to_json()


@small
@given(diffpolys(2), ratfuncs(P5, 2), ratfuncs(P5, 1), op_families(1))
def test_substitution_consistency(P, f, a, ops):
    psi, const = substitute_shift_target(P, a, ops)
    g = f - a
    assert eval_diffpoly(psi, g, ops) + const == eval_diffpoly(P, f, ops)
    assert const == eval_diffpoly(P, a, ops)
    assert all(any(e) for e, _ in psi.terms)


@small
@given(ratfuncs(P5, 3), unit_maps(), st.integers(1, 3))
def test_delta_is_iterated_difference(f, L, j):
    once = OperatorSpec.delta(L.a, L.b, 1)
    assert apply_operator(f, once) == compose_affine_rat(f, L) - f
    out = f
    for _ in range(j):
        out = apply_operator(out, once)
    assert apply_operator(f, OperatorSpec.delta(L.a, L.b, j)) == out


@small
@given(diffpolys(3), op_families(2), ratfuncs(P5, 2))
def test_eval_at_operands(P, ops, f):
    assert eval_at(P, operands(f, ops)) == eval_diffpoly(P, f, ops)


@small
@given(diffpolys(2))
def test_diffpoly_json_round_trip(P):
    assert DiffPoly.from_json(P.to_json(), P5, 2) == P
