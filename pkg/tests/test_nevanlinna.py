from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nonarch.dsl import parse_ratfunc
from nonarch.errors import LadderMismatch, ZeroFunction
from nonarch.nevanlinna import (
    N_hat,
    T_hat,
    characteristic_table,
    jensen_defect,
    m_hat,
    n_count,
    parse_ladder,
    ratio_report,
)
from nonarch.ratfunc import RatFunc, mu_hat_rat, total_degree
from nonarch.scalar import valuation
from strategies import PRIMES, log_radii, ratfuncs

F = Fraction


def R(text, p=5):
    return parse_ratfunc(text, p)


def test_m_examples():
    assert m_hat(R("z^2/5"), 0) == 1
    assert m_hat(R("(z-1)/(z-5)"), 2) == 0
    assert m_hat(R("25*z"), 0) == 0  # mu = -2, clamped


def test_counting_examples():
    f = R("1/(z^3+5)")
    assert n_count(f, 0) == 3
    assert n_count(f, -1) == 0
    assert n_count(R("z^4 + 1"), 10) == 0
    assert N_hat(f, 0) == 1
    assert N_hat(f, F(-1, 3)) == 0
    assert N_hat(R("1/z"), 2) == 2
    assert N_hat(R("1/z"), -3) == -3


def test_T_examples():
    row = T_hat(R("(z-1)/(z-5)"), 2)
    assert (row.m, row.N, row.T) == (0, 3, 3)
    for s in (F(-2), F(0), F(7, 3)):
        assert T_hat(RatFunc.const(3, 5), s).T == 0
    row = T_hat(R("z"), 1)
    assert (row.m, row.N, row.T) == (1, 0, 1)
    with pytest.raises(ZeroFunction):
        T_hat(RatFunc.const(0, 5), 1)


def test_characteristic_table_rows():
    rows = characteristic_table(R("(z-1)/(z-5)"), parse_ladder("0:1:3"))
    assert [r.T for r in rows] == [1, 2, 3]
    assert rows[0].to_json() == {"s": "0/1", "m": "0/1", "N": "1/1", "T": "1/1"}


def test_jensen_examples():
    f = R("(z-1)/(z-5)")
    assert jensen_defect(f, 0) == 0
    assert jensen_defect(f, 2) == 0
    for k in range(5):
        for s in (F(-3), F(1, 2), F(4)):
            assert jensen_defect(R(f"z^{k}"), s) == 0


def test_ladder_parsing():
    assert parse_ladder("1/2:1/3:3") == [F(1, 2), F(5, 6), F(7, 6)]
    for bad in ("0:1:0", "0:1", "a:b:c", "0:1:-2"):
        with pytest.raises(ValueError):
            parse_ladder(bad)


def test_ratio_examples():
    ladder = parse_ladder("1:1:3")
    f_rows = characteristic_table(R("z"), ladder)
    rep = ratio_report(characteristic_table(R("3"), ladder), f_rows)
    assert rep.ratios == (0, 0, 0) and rep.trend == "zero"
    rep = ratio_report(characteristic_table(R("z"), ladder), f_rows)
    assert rep.ratios == (1, 1, 1) and rep.trend == "non-decaying"
    rep = ratio_report(characteristic_table(R("z"), ladder), characteristic_table(R("z^3"), ladder))
    assert rep.ratios == (F(1, 3),) * 3 and rep.trend == "non-decaying"


def test_ratio_guards():
    rows = characteristic_table(R("z"), parse_ladder("1:1:3"))
    with pytest.raises(LadderMismatch):
        ratio_report(rows, rows[:2])
    with pytest.raises(LadderMismatch):
        ratio_report(rows, characteristic_table(R("1"), parse_ladder("1:1:3")))


f_and_p = PRIMES.flatmap(lambda p: st.tuples(st.just(p), ratfuncs(p, 5)))


@given(f_and_p, log_radii)
def test_jensen_identity(pf, s):
    _, f = pf
    assert jensen_defect(f, s) == 0


@given(f_and_p, log_radii)
def test_first_main_theorem(pf, s):
    p, f = pf
    c0 = valuation(f.origin_coefficient(), p)
    assert T_hat(f.inverse(), s).T == T_hat(f, s).T - c0


@given(PRIMES.flatmap(lambda p: st.tuples(ratfuncs(p), ratfuncs(p))),
       st.fractions(min_value=0, max_value=5, max_denominator=4))
def test_T_subadditive_on_products(fg, s):
    f, g = fg
    assert T_hat(f * g, s).T <= T_hat(f, s).T + T_hat(g, s).T


@given(f_and_p, st.fractions(min_value=0, max_value=5, max_denominator=4),
       st.fractions(min_value=0, max_value=3, max_denominator=4))
def test_T_monotone_without_origin_pole(pf, s1, ds):
    _, f = pf
    if f.origin_order() < 0:
        return
    assert T_hat(f, s1 + ds).T >= T_hat(f, s1).T


@given(f_and_p)
def test_slope_law(pf):
    _, f = pf
    radii = [s for s, _ in f.zeros().radii] + [s for s, _ in f.poles().radii] + [F(0)]
    s0 = max(radii) + 1
    s1 = s0 + abs(mu_hat_rat(f, s0)) + 1  # past the log+ clamp too
    s2 = s1 + 3
    assert T_hat(f, s2).T - T_hat(f, s1).T == total_degree(f) * (s2 - s1)
