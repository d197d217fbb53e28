"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from nonarch.ratfunc import RatFunc
from nonarch.series import ValuedPoly

PRIMES = st.sampled_from([2, 3, 5, 7])


@st.composite
def p_adic_scalars(draw, p, lo=-3, hi=3, nonzero=True):
    """A rational with prescribed-ish valuation: p^k * (unit)."""
    k = draw(st.integers(lo, hi))
    num = draw(st.integers(1, 40).filter(lambda n: n % p))
    den = draw(st.integers(1, 40).filter(lambda n: n % p))
    sign = draw(st.sampled_from([1, -1]))
    x = sign * Fraction(num, den) * Fraction(p) ** k
    if not nonzero and draw(st.booleans()):
        return Fraction(0)
    return x


@st.composite
def polys(draw, p, max_deg=5, nonzero=True):
    deg = draw(st.integers(0, max_deg))
    coeffs = [draw(p_adic_scalars(p, nonzero=False)) for _ in range(deg)]
    coeffs.append(draw(p_adic_scalars(p)))
    f = ValuedPoly(tuple(coeffs), p)
    return f


@st.composite
def ratfuncs(draw, p, max_deg=4):
    return RatFunc(draw(polys(p, max_deg)), draw(polys(p, max_deg)))


log_radii = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def naive_nu(x: Fraction, p: int) -> int:
    """Reference valuation by repeated division."""
    assert x != 0
    k = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        k += 1
    while d % p == 0:
        d //= p
        k -= 1
    return k


def naive_mu(coeffs, p, s):
    """max_n (-nu(a_n) + n*s) straight from the definition."""
    vals = [-naive_nu(c, p) + n * s for n, c in enumerate(coeffs) if c]
    return max(vals)
