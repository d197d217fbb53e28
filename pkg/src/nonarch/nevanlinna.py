"""Proximity, valence and characteristic functions on the exact log_p scale.

Radii are restricted to the value group: a radius ``r = p**s`` is passed as
its exponent ``s`` (a Fraction).  Valence functions use the origin-term
convention ``N(s) = m0*s + sum_{s_w <= s} (s - s_w)``, i.e. base radius 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import LadderMismatch, ZeroFunction
from .ratfunc import RatFunc, mu_hat_rat
from .scalar import LogValue, fmt_q, log_plus, parse_q, valuation
from .series import TruncatedSeries, ValuedPoly, mu_hat

LogRadius = Fraction
Function = Union[RatFunc, ValuedPoly, TruncatedSeries]


def parse_ladder(text: str) -> list[Fraction]:
    """Expand ``"start:step:count"`` into exact radii."""
    try:
        start, step, count = text.split(":")
        start, step, count = parse_q(start), parse_q(step), int(count)
    except ValueError as exc:
        raise ValueError(f"bad ladder {text!r}; expected start:step:count") from exc
    if count < 1:
        raise ValueError("ladder must contain at least one radius")
    return [start + k * step for k in range(count)]


def _mu(f: Function, s) -> LogValue:
    if isinstance(f, RatFunc):
        return mu_hat_rat(f, s)
    return mu_hat(f, s)


def m_hat(f: Function, s) -> Fraction:
    """``log+`` of the maximum term.  The zero function gets 0."""
    if isinstance(f, RatFunc) and f.is_zero():
        return Fraction(0)
    return log_plus(_mu(f, s))


def n_count(f: Function, s) -> int:
    """Number of poles with log-radius at most ``s`` (origin included)."""
    if not isinstance(f, RatFunc):
        return 0
    if f.is_zero():
        raise ZeroFunction("pole count of the zero function")
    return f.poles().count_upto(Fraction(s))


def N_hat(f: Function, s) -> Fraction:
    if not isinstance(f, RatFunc):
        return Fraction(0)
    if f.is_zero():
        raise ZeroFunction("valence of the zero function")
    return f.poles().mass(s)


@dataclass(frozen=True)
class CharacteristicRow:
    s: Fraction
    m: Fraction
    N: Fraction

    @property
    def T(self) -> Fraction:
        return self.m + self.N

    def to_json(self) -> dict:
        return {"s": fmt_q(self.s), "m": fmt_q(self.m), "N": fmt_q(self.N), "T": fmt_q(self.T)}


def T_hat(f: Function, s) -> CharacteristicRow:
    s = Fraction(s)
    if isinstance(f, RatFunc) and f.is_zero():
        raise ZeroFunction("characteristic of the zero function")
    return CharacteristicRow(s, m_hat(f, s), N_hat(f, s))


def characteristic_table(f: Function, ladder: Sequence) -> list[CharacteristicRow]:
    return [T_hat(f, s) for s in ladder]


def jensen_defect(f: RatFunc, s) -> Fraction:
    """Residual of the non-Archimedean Jensen formula; identically zero.

    The maximum term is taken by direct maximum over coefficients, the zero
    and pole masses from Newton polygons, so a zero result cross-checks both.
    """
    if f.is_zero():
        raise ZeroFunction("Jensen formula for the zero function")
    s = Fraction(s)
    zero_mass = f.zeros().mass(s, include_origin=False)
    pole_mass = f.poles().mass(s, include_origin=False)
    c0 = valuation(f.origin_coefficient(), f.prime)
    return mu_hat_rat(f, s) - (c0 + f.origin_order() * s + zero_mass - pole_mass)


@dataclass(frozen=True)
class RatioReport:
    """Exact ratios ``sum T(coefficients) / T(f)`` along a ladder.

    ``trend`` is ``"zero"`` when every ratio vanishes, ``"decaying"`` when the
    ratios strictly decrease, and ``"non-decaying"`` otherwise.  Nothing here
    is an assertion.
    """

    radii: tuple[Fraction, ...]
    ratios: tuple[Fraction, ...]

    @property
    def trend(self) -> str:
        if all(r == 0 for r in self.ratios):
            return "zero"
        if all(b < a for a, b in zip(self.ratios, self.ratios[1:])) and len(self.ratios) > 1:
            return "decaying"
        return "non-decaying"

    def to_json(self) -> dict:
        return {
            "s": [fmt_q(s) for s in self.radii],
            "ratio": [fmt_q(r) for r in self.ratios],
            "trend": self.trend,
        }


def ratio_report(numerator_rows, denominator_rows: Sequence[CharacteristicRow]) -> RatioReport:
    """Compare coefficient characteristics against the solution's.

    ``numerator_rows`` is either one table or a list of tables (one per
    coefficient); tables are summed radius by radius.
    """
    tables = list(numerator_rows)
    if tables and isinstance(tables[0], CharacteristicRow):
        tables = [tables]
    radii = tuple(r.s for r in denominator_rows)
    for tab in tables:
        if tuple(r.s for r in tab) != radii:
            raise LadderMismatch("numerator and denominator tables use different radii")
    ratios = []
    for k, row in enumerate(denominator_rows):
        if row.T <= 0:
            raise LadderMismatch(f"denominator characteristic is not positive at s={row.s}")
        ratios.append(sum((tab[k].T for tab in tables), Fraction(0)) / row.T)
    return RatioReport(radii, tuple(ratios))
