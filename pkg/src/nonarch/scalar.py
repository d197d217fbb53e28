"""Exact rationals with a p-adic absolute value, measured on the log_p scale.

An absolute value ``|x|_p = p**lam`` is stored as the exact exponent ``lam``
(a :class:`~fractions.Fraction`), and ``|0| = 0`` is the distinguished
:data:`BOTTOM`.  Every Nevanlinna quantity in the package lives on this scale.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Union


class _Bottom:
    """The log of ``|0|``: below every rational, absorbing under addition."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ZeroDivisionError("BOTTOM - BOTTOM is undefined (0/0)")
        return self

    def __rsub__(self, other):
        raise ZeroDivisionError("division by an absolute value of zero")

    def __mul__(self, other):
        if other == 0:
            raise ValueError("0 * BOTTOM is undefined")
        if other < 0:
            raise ValueError("negative multiple of BOTTOM is undefined")
        return self

    __rmul__ = __mul__


BOTTOM = _Bottom()

LogValue = Union[Fraction, _Bottom]


class Prime(int):
    """An integer checked to be prime at construction."""

    def __new__(cls, p):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not a prime")
        return super().__new__(cls, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _nu_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@lru_cache(maxsize=65536)
def _lam(num: int, den: int, p: int) -> Fraction:
    return Fraction(_nu_int(den, p) - _nu_int(num, p))


def valuation(x, p: int) -> LogValue:
    """Return ``lam`` with ``|x|_p = p**lam``, or :data:`BOTTOM` for zero.

    >>> valuation(Fraction(1, 25), 5)
    Fraction(2, 1)
    >>> valuation(Fraction(10, 3), 5)
    Fraction(-1, 1)
    """
    x = Fraction(x)
    if x == 0:
        return BOTTOM
    return _lam(x.numerator, x.denominator, p)


def nu(x, p: int) -> Fraction:
    """The additive p-adic valuation ``nu_p(x) = -valuation(x)``; x must be nonzero."""
    lam = valuation(x, p)
    if lam is BOTTOM:
        raise ValueError("nu_p(0) is infinite")
    return -lam


def log_add_bound(x: LogValue, y: LogValue) -> LogValue:
    """Certified upper bound for ``lam(a + b)`` given ``lam(a)``, ``lam(b)``.

    The ultrametric inequality makes this ``max(x, y)``; it is exact whenever
    ``x != y``.
    """
    if x is BOTTOM:
        return y
    if y is BOTTOM:
        return x
    return max(x, y)


def log_plus(x: LogValue) -> Fraction:
    """``log+`` on the log scale: ``max(0, x)`` with ``log+ |0| = 0``."""
    if x is BOTTOM or x <= 0:
        return Fraction(0)
    return x


def unit_check(x, p: int) -> bool:
    """True iff ``|x|_p = 1``."""
    return valuation(x, p) == 0


def unit_with_valuation(lam: int, unit, p: int) -> Fraction:
    """Build ``p**(-lam) * unit``; ``unit`` must itself be a p-adic unit."""
    return Fraction(p) ** (-lam) * Fraction(unit)


# -- serialization -----------------------------------------------------------

def fmt_q(x) -> str:
    """Canonical ``"num/den"`` string (``"0/1"`` for zero)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def fmt_log(x: LogValue) -> str:
    return "bottom" if x is BOTTOM else fmt_q(x)


def parse_log(text) -> LogValue:
    if text == "bottom":
        return BOTTOM
    return parse_q(text)
