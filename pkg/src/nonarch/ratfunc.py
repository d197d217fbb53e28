"""Rational functions over Q: the meromorphic representatives.

A :class:`RatFunc` is always stored reduced with a monic denominator, so two
equal functions have identical fields and identical serializations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateMap, DivisionByZeroFunction, ZeroFunction
from .scalar import LogValue
from .series import (
    ValuedPoly,
    ZeroRadii,
    compose_affine,
    derivative,
    mu_hat_poly,
    poly_gcd,
    zero_log_radii,
)


@dataclass(frozen=True)
class RatFunc:
    num: ValuedPoly
    den: ValuedPoly

    def __post_init__(self):
        num, den = self.num, self.den
        if num.prime != den.prime:
            raise ValueError("numerator and denominator over different primes")
        if den.is_zero():
            raise DivisionByZeroFunction("rational function with zero denominator")
        p = num.prime
        if num.is_zero():
            num, den = ValuedPoly.zero(p), ValuedPoly.const(1, p)
        elif not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def prime(self) -> int:
        return self.num.prime

    @classmethod
    def const(cls, c, p: int) -> "RatFunc":
        return cls(ValuedPoly.const(c, p), ValuedPoly.const(1, p))

    @classmethod
    def z(cls, p: int) -> "RatFunc":
        return cls(ValuedPoly.z(p), ValuedPoly.const(1, p))

    @classmethod
    def from_poly(cls, f: ValuedPoly) -> "RatFunc":
        return cls(f, ValuedPoly.const(1, f.prime))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # -- field operations ------------------------------------------------
    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.prime != self.prime:
                raise ValueError("rational functions over different primes")
            return other
        if isinstance(other, ValuedPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(other, self.prime)

    def __add__(self, other) -> "RatFunc":
        other = self._lift(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise DivisionByZeroFunction("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZeroFunction("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RatFunc":
        return self._lift(other) / self

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    # -- function data ---------------------------------------------------
    def total_degree(self) -> int:
        if self.is_zero():
            raise ZeroFunction("degree of the zero function")
        return max(self.num.degree, self.den.degree)

    def zeros(self) -> ZeroRadii:
        if self.is_zero():
            raise ZeroFunction("zeros of the zero function")
        return zero_log_radii(self.num)

    def poles(self) -> ZeroRadii:
        return zero_log_radii(self.den)

    def origin_order(self) -> int:
        """Order at the origin: positive for a zero, negative for a pole."""
        if self.is_zero():
            raise ZeroFunction("order of the zero function")
        return self.num.low_degree - self.den.low_degree

    def origin_coefficient(self) -> Fraction:
        """Leading Laurent coefficient at the origin."""
        if self.is_zero():
            raise ZeroFunction("Laurent coefficient of the zero function")
        return self.num[self.num.low_degree] / self.den[self.den.low_degree]

    def __str__(self):
        from .dsl import to_text

        return to_text(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data, p: int) -> "RatFunc":
        if isinstance(data, str):
            from .dsl import parse_ratfunc

            return parse_ratfunc(data, p)
        if "coeffs" in data:
            return cls.from_poly(ValuedPoly.from_json(data, p))
        return cls(ValuedPoly.from_json(data["num"], p), ValuedPoly.from_json(data["den"], p))


def arith(x: RatFunc, y: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def mu_hat_rat(f: RatFunc, s) -> LogValue:
    """Log maximum term of ``num/den``: the difference of the parts' values."""
    if f.is_zero():
        raise ZeroFunction("maximum term of the zero function")
    return mu_hat_poly(f.num, s) - mu_hat_poly(f.den, s)


def compose_affine_rat(f: RatFunc, L) -> RatFunc:
    if Fraction(L.a) == 0:
        raise DegenerateMap("affine map with a = 0")
    return RatFunc(compose_affine(f.num, L), compose_affine(f.den, L))


def rat_derivative(f: RatFunc, k: int = 1) -> RatFunc:
    out = f
    for _ in range(k):
        n, d = out.num, out.den
        out = RatFunc(derivative(n) * d - n * derivative(d), d * d)
    return out


def total_degree(f: RatFunc) -> int:
    return f.total_degree()
