"""Entire functions at desk scale: valued polynomials and tail-certified series.

Newton polygons use points ``(n, nu_p(a_n))``.  With that convention a hull
segment of slope ``sigma`` and width ``l`` carries ``l`` zeros of log-radius
``s = sigma``, which the factored-polynomial tests pin down.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import RadiusOutOfCertificate, ZeroPolynomial
from .scalar import BOTTOM, LogValue, fmt_q, nu, parse_q, valuation

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _strip(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ValuedPoly:
    """A polynomial ``sum a_n z**n`` over Q, read through ``|.|_p``.

    ``coeffs[n]`` is the coefficient of ``z**n``; trailing zeros are stripped,
    so the zero polynomial has ``coeffs == ()`` and ``degree == -1``.
    """

    coeffs: tuple[Fraction, ...]
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    # -- constructors ----------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "ValuedPoly":
        return cls((), p)

    @classmethod
    def const(cls, c, p: int) -> "ValuedPoly":
        return cls((Fraction(c),), p)

    @classmethod
    def z(cls, p: int) -> "ValuedPoly":
        return cls((_ZERO, _ONE), p)

    @classmethod
    def monomial(cls, c, k: int, p: int) -> "ValuedPoly":
        return cls((_ZERO,) * k + (Fraction(c),), p)

    @classmethod
    def from_roots(cls, roots: Sequence, p: int, lead=1, origin: int = 0) -> "ValuedPoly":
        """``lead * z**origin * prod (z - w)`` for the given roots."""
        out = cls.monomial(lead, origin, p)
        for w in roots:
            out = out * cls((-Fraction(w), _ONE), p)
        return out

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    @property
    def low_degree(self) -> int:
        """Order of vanishing at the origin."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        raise ZeroPolynomial("the zero polynomial has no lowest term")

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else _ZERO

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations -------------------------------------------------
    def _check(self, other: "ValuedPoly"):
        if self.prime != other.prime:
            raise ValueError("polynomials over different primes")

    def __add__(self, other: "ValuedPoly") -> "ValuedPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return ValuedPoly(out, self.prime)

    def __neg__(self) -> "ValuedPoly":
        return ValuedPoly([-c for c in self.coeffs], self.prime)

    def __sub__(self, other: "ValuedPoly") -> "ValuedPoly":
        return self + (-other)

    def __mul__(self, other) -> "ValuedPoly":
        if not isinstance(other, ValuedPoly):
            c = Fraction(other)
            return ValuedPoly([c * x for x in self.coeffs], self.prime)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return ValuedPoly.zero(self.prime)
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return ValuedPoly(out, self.prime)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "ValuedPoly":
        out = ValuedPoly.const(1, self.prime)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "ValuedPoly") -> tuple["ValuedPoly", "ValuedPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lead
        quot = [_ZERO] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c:
                c *= inv
                quot[k - dq] = c
                for j, y in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * y
        return ValuedPoly(quot, self.prime), ValuedPoly(rem[:dq], self.prime)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "ValuedPoly":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def __str__(self):
        from .dsl import to_text

        return to_text(self)

    def to_json(self) -> dict:
        return {"coeffs": [fmt_q(c) for c in self.coeffs] or ["0/1"]}

    @classmethod
    def from_json(cls, data: dict, p: int) -> "ValuedPoly":
        return cls([parse_q(c) for c in data["coeffs"]], p)


def poly_gcd(a: ValuedPoly, b: ValuedPoly) -> ValuedPoly:
    """Monic gcd over Q (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


# -- maximum term ------------------------------------------------------------

def mu_hat_poly(f: ValuedPoly, s) -> LogValue:
    """``log_p mu(p**s, f) = max_n (lam(a_n) + n*s)``, by direct maximum."""
    s = Fraction(s)
    p = f.prime
    best: LogValue = BOTTOM
    for n, c in enumerate(f.coeffs):
        if c:
            t = valuation(c, p) + n * s
            if best is BOTTOM or t > best:
                best = t
    return best


@dataclass(frozen=True)
class TruncatedSeries:
    """Entire series with an explicit head and a certified tail.

    The tail certificate promises ``lam(a_n) <= alpha + beta*n`` for every
    ``n > order``.  With ``beta < 0`` there is a window ``s < s_max`` on which
    the head alone determines the maximum term.
    """

    head: ValuedPoly
    alpha: Fraction
    beta: Fraction
    order: int = -1

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.beta >= 0:
            raise ValueError("tail certificate slope beta must be negative")
        if self.order < self.head.degree:
            object.__setattr__(self, "order", max(self.head.degree, 0))

    @property
    def prime(self) -> int:
        return self.head.prime

    @property
    def s_max(self) -> LogValue:
        """Supremum of the radii at which the head dominates the tail bound."""
        d1 = self.order + 1
        crossing: LogValue = BOTTOM
        for n, c in enumerate(self.head.coeffs):
            if c:
                t = (valuation(c, self.prime) - self.alpha - self.beta * d1) / (d1 - n)
                crossing = t if crossing is BOTTOM else max(crossing, t)
        if crossing is BOTTOM:
            return BOTTOM
        return min(crossing, -self.beta)

    def derivative(self, k: int = 1) -> "TruncatedSeries":
        # |n| <= 1 p-adically, so the shifted bound alpha + beta*(n+1) stays valid
        out = self
        for _ in range(k):
            out = TruncatedSeries(
                derivative(out.head, 1), out.alpha + out.beta, out.beta, max(out.order - 1, 0)
            )
        return out

    def to_json(self) -> dict:
        data = self.head.to_json()
        data["tail"] = {"alpha": fmt_q(self.alpha), "beta": fmt_q(self.beta)}
        data["order"] = self.order
        return data

    @classmethod
    def from_json(cls, data: dict, p: int) -> "TruncatedSeries":
        head = ValuedPoly.from_json(data, p)
        tail = data["tail"]
        return cls(head, parse_q(tail["alpha"]), parse_q(tail["beta"]), int(data.get("order", -1)))


def mu_hat(f, s) -> LogValue:
    """Log of the maximum term of an entire function at radius ``p**s``."""
    if isinstance(f, TruncatedSeries):
        s = Fraction(s)
        bound = f.s_max
        if bound is BOTTOM or s >= bound:
            raise RadiusOutOfCertificate(
                f"s={s} is outside the certified window s < {bound}"
            )
        return mu_hat_poly(f.head, s)
    return mu_hat_poly(f, s)


# -- Newton polygon ----------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of ``{(n, nu_p(a_n))}`` with collinear points merged."""

    vertices: tuple[tuple[int, Fraction], ...]

    def segments(self) -> list[tuple[Fraction, int]]:
        """``(slope, width)`` for each edge, left to right."""
        out = []
        for (n1, v1), (n2, v2) in zip(self.vertices, self.vertices[1:]):
            out.append((Fraction(v2 - v1, 1) / (n2 - n1), n2 - n1))
        return out

    def mu_hat(self, s) -> Fraction:
        s = Fraction(s)
        return max(n * s - v for n, v in self.vertices)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: ValuedPoly) -> NewtonPolygon:
    if f.is_zero():
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    p = f.prime
    hull: list[tuple[int, Fraction]] = []
    for n, c in enumerate(f.coeffs):
        if not c:
            continue
        pt = (n, nu(c, p))
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return NewtonPolygon(tuple(hull))


@dataclass(frozen=True)
class ZeroRadii:
    """Zero data of a polynomial: origin order plus ``(log-radius, count)`` pairs."""

    origin_multiplicity: int
    radii: tuple[tuple[Fraction, int], ...] = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return self.origin_multiplicity + sum(m for _, m in self.radii)

    def as_multiset(self) -> list[Fraction]:
        return sorted(s for s, m in self.radii for _ in range(m))

    def mass(self, s, include_origin: bool = True) -> Fraction:
        """Integrated counting function ``m0*s + sum_{s_w <= s} (s - s_w)``."""
        s = Fraction(s)
        total = self.origin_multiplicity * s if include_origin else Fraction(0)
        for sw, m in self.radii:
            if sw <= s:
                total += m * (s - sw)
        return total

    def count_upto(self, s) -> int:
        return self.origin_multiplicity + sum(m for sw, m in self.radii if sw <= s)


def zero_log_radii(f: ValuedPoly) -> ZeroRadii:
    poly = newton_polygon(f)
    return ZeroRadii(poly.vertices[0][0], tuple(poly.segments()))


# -- composition and derivatives ---------------------------------------------

def compose_affine(f: ValuedPoly, L) -> ValuedPoly:
    """``f(a*z + b)`` expanded exactly (``L`` exposes ``.a`` and ``.b``)."""
    lin = ValuedPoly((Fraction(L.b), Fraction(L.a)), f.prime)
    acc = ValuedPoly.zero(f.prime)
    for c in reversed(f.coeffs):
        acc = acc * lin + ValuedPoly.const(c, f.prime)
    return acc


def derivative(f: ValuedPoly, k: int = 1) -> ValuedPoly:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    coeffs = list(f.coeffs)
    for _ in range(k):
        coeffs = [n * c for n, c in enumerate(coeffs)][1:]
    return ValuedPoly(coeffs, f.prime)
