"""Affine maps, operator families and difference polynomials.

A :class:`DiffPoly` in ``X_0..X_n`` carries rational-function coefficients.
``X_0`` binds to ``f`` and ``X_k`` to ``ops[k-1]`` applied to ``f``, where an
operator is a shift ``f(L(z))``, an iterated difference ``Delta_L^j f`` or a
derivative ``f^(k)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    DegenerateMap,
    IdentityMapForDelta,
    NonUnitMap,
    ZeroDiffPoly,
    ZeroDivisor,
)
from .ratfunc import RatFunc, compose_affine_rat, rat_derivative
from .scalar import BOTTOM, LogValue, fmt_q, parse_q, valuation


@dataclass(frozen=True)
class AffineMap:
    """``L(z) = a*z + b`` with ``a != 0``."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0:
            raise DegenerateMap("affine map with a = 0")

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 0

    def window(self, p: int) -> LogValue:
        """``lam(b)``: the lemmas on this map need radii strictly above it."""
        return valuation(self.b, p)

    def __str__(self):
        return f"{fmt_q(self.a)}*z + {fmt_q(self.b)}"


IDENTITY = AffineMap(1, 0)


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    L: AffineMap | None = None
    order: int = 1

    def __post_init__(self):
        if self.kind not in ("shift", "delta", "derivative"):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        if self.kind == "shift":
            object.__setattr__(self, "order", 1)
        if self.order < 1:
            raise ValueError("operator order must be at least 1")
        if self.kind != "derivative" and self.L is None:
            raise DegenerateMap(f"{self.kind} operator needs an affine map")
        if self.kind == "delta" and self.L.is_identity():
            raise IdentityMapForDelta("Delta_L with L(z) = z vanishes identically")

    @classmethod
    def shift(cls, a, b=0) -> "OperatorSpec":
        return cls("shift", AffineMap(a, b))

    @classmethod
    def delta(cls, a, b=0, order: int = 1) -> "OperatorSpec":
        return cls("delta", AffineMap(a, b), order)

    @classmethod
    def derivative(cls, order: int = 1) -> "OperatorSpec":
        return cls("derivative", None, order)

    def validate(self, p: int) -> None:
        """Shift and difference operators require a unit linear coefficient."""
        if self.L is not None and valuation(self.L.a, p) != 0:
            raise NonUnitMap(f"|a|_{p} != 1 for {self.L}")

    def window(self, p: int) -> LogValue:
        if self.L is None:
            return BOTTOM
        return self.L.window(p)

    def to_json(self) -> dict:
        if self.kind == "derivative":
            return {"kind": "derivative", "order": self.order}
        return {"kind": self.kind, "a": fmt_q(self.L.a), "b": fmt_q(self.L.b), "order": self.order}

    @classmethod
    def from_json(cls, data: Mapping) -> "OperatorSpec":
        kind = data["kind"]
        order = int(data.get("order", 1))
        if kind == "derivative":
            return cls.derivative(order)
        L = AffineMap(parse_q(data.get("a", 1)), parse_q(data.get("b", 0)))
        return cls(kind, L, order)


def validate_family(ops: Sequence[OperatorSpec], p: int) -> None:
    """Unit maps everywhere and no repeated operator in the family."""
    for op in ops:
        op.validate(p)
        if op.kind == "shift" and op.L.is_identity():
            raise ValueError("a shift operand must differ from f itself")
    if len(set(ops)) != len(ops):
        raise ValueError("operators in a family must be distinct")


def apply_operator(f: RatFunc, op: OperatorSpec) -> RatFunc:
    if op.kind == "shift":
        return compose_affine_rat(f, op.L)
    if op.kind == "derivative":
        return rat_derivative(f, op.order)
    out = f
    for _ in range(op.order):
        out = compose_affine_rat(out, op.L) - out
    return out


def operands(f: RatFunc, ops: Sequence[OperatorSpec]) -> list[RatFunc]:
    """``[f, f_1, ..., f_n]``."""
    return [f] + [apply_operator(f, op) for op in ops]


# -- difference polynomials --------------------------------------------------

def _grlex_key(exp: tuple[int, ...]):
    return (-sum(exp), tuple(-e for e in exp))


class DiffPoly:
    """Polynomial in ``X_0..X_{nvars-1}`` with :class:`RatFunc` coefficients.

    Terms are kept in graded-lexicographic order (highest first) and zero
    coefficients are dropped, so equal polynomials compare equal.
    """

    __slots__ = ("nvars", "prime", "terms")

    def __init__(self, nvars: int, prime: int, terms: Mapping[tuple, RatFunc] | Iterable = ()):
        if nvars < 1:
            raise ArityMismatch("a difference polynomial needs at least X_0")
        self.nvars = nvars
        self.prime = prime
        acc: dict[tuple, RatFunc] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ArityMismatch(f"exponent {exp} does not have {nvars} entries")
            if any(e < 0 for e in exp):
                raise ValueError("exponents must be nonnegative")
            if not isinstance(c, RatFunc):
                c = RatFunc.const(c, prime)
            acc[exp] = acc[exp] + c if exp in acc else c
        self.terms = tuple(
            (exp, acc[exp]) for exp in sorted(acc, key=_grlex_key) if not acc[exp].is_zero()
        )

    @classmethod
    def variable(cls, k: int, nvars: int, prime: int) -> "DiffPoly":
        exp = tuple(1 if i == k else 0 for i in range(nvars))
        return cls(nvars, prime, {exp: RatFunc.const(1, prime)})

    @classmethod
    def constant(cls, c, nvars: int, prime: int) -> "DiffPoly":
        if not isinstance(c, RatFunc):
            c = RatFunc.const(c, prime)
        return cls(nvars, prime, {(0,) * nvars: c})

    def __eq__(self, other):
        if not isinstance(other, DiffPoly):
            return NotImplemented
        return (self.nvars, self.prime, self.terms) == (other.nvars, other.prime, other.terms)

    def __hash__(self):
        return hash((self.nvars, self.prime, self.terms))

    def __repr__(self):
        return f"DiffPoly({self.nvars}, {self.prime}, {dict(self.terms)!r})"

    def __str__(self):
        from .dsl import to_text

        return to_text(self)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficients(self) -> list[RatFunc]:
        return [c for _, c in self.terms]

    def constant_term(self) -> RatFunc:
        for exp, c in self.terms:
            if not any(exp):
                return c
        return RatFunc.const(0, self.prime)

    def _lift(self, other) -> "DiffPoly":
        if isinstance(other, DiffPoly):
            if other.nvars != self.nvars:
                raise ArityMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return DiffPoly.constant(other, self.nvars, self.prime)

    def __add__(self, other) -> "DiffPoly":
        other = self._lift(other)
        return DiffPoly(self.nvars, self.prime, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "DiffPoly":
        return DiffPoly(self.nvars, self.prime, [(e, -c) for e, c in self.terms])

    def __sub__(self, other) -> "DiffPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "DiffPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "DiffPoly":
        other = self._lift(other)
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((tuple(x + y for x, y in zip(e1, e2)), c1 * c2))
        return DiffPoly(self.nvars, self.prime, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "DiffPoly":
        out = DiffPoly.constant(1, self.nvars, self.prime)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: RatFunc) -> "DiffPoly":
        return DiffPoly(self.nvars, self.prime, [(e, c * x) for e, x in self.terms])

    def widen(self, nvars: int) -> "DiffPoly":
        if nvars < self.nvars:
            raise ArityMismatch("cannot drop variables")
        pad = (0,) * (nvars - self.nvars)
        return DiffPoly(nvars, self.prime, [(e + pad, c) for e, c in self.terms])

    def total_deg(self) -> int:
        if self.is_zero():
            raise ZeroDiffPoly("degree of the zero difference polynomial")
        return max(sum(e) for e, _ in self.terms)

    def degree_in(self, k: int) -> int:
        return max((e[k] for e, _ in self.terms), default=0)

    def depends_only_on_x0(self) -> bool:
        return all(not any(e[1:]) for e, _ in self.terms)

    def to_unipoly(self) -> "UniPoly":
        if not self.depends_only_on_x0():
            raise ValueError("polynomial involves operands other than X_0")
        deg = max((e[0] for e, _ in self.terms), default=-1)
        coeffs = [RatFunc.const(0, self.prime)] * (deg + 1)
        for e, c in self.terms:
            coeffs[e[0]] = c
        return UniPoly(coeffs, self.prime)

    def to_json(self) -> list:
        return [{"coeff": c.to_json(), "exp": list(e)} for e, c in self.terms]

    @classmethod
    def from_json(cls, data, p: int, nvars: int | None = None) -> "DiffPoly":
        if isinstance(data, str):
            from .dsl import parse_diffpoly

            return parse_diffpoly(data, p, nvars)
        if nvars is None:
            nvars = max((len(t["exp"]) for t in data), default=1)
        return cls(nvars, p, [(t["exp"], RatFunc.from_json(t["coeff"], p)) for t in data])


def total_deg(P: DiffPoly) -> int:
    return P.total_deg()


class UniPoly:
    """``B(X) = sum_k b_k X**k`` with rational-function coefficients."""

    __slots__ = ("coeffs", "prime")

    def __init__(self, coeffs: Iterable, prime: int):
        cs = [c if isinstance(c, RatFunc) else RatFunc.const(c, prime) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.prime = prime

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> RatFunc:
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.prime == other.prime

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def __getitem__(self, k: int) -> RatFunc:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else RatFunc.const(0, self.prime)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] + other[k] for k in range(n)], self.prime)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self[k] - other[k] for k in range(n)], self.prime)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero() or other.is_zero():
            return UniPoly([], self.prime)
        out = [RatFunc.const(0, self.prime)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out, self.prime)

    def __call__(self, f: RatFunc) -> RatFunc:
        acc = RatFunc.const(0, self.prime)
        for c in reversed(self.coeffs):
            acc = acc * f + c
        return acc

    def has_constant_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def to_diffpoly(self, nvars: int) -> DiffPoly:
        pad = (0,) * (nvars - 1)
        return DiffPoly(nvars, self.prime, [((k,) + pad, c) for k, c in enumerate(self.coeffs)])

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data, p: int) -> "UniPoly":
        if isinstance(data, str):
            return DiffPoly.from_json(data, p).to_unipoly()
        return cls([RatFunc.from_json(c, p) for c in data], p)


def divide_univariate(Phi: UniPoly, B: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Long division ``Phi = Phi1*B + Phi2`` with ``deg Phi2 < deg B``."""
    if B.is_zero():
        raise ZeroDivisor("division by the zero polynomial")
    p = Phi.prime
    rem = list(Phi.coeffs)
    q = B.degree
    quot = [RatFunc.const(0, p)] * max(0, len(rem) - q)
    inv = B.lead.inverse()
    for k in range(len(rem) - 1, q - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        c = c * inv
        quot[k - q] = c
        for j, y in enumerate(B.coeffs):
            rem[k - q + j] = rem[k - q + j] - c * y
    return UniPoly(quot, p), UniPoly(rem[:q], p)


# -- evaluation --------------------------------------------------------------

def _check_arity(P: DiffPoly, ops: Sequence[OperatorSpec]):
    if P.nvars != len(ops) + 1:
        raise ArityMismatch(f"polynomial has {P.nvars} variables but {len(ops)} operators given")


def eval_at(P: DiffPoly, values: Sequence[RatFunc]) -> RatFunc:
    """Substitute explicit rational functions for ``X_0..X_n``."""
    if len(values) != P.nvars:
        raise ArityMismatch(f"{P.nvars} variables, {len(values)} values")
    powers: dict[tuple[int, int], RatFunc] = {}

    def pw(k, e):
        if (k, e) not in powers:
            powers[k, e] = values[k] ** e
        return powers[k, e]

    acc = RatFunc.const(0, P.prime)
    for exp, c in P.terms:
        term = c
        for k, e in enumerate(exp):
            if e:
                term = term * pw(k, e)
        acc = acc + term
    return acc


def eval_diffpoly(P: DiffPoly, f: RatFunc, ops: Sequence[OperatorSpec]) -> RatFunc:
    _check_arity(P, ops)
    return eval_at(P, operands(f, ops))


def substitute_shift_target(
    P: DiffPoly, a: RatFunc, ops: Sequence[OperatorSpec]
) -> tuple[DiffPoly, RatFunc]:
    """Expand ``P(g + a, g_1 + a_1, ...)`` and split off the degree-zero part.

    Every operator is linear, so the k-th operand of ``g + a`` is
    ``g_k + a_k``.  Returns ``(Psi, Pconst)`` where every term of ``Psi`` has
    positive degree in the ``g`` variables and ``Pconst == P(a, a_1, ...)``.
    """
    _check_arity(P, ops)
    n = P.nvars
    shifted = [
        DiffPoly.variable(k, n, P.prime) + DiffPoly.constant(ak, n, P.prime)
        for k, ak in enumerate(operands(a, ops))
    ]
    total = DiffPoly(n, P.prime)
    for exp, c in P.terms:
        term = DiffPoly.constant(c, n, P.prime)
        for k, e in enumerate(exp):
            if e:
                term = term * shifted[k] ** e
        total = total + term
    psi = DiffPoly(n, P.prime, [(e, c) for e, c in total.terms if any(e)])
    return psi, total.constant_term()


def clunie_split_eval(
    f: RatFunc, B: UniPoly, Omega: DiffPoly, Phi: DiffPoly, ops: Sequence[OperatorSpec]
) -> RatFunc:
    """Residual ``B(f)*Omega(f, f_1, ...) - Phi(f, f_1, ...)``."""
    _check_arity(Omega, ops)
    _check_arity(Phi, ops)
    vals = operands(f, ops)
    return B(f) * eval_at(Omega, vals) - eval_at(Phi, vals)
