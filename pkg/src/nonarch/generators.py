"""Seeded instance generators.

Every trial draws from its own ``random.Random`` keyed by
``(seed, kind, trial index)``, so an instance depends only on the config and
its index and never on execution order or parallelism.

Clunie instances are built so that the equation holds by construction: draw
``f``, the operators, ``B``, ``Omega`` and the higher part of ``Phi``, then
solve for the degree-zero coefficient
``d_0 = B(f) Omega(f, ...) - (Phi - d_0)(f, ...)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable

from .algebra import (
    AffineMap,
    DiffPoly,
    OperatorSpec,
    UniPoly,
    clunie_split_eval,
    eval_at,
    operands,
    validate_family,
)
from .checkers import shifted_pole_coincidence
from .errors import DivisionByZeroFunction, GenerationFailure, NonArchError
from .instances import ClunieInstance, DegreeInstance, MokhonkoInstance
from .nevanlinna import N_hat
from .ratfunc import RatFunc
from .series import ValuedPoly

RETRY_BUDGET = 32


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    trials: int = 10
    primes: tuple[int, ...] = (5,)
    max_degree: int = 2  # numerator/denominator degree of f
    coeff_degree: int = 1  # numerator/denominator degree of equation coefficients
    val_range: tuple[int, int] = (-3, 3)
    n: int = 1  # number of operator variables X_1..X_n
    ladder: tuple[Fraction, ...] = tuple(Fraction(k, 2) for k in range(5))
    family: str = "shift"  # shift | delta | derivative
    phi_mode: str = "general"  # general | x0
    b_mode: str = "rational"  # rational | constant | nonconstant

    def with_(self, **kw) -> "GeneratorConfig":
        return replace(self, **kw)


def trial_rng(cfg: GeneratorConfig, kind: str, index: int) -> random.Random:
    return random.Random(f"{cfg.seed}:{kind}:{index}")


class Draw:
    """Random exact objects with coefficient valuations in a bounded range."""

    def __init__(self, rng: random.Random, p: int, val_range=(-3, 3)):
        self.rng = rng
        self.p = p
        self.lo, self.hi = val_range

    def unit(self) -> Fraction:
        p, r = self.p, self.rng
        while True:
            num = r.randint(1, 2 * p + 1)
            den = r.randint(1, p + 1)
            if num % p and den % p:
                return Fraction(num, den) * r.choice((1, -1))

    def scalar(self, lo: int | None = None, hi: int | None = None) -> Fraction:
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        lam = self.rng.randint(lo, hi)
        return Fraction(self.p) ** (-lam) * self.unit()

    def poly(self, deg: int, zero_prob: float = 0.3) -> ValuedPoly:
        cs = [Fraction(0) if self.rng.random() < zero_prob else self.scalar() for _ in range(deg)]
        cs.append(self.scalar())
        return ValuedPoly(cs, self.p)

    def ratfunc(self, max_num: int, max_den: int, nonconstant: bool = False) -> RatFunc:
        while True:
            num = self.poly(self.rng.randint(0, max_num))
            den = self.poly(self.rng.randint(0, max_den))
            f = RatFunc(num, den)
            if not nonconstant or not f.is_constant():
                return f

    def window_scalar(self, below: Fraction) -> Fraction:
        """Zero or a scalar with ``lam < below``."""
        top = min(self.hi, -(-below // 1) - 1)  # largest integer < below
        if self.rng.random() < 0.15 or top < self.lo:
            return Fraction(0)
        return self.scalar(self.lo, top)

    def unit_map_op(self, kind: str, below: Fraction, order_max: int = 2) -> OperatorSpec:
        while True:
            a = Fraction(1) if self.rng.random() < 0.5 else self.unit()
            b = self.window_scalar(below)
            if a == 1 and b == 0:
                continue
            if kind == "shift":
                return OperatorSpec.shift(a, b)
            return OperatorSpec.delta(a, b, self.rng.randint(1, order_max))

    def family(self, kind: str, n: int, below: Fraction) -> tuple[OperatorSpec, ...]:
        while True:
            if kind == "derivative":
                orders = self.rng.sample(range(1, n + 2), n)
                ops = tuple(OperatorSpec.derivative(k) for k in orders)
            else:
                ops = tuple(self.unit_map_op(kind, below) for _ in range(n))
            try:
                validate_family(ops, self.p)
            except (ValueError, NonArchError):
                continue
            return ops

    def exponent(self, nvars: int, total: int) -> tuple[int, ...]:
        exp = [0] * nvars
        for _ in range(total):
            exp[self.rng.randrange(nvars)] += 1
        return tuple(exp)

    def coefficient(self, deg: int, constant: bool = False) -> RatFunc:
        if constant or self.rng.random() < 0.4:
            return RatFunc.const(self.scalar(), self.p)
        return self.ratfunc(deg, deg)


def _retry(build: Callable[[int], object], what: str):
    last = None
    for attempt in range(RETRY_BUDGET):
        try:
            out = build(attempt)
        except (DivisionByZeroFunction, ZeroDivisionError) as exc:
            last = exc
            continue
        if out is not None:
            return out
    raise GenerationFailure(f"{what}: retry budget of {RETRY_BUDGET} exhausted ({last})")


def _ladder_floor(cfg: GeneratorConfig) -> Fraction:
    return min(cfg.ladder)


# -- function-level suites ---------------------------------------------------

def gen_jensen(cfg: GeneratorConfig, index: int) -> RatFunc:
    rng = trial_rng(cfg, "jensen", index)
    d = Draw(rng, rng.choice(cfg.primes), cfg.val_range)
    return d.ratfunc(cfg.max_degree, cfg.max_degree)


def gen_factored(cfg: GeneratorConfig, index: int) -> tuple[ValuedPoly, int, list[Fraction]]:
    """Polynomial ``c z^m0 prod (z - w_k)`` and its expected zero data."""
    rng = trial_rng(cfg, "newton", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)
    k = rng.randint(1, cfg.max_degree)
    lams = [rng.randint(*cfg.val_range) for _ in range(k)]
    roots = [Fraction(p) ** (-lam) * d.unit() for lam in lams]
    origin = rng.randint(0, 2)
    f = ValuedPoly.from_roots(roots, p, lead=d.scalar(), origin=origin)
    return f, origin, sorted(Fraction(lam) for lam in lams)


def gen_lld_entire(cfg: GeneratorConfig, index: int):
    rng = trial_rng(cfg, "lld-entire", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)
    f = d.poly(rng.randint(1, cfg.max_degree))
    lam_a = -rng.randint(0, 2)
    a = Fraction(p) ** (-lam_a) * d.unit()
    b = d.window_scalar(_ladder_floor(cfg) + lam_a)
    return f, AffineMap(a, b), rng.randint(1, 3)


def gen_lld_mero(cfg: GeneratorConfig, index: int):
    rng = trial_rng(cfg, f"lld-mero-{cfg.family}", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)
    f = d.ratfunc(cfg.max_degree, cfg.max_degree)
    op = d.unit_map_op("delta" if cfg.family == "delta" else "shift", _ladder_floor(cfg))
    return f, op.L, rng.randint(1, 3)


# -- equation instances ------------------------------------------------------

def gen_clunie(cfg: GeneratorConfig, index: int) -> ClunieInstance:
    rng = trial_rng(cfg, f"clunie-{cfg.family}-{cfg.phi_mode}-{cfg.b_mode}", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)
    n = cfg.n
    nv = n + 1
    floor = _ladder_floor(cfg)
    constant_b = cfg.b_mode == "constant"

    def build(attempt):
        f = d.ratfunc(cfg.max_degree, cfg.max_degree, nonconstant=True)
        ops = d.family(cfg.family, n, floor)
        q = rng.randint(0 if cfg.phi_mode == "general" else 1, 2)
        bs = []
        for k in range(q + 1):
            if k < q and rng.random() < 0.3:
                bs.append(RatFunc.const(0, p))
            else:
                bs.append(d.coefficient(cfg.coeff_degree, constant_b))
        B = UniPoly(bs, p)
        if cfg.b_mode == "nonconstant" and B.has_constant_coefficients():
            k = rng.randint(0, q)
            bs[k] = RatFunc.from_poly(d.poly(rng.randint(1, cfg.coeff_degree + 1), 0.0))
            B = UniPoly(bs, p)
        omega = DiffPoly(nv, p, [
            (d.exponent(nv, rng.randint(1, 2)), d.coefficient(cfg.coeff_degree))
            for _ in range(rng.randint(1, 3))
        ])
        if omega.is_zero():
            return None
        higher = []
        for _ in range(rng.randint(0, 2) if q >= 1 else 0):
            tot = rng.randint(1, q)
            exp = (tot,) + (0,) * n if cfg.phi_mode == "x0" else d.exponent(nv, tot)
            higher.append((exp, d.coefficient(cfg.coeff_degree)))
        rest = DiffPoly(nv, p, higher)
        vals = operands(f, ops)
        Bf = B(f)
        if Bf.is_zero():
            return None
        d0 = Bf * eval_at(omega, vals) - eval_at(rest, vals)
        phi = rest + DiffPoly.constant(d0, nv, p)
        if phi.is_zero():
            return None
        inst = ClunieInstance(p, f, ops, B, omega, phi, f"clunie-{index}")
        if not clunie_split_eval(f, B, omega, phi, ops).is_zero():
            return None
        if cfg.phi_mode == "x0" and constant_b and shifted_pole_coincidence(inst):
            return None
        if cfg.b_mode == "nonconstant":
            for s in cfg.ladder:
                if sum((N_hat(b.inverse(), s) for b in bs if not b.is_zero()), Fraction(0)) <= 0:
                    return None
        return inst

    return _retry(build, "Clunie instance")


def gen_degree(cfg: GeneratorConfig, index: int) -> DegreeInstance:
    rng = trial_rng(cfg, "degree", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)

    def build(attempt):
        f = d.ratfunc(cfg.max_degree, cfg.max_degree, nonconstant=True)
        phi = d.poly(rng.randint(0, 3))
        b = d.poly(rng.randint(0, 3))
        if phi.is_constant() and b.is_constant():
            return None
        to_uni = lambda v: UniPoly([RatFunc.const(c, p) for c in v.coeffs], p)  # noqa: E731
        if to_uni(b)(f).is_zero():
            return None
        return DegreeInstance(p, f, to_uni(phi), to_uni(b), f"degree-{index}")

    return _retry(build, "degree instance")


def gen_mokhonko(cfg: GeneratorConfig, index: int) -> MokhonkoInstance:
    rng = trial_rng(cfg, f"mokhonko-{cfg.family}", index)
    p = rng.choice(cfg.primes)
    d = Draw(rng, p, cfg.val_range)
    n = cfg.n
    nv = n + 1

    def build(attempt):
        f = d.ratfunc(cfg.max_degree, cfg.max_degree, nonconstant=True)
        ops = d.family(cfg.family, n, _ladder_floor(cfg))
        Q = DiffPoly(nv, p, [
            (d.exponent(nv, rng.randint(1, 2)), d.coefficient(cfg.coeff_degree))
            for _ in range(rng.randint(1, 3))
        ])
        if Q.is_zero():
            return None
        P = Q - eval_at(Q, operands(f, ops))
        if rng.random() < 0.5:
            a = RatFunc.const(d.scalar(), p)
        else:
            a = d.ratfunc(cfg.coeff_degree, cfg.coeff_degree)
        if a == f or eval_at(P, operands(a, ops)).is_zero():
            return None
        return MokhonkoInstance(p, f, ops, P, a, f"mokhonko-{cfg.family}-{index}")

    return _retry(build, "Mokhon'ko instance")


def gen_corrupted_mokhonko(cfg: GeneratorConfig, index: int) -> tuple[MokhonkoInstance, str]:
    """A broken instance and the name of the guard that must reject it."""
    inst = gen_mokhonko(cfg, index)
    if index % 2 == 0:
        return replace(inst, a=inst.f, id=f"corrupt-target-{index}"), "TargetIsSolution"
    z = RatFunc.z(inst.prime)
    for bump in (RatFunc.const(1, inst.prime), z, z * z + 1):
        f2 = inst.f + bump
        if not eval_at(inst.P, operands(f2, inst.ops)).is_zero():
            return replace(inst, f=f2, id=f"corrupt-solution-{index}"), "NotASolution"
    raise GenerationFailure("could not corrupt the instance")
