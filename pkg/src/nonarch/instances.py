"""Equation instances and their JSON wire format.

Functional-equation instance (the verify commands' contract)::

    {"prime": 5, "f": <ratfunc>, "ops": [{"kind", "a", "b", "order"}, ...],
     "B": [<ratfunc>, ...], "Omega": [{"coeff": <ratfunc>, "exp": [...]}, ...],
     "Phi": [...]}

A Mokhon'ko instance replaces ``B``/``Phi`` by a target ``"a"``; a degree
instance carries ``"Phi"`` and ``"B"`` as scalar coefficient lists.  Any
rational function or polynomial field may also be given as expression text.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .algebra import DiffPoly, OperatorSpec, UniPoly
from .ratfunc import RatFunc
from .scalar import BOTTOM, Prime, log_add_bound


def _ops_json(ops):
    return [op.to_json() for op in ops]


def _load_ops(data):
    return tuple(OperatorSpec.from_json(o) for o in data)


@dataclass(frozen=True)
class ClunieInstance:
    """``B(f) * Omega(f, f_1, ..., f_n) = Phi(f, f_1, ..., f_n)``."""

    prime: int
    f: RatFunc
    ops: tuple[OperatorSpec, ...]
    B: UniPoly
    Omega: DiffPoly
    Phi: DiffPoly
    id: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "prime": self.prime,
            "f": self.f.to_json(),
            "ops": _ops_json(self.ops),
            "B": self.B.to_json(),
            "Omega": self.Omega.to_json(),
            "Phi": self.Phi.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClunieInstance":
        p = Prime(data["prime"])
        ops = _load_ops(data.get("ops", []))
        n = len(ops) + 1
        return cls(
            p,
            RatFunc.from_json(data["f"], p),
            ops,
            UniPoly.from_json(data["B"], p),
            DiffPoly.from_json(data["Omega"], p, n),
            DiffPoly.from_json(data["Phi"], p, n),
            str(data.get("id", "")),
        )


@dataclass(frozen=True)
class MokhonkoInstance:
    """``P(f, f_1, ..., f_n) = 0`` together with a target ``a``."""

    prime: int
    f: RatFunc
    ops: tuple[OperatorSpec, ...]
    P: DiffPoly
    a: RatFunc
    id: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "prime": self.prime,
            "f": self.f.to_json(),
            "ops": _ops_json(self.ops),
            "Omega": self.P.to_json(),
            "a": self.a.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "MokhonkoInstance":
        p = Prime(data["prime"])
        ops = _load_ops(data.get("ops", []))
        poly = data["Omega"] if "Omega" in data else data["P"]
        return cls(
            p,
            RatFunc.from_json(data["f"], p),
            ops,
            DiffPoly.from_json(poly, p, len(ops) + 1),
            RatFunc.from_json(data["a"], p),
            str(data.get("id", "")),
        )


@dataclass(frozen=True)
class DegreeInstance:
    """A rational function ``f`` and a rational map ``Phi/B`` with scalar coefficients."""

    prime: int
    f: RatFunc
    Phi: UniPoly
    B: UniPoly
    id: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "prime": self.prime,
            "f": self.f.to_json(),
            "Phi": self.Phi.to_json(),
            "B": self.B.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DegreeInstance":
        p = Prime(data["prime"])
        return cls(
            p,
            RatFunc.from_json(data["f"], p),
            UniPoly.from_json(data["Phi"], p),
            UniPoly.from_json(data["B"], p),
            str(data.get("id", "")),
        )


_KINDS = {"clunie": ClunieInstance, "mokhonko": MokhonkoInstance, "degree": DegreeInstance}


def dumps(instance) -> str:
    return json.dumps(instance.to_json(), separators=(",", ":"))


def load_instance(data: dict, kind: str | None = None):
    """Pick the instance type from ``kind`` or, failing that, from the keys."""
    if kind is None:
        if "a" in data:
            kind = "mokhonko"
        elif "Omega" in data:
            kind = "clunie"
        else:
            kind = "degree"
    return _KINDS[kind].from_json(data)


def load_instances(text: str, kind: str | None = None) -> list:
    """A single JSON document, a JSON list, or JSON lines."""
    text = text.strip()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = [json.loads(line) for line in text.splitlines() if line.strip()]
    if isinstance(doc, dict):
        doc = [doc]
    return [load_instance(d, kind) for d in doc]


def family_window(ops: Sequence[OperatorSpec], p: int):
    """Largest ``lam(b_i)`` over the operator family (BOTTOM if none apply)."""
    w = BOTTOM
    for op in ops:
        w = log_add_bound(w, op.window(p))
    return w
