"""A small expression language for polynomials, rational functions and
difference polynomials.

Grammar (whitespace insensitive)::

    expr   := ('+'|'-')? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' uint)?
    base   := uint | 'z' | 'X' uint | '(' expr ')'

Rationals are written as integer quotients (``3/4``); exponents are
nonnegative integer literals.  Errors carry the byte offset of the offending
token and the set of tokens that would have been accepted there.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import DiffPoly
from .errors import ContextViolation, DivisionByZeroFunction, ExprSyntaxError
from .ratfunc import RatFunc
from .series import ValuedPoly

# -- tokens ------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, Z, X, OP, LPAREN, RPAREN, EOF
    text: str
    offset: int  # byte offset into the UTF-8 source


def tokenize(text: str) -> list[Token]:
    toks = []
    i = 0
    byte = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            byte += len(ch.encode())
            continue
        start = byte
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", text[i:j], start))
        elif ch == "z":
            j = i + 1
            toks.append(Token("Z", ch, start))
        elif ch == "X":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ExprSyntaxError("formal variable needs an index", start, {"X<uint>"})
            toks.append(Token("X", text[i:j], start))
        elif ch in "+-*/^":
            j = i + 1
            toks.append(Token("OP", ch, start))
        elif ch == "(":
            j = i + 1
            toks.append(Token("LPAREN", ch, start))
        elif ch == ")":
            j = i + 1
            toks.append(Token("RPAREN", ch, start))
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", start)
        byte += len(text[i:j].encode())
        i = j
    toks.append(Token("EOF", "", byte))
    return toks


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int
    offset: int


@dataclass(frozen=True)
class Var:
    offset: int


@dataclass(frozen=True)
class Formal:
    index: int
    offset: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    offset: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    offset: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    offset: int


Node = Union[Num, Var, Formal, Neg, BinOp, Pow]

_BASE_START = frozenset({"integer", "z", "X<uint>", "("})


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ExprSyntaxError(f"unexpected {what}", t.offset, expected)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "EOF":
            self.error({"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self) -> Node:
        t = self.tok
        if t.kind == "OP" and t.text in "+-":
            self.advance()
            node = self.term()
            if t.text == "-":
                node = Neg(node, t.offset)
        else:
            node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.offset)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            op = self.advance()
            node = BinOp(op.text, node, self.factor(), op.offset)
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.tok.kind == "OP" and self.tok.text == "^":
            caret = self.advance()
            if self.tok.kind != "INT":
                self.error({"nonnegative integer exponent"})
            node = Pow(node, int(self.advance().text), caret.offset)
        return node

    def base(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), t.offset)
        if t.kind == "Z":
            self.advance()
            return Var(t.offset)
        if t.kind == "X":
            self.advance()
            return Formal(int(t.text[1:]), t.offset)
        if t.kind == "LPAREN":
            self.advance()
            node = self.expr()
            if self.tok.kind != "RPAREN":
                self.error({")", "+", "-", "*", "/", "^"})
            self.advance()
            return node
        self.error(_BASE_START)


def parse(text: str) -> Node:
    return _Parser(text).parse()


def max_formal_index(node: Node) -> int:
    if isinstance(node, Formal):
        return node.index
    if isinstance(node, Neg):
        return max_formal_index(node.operand)
    if isinstance(node, BinOp):
        return max(max_formal_index(node.left), max_formal_index(node.right))
    if isinstance(node, Pow):
        return max_formal_index(node.base)
    return -1


# -- elaboration -------------------------------------------------------------


def _eval(node: Node, nvars: int, p: int) -> DiffPoly:
    if isinstance(node, Num):
        return DiffPoly.constant(node.value, nvars, p)
    if isinstance(node, Var):
        return DiffPoly.constant(RatFunc.z(p), nvars, p)
    if isinstance(node, Formal):
        return DiffPoly.variable(node.index, nvars, p)
    if isinstance(node, Neg):
        return -_eval(node.operand, nvars, p)
    if isinstance(node, Pow):
        return _eval(node.base, nvars, p) ** node.exponent
    left = _eval(node.left, nvars, p)
    right = _eval(node.right, nvars, p)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if not right.depends_only_on_x0() or any(e[0] for e, _ in right.terms):
        raise ContextViolation(f"division by an expression in X at offset {node.offset}")
    divisor = right.constant_term()
    if divisor.is_zero():
        raise DivisionByZeroFunction(f"division by zero at offset {node.offset}")
    return left.scale(divisor.inverse())


def elaborate(node: Node, context: str, p: int, nvars: int | None = None):
    """Turn an AST into a ``"poly"``, ``"ratfunc"`` or ``"diffpoly"`` value."""
    top = max_formal_index(node)
    if context in ("poly", "ratfunc") and top >= 0:
        raise ContextViolation(f"formal variable X{top} is not allowed in a {context}")
    width = max(top + 1, 1)
    if nvars is not None:
        if nvars < width:
            raise ContextViolation(f"X{top} exceeds the declared {nvars} variables")
        width = nvars
    value = _eval(node, width, p)
    if context == "diffpoly":
        return value
    rf = value.constant_term()
    if context == "ratfunc":
        return rf
    if context == "poly":
        if not rf.is_polynomial():
            raise ContextViolation("expression is not a polynomial in z")
        return rf.num
    raise ValueError(f"unknown context {context!r}")


def parse_poly(text: str, p: int) -> ValuedPoly:
    return elaborate(parse(text), "poly", p)


def parse_ratfunc(text: str, p: int) -> RatFunc:
    return elaborate(parse(text), "ratfunc", p)


def parse_diffpoly(text: str, p: int, nvars: int | None = None) -> DiffPoly:
    return elaborate(parse(text), "diffpoly", p, nvars)


# -- printing ----------------------------------------------------------------


def _fmt_coeff(c: Fraction) -> str:
    c = abs(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_text(f: ValuedPoly) -> str:
    parts = []
    for k in range(f.degree, -1, -1):
        c = f[k]
        if not c:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if not mono:
            body = _fmt_coeff(c)
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def _rat_text(f: RatFunc) -> str:
    if f.den.is_constant():
        return _poly_text(f.num)
    return f"({_poly_text(f.num)})/({_poly_text(f.den)})"


def _diff_text(P: DiffPoly) -> str:
    parts = []
    for exp, c in P.terms:
        vars_ = "*".join(f"X{k}" if e == 1 else f"X{k}^{e}" for k, e in enumerate(exp) if e)
        if c.is_constant():
            v = c.num.lead
            if not vars_:
                body = _fmt_coeff(v)
            elif abs(v) == 1:
                body = vars_
            else:
                body = f"{_fmt_coeff(v)}*{vars_}"
            neg = v < 0
        else:
            body = f"({_rat_text(c)})" + (f"*{vars_}" if vars_ else "")
            neg = False
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts) if parts else "0"


def to_text(value) -> str:
    """Render a value so that parsing the text gives the same value back."""
    if isinstance(value, ValuedPoly):
        return _poly_text(value)
    if isinstance(value, RatFunc):
        return _rat_text(value)
    if isinstance(value, DiffPoly):
        return _diff_text(value)
    raise TypeError(f"cannot print {type(value).__name__}")
