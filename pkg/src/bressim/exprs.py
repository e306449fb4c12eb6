"""Arithmetic expression language for initial data and source terms.

Config files state fields as formulas in the single spatial variable x,
e.g. ``sin(x)`` or ``-3/16*x^2 + 3/4*x``.  The grammar is deliberately
frozen to what those inputs need:

    additive       := multiplicative (('+'|'-') multiplicative)*
    multiplicative := unary (('*'|'/') unary)*
    unary          := '-' unary | power
    power          := atom ('^' INTEGER)?
    atom           := NUMBER | 'x' | ('sin'|'cos') '(' additive ')' | '(' additive ')'

Binary operators associate left-to-right.  ``^`` takes a nonnegative
integer literal exponent only, and division by a literal zero is rejected
at parse time, so evaluation is total for finite x (in the IEEE sense).
Parse trees are immutable; evaluation is re-entrant and accepts scalars
or numpy arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DivisionByZeroLiteral, ExprSyntaxError

__all__ = ["Expr", "Num", "Var", "Neg", "Bin", "Pow", "Call", "parse", "evaluate", "to_str", "is_zero"]


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int  # >= 0


@dataclass(frozen=True)
class Call:
    func: str  # sin | cos
    arg: "Expr"


Expr = Union[Num, Var, Neg, Bin, Pow, Call]

_FUNCS = {"sin": np.sin, "cos": np.cos}


# --- lexer -----------------------------------------------------------------

_OPS = set("+-*/^()")


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind  # 'num' | 'ident' | op char | 'eof'
        self.text = text
        self.pos = pos


def _byte_offset(src: str, pos: int) -> int:
    return len(src[:pos].encode("utf-8"))


def _lex(src: str) -> list[_Token]:
    toks = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPS:
            toks.append(_Token(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and src[i + 1].isdigit()):
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == ".":
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            toks.append(_Token("num", src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("ident", src[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(_byte_offset(src, i), "a number, 'x', function, or operator", c)
    toks.append(_Token("eof", "", n))
    return toks


# --- recursive-descent parser ----------------------------------------------

class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _lex(src)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def next(self) -> _Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected: str, tok: _Token | None = None):
        tok = tok or self.peek()
        found = tok.text if tok.kind != "eof" else "end of input"
        raise ExprSyntaxError(_byte_offset(self.src, tok.pos), expected, found)

    def parse(self) -> Expr:
        e = self.additive()
        if self.peek().kind != "eof":
            self.fail("end of expression or an operator")
        return e

    def additive(self) -> Expr:
        e = self.multiplicative()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            e = Bin(op, e, self.multiplicative())
        return e

    def multiplicative(self) -> Expr:
        e = self.unary()
        while self.peek().kind in ("*", "/"):
            tok = self.next()
            rhs = self.unary()
            if tok.kind == "/" and _is_literal_zero(rhs):
                raise DivisionByZeroLiteral(_byte_offset(self.src, tok.pos))
            e = Bin(tok.kind, e, rhs)
        return e

    def unary(self) -> Expr:
        if self.peek().kind == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "^":
            self.next()
            tok = self.peek()
            if tok.kind != "num":
                self.fail("a nonnegative integer exponent")
            val = float(tok.text)
            if val != int(val):
                self.fail("a nonnegative integer exponent", tok)
            self.next()
            return Pow(base, int(val))
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.next()
            if tok.text == "x":
                return Var()
            if tok.text in _FUNCS:
                if self.peek().kind != "(":
                    self.fail("'(' after function name")
                self.next()
                arg = self.additive()
                if self.peek().kind != ")":
                    self.fail("')'")
                self.next()
                return Call(tok.text, arg)
            self.fail("'x', 'sin', or 'cos'", tok)
        if tok.kind == "(":
            self.next()
            e = self.additive()
            if self.peek().kind != ")":
                self.fail("')'")
            self.next()
            return e
        self.fail("a number, 'x', function call, or '('")
        raise AssertionError("unreachable")


def _is_literal_zero(e: Expr) -> bool:
    if isinstance(e, Num):
        return e.value == 0.0
    if isinstance(e, Neg):
        return _is_literal_zero(e.arg)
    return False


def parse(src: str) -> Expr:
    """Parse ``src`` into an expression tree.

    Raises ExprSyntaxError (with byte offset) or DivisionByZeroLiteral.
    """
    return _Parser(src).parse()


# --- evaluation -------------------------------------------------------------

def evaluate(e: Expr, x):
    """Evaluate ``e`` at x (float or ndarray) with standard semantics."""
    if isinstance(e, Num):
        return e.value if np.isscalar(x) else np.full_like(np.asarray(x, dtype=float), e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -evaluate(e.arg, x)
    if isinstance(e, Bin):
        a = evaluate(e.left, x)
        b = evaluate(e.right, x)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.divide(a, b)  # IEEE semantics even for python-float operands
    if isinstance(e, Pow):
        return evaluate(e.base, x) ** e.exponent
    if isinstance(e, Call):
        return _FUNCS[e.func](evaluate(e.arg, x))
    raise TypeError(f"not an expression node: {e!r}")


def is_zero(e: Expr) -> bool:
    """True for the literal zero expression (possibly under unary minus)."""
    return _is_literal_zero(e)


# --- pretty printer ----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "pow": 4, "atom": 5}


def _prec(e: Expr) -> int:
    if isinstance(e, Bin):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    if isinstance(e, Pow):
        return _PREC["pow"]
    return _PREC["atom"]


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def to_str(e: Expr) -> str:
    """Render with minimal parentheses; reparsing gives an identical tree."""
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Neg):
        inner = to_str(e.arg)
        if _prec(e.arg) < _PREC["neg"]:
            inner = f"({inner})"
        return "-" + inner
    if isinstance(e, Bin):
        lhs = to_str(e.left)
        if _prec(e.left) < _PREC[e.op]:
            lhs = f"({lhs})"
        rhs = to_str(e.right)
        if _prec(e.right) <= _PREC[e.op]:
            rhs = f"({rhs})"
        return f"{lhs}{e.op}{rhs}"
    if isinstance(e, Pow):
        base = to_str(e.base)
        atomic = isinstance(e.base, (Var, Call)) or (isinstance(e.base, Num) and e.base.value >= 0)
        if not atomic:
            base = f"({base})"
        return f"{base}^{e.exponent}"
    if isinstance(e, Call):
        return f"{e.func}({to_str(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")
