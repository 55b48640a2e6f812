"""Scalar arithmetic expressions used throughout problem configuration.

Coefficients, boundary data, nonlinearities and declared bounds are all
written as text in a small expression language:

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative
    atom    := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)`` while
``2^-3`` is ``2^(1/8)``'s inverse as expected.  Supported functions:
exp, log, sqrt, abs (one argument) and min, max (two arguments).

Evaluation is strict about domains: division by zero, log of a
non-positive value, sqrt of a negative value, fractional powers of
negative bases and any overflow to a non-finite value raise
:class:`ExprEvalError` instead of silently producing inf/nan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Union

from .errors import ExprEvalError, ExprSyntaxError

__all__ = [
    "Expr", "Lit", "Var", "Neg", "BinOp", "Call",
    "parse", "evaluate", "free_vars", "to_text", "substitute", "FUNCTIONS",
]


@dataclass(frozen=True)
class Lit:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]


Expr = Union[Lit, Var, Neg, BinOp, Call]

# function name -> arity
FUNCTIONS = {"exp": 1, "log": 1, "sqrt": 1, "abs": 1, "min": 2, "max": 2}

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_UNARY = 3
_PREC_POW = 4
_BINARY_PREC = {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL, "^": _PREC_POW}


# ---------------------------------------------------------------------------
# tokenizer

class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
            # exponent part only if it is unambiguously numeric
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    k += 1
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            tokens.append(_Token("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i))
            i = j
            continue
        if c in "+-*/^(),":
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i, "digit, name or operator")
    tokens.append(_Token("end", "", n))
    return tokens


# ---------------------------------------------------------------------------
# parser (precedence climbing)

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ExprSyntaxError(f"unexpected {tok.kind!r}", tok.pos, expected)
        return self.advance()

    def parse(self) -> Expr:
        e = self.parse_binary(0)
        tok = self.peek()
        if tok.kind != "end":
            raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.pos, "end of expression")
        return e

    def parse_binary(self, min_prec: int) -> Expr:
        lhs = self.parse_prefix()
        while True:
            tok = self.peek()
            prec = _BINARY_PREC.get(tok.kind)
            if prec is None or prec < min_prec:
                return lhs
            self.advance()
            if tok.kind == "^":
                rhs = self.parse_binary(prec)  # right-associative
            else:
                rhs = self.parse_binary(prec + 1)
            lhs = BinOp(tok.kind, lhs, rhs)

    def parse_prefix(self) -> Expr:
        tok = self.peek()
        if tok.kind == "-":
            self.advance()
            # operand binds at power level: -x^2 == -(x^2), -x*y == (-x)*y
            return Neg(self.parse_binary(_PREC_POW))
        return self.parse_atom()

    def parse_atom(self) -> Expr:
        tok = self.advance()
        if tok.kind == "num":
            return Lit(float(tok.text))
        if tok.kind == "name":
            if self.peek().kind == "(":
                if tok.text not in FUNCTIONS:
                    raise ExprSyntaxError(f"unknown function {tok.text!r}", tok.pos,
                                          "one of " + ", ".join(sorted(FUNCTIONS)))
                self.advance()
                args = [self.parse_binary(0)]
                while self.peek().kind == ",":
                    self.advance()
                    args.append(self.parse_binary(0))
                self.expect(")", "')'")
                arity = FUNCTIONS[tok.text]
                if len(args) != arity:
                    raise ExprSyntaxError(
                        f"{tok.text} takes {arity} argument(s), got {len(args)}", tok.pos, "')'")
                return Call(tok.text, tuple(args))
            return Var(tok.text)
        if tok.kind == "(":
            e = self.parse_binary(0)
            self.expect(")", "')'")
            return e
        raise ExprSyntaxError(f"unexpected {tok.kind!r}", tok.pos, "number, name or '('")


def parse(text: str) -> Expr:
    """Parse expression text into an AST."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# evaluation

def _check_finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise ExprEvalError(f"overflow in {what}")
    return value


def _power(a: float, b: float) -> float:
    if a < 0.0 and b != math.floor(b):
        raise ExprEvalError(f"fractional power of negative base ({a!r} ^ {b!r})")
    if a == 0.0 and b < 0.0:
        raise ExprEvalError(f"zero raised to negative power ({b!r})")
    try:
        return math.pow(a, b)
    except OverflowError:
        raise ExprEvalError(f"overflow in power ({a!r} ^ {b!r})") from None


def evaluate(e: Expr, env: Mapping[str, float]) -> float:
    """Evaluate ``e`` with every free variable bound in ``env``."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, Var):
        try:
            return float(env[e.name])
        except KeyError:
            raise ExprEvalError(f"unbound variable {e.name!r}") from None
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, BinOp):
        a = evaluate(e.left, env)
        b = evaluate(e.right, env)
        if e.op == "+":
            return _check_finite(a + b, "'+'")
        if e.op == "-":
            return _check_finite(a - b, "'-'")
        if e.op == "*":
            return _check_finite(a * b, "'*'")
        if e.op == "/":
            if b == 0.0:
                raise ExprEvalError("division by zero")
            return _check_finite(a / b, "'/'")
        return _power(a, b)
    if isinstance(e, Call):
        args = [evaluate(a, env) for a in e.args]
        f = e.func
        if f == "exp":
            try:
                return math.exp(args[0])
            except OverflowError:
                raise ExprEvalError(f"overflow in exp({args[0]!r})") from None
        if f == "log":
            if args[0] <= 0.0:
                raise ExprEvalError(f"log of non-positive value ({args[0]!r})")
            return math.log(args[0])
        if f == "sqrt":
            if args[0] < 0.0:
                raise ExprEvalError(f"sqrt of negative value ({args[0]!r})")
            return math.sqrt(args[0])
        if f == "abs":
            return abs(args[0])
        if f == "min":
            return min(args)
        return max(args)
    raise TypeError(f"not an expression node: {e!r}")


def free_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Lit):
        return frozenset()
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Neg):
        return free_vars(e.operand)
    if isinstance(e, BinOp):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Call):
        out: frozenset[str] = frozenset()
        for a in e.args:
            out |= free_vars(a)
        return out
    raise TypeError(f"not an expression node: {e!r}")


def substitute(e: Expr, bindings: Mapping[str, float]) -> Expr:
    """Replace named variables by literal values, leaving the rest intact."""
    if isinstance(e, Lit):
        return e
    if isinstance(e, Var):
        if e.name in bindings:
            return Lit(float(bindings[e.name]))
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.operand, bindings))
    if isinstance(e, BinOp):
        return BinOp(e.op, substitute(e.left, bindings), substitute(e.right, bindings))
    if isinstance(e, Call):
        return Call(e.func, tuple(substitute(a, bindings) for a in e.args))
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# printing (parse(to_text(e)) is structurally identical to e)

def _node_prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _BINARY_PREC[e.op]
    if isinstance(e, Neg):
        return _PREC_UNARY
    return 100  # atoms never need wrapping


def _fmt(e: Expr) -> str:
    if isinstance(e, Lit):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = _fmt(e.operand)
        if _node_prec(e.operand) < _PREC_UNARY:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        p = _BINARY_PREC[e.op]
        left = _fmt(e.left)
        right = _fmt(e.right)
        lp = _node_prec(e.left)
        rp = _node_prec(e.right)
        if lp < p or (lp == p and e.op == "^"):
            left = f"({left})"
        if rp < p or (rp == p and e.op != "^"):
            right = f"({right})"
        return f"{left}{e.op}{right}"
    if isinstance(e, Call):
        return f"{e.func}({', '.join(_fmt(a) for a in e.args)})"
    raise TypeError(f"not an expression node: {e!r}")


def to_text(e: Expr) -> str:
    """Render an AST back to expression text; re-parsing reproduces the AST."""
    return _fmt(e)
