"""Scalar expressions in the coordinates X1..X4 with exact 2-jets.

Expressions are parsed into a small immutable AST and evaluated by forward
propagation of (value, gradient, Hessian) triples, so first and second
derivatives are exact up to rounding.

Grammar::

    expr   := term (("+"|"-") term)* ;
    term   := factor (("*"|"/") factor)* ;
    factor := "-" factor | power ;
    power  := atom ("^" number)? ;
    atom   := number | var | func "(" expr ")" | "(" expr ")" ;
    var    := "X1"|"X2"|"X3"|"X4" ;
    func   := "sin"|"cos"|"exp"|"log"|"sqrt" ;
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Const", "Var", "Unary", "Binary", "ExprNode", "Jet2",
    "ParseError", "UnknownIdentifier", "NonConstantExponent", "DomainError",
    "parse", "to_text", "evaluate", "eval_jet2",
]

UNARY_FUNCS = ("neg", "sin", "cos", "exp", "log", "sqrt")
BINARY_OPS = ("add", "sub", "mul", "div", "pow")


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the source text."""

    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte offset {self.offset}")


class UnknownIdentifier(ParseError):
    pass


class NonConstantExponent(ParseError):
    pass


class DomainError(ArithmeticError):
    """Raised when a subexpression is evaluated outside its domain."""

    def __init__(self, message: str, node: "ExprNode"):
        self.node = node
        super().__init__(f"{message}: {to_text(node)}")


@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    index: int  # 1..4

    def __post_init__(self):
        if self.index not in (1, 2, 3, 4):
            raise ValueError(f"variable index must be in 1..4, got {self.index}")


@dataclass(frozen=True)
class Unary:
    op: str
    arg: "ExprNode"

    def __post_init__(self):
        if self.op not in UNARY_FUNCS:
            raise ValueError(f"unknown unary op {self.op!r}")


@dataclass(frozen=True)
class Binary:
    op: str
    left: "ExprNode"
    right: "ExprNode"

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary op {self.op!r}")
        if self.op == "pow" and not isinstance(self.right, Const):
            raise ValueError("pow exponent must be a constant")


ExprNode = Union[Const, Var, Unary, Binary]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.lastgroup is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def error(self, message, cls=ParseError, pos=None):
        raise cls(message, self.text, self.tok[2] if pos is None else pos)

    def expect(self, value):
        kind, val, pos = self.tok
        if val != value or kind != "op":
            shown = repr(val) if kind != "end" else "end of input"
            self.error(f"expected {value!r}, found {shown}")
        self.advance()

    def parse(self) -> ExprNode:
        node = self.expr()
        if self.tok[0] != "end":
            self.error(f"unexpected token {self.tok[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = "add" if self.advance()[1] == "+" else "sub"
            node = Binary(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = "mul" if self.advance()[1] == "*" else "div"
            node = Binary(op, node, self.factor())
        return node

    def factor(self):
        if self.tok[0] == "op" and self.tok[1] == "-":
            self.advance()
            return Unary("neg", self.factor())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok[0] == "op" and self.tok[1] == "^":
            self.advance()
            kind, val, pos = self.tok
            if kind != "number":
                self.error("exponent must be a numeric literal", NonConstantExponent)
            self.advance()
            return Binary("pow", base, Const(float(val)))
        return base

    def atom(self):
        kind, val, pos = self.tok
        if kind == "number":
            self.advance()
            return Const(float(val))
        if kind == "name":
            self.advance()
            if val in ("X1", "X2", "X3", "X4"):
                return Var(int(val[1]))
            if val in UNARY_FUNCS and val != "neg":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Unary(val, arg)
            self.error(f"unknown identifier {val!r} (variables are X1..X4)",
                       UnknownIdentifier, pos)
        if kind == "op" and val == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        shown = repr(val) if kind != "end" else "end of input"
        self.error(f"unexpected {shown}")


def parse(text: str) -> ExprNode:
    """Parse ``text`` into an expression tree.

    >>> parse("3 + 0.1*sin(X1+X3)")
    Binary(op='add', left=Const(value=3.0), right=Binary(op='mul', left=Const(value=0.1), right=Unary(op='sin', arg=Binary(op='add', left=Var(index=1), right=Var(index=3)))))
    """
    return _Parser(text).parse()


def to_text(e: ExprNode) -> str:
    """Canonical, fully parenthesized serialization that ``parse`` reads back."""
    if isinstance(e, Const):
        if not math.isfinite(e.value):
            raise ValueError("non-finite constants cannot be serialized")
        return repr(e.value) if e.value >= 0 else f"(-{-e.value!r})"
    if isinstance(e, Var):
        return f"X{e.index}"
    if isinstance(e, Unary):
        if e.op == "neg":
            return f"(-{to_text(e.arg)})"
        return f"{e.op}({to_text(e.arg)})"
    if e.op == "pow":
        n = e.right.value
        if n < 0:
            return f"(1.0/(({to_text(e.left)})^{-n!r}))"
        return f"(({to_text(e.left)})^{n!r})"
    sym = {"add": "+", "sub": "-", "mul": "*", "div": "/"}[e.op]
    return f"({to_text(e.left)}{sym}{to_text(e.right)})"


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Jet2:
    """Value, gradient and Hessian of a scalar function at a point."""
    value: float
    grad: np.ndarray
    hess: np.ndarray


def evaluate(e: ExprNode, p) -> float:
    """Plain value of ``e`` at ``p``."""
    return eval_jet2(e, p).value


def _const_jet(c):
    return float(c), np.zeros(4), np.zeros((4, 4))


def _chain(f0, f1, f2, jet):
    """Compose a scalar function with derivatives f1, f2 onto a jet."""
    _, g, h = jet
    return f0, f1 * g, f2 * np.outer(g, g) + f1 * h


def _jet(e, p):
    if isinstance(e, Const):
        return _const_jet(e.value)
    if isinstance(e, Var):
        g = np.zeros(4)
        g[e.index - 1] = 1.0
        return float(p[e.index - 1]), g, np.zeros((4, 4))
    if isinstance(e, Unary):
        a = _jet(e.arg, p)
        u = a[0]
        if e.op == "neg":
            return -u, -a[1], -a[2]
        if e.op == "sin":
            s, c = math.sin(u), math.cos(u)
            return _chain(s, c, -s, a)
        if e.op == "cos":
            s, c = math.sin(u), math.cos(u)
            return _chain(c, -s, -c, a)
        if e.op == "exp":
            v = math.exp(u)
            return _chain(v, v, v, a)
        if e.op == "log":
            if u <= 0:
                raise DomainError(f"log of non-positive value {u!r}", e)
            return _chain(math.log(u), 1.0 / u, -1.0 / (u * u), a)
        # sqrt: derivatives blow up at 0
        if u <= 0:
            raise DomainError(f"sqrt of non-positive value {u!r}", e)
        r = math.sqrt(u)
        return _chain(r, 0.5 / r, -0.25 / (r * u), a)

    a = _jet(e.left, p)
    if e.op == "pow":
        n = e.right.value
        u = a[0]
        if u == 0.0 and n < 2 and n not in (0.0, 1.0):
            raise DomainError(f"power {n!r} of zero is not twice differentiable", e)
        if u < 0 and not float(n).is_integer():
            raise DomainError(f"non-integer power {n!r} of negative value {u!r}", e)
        if n == 0.0:
            return _const_jet(1.0)
        if n == 1.0:
            return a
        return _chain(u ** n, n * u ** (n - 1), n * (n - 1) * u ** (n - 2), a)

    b = _jet(e.right, p)
    if e.op == "add":
        return a[0] + b[0], a[1] + b[1], a[2] + b[2]
    if e.op == "sub":
        return a[0] - b[0], a[1] - b[1], a[2] - b[2]
    if e.op == "div":
        v = b[0]
        if v == 0.0:
            raise DomainError("division by zero", e)
        b = _chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v), b)
    # product rule; the cross term is symmetric by construction
    cross = np.outer(a[1], b[1])
    return (a[0] * b[0],
            a[0] * b[1] + b[0] * a[1],
            a[0] * b[2] + b[0] * a[2] + (cross + cross.T))


def eval_jet2(e: ExprNode, p) -> Jet2:
    """Value, gradient and Hessian of ``e`` at the point ``p``.

    Raises :class:`DomainError` naming the offending subexpression when
    ``log``, ``sqrt``, ``/`` or ``^`` is evaluated outside its domain.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (4,):
        raise ValueError(f"point must have 4 coordinates, got shape {p.shape}")
    value, grad, hess = _jet(e, p)
    return Jet2(float(value), np.array(grad, dtype=float), np.array(hess, dtype=float))
