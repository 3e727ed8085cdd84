"""Expression trees for holomorphic functions and the text grammar.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' ['-'] INTEGER)?
    primary := NUMBER | 'z' | 'i' | 'exp' '(' expr ')' | '(' expr ')'
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .jets import Jet, jet_exp, jet_mul, jet_powint, jet_recip


class Expr:
    radius = 1.0

    def eval_jet(self, z, order):
        zj = Jet.variable(z, order)
        return self._jet(zj).check_finite()

    def __call__(self, z):
        return self.eval_jet(z, 0).value

    def __str__(self):
        return pretty_print(self)


@dataclass(frozen=True)
class Z(Expr):
    def _jet(self, zj):
        return zj


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not np.isfinite(v.real) or not np.isfinite(v.imag):
            raise ValueError("constant must be finite")
        object.__setattr__(self, "value", v)

    def _jet(self, zj):
        return Jet.constant(self.value, zj.order, zj.batch_shape)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def _jet(self, zj):
        return self.left._jet(zj) + self.right._jet(zj)


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def _jet(self, zj):
        return self.left._jet(zj) - self.right._jet(zj)


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def _jet(self, zj):
        return jet_mul(self.left._jet(zj), self.right._jet(zj))


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr

    def _jet(self, zj):
        return jet_mul(self.left._jet(zj), jet_recip(self.right._jet(zj)))


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def _jet(self, zj):
        return -self.arg._jet(zj)


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    n: int

    def _jet(self, zj):
        return jet_powint(self.base._jet(zj), self.n)


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def _jet(self, zj):
        return jet_exp(self.arg._jet(zj))


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(pos, f"unexpected character {text[pos]!r}")
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value:
            raise ParseError(pos, f"expected {value!r}, found {text or 'end of input'!r}")

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, text, pos = self.take()
            if kind != "num" or not text.isdigit():
                raise ParseError(pos, "exponent must be an integer literal")
            return PowInt(base, sign * int(text))
        return base

    def primary(self):
        kind, text, pos = self.take()
        if kind == "num":
            return Const(float(text))
        if kind == "name":
            if text == "z":
                return Z()
            if text == "i":
                return Const(1j)
            if text == "exp":
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Exp(arg)
            raise ParseError(pos, f"unknown identifier {text!r}")
        if text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ParseError(pos, f"unexpected {text or 'end of input'!r}")


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    kind, tok, pos = p.peek()
    if kind != "end":
        raise ParseError(pos, f"unexpected trailing {tok!r}")
    return node


# -- printing ----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, PowInt: 4}


def _fmt_real(x):
    return repr(float(x))


def _const_text(c):
    if c == 1j:
        return "i", 5
    if c.imag == 0 and c.real >= 0 and not (c.real == 0 and np.signbit(c.real)):
        return _fmt_real(c.real), 5
    if c.imag == 0:
        return f"(-{_fmt_real(-c.real)})", 5
    im = f"{_fmt_real(abs(c.imag))}*i"
    if c.real == 0:
        return (f"({im})" if c.imag > 0 else f"(-{im})"), 5
    sign = "+" if c.imag > 0 else "-"
    return f"({_fmt_real(c.real)}{sign}{im})", 5


def _pp(node):
    """Return ``(text, precedence)`` with the minimal parentheses."""
    if isinstance(node, Z):
        return "z", 5
    if isinstance(node, Const):
        return _const_text(node.value)
    if isinstance(node, Exp):
        return f"exp({_pp(node.arg)[0]})", 5
    if isinstance(node, Neg):
        t, p = _pp(node.arg)
        return "-" + (t if p >= 3 else f"({t})"), 3
    if isinstance(node, PowInt):
        t, p = _pp(node.base)
        return f"{t if p >= 5 else f'({t})'}^{node.n}", 4
    prec = _PREC[type(node)]
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
    lt, lp = _pp(node.left)
    rt, rp = _pp(node.right)
    if lp < prec:
        lt = f"({lt})"
    if rp <= prec:
        rt = f"({rt})"
    return f"{lt}{op}{rt}", prec


def pretty_print(node: Expr) -> str:
    return _pp(node)[0]
