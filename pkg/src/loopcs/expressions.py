"""Expression trees over the circle coordinate alpha and an integer parameter a.

Node kinds: number, alpha, a, +, -, *, /, integer power, sin, cos.  Every
expression is 2*pi-periodic in alpha for integer a.  Trees are immutable;
operators on nodes build new trees (with light constant folding), so metric
families like ``2 + (1/a)*cos(a*alpha)*sin(a*alpha)`` can be written once
and evaluated for any a.

Evaluation returns a :class:`~loopcs.jets.Jet2`, i.e. the value and the
first two alpha-derivatives, exactly.  ``derivative`` differentiates
symbolically, producing another tree in the same grammar.

The concrete grammar parsed by :func:`parse_expression`::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := number | 'alpha' | 'a' | 'sin' '(' expr ')'
            | 'cos' '(' expr ')' | '(' expr ')' | '-' base

Whitespace is insignificant; numbers are decimal literals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .jets import Jet2, Number


class EvalDomainError(ArithmeticError):
    """Evaluation hit a pole (division by zero / negative power of zero)."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: tuple = ()):
        super().__init__(f"{message} at offset {position}"
                         + (f", expected {' or '.join(expected)}" if expected else ""))
        self.position = position
        self.expected = expected


class Expr:
    """Base class for expression nodes."""

    def __add__(self, other):
        return _add(self, _coerce(other))

    def __radd__(self, other):
        return _add(_coerce(other), self)

    def __sub__(self, other):
        return _sub(self, _coerce(other))

    def __rsub__(self, other):
        return _sub(_coerce(other), self)

    def __mul__(self, other):
        return _mul(self, _coerce(other))

    def __rmul__(self, other):
        return _mul(_coerce(other), self)

    def __truediv__(self, other):
        return _div(self, _coerce(other))

    def __rtruediv__(self, other):
        return _div(_coerce(other), self)

    def __neg__(self):
        return _mul(Num(-1.0), self)

    def __pow__(self, k: int):
        return _pow(self, k)


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Alpha(Expr):
    def __str__(self):
        return "alpha"


@dataclass(frozen=True)
class ParamA(Expr):
    def __str__(self):
        return "a"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        return f"({self.left} - {self.right})"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr

    def __str__(self):
        return f"({self.num} / {self.den})"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __str__(self):
        return f"({self.base})^{self.exponent}"


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr

    def __str__(self):
        return f"sin({self.arg})"


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr

    def __str__(self):
        return f"cos({self.arg})"


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float)):
        return Num(float(x))
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


def constant_value(e: Expr) -> Optional[float]:
    """Fold a subtree to a number if it contains neither alpha nor a."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, (Alpha, ParamA)):
        return None
    if isinstance(e, (Add, Sub, Mul)):
        l, r = constant_value(e.left), constant_value(e.right)
        if l is None or r is None:
            return None
        return {Add: l + r, Sub: l - r, Mul: l * r}[type(e)]
    if isinstance(e, Div):
        n, d = constant_value(e.num), constant_value(e.den)
        return None if (n is None or d is None or d == 0.0) else n / d
    if isinstance(e, Pow):
        b = constant_value(e.base)
        return None if b is None else b ** e.exponent
    if isinstance(e, Sin):
        a = constant_value(e.arg)
        return None if a is None else float(np.sin(a))
    if isinstance(e, Cos):
        a = constant_value(e.arg)
        return None if a is None else float(np.cos(a))
    raise TypeError(f"unknown node {type(e).__name__}")


# smart constructors: fold constants and drop arithmetic identities so that
# symbolic derivatives stay compact

def _add(l: Expr, r: Expr) -> Expr:
    lc, rc = constant_value(l), constant_value(r)
    if lc is not None and rc is not None:
        return Num(lc + rc)
    if lc == 0.0:
        return r
    if rc == 0.0:
        return l
    return Add(l, r)


def _sub(l: Expr, r: Expr) -> Expr:
    lc, rc = constant_value(l), constant_value(r)
    if lc is not None and rc is not None:
        return Num(lc - rc)
    if rc == 0.0:
        return l
    return Sub(l, r)


def _mul(l: Expr, r: Expr) -> Expr:
    lc, rc = constant_value(l), constant_value(r)
    if lc is not None and rc is not None:
        return Num(lc * rc)
    if lc == 0.0 or rc == 0.0:
        return Num(0.0)
    if lc == 1.0:
        return r
    if rc == 1.0:
        return l
    return Mul(l, r)


def _div(n: Expr, d: Expr) -> Expr:
    dc = constant_value(d)
    if dc == 0.0:
        raise ValueError(f"division by the identically-zero denominator '{d}'")
    nc = constant_value(n)
    if nc is not None and dc is not None:
        return Num(nc / dc)
    if nc == 0.0:
        return Num(0.0)
    if dc == 1.0:
        return n
    return Div(n, d)


def _pow(b: Expr, k: int) -> Expr:
    if not isinstance(k, int):
        raise TypeError("power exponent must be an integer")
    if k == 0:
        return Num(1.0)
    if k == 1:
        return b
    bc = constant_value(b)
    if bc is not None:
        if bc == 0.0 and k < 0:
            raise ValueError("zero base with negative exponent")
        return Num(bc ** k)
    return Pow(b, k)


def evaluate(e: Expr, alpha: Number, a: int = 1) -> Jet2:
    """Jet of e at alpha: value and first two exact alpha-derivatives.

    alpha may be a scalar or an ndarray (evaluated elementwise).  Raises
    EvalDomainError if a denominator vanishes at any evaluation point.
    """
    if isinstance(e, Num):
        return Jet2.constant(e.value)
    if isinstance(e, Alpha):
        return Jet2.variable(alpha)
    if isinstance(e, ParamA):
        return Jet2.constant(float(a))
    if isinstance(e, Add):
        return evaluate(e.left, alpha, a) + evaluate(e.right, alpha, a)
    if isinstance(e, Sub):
        return evaluate(e.left, alpha, a) - evaluate(e.right, alpha, a)
    if isinstance(e, Mul):
        return evaluate(e.left, alpha, a) * evaluate(e.right, alpha, a)
    if isinstance(e, Div):
        den = evaluate(e.den, alpha, a)
        if np.any(np.asarray(den.v) == 0.0):
            raise EvalDomainError(f"division by zero in '{e.den}'")
        return evaluate(e.num, alpha, a) / den
    if isinstance(e, Pow):
        base = evaluate(e.base, alpha, a)
        if e.exponent < 2 and np.any(np.asarray(base.v) == 0.0):
            # k<0 is a pole; k=1 is fine but never reaches here (folded away)
            if e.exponent < 0:
                raise EvalDomainError(f"negative power of zero in '{e}'")
        return base ** e.exponent
    if isinstance(e, Sin):
        return evaluate(e.arg, alpha, a).sin()
    if isinstance(e, Cos):
        return evaluate(e.arg, alpha, a).cos()
    raise TypeError(f"unknown node {type(e).__name__}")


def derivative(e: Expr) -> Expr:
    """Symbolic d/dalpha, staying inside the grammar."""
    if isinstance(e, (Num, ParamA)):
        return Num(0.0)
    if isinstance(e, Alpha):
        return Num(1.0)
    if isinstance(e, Add):
        return _add(derivative(e.left), derivative(e.right))
    if isinstance(e, Sub):
        return _sub(derivative(e.left), derivative(e.right))
    if isinstance(e, Mul):
        return _add(_mul(derivative(e.left), e.right), _mul(e.left, derivative(e.right)))
    if isinstance(e, Div):
        num = _sub(_mul(derivative(e.num), e.den), _mul(e.num, derivative(e.den)))
        return _div(num, _pow(e.den, 2))
    if isinstance(e, Pow):
        return _mul(_mul(Num(float(e.exponent)), _pow(e.base, e.exponent - 1)),
                    derivative(e.base))
    if isinstance(e, Sin):
        return _mul(Cos(e.arg), derivative(e.arg))
    if isinstance(e, Cos):
        return _mul(Num(-1.0), _mul(Sin(e.arg), derivative(e.arg)))
    raise TypeError(f"unknown node {type(e).__name__}")


# ---------------------------------------------------------------------------
# recursive-descent parser

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|(alpha|a|sin|cos)|([()+\-*/^]))")


def _tokenize(src: str):
    tokens = []  # (kind, text, position)
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None:
            at = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[at]!r}", at)
        number, word, op = m.groups()
        start = m.end() - len(m.group().lstrip())
        if number is not None:
            tokens.append(("number", number, start))
        elif word is not None:
            tokens.append((word, word, start))
        else:
            tokens.append((op, op, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        self.i += 1

    def expect(self, kind: str):
        if self.tok[0] != kind:
            raise ParseError(f"unexpected {self.tok[1]!r}" if self.tok[0] != "end"
                             else "unexpected end of input",
                             self.tok[2], expected=(f"'{kind}'",))
        t = self.tok
        self.advance()
        return t

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok[0] != "end":
            raise ParseError(f"unexpected {self.tok[1]!r}", self.tok[2],
                             expected=("operator", "end of input"))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok[0] in ("+", "-"):
            op = self.tok[0]
            self.advance()
            rhs = self.term()
            e = _add(e, rhs) if op == "+" else _sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.tok[0] in ("*", "/"):
            op = self.tok[0]
            self.advance()
            rhs = self.factor()
            e = _mul(e, rhs) if op == "*" else _div(e, rhs)
        return e

    def factor(self) -> Expr:
        e = self.base()
        if self.tok[0] == "^":
            self.advance()
            sign = 1
            if self.tok[0] == "-":
                sign = -1
                self.advance()
            kind, text, at = self.tok
            if kind != "number" or not re.fullmatch(r"\d+", text):
                raise ParseError("power needs an integer exponent", at,
                                 expected=("integer",))
            self.advance()
            e = _pow(e, sign * int(text))
        return e

    def base(self) -> Expr:
        kind, text, at = self.tok
        if kind == "number":
            self.advance()
            return Num(float(text))
        if kind == "alpha":
            self.advance()
            return Alpha()
        if kind == "a":
            self.advance()
            return ParamA()
        if kind in ("sin", "cos"):
            self.advance()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Sin(arg) if kind == "sin" else Cos(arg)
        if kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if kind == "-":
            self.advance()
            return -self.base()
        raise ParseError(f"unexpected {text!r}" if kind != "end" else "unexpected end of input",
                         at, expected=("number", "'alpha'", "'a'", "'sin'", "'cos'", "'('"))


def parse_expression(src: str) -> Expr:
    """Parse the metric-function grammar into an expression tree."""
    return _Parser(src).parse()
