"""Expression language for user-defined mass profiles.

A small grammar over the independent variable ``x`` and named parameters,
with exact first and second derivatives obtained by forward-mode
second-order jets.  Supported functions: exp, ln, sqrt, sin, cos, sinh,
cosh, tanh, coth and the q-deformed sinhq, coshq, tanhq, cothq, sechq,
cschq (the deformation parameter is read from the parameter table entry
``q``).  Precedence: ``^`` (right-assoc) > unary minus > ``* /`` > ``+ -``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import qmath
from .errors import (
    DomainError,
    ExprSyntaxError,
    UnboundParameterError,
    UnknownFunctionError,
)

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    """The independent variable x."""


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * / ^
    lhs: "ExprAst"
    rhs: "ExprAst"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "ExprAst"


ExprAst = Union[Num, Var, Param, Neg, BinOp, Call]

FUNCTION_NAMES = frozenset(
    "exp ln sqrt sin cos sinh cosh tanh coth "
    "sinhq coshq tanhq cothq sechq cschq".split()
)

RESERVED_VARIABLE = "x"

# ---------------------------------------------------------------------------
# Tokenizer / parser

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # num | ident | op | eof
    text: str
    offset: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    n = len(source)
    while pos < n:
        if source[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {source[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append(_Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok.kind != "op" or tok.text != op:
            raise ExprSyntaxError(
                f"expected {op!r}, found {tok.text or 'end of input'!r}",
                tok.offset,
                expected={op},
            )
        return self.next()

    # grammar ---------------------------------------------------------------

    def parse(self) -> ExprAst:
        node = self.sum()
        tok = self.peek()
        if tok.kind != "eof":
            raise ExprSyntaxError(
                f"unexpected trailing input {tok.text!r}", tok.offset
            )
        return node

    def sum(self) -> ExprAst:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> ExprAst:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return Neg(self.unary())
        return self.power()

    def power(self) -> ExprAst:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.next()
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> ExprAst:
        tok = self.peek()
        if tok.kind == "num":
            self.next()
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.next()
            name = tok.text
            follows_call = (
                self.peek().kind == "op" and self.peek().text == "("
            )
            if follows_call:
                if name == RESERVED_VARIABLE or name not in FUNCTION_NAMES:
                    raise UnknownFunctionError(
                        f"unknown function {name!r}", tok.offset
                    )
                self.next()
                arg = self.sum()
                self.expect_op(")")
                return Call(name, arg)
            if name in FUNCTION_NAMES:
                raise ExprSyntaxError(
                    f"function {name!r} requires an argument list", tok.offset,
                    expected={"("},
                )
            if name == RESERVED_VARIABLE:
                return Var()
            return Param(name)
        if tok.kind == "op" and tok.text == "(":
            self.next()
            node = self.sum()
            self.expect_op(")")
            return node
        raise ExprSyntaxError(
            f"expected a value, found {tok.text or 'end of input'!r}",
            tok.offset,
            expected={"number", "identifier", "("},
        )


def parse(source: str) -> ExprAst:
    """Parse an expression string into an immutable AST."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# Pretty printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(node: ExprAst) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return 5


def to_source(node: ExprAst) -> str:
    """Render an AST back to text; parse(to_source(a)) == a."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return RESERVED_VARIABLE
    if isinstance(node, Param):
        return node.name
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        if _prec(node.operand) < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    lhs, rhs = to_source(node.lhs), to_source(node.rhs)
    p = _PREC[node.op]
    if node.op == "^":
        # base must be an atom; exponent binds at unary level
        if _prec(node.lhs) < 5:
            lhs = f"({lhs})"
        if _prec(node.rhs) < 3:
            rhs = f"({rhs})"
    else:
        if _prec(node.lhs) < p:
            lhs = f"({lhs})"
        # - and / are left-associative: right child needs strictly higher prec
        if _prec(node.rhs) <= p:
            rhs = f"({rhs})"
    return f"{lhs}{node.op}{rhs}"


# ---------------------------------------------------------------------------
# Second-order forward jets


@dataclass(frozen=True)
class Jet2:
    """Value with first and second derivative w.r.t. x."""

    value: object
    d1: object
    d2: object

    def __add__(self, other):
        o = _jet(other)
        return Jet2(self.value + o.value, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.value, -self.d1, -self.d2)

    def __sub__(self, other):
        return self + (-_jet(other))

    def __rsub__(self, other):
        return _jet(other) + (-self)

    def __mul__(self, other):
        o = _jet(other)
        return Jet2(
            self.value * o.value,
            self.d1 * o.value + self.value * o.d1,
            self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return _jet_div(self, _jet(other))

    def __rtruediv__(self, other):
        return _jet_div(_jet(other), self)


def _jet(v) -> Jet2:
    if isinstance(v, Jet2):
        return v
    return Jet2(v, 0.0, 0.0)


def jet_variable(x) -> Jet2:
    """The jet of the independent variable at the point x."""
    x = np.asarray(x, dtype=float)
    one = np.ones_like(x)
    return Jet2(x if x.ndim else float(x), one if x.ndim else 1.0, 0.0 * one if x.ndim else 0.0)


def _jet_div(u: Jet2, v: Jet2) -> Jet2:
    if np.any(np.abs(np.asarray(v.value)) == 0.0):
        raise DomainError("division by zero in expression")
    w = u.value / v.value
    w1 = (u.d1 - w * v.d1) / v.value
    w2 = (u.d2 - 2.0 * w1 * v.d1 - w * v.d2) / v.value
    return Jet2(w, w1, w2)


def _chain(u: Jet2, f0, f1, f2) -> Jet2:
    return Jet2(f0, f1 * u.d1, f2 * u.d1 * u.d1 + f1 * u.d2)


def _jet_exp(u):
    e = np.exp(u.value)
    return _chain(u, e, e, e)


def _jet_ln(u):
    if np.any(np.asarray(u.value) <= 0):
        raise DomainError("ln of a non-positive value")
    v = u.value
    return _chain(u, np.log(v), 1.0 / v, -1.0 / (v * v))


def _jet_sqrt(u):
    if np.any(np.asarray(u.value) <= 0):
        raise DomainError("sqrt of a non-positive value")
    r = np.sqrt(u.value)
    return _chain(u, r, 0.5 / r, -0.25 / (r * u.value))


def _jet_sin(u):
    s, c = np.sin(u.value), np.cos(u.value)
    return _chain(u, s, c, -s)


def _jet_cos(u):
    s, c = np.sin(u.value), np.cos(u.value)
    return _chain(u, c, -s, -c)


def _jet_sinh(u):
    s, c = np.sinh(u.value), np.cosh(u.value)
    return _chain(u, s, c, s)


def _jet_cosh(u):
    s, c = np.sinh(u.value), np.cosh(u.value)
    return _chain(u, c, s, c)


def _jet_tanh(u):
    t = np.tanh(u.value)
    sech2 = 1.0 - t * t
    return _chain(u, t, sech2, -2.0 * t * sech2)


def _jet_coth(u):
    s = np.sinh(u.value)
    if np.any(np.abs(np.asarray(s)) < qmath.POLE_THRESHOLD):
        raise DomainError("coth evaluated at its pole")
    ct = np.cosh(u.value) / s
    csch2 = 1.0 - ct * ct  # = -1/sinh^2
    return _chain(u, ct, csch2, -2.0 * ct * csch2)


def _jet_sinhq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    return _chain(u, s, c, s)


def _jet_coshq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    return _chain(u, c, s, c)


def _jet_tanhq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    t = s / c
    d1 = q / (c * c)
    return _chain(u, t, d1, -2.0 * q * s / (c * c * c))


def _jet_cothq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    if np.any(np.abs(np.asarray(s)) < qmath.POLE_THRESHOLD):
        raise DomainError("cothq evaluated at its pole")
    ct = c / s
    return _chain(u, ct, -q / (s * s), 2.0 * q * c / (s * s * s))


def _jet_sechq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    c2 = c * c
    return _chain(u, 1.0 / c, -s / c2, (s * s - q) / (c2 * c))


def _jet_cschq(u, q):
    s, c = qmath.sinh_q(u.value, q), qmath.cosh_q(u.value, q)
    if np.any(np.abs(np.asarray(s)) < qmath.POLE_THRESHOLD):
        raise DomainError("cschq evaluated at its pole")
    s2 = s * s
    return _chain(u, 1.0 / s, -c / s2, (c * c + q) / (s2 * s))


_PLAIN_FUNCS = {
    "exp": _jet_exp,
    "ln": _jet_ln,
    "sqrt": _jet_sqrt,
    "sin": _jet_sin,
    "cos": _jet_cos,
    "sinh": _jet_sinh,
    "cosh": _jet_cosh,
    "tanh": _jet_tanh,
    "coth": _jet_coth,
}

_Q_FUNCS = {
    "sinhq": _jet_sinhq,
    "coshq": _jet_coshq,
    "tanhq": _jet_tanhq,
    "cothq": _jet_cothq,
    "sechq": _jet_sechq,
    "cschq": _jet_cschq,
}


def _jet_pow(u: Jet2, v: Jet2) -> Jet2:
    exponent_constant = (
        np.all(np.asarray(v.d1) == 0.0) and np.all(np.asarray(v.d2) == 0.0)
    )
    if exponent_constant:
        k = v.value
        k_scalar = float(np.asarray(k).reshape(-1)[0]) if np.asarray(k).ndim else float(k)
        if float(k_scalar).is_integer() and np.ndim(k) == 0:
            n = int(k_scalar)
            if n == 0:
                return _jet(1.0) + 0.0 * u  # keeps array shape
            if n < 0:
                return _jet(1.0) / _jet_pow(u, _jet(float(-n)))
            f0 = u.value ** n
            f1 = n * u.value ** (n - 1)
            f2 = n * (n - 1) * (u.value ** (n - 2) if n >= 2 else 0.0)
            return _chain(u, f0, f1, f2)
        if np.any(np.asarray(u.value) <= 0):
            raise DomainError("non-integer power of a non-positive base")
        f0 = u.value ** k
        f1 = k * u.value ** (k - 1.0)
        f2 = k * (k - 1.0) * u.value ** (k - 2.0)
        return _chain(u, f0, f1, f2)
    return _jet_exp(v * _jet_ln(u))


def eval_jet(ast: ExprAst, x, params=None) -> Jet2:
    """Evaluate an AST at x, returning value and first two x-derivatives.

    x may be a scalar or a numpy array; derivatives are exact to floating
    precision (no truncation error).
    """
    params = params or {}

    def ev(node: ExprAst) -> Jet2:
        if isinstance(node, Num):
            return _jet(node.value)
        if isinstance(node, Var):
            return jet_variable(x)
        if isinstance(node, Param):
            try:
                return _jet(float(params[node.name]))
            except KeyError:
                raise UnboundParameterError(node.name) from None
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Call):
            u = ev(node.arg)
            if node.func in _Q_FUNCS:
                try:
                    q = float(params["q"])
                except KeyError:
                    raise UnboundParameterError("q") from None
                return _Q_FUNCS[node.func](u, q)
            return _PLAIN_FUNCS[node.func](u)
        if node.op == "+":
            return ev(node.lhs) + ev(node.rhs)
        if node.op == "-":
            return ev(node.lhs) - ev(node.rhs)
        if node.op == "*":
            return ev(node.lhs) * ev(node.rhs)
        if node.op == "/":
            return ev(node.lhs) / ev(node.rhs)
        return _jet_pow(ev(node.lhs), ev(node.rhs))

    return ev(ast)
