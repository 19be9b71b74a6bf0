"""
A small expression language: trees over named variables with rational
constants, the four operations, rational powers and the elementary
functions, plus exact symbolic differentiation, substitution, numpy
evaluation and exact evaluation for catalog parameter templates.

Only constant folding is done; no other simplification.

Usage:
    from homog235.expr import parse_expr, diff, evaluate

    F = parse_expr("q^(1/3) + y", {"x", "y", "p", "q", "z"})
    F2 = diff(diff(F, "q"), "q")
    print(F2, evaluate(F2, {"q": 8.0}))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from typing import Iterable, Mapping

import numpy as np

from homog235.errors import DomainViolation, FieldError, MongeError, ParseError
from homog235.exact_arith import Scalar, field_sqrt

FUNCTIONS = ("exp", "log", "sin", "cos", "tan", "sec", "csc", "cot", "arctan", "kepler_inv")

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50


class Expr:
    """Base of all expression nodes; Python operators build folded trees."""

    __slots__ = ()
    precedence = 9

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, Fraction(exponent))

    def __str__(self) -> str:
        return to_text(self)


def _coerce(value) -> Expr:
    if isinstance(value, Expr):
        return value
    return Const(Fraction(value))


@dataclass(frozen=True, slots=True, repr=False)
class Const(Expr):
    value: Fraction

    @property
    def precedence(self) -> int:
        if self.value < 0:
            return 3
        return 9 if self.value.denominator == 1 else 2

    def __repr__(self):
        return f"Const({self.value})"


@dataclass(frozen=True, slots=True, repr=False)
class Var(Expr):
    name: str

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Add(Expr):
    left: Expr
    right: Expr
    precedence = 1
    symbol = " + "

    def __repr__(self):
        return f"Add({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Sub(Expr):
    left: Expr
    right: Expr
    precedence = 1
    symbol = " - "

    def __repr__(self):
        return f"Sub({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Mul(Expr):
    left: Expr
    right: Expr
    precedence = 2
    symbol = "*"

    def __repr__(self):
        return f"Mul({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Div(Expr):
    left: Expr
    right: Expr
    precedence = 2
    symbol = "/"

    def __repr__(self):
        return f"Div({self.left!r}, {self.right!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Neg(Expr):
    arg: Expr
    precedence = 3

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True, slots=True, repr=False)
class Pow(Expr):
    base: Expr
    exponent: Fraction
    precedence = 4

    def __repr__(self):
        return f"Pow({self.base!r}, {self.exponent})"


@dataclass(frozen=True, slots=True, repr=False)
class Func(Expr):
    name: str
    arg: Expr

    def __repr__(self):
        return f"Func({self.name!r}, {self.arg!r})"


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


# ── Folding constructors ─────────────────────────────────────────────────


def _is_const(e: Expr, value=None) -> bool:
    return isinstance(e, Const) and (value is None or e.value == value)


def add(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a, -1):
        return neg(b)
    if _is_const(b, -1):
        return neg(a)
    return Mul(a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        raise ZeroDivisionError("division by the constant 0")
    if _is_const(a) and _is_const(b):
        return Const(a.value / b.value)
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    return Div(a, b)


def neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(base: Expr, exponent: Fraction) -> Expr:
    exponent = Fraction(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if isinstance(base, Const) and exponent.denominator == 1:
        if base.value == 0 and exponent < 0:
            raise ZeroDivisionError("0 to a negative power")
        return Const(base.value ** int(exponent))
    return Pow(base, exponent)


_FOLD_AT_ZERO = {"exp": 1, "sin": 0, "cos": 1, "tan": 0, "sec": 1, "arctan": 0, "kepler_inv": 0}


def func(name: str, arg: Expr) -> Expr:
    if name not in FUNCTIONS:
        raise MongeError(f"unknown function {name!r}")
    if _is_const(arg, 0) and name in _FOLD_AT_ZERO:
        return Const(Fraction(_FOLD_AT_ZERO[name]))
    if name == "log" and _is_const(arg, 1):
        return ZERO
    return Func(name, arg)


# ── Printing ─────────────────────────────────────────────────────────────


def _wrap(e: Expr, tight: bool, prec: int) -> str:
    text = to_text(e)
    return f"({text})" if (e.precedence < prec or (tight and e.precedence == prec)) else text


def _exponent_text(n: Fraction) -> str:
    if n.denominator == 1 and n > 0:
        return str(n.numerator)
    return f"({n})"


def to_text(e: Expr) -> str:
    """Canonical text; parse_expr(to_text(e)) rebuilds e."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, (Add, Sub, Mul, Div)):
        return _wrap(e.left, False, e.precedence) + e.symbol + _wrap(e.right, True, e.precedence)
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, False, e.precedence)
    if isinstance(e, Pow):
        return _wrap(e.base, True, e.precedence) + "^" + _exponent_text(e.exponent)
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    raise TypeError(f"not an expression: {e!r}")


# ── Parsing ──────────────────────────────────────────────────────────────

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([^\W\d]\w*)|(\S))")


class _Parser:
    def __init__(self, text: str, variables: Iterable[str] | None):
        self.text = text
        self.variables = set(variables) if variables is not None else None
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text))

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, value, pos = self.take()
        if (kind, value) != ("op", op):
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> Expr:
        e = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {value!r}", pos)
        return e

    def expression(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            e = add(e, rhs) if op == "+" else sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op, pos = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                e = mul(e, rhs)
            else:
                try:
                    e = div(e, rhs)
                except ZeroDivisionError:
                    raise ParseError("division by zero", pos) from None
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return neg(self.unary())
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        pos = self.take()[2]
        exponent = self.exponent()
        if not isinstance(exponent, Const):
            raise ParseError("exponent must be a rational constant", pos)
        try:
            return power(base, exponent.value)
        except ZeroDivisionError:
            raise ParseError("zero raised to a negative power", pos) from None

    def exponent(self) -> Expr:
        # right associative: a^b^c = a^(b^c)
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return neg(self.exponent())
        return self.power()

    def atom(self) -> Expr:
        kind, value, pos = self.take()
        if kind == "num":
            return Const(Fraction(value))
        if kind == "name":
            if self.peek()[:2] == ("op", "("):
                if value not in FUNCTIONS:
                    raise ParseError(f"unknown function {value!r}", pos)
                self.take()
                arg = self.expression()
                self.expect(")")
                return func(value, arg)
            if value in FUNCTIONS:
                raise ParseError(f"function {value!r} needs an argument", pos)
            if self.variables is not None and value not in self.variables:
                raise ParseError(f"unknown identifier {value!r}", pos)
            return Var(value)
        if (kind, value) == ("op", "("):
            e = self.expression()
            self.expect(")")
            return e
        if kind == "end":
            raise ParseError("unexpected end of expression", pos)
        raise ParseError(f"unexpected {value!r}", pos)


def parse_expr(text: str, variables: Iterable[str] | None = None) -> Expr:
    """Parse infix text; ``variables`` (when given) is the allowed identifier set."""
    return _Parser(text, variables).parse()


# ── Structure ────────────────────────────────────────────────────────────


def variables(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset([e.name])
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, (Add, Sub, Mul, Div)):
        return variables(e.left) | variables(e.right)
    if isinstance(e, (Neg, Func)):
        return variables(e.arg)
    return variables(e.base)


@singledispatch
def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    raise TypeError(f"cannot substitute into {e!r}")


@substitute.register
def _(e: Const, mapping):
    return e


@substitute.register
def _(e: Var, mapping):
    return mapping.get(e.name, e)


@substitute.register(Add)
@substitute.register(Sub)
@substitute.register(Mul)
@substitute.register(Div)
def _(e, mapping):
    build = {Add: add, Sub: sub, Mul: mul, Div: div}[type(e)]
    return build(substitute(e.left, mapping), substitute(e.right, mapping))


@substitute.register
def _(e: Neg, mapping):
    return neg(substitute(e.arg, mapping))


@substitute.register
def _(e: Pow, mapping):
    return power(substitute(e.base, mapping), e.exponent)


@substitute.register
def _(e: Func, mapping):
    return func(e.name, substitute(e.arg, mapping))


# ── Differentiation ──────────────────────────────────────────────────────


@singledispatch
def diff(e: Expr, var: str) -> Expr:
    raise TypeError(f"cannot differentiate {e!r}")


@diff.register
def _(e: Const, var):
    return ZERO


@diff.register
def _(e: Var, var):
    return ONE if e.name == var else ZERO


@diff.register
def _(e: Add, var):
    return add(diff(e.left, var), diff(e.right, var))


@diff.register
def _(e: Sub, var):
    return sub(diff(e.left, var), diff(e.right, var))


@diff.register
def _(e: Mul, var):
    return add(mul(diff(e.left, var), e.right), mul(e.left, diff(e.right, var)))


@diff.register
def _(e: Div, var):
    da, db = diff(e.left, var), diff(e.right, var)
    if _is_const(db, 0):
        return div(da, e.right)
    return div(sub(mul(da, e.right), mul(e.left, db)), power(e.right, Fraction(2)))


@diff.register
def _(e: Neg, var):
    return neg(diff(e.arg, var))


@diff.register
def _(e: Pow, var):
    n = e.exponent
    return mul(mul(Const(n), power(e.base, n - 1)), diff(e.base, var))


def _outer_derivative(name: str, u: Expr) -> Expr:
    match name:
        case "exp":
            return func("exp", u)
        case "log":
            return power(u, Fraction(-1))
        case "sin":
            return func("cos", u)
        case "cos":
            return neg(func("sin", u))
        case "tan":
            return power(func("sec", u), Fraction(2))
        case "sec":
            return mul(func("sec", u), func("tan", u))
        case "csc":
            return neg(mul(func("csc", u), func("cot", u)))
        case "cot":
            return neg(power(func("csc", u), Fraction(2)))
        case "arctan":
            return power(add(ONE, power(u, Fraction(2))), Fraction(-1))
        case "kepler_inv":
            # inverse of w ↦ w + sin w cos w, whose derivative is 2cos²w
            return mul(Const(Fraction(1, 2)), power(func("sec", func("kepler_inv", u)), Fraction(2)))
    raise MongeError(f"unknown function {name!r}")


@diff.register
def _(e: Func, var):
    inner = diff(e.arg, var)
    if _is_const(inner, 0):
        return ZERO
    return mul(_outer_derivative(e.name, e.arg), inner)


# ── Numeric evaluation ───────────────────────────────────────────────────


def kepler_inv(u):
    """Solve w + sin(w)cos(w) = u for w by Newton iteration."""
    u = np.asarray(u, dtype=float)
    w = u / 2
    for _ in range(NEWTON_MAX_ITER):
        c = np.cos(w)
        step = (w + np.sin(w) * c - u) / (2 * c * c)
        w = w - step
        if np.all(np.abs(step) <= NEWTON_TOL * np.maximum(1.0, np.abs(w))):
            return w
    raise DomainViolation("kepler_inv: Newton iteration did not converge")


_NUMPY_FUNCS = {
    "exp": np.exp,
    "log": np.log,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sec": lambda v: 1 / np.cos(v),
    "csc": lambda v: 1 / np.sin(v),
    "cot": lambda v: 1 / np.tan(v),
    "arctan": np.arctan,
    "kepler_inv": kepler_inv,
}


@singledispatch
def _eval(e: Expr, env):
    raise TypeError(f"cannot evaluate {e!r}")


@_eval.register
def _(e: Const, env):
    return np.float64(e.value)


@_eval.register
def _(e: Var, env):
    try:
        return env[e.name]
    except KeyError:
        raise MongeError(f"no value for variable {e.name!r}") from None


@_eval.register
def _(e: Add, env):
    return _eval(e.left, env) + _eval(e.right, env)


@_eval.register
def _(e: Sub, env):
    return _eval(e.left, env) - _eval(e.right, env)


@_eval.register
def _(e: Mul, env):
    return _eval(e.left, env) * _eval(e.right, env)


@_eval.register
def _(e: Div, env):
    return _eval(e.left, env) / _eval(e.right, env)


@_eval.register
def _(e: Neg, env):
    return -_eval(e.arg, env)


@_eval.register
def _(e: Pow, env):
    b = np.asarray(_eval(e.base, env), dtype=float)
    n = e.exponent
    if n.denominator == 1:
        return b ** int(n)
    if n.denominator % 2 == 1:
        # odd roots of negative numbers are real
        return np.sign(b) ** n.numerator * np.abs(b) ** float(n)
    return np.power(b, float(n))


@_eval.register
def _(e: Func, env):
    return _NUMPY_FUNCS[e.name](_eval(e.arg, env))


def evaluate(e: Expr, env: Mapping[str, object]):
    """Evaluate with numpy (scalars or arrays); nan/inf raise DomainViolation."""
    env = {name: np.asarray(v, dtype=float) for name, v in env.items()}
    with np.errstate(all="ignore"):
        value = np.asarray(_eval(e, env), dtype=float)
    if not np.all(np.isfinite(value)):
        raise DomainViolation(f"{to_text(e)} is undefined at the sampled point(s)")
    return value


# ── Exact evaluation ─────────────────────────────────────────────────────


def evaluate_exact(e: Expr, env: Mapping[str, Scalar]) -> Scalar:
    """Exact value of a function-free expression; only ±1/2 fractional powers."""
    match e:
        case Const(value=v):
            return Scalar.of(v)
        case Var(name=name):
            if name not in env:
                raise MongeError(f"no value for parameter {name!r}")
            return env[name]
        case Add(left=a, right=b):
            return evaluate_exact(a, env) + evaluate_exact(b, env)
        case Sub(left=a, right=b):
            return evaluate_exact(a, env) - evaluate_exact(b, env)
        case Mul(left=a, right=b):
            return evaluate_exact(a, env) * evaluate_exact(b, env)
        case Div(left=a, right=b):
            return evaluate_exact(a, env) / evaluate_exact(b, env)
        case Neg(arg=a):
            return -evaluate_exact(a, env)
        case Pow(base=b, exponent=n):
            base = evaluate_exact(b, env)
            if n.denominator == 1:
                return base ** int(n)
            if n.denominator == 2:
                root = field_sqrt(base)
                if root is None:
                    raise FieldError(f"√({base}) is not in {base.field}")
                return root ** n.numerator
            raise FieldError(f"exponent {n} cannot be evaluated exactly")
    raise FieldError(f"{to_text(e)} cannot be evaluated exactly")
