"""Tests for the expression language (expr.py)."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from homog235.errors import DomainViolation, FieldError, ParseError
from homog235.exact_arith import Scalar, radical
from homog235.expr import (
    ONE,
    ZERO,
    Const,
    Var,
    diff,
    evaluate,
    evaluate_exact,
    kepler_inv,
    parse_expr,
    substitute,
    to_text,
    variables,
)

CHART = {"x", "y", "p", "q", "z"}

SAMPLE_EXPRESSIONS = [
    "q^2",
    "y^(5/2)*q^(3/2)",
    "x*y - 3*p/q + z^3",
    "exp(x*q) + sin(y)^2",
    "arctan(p) - log(q)",
    "sec(y)*tan(q) + cot(x+1)",
    "kepler_inv(y+q)",
    "q^(1/3) - q^(-2)",
]


def _numeric_diff(text: str, var: str, point: dict[str, float], h: float = 1e-6) -> float:
    e = parse_expr(text, CHART)
    up, down = dict(point), dict(point)
    up[var] += h
    down[var] -= h
    return float((evaluate(e, up) - evaluate(e, down)) / (2 * h))


points = st.fixed_dictionaries({v: st.floats(0.3, 0.6) for v in sorted(CHART)})


# ── Parsing ───────────────────────────────────────────────────────────────

def test_precedence_and_associativity():
    e = parse_expr("1 + 2*x^2", CHART)
    assert float(evaluate(e, {"x": 3.0})) == 19.0
    assert float(evaluate(parse_expr("2^3^2"), {})) == 512.0
    assert float(evaluate(parse_expr("8 - 4 - 2"), {})) == 2.0


def test_unary_minus_binds_below_power():
    assert float(evaluate(parse_expr("-x^2", CHART), {"x": 3.0})) == -9.0


def test_decimal_constants_are_exact():
    assert parse_expr("0.25") == Const(Fraction(1, 4))


def test_constant_folding():
    assert parse_expr("2*3 + 1") == Const(Fraction(7))
    assert parse_expr("0*x + y", CHART) == Var("y")
    assert parse_expr("cos(0)") == ONE
    assert parse_expr("log(1)") == ZERO


def test_unknown_identifier():
    with pytest.raises(ParseError) as excinfo:
        parse_expr("x + w", CHART)
    assert "'w'" in str(excinfo.value)


@pytest.mark.parametrize("text", ["x +", "(x", "sin x", "foo(x)", "x^y", "1/0", "x $ y", "sin"])
def test_malformed(text):
    with pytest.raises(ParseError):
        parse_expr(text, CHART)


@pytest.mark.parametrize("text", SAMPLE_EXPRESSIONS)
def test_text_round_trip(text):
    e = parse_expr(text, CHART)
    assert parse_expr(to_text(e), CHART) == e


def test_variables():
    assert variables(parse_expr("x*q + sin(z)", CHART)) == {"x", "q", "z"}
    assert variables(parse_expr("3")) == frozenset()


def test_substitute():
    f = parse_expr("y^2 + q", CHART)
    g = substitute(f, {"y": parse_expr("p+1", CHART)})
    assert float(evaluate(g, {"p": 2.0, "q": 1.0})) == 10.0


# ── Differentiation ───────────────────────────────────────────────────────

@pytest.mark.parametrize("text", SAMPLE_EXPRESSIONS)
@given(point=points)
def test_derivative_matches_finite_difference(text, point):
    e = parse_expr(text, CHART)
    for var in ("y", "q"):
        exact = float(evaluate(diff(e, var), point))
        assert exact == pytest.approx(_numeric_diff(text, var, point), rel=1e-4, abs=1e-6)


def test_derivative_of_constant_and_other_variable():
    assert diff(parse_expr("x^2 + 3", CHART), "q") == ZERO
    assert diff(Var("q"), "q") == ONE


def test_second_derivative_of_monge_function():
    F = parse_expr("q^2 + 5*p^2", CHART)
    Fqq = diff(diff(F, "q"), "q")
    assert float(evaluate(Fqq, {})) == 2.0


# ── Numeric evaluation ────────────────────────────────────────────────────

def test_vectorized_evaluation():
    e = parse_expr("x*q", CHART)
    got = evaluate(e, {"x": np.array([1.0, 2.0]), "q": np.array([3.0, 4.0])})
    assert got.tolist() == [3.0, 8.0]


def test_odd_root_of_negative_is_real():
    assert float(evaluate(parse_expr("q^(1/3)", CHART), {"q": -8.0})) == pytest.approx(-2.0)


def test_domain_violation():
    with pytest.raises(DomainViolation):
        evaluate(parse_expr("log(q)", CHART), {"q": -1.0})
    with pytest.raises(DomainViolation):
        evaluate(parse_expr("1/q", CHART), {"q": 0.0})


def test_division_by_zero_with_plain_floats():
    with pytest.raises(DomainViolation):
        evaluate(parse_expr("p/q", CHART), {"p": 1.0, "q": 0.0})
    with pytest.raises(DomainViolation):
        evaluate(parse_expr("q/(q - q)", CHART), {"q": 2})


@given(st.floats(-1.0, 1.0))
def test_kepler_inv_inverts(u):
    w = float(kepler_inv(u))
    assert w + np.sin(w) * np.cos(w) == pytest.approx(u, abs=1e-10)


# ── Exact evaluation ──────────────────────────────────────────────────────

def test_exact_evaluation_of_templates():
    env = {"lambda": Scalar.of(4), "i": Scalar.i()}
    assert evaluate_exact(parse_expr("-lambda/2 + 1"), env) == -1
    assert evaluate_exact(parse_expr("i*lambda"), env) == 4 * Scalar.i()


def test_exact_half_powers():
    assert evaluate_exact(parse_expr("a^(1/2)"), {"a": Scalar.of(9)}) == 3
    assert evaluate_exact(parse_expr("a^(3/2)"), {"a": Scalar.of(4)}) == 8
    # (1 + √2)² = 3 + 2√2
    assert evaluate_exact(parse_expr("a^(1/2)"), {"a": 3 + 2 * radical(2)}) == 1 + radical(2)


def test_exact_evaluation_refuses_functions_and_missing_roots():
    with pytest.raises(FieldError):
        evaluate_exact(parse_expr("exp(a)"), {"a": Scalar.of(1)})
    with pytest.raises(FieldError):
        evaluate_exact(parse_expr("a^(1/2)"), {"a": Scalar.of(2)})
    with pytest.raises(FieldError):
        evaluate_exact(parse_expr("a^(1/3)"), {"a": Scalar.of(8)})
