"""Tests for exact scalars, fields and matrices (exact_arith.py)."""

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from homog235.errors import DimensionError, FieldError, MixedRadicalError, ParseError
from homog235.exact_arith import (
    QQ,
    Field,
    Matrix,
    Scalar,
    elementary_symmetric,
    field_sqrt,
    radical,
)

K = Field(2, True)  # ℚ(√2, i)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(lambda a, b, c, e: Scalar(a, b, c, e, K), fractions, fractions, fractions, fractions)
rationals = st.builds(lambda a: Scalar(a), fractions)


def _matrices(n: int):
    return st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


def _cofactor_det(m: Matrix) -> Scalar:
    n = m.nrows
    if n == 1:
        return m[0, 0]
    total = Scalar.zero(m.field)
    for j in range(n):
        minor = Matrix([[m[r, c] for c in range(n) if c != j] for r in range(1, n)], m.field)
        term = m[0, j] * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


# ── Fields ────────────────────────────────────────────────────────────────

def test_quadratic_collapses_square_factors():
    assert Field.quadratic(12) == Field(3)
    assert Field.quadratic(-8) == Field(2, True)
    assert Field.quadratic(9) == QQ


def test_field_rejects_non_squarefree_radicand():
    with pytest.raises(FieldError):
        Field(8)


def test_join_refuses_two_radicals():
    with pytest.raises(MixedRadicalError):
        Field(2).join(Field(3))


def test_join_and_contains():
    assert Field(5).join(QQ.complexified()) == Field(5, True)
    assert Field(5, True).contains(Field(5))
    assert not Field(5).contains(Field(7))


# ── Scalars: field axioms ─────────────────────────────────────────────────

@given(scalars, scalars, scalars)
def test_addition_and_multiplication_are_associative(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)


@given(scalars, scalars, scalars)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(scalars)
def test_inverse(x):
    assume(x)
    assert x * x.inverse() == 1
    assert x / x == 1


@given(scalars, scalars)
def test_conjugation_is_multiplicative(x, y):
    assert (x * y).conj() == x.conj() * y.conj()


@given(scalars)
def test_norm2_is_real_and_nonnegative(x):
    n = x.norm2()
    assert n.is_real
    assert n.sign() >= 0


@given(st.fractions(min_value=-50, max_value=50, max_denominator=20),
       st.fractions(min_value=-50, max_value=50, max_denominator=20))
def test_sign_agrees_with_floats(a, b):
    x = Scalar(a, b, field=Field(2))
    approx = float(a) + float(b) * 2 ** 0.5
    assume(abs(approx) > 1e-9 or not x)
    assert x.sign() == (approx > 0) - (approx < 0)


def test_sign_of_non_real_raises():
    with pytest.raises(FieldError):
        Scalar.i().sign()


def test_scalar_is_immutable():
    x = Scalar(1)
    with pytest.raises(AttributeError):
        x.a = 2


def test_float_input_is_refused():
    with pytest.raises(FieldError):
        Scalar.of(0.5)


def test_equality_across_fields():
    assert Scalar(3) == Scalar(3, field=K)
    assert Scalar(0, 1, field=Field(2)) != Scalar(0, 1, field=Field(3))


def test_coercing_a_scalar_keeps_its_field():
    z = Scalar.i() + 4
    assert Scalar.of(z) == z
    assert Scalar.of(z).field == QQ.complexified()
    r = Scalar(0, 1, field=Field(2))
    assert Scalar.of(r, QQ.complexified()).field == K
    assert Scalar.of(Scalar(4, field=K)) == 4


# ── Scalars: text ─────────────────────────────────────────────────────────

def test_parse_radical_and_imaginary_terms():
    x = Scalar.parse("1/2+2/3*s-1*i", Field(5, True))
    assert (x.a, x.b, x.c, x.e) == (Fraction(1, 2), Fraction(2, 3), Fraction(-1), 0)


def test_parse_infers_imaginary_field():
    x = Scalar.parse("3-i")
    assert x.field == QQ.complexified()
    assert x.imag_part() == -1


def test_parse_s_needs_radical_field():
    with pytest.raises(ParseError):
        Scalar.parse("2*s")


def test_parse_i_in_real_field_refused():
    with pytest.raises(ParseError):
        Scalar.parse("1+i", Field(2))


@pytest.mark.parametrize("text", ["", "1//2", "1/0", "2x", "3*s*s"])
def test_parse_malformed(text):
    with pytest.raises(ParseError):
        Scalar.parse(text, Field(2))


def test_str_format():
    assert str(Scalar.parse("1/2+2/3*s", Field(3))) == "1/2+2/3*s"
    assert str(Scalar.i()) == "1*i"
    assert str(Scalar(0)) == "0"
    assert str(Scalar(-3, field=K)) == "-3"


@given(scalars)
def test_text_round_trip(x):
    assert Scalar.parse(str(x), K) == x


# ── Square roots ──────────────────────────────────────────────────────────

def test_radical_collapses_square_factors():
    r = radical(12)
    assert r.field == Field(3)
    assert r * r == 12
    assert str(r) == "2*s"


def test_radical_of_negative_is_imaginary():
    r = radical(-4)
    assert r == 2 * Scalar.i()
    assert radical(-2) * radical(-2) == -2


def test_radical_of_perfect_square_stays_rational():
    assert radical(Fraction(9, 4)) == Scalar(Fraction(3, 2))


def test_field_sqrt_of_nested_radical():
    # (1 + √2)² = 3 + 2√2
    x = Scalar(3, 2, field=Field(2))
    assert field_sqrt(x) == Scalar(1, 1, field=Field(2))


def test_field_sqrt_missing():
    assert field_sqrt(Scalar(2)) is None


def test_field_sqrt_of_complex():
    x = Scalar(0, 0, 2, 0, QQ.complexified())  # 2i = (1 + i)²
    root = field_sqrt(x)
    assert root is not None
    assert root * root == x


# ── Matrices ──────────────────────────────────────────────────────────────

@given(_matrices(3), _matrices(3))
def test_determinant_is_multiplicative(a, b):
    assert (a @ b).determinant() == a.determinant() * b.determinant()


@given(_matrices(4))
def test_determinant_matches_cofactor_expansion(m):
    assert m.determinant() == _cofactor_det(m)


@given(_matrices(4))
def test_char_poly_constant_term_is_signed_determinant(m):
    coeffs = m.char_poly()
    assert coeffs[0] == 1
    assert coeffs[-1] == m.determinant()  # n = 4 is even
    assert coeffs[1] == -m.trace()


@given(_matrices(3))
def test_cayley_hamilton(m):
    coeffs = m.char_poly()
    acc = Matrix.zeros(3, 3)
    for c in coeffs:
        acc = acc @ m + Matrix.identity(3).scaled(c)
    assert acc.is_zero()


@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=4))
def test_rank_nullity(rows):
    m = Matrix(rows)
    kernel = m.kernel()
    assert m.rank() + len(kernel) == 5
    for v in kernel:
        assert all(not x for x in m @ v)


@given(_matrices(4), st.integers(0, 10_000))
def test_sylvester_invariance(m, seed):
    from homog235.lie_core import random_invertible

    sym = m + m.T
    p = random_invertible(4, seed)
    assert (p.T @ sym @ p).signature() == sym.signature()


def test_signature_of_hyperbolic_plane():
    assert Matrix([[0, 1], [1, 0]]).signature() == (1, 1, 0)
    assert Matrix.diagonal([3, -1, 0]).signature() == (1, 1, 1)


def test_signature_needs_real_symmetric():
    with pytest.raises(DimensionError):
        Matrix([[0, 1], [0, 0]]).signature()
    with pytest.raises(FieldError):
        Matrix([[Scalar.i()]]).signature()


@given(_matrices(3))
def test_inverse(m):
    assume(m.determinant())
    assert m @ m.inverse() == Matrix.identity(3)


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


def test_solve_inconsistent_returns_none():
    assert Matrix([[1, 1], [1, 1]]).solve((Scalar(1), Scalar(2))) is None


def test_solve_over_extension():
    m = Matrix([[1, 0], [0, 2]])
    x = m.solve((radical(2), Scalar.i()))
    assert m @ x == (radical(2), Scalar.i())


def test_min_poly_of_nilpotent_block():
    n = Matrix([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert n.min_poly() == [1, 0, 0, 0]
    assert n.is_nilpotent()
    assert not Matrix.identity(3).is_nilpotent()


def test_min_poly_of_diagonal():
    assert Matrix.diagonal([2, 2, 3]).min_poly() == [1, -5, 6]


def test_elementary_symmetric_of_diagonal():
    m = Matrix.diagonal([1, 2, 3, 4])
    assert elementary_symmetric(m, 1) == 10
    assert elementary_symmetric(m, 2) == 35
    assert elementary_symmetric(m, 4) == 24


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        Matrix([[1, 2], [3]])


def test_mixed_radicals_in_one_matrix_rejected():
    with pytest.raises(MixedRadicalError):
        Matrix([[radical(2), radical(3)]])
