"""
Exact arithmetic over ℚ, ℚ(√d) and their extensions by i, with the dense
linear algebra (echelon forms, kernels, characteristic and minimal
polynomials, Sylvester signatures) the rest of the package is built on.

A Scalar is stored as four rationals (a, b, c, e) meaning

    (a + b·√d) + i·(c + e·√d)

inside a Field that records d (squarefree, > 1) and whether i is present.
Arithmetic between different fields joins them; two different radicals in
one computation raise MixedRadicalError.

Usage:
    from homog235.exact_arith import Scalar, Matrix, radical

    r2 = radical(2)                          # √2 in ℚ(√2)
    x = Scalar.parse("1/2+2/3*s", r2.field)  # 1/2 + (2/3)√2
    m = Matrix([[1, r2], [r2, 2]])
    print(m.rank(), m.signature(), m.char_poly())
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from homog235.errors import DimensionError, FieldError, MixedRadicalError, ParseError


def _square_split(n: int) -> tuple[int, int]:
    """Write n > 0 as m²·d with d squarefree; return (m, d)."""
    m, d, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            d *= p
        p += 1
    return m, d * n


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    num, den = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if num * num == x.numerator and den * den == x.denominator:
        return Fraction(num, den)
    return None


# ── Fields ───────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class Field:
    """ℚ, ℚ(√d), ℚ(i) or ℚ(√d, i) with d a squarefree integer > 1."""

    sqrt: int | None = None
    imaginary: bool = False

    def __post_init__(self):
        if self.sqrt is not None:
            if self.sqrt <= 1 or _square_split(self.sqrt)[0] != 1:
                raise FieldError(f"radicand must be squarefree and > 1, got {self.sqrt}")

    @classmethod
    def quadratic(cls, d: int, imaginary: bool = False) -> Field:
        """Field containing √d, collapsing square factors (√12 lives in ℚ(√3))."""
        if d == 0:
            raise FieldError("√0 does not generate an extension")
        if d < 0:
            imaginary, d = True, -d
        _m, core = _square_split(d)
        return cls(None if core == 1 else core, imaginary)

    def join(self, other: Field) -> Field:
        if self == other:
            return self
        if self.sqrt is not None and other.sqrt is not None and self.sqrt != other.sqrt:
            raise MixedRadicalError(
                f"cannot combine √{self.sqrt} and √{other.sqrt} in one field"
            )
        return Field(self.sqrt if self.sqrt is not None else other.sqrt,
                     self.imaginary or other.imaginary)

    @property
    def is_real(self) -> bool:
        return not self.imaginary

    @property
    def real(self) -> Field:
        return Field(self.sqrt, False)

    def complexified(self) -> Field:
        return Field(self.sqrt, True)

    def contains(self, other: Field) -> bool:
        try:
            return self.join(other) == self
        except MixedRadicalError:
            return False

    def __str__(self) -> str:
        parts = []
        if self.sqrt is not None:
            parts.append(f"sqrt{self.sqrt}")
        if self.imaginary:
            parts.append("i")
        return f"Q({', '.join(parts)})" if parts else "Q"


QQ = Field()


# ── Scalars ──────────────────────────────────────────────────────────────

_ZERO = Fraction(0)
_ONE = Fraction(1)
_NUMBER = re.compile(r"\d+(?:/\d+)?|\d+\.\d*|\.\d+")
_TERM = re.compile(r"[+-]?[^+-]+")


class Scalar:
    """Exact element (a + b√d) + i(c + e√d) of a Field.  Immutable."""

    __slots__ = ("a", "b", "c", "e", "field")

    def __init__(self, a=0, b=0, c=0, e=0, field: Field = QQ):
        a, b, c, e = Fraction(a), Fraction(b), Fraction(c), Fraction(e)
        if field.sqrt is None and (b or e):
            raise FieldError(f"radical part given but {field} has no √d")
        if not field.imaginary and (c or e):
            raise FieldError(f"imaginary part given but {field} is real")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "field", field)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def _make(a: Fraction, b: Fraction, c: Fraction, e: Fraction, field: Field) -> Scalar:
        s = object.__new__(Scalar)
        object.__setattr__(s, "a", a)
        object.__setattr__(s, "b", b)
        object.__setattr__(s, "c", c)
        object.__setattr__(s, "e", e)
        object.__setattr__(s, "field", field)
        return s

    # ── Construction ─────────────────────────────────────────────────────

    @classmethod
    def zero(cls, field: Field = QQ) -> Scalar:
        return cls._make(_ZERO, _ZERO, _ZERO, _ZERO, field)

    @classmethod
    def one(cls, field: Field = QQ) -> Scalar:
        return cls._make(_ONE, _ZERO, _ZERO, _ZERO, field)

    @classmethod
    def i(cls, field: Field | None = None) -> Scalar:
        f = (field or QQ).complexified()
        return cls._make(_ZERO, _ZERO, _ONE, _ZERO, f)

    @classmethod
    def of(cls, value, field: Field = QQ) -> Scalar:
        """Coerce int / Fraction / scalar text / Scalar into ``field``.

        Text may use ``i`` even when ``field`` is real; the result then lives
        in the complexified field.  A Scalar already in a larger field stays
        in the join of the two.
        """
        if isinstance(value, Scalar):
            return value.lift(value.field.join(field))
        if isinstance(value, str):
            parsed = cls.parse(value, field.complexified() if field.sqrt is not None else None)
            target = field if parsed.is_real else field.complexified()
            return cls._make(parsed.a, parsed.b, parsed.c, parsed.e, target)
        if isinstance(value, float):
            raise FieldError("floats are not exact; pass a Fraction or a string")
        return cls._make(Fraction(value), _ZERO, _ZERO, _ZERO, field)

    @classmethod
    def parse(cls, text: str, field: Field | None = None) -> Scalar:
        """Parse the scalar text syntax: ``3/2``, ``1/2+2/3*s``, ``1-1*i``, ``i``.

        ``s`` stands for √d of ``field``; whitespace is ignored.
        """
        src = "".join(text.split())
        if not src:
            raise ParseError("empty scalar", 0)
        parts = [_ZERO, _ZERO, _ZERO, _ZERO]
        uses_s = uses_i = False
        pos = 0
        for m in _TERM.finditer(src):
            if m.start() != pos:
                raise ParseError(f"unexpected character in scalar {text!r}", pos)
            pos = m.end()
            term = m.group()
            sign = -1 if term[0] == "-" else 1
            body = term[1:] if term[0] in "+-" else term
            coef, has_s, has_i = Fraction(sign), False, False
            offset = m.start() + (len(term) - len(body))
            for factor in body.split("*"):
                if factor == "s" and not has_s:
                    has_s = True
                elif factor == "i" and not has_i:
                    has_i = True
                elif _NUMBER.fullmatch(factor):
                    try:
                        coef *= Fraction(factor)
                    except ZeroDivisionError:
                        raise ParseError(f"zero denominator in {text!r}", offset) from None
                else:
                    raise ParseError(f"bad factor {factor!r} in scalar {text!r}", offset)
                offset += len(factor) + 1
            uses_s |= has_s
            uses_i |= has_i
            parts[(2 if has_i else 0) + (1 if has_s else 0)] += coef
        if pos != len(src):
            raise ParseError(f"trailing characters in scalar {text!r}", pos)
        base = field or QQ
        if uses_s and base.sqrt is None:
            raise ParseError(f"'s' in {text!r} needs a field with a square root")
        if uses_i and not base.imaginary:
            if field is not None:
                raise ParseError(f"'i' in {text!r} but the field {field} is real")
            base = base.complexified()
        return cls._make(*parts, base)

    # ── Structure ────────────────────────────────────────────────────────

    def lift(self, field: Field) -> Scalar:
        if field == self.field:
            return self
        if self.field.join(field) != field:
            raise FieldError(f"{self} does not lie in {field}")
        return Scalar._make(self.a, self.b, self.c, self.e, field)

    @property
    def is_rational(self) -> bool:
        return not (self.b or self.c or self.e)

    @property
    def is_real(self) -> bool:
        return not (self.c or self.e)

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise FieldError(f"{self} is not rational")
        return self.a

    def real_part(self) -> Scalar:
        return Scalar._make(self.a, self.b, _ZERO, _ZERO, self.field.real)

    def imag_part(self) -> Scalar:
        return Scalar._make(self.c, self.e, _ZERO, _ZERO, self.field.real)

    def conj(self) -> Scalar:
        if not (self.c or self.e):
            return self
        return Scalar._make(self.a, self.b, -self.c, -self.e, self.field)

    def norm2(self) -> Scalar:
        """|x|² = x·conj(x), a real scalar."""
        return (self * self.conj()).real_part()

    # ── Arithmetic ───────────────────────────────────────────────────────

    def _other(self, other) -> Scalar | None:
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar._make(Fraction(other), _ZERO, _ZERO, _ZERO, QQ)
        return None

    def __bool__(self) -> bool:
        return bool(self.a or self.b or self.c or self.e)

    def __add__(self, other) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field if self.field is o.field else self.field.join(o.field)
        return Scalar._make(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e, f)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._make(-self.a, -self.b, -self.c, -self.e, self.field)

    def __sub__(self, other) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field if self.field is o.field else self.field.join(o.field)
        return Scalar._make(self.a - o.a, self.b - o.b, self.c - o.c, self.e - o.e, f)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field if self.field is o.field else self.field.join(o.field)
        if not (self.b or self.c or self.e or o.b or o.c or o.e):
            return Scalar._make(self.a * o.a, _ZERO, _ZERO, _ZERO, f)
        d = f.sqrt or 0
        # real and imaginary parts are elements of ℚ(√d): (p, q) ↦ p + q√d
        rr = (self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a)
        ii = (self.c * o.c + d * self.e * o.e, self.c * o.e + self.e * o.c)
        ri = (self.a * o.c + d * self.b * o.e, self.a * o.e + self.b * o.c)
        ir = (self.c * o.a + d * self.e * o.b, self.c * o.b + self.e * o.a)
        return Scalar._make(rr[0] - ii[0], rr[1] - ii[1], ri[0] + ir[0], ri[1] + ir[1], f)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if self.is_rational:
            return Scalar._make(1 / self.a, _ZERO, _ZERO, _ZERO, self.field)
        if self.is_real:
            d = self.field.sqrt or 0
            n = self.a * self.a - d * self.b * self.b
            return Scalar._make(self.a / n, -self.b / n, _ZERO, _ZERO, self.field)
        return self.conj() * self.norm2().inverse()

    def __truediv__(self, other) -> Scalar:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return self.inverse() * other

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Scalar.one(self.field), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ── Comparison ───────────────────────────────────────────────────────

    def sign(self) -> int:
        """Exact sign of a real scalar, deciding a + b√d without floats."""
        if not self.is_real:
            raise FieldError(f"sign of non-real scalar {self}")
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        return sa if a * a > b * b * (self.field.sqrt or 0) else sb

    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        if (self.a, self.b, self.c, self.e) != (o.a, o.b, o.c, o.e):
            return False
        return not (self.b or self.e) or self.field.sqrt == o.field.sqrt

    def __hash__(self) -> int:
        if self.is_rational:
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.e, self.field.sqrt))

    def __lt__(self, other) -> bool:
        return (self - other).sign() < 0

    def __le__(self, other) -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        if not self.is_real:
            raise FieldError(f"{self} is not real")
        return float(self.a) + float(self.b) * math.sqrt(self.field.sqrt or 0)

    def __complex__(self) -> complex:
        r = math.sqrt(self.field.sqrt or 0)
        return complex(float(self.a) + float(self.b) * r, float(self.c) + float(self.e) * r)

    # ── Text ─────────────────────────────────────────────────────────────

    def __str__(self) -> str:
        out = []
        for coef, tag in ((self.a, ""), (self.b, "*s"), (self.c, "*i"), (self.e, "*s*i")):
            if not coef:
                continue
            text = f"{abs(coef)}{tag}"
            if coef < 0:
                out.append(f"-{text}")
            else:
                out.append(f"+{text}" if out else text)
        return "".join(out) or "0"

    def __repr__(self) -> str:
        if self.field == QQ:
            return f"Scalar({str(self)!r})"
        return f"Scalar({str(self)!r}, {self.field})"


Number = Scalar | int | Fraction


def radical(x) -> Scalar:
    """Exact √x for rational x, in the smallest field that contains it.

    Negative radicands give i·√|x|.
    """
    q = Scalar.of(x).to_fraction() if not isinstance(x, Fraction) else x
    q = Fraction(q)
    if q == 0:
        return Scalar.zero()
    n = abs(q.numerator) * q.denominator
    m, core = _square_split(n)
    coef = Fraction(m, q.denominator)
    imaginary = q < 0
    field = Field(None if core == 1 else core, imaginary)
    if core == 1:
        return Scalar._make(_ZERO if imaginary else coef, _ZERO, coef if imaginary else _ZERO, _ZERO, field)
    return Scalar._make(_ZERO, _ZERO if imaginary else coef, _ZERO, coef if imaginary else _ZERO, field)


def _real_sqrt(x: Scalar) -> Scalar | None:
    field = x.field
    if not x:
        return x
    if not x.b:
        r = _rational_sqrt(x.a)
        if r is not None:
            return Scalar._make(r, _ZERO, _ZERO, _ZERO, field)
        if field.sqrt is not None:
            # a = v²·d has the root v√d
            v = _rational_sqrt(x.a / field.sqrt)
            if v is not None:
                return Scalar._make(_ZERO, v, _ZERO, _ZERO, field)
        return None
    d = field.sqrt
    n = _rational_sqrt(x.a * x.a - d * x.b * x.b)
    if n is None:
        return None
    for u2 in ((x.a + n) / 2, (x.a - n) / 2):
        u = _rational_sqrt(u2)
        if u:
            root = Scalar._make(u, x.b / (2 * u), _ZERO, _ZERO, field)
            return root if root.sign() >= 0 else -root
    return None


def field_sqrt(x: Scalar) -> Scalar | None:
    """A square root of x inside x's own field, or None when there is none.

    Real inputs with a real root get the non-negative one.
    """
    if x.is_real:
        root = _real_sqrt(x.real_part())
        if root is not None:
            return root.lift(x.field)
        if x.field.imaginary:
            root = _real_sqrt((-x).real_part())
            if root is not None:
                return Scalar.i(x.field) * root
        return None
    re_, im_ = x.real_part(), x.imag_part()
    modulus = _real_sqrt(re_ * re_ + im_ * im_)
    if modulus is None:
        return None
    for u2 in ((re_ + modulus) / 2, (re_ - modulus) / 2):
        u = _real_sqrt(u2)
        if u:
            root = u.lift(x.field) + Scalar.i(x.field) * (im_ / (2 * u))
            if root * root == x:
                return root
    return None


# ── Vectors ──────────────────────────────────────────────────────────────

Vector = tuple[Scalar, ...]


def as_vector(values: Iterable, field: Field = QQ) -> Vector:
    return tuple(Scalar.of(v, field) for v in values)


def unit_vector(n: int, k: int, field: Field = QQ) -> Vector:
    zero, one = Scalar.zero(field), Scalar.one(field)
    return tuple(one if j == k else zero for j in range(n))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v, strict=True))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v, strict=True))


def vec_scale(c, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def vec_is_zero(v: Vector) -> bool:
    return not any(v)


def vector_field(v: Vector) -> Field:
    f = QQ
    for x in v:
        if x.field != f:
            f = f.join(x.field)
    return f


def linear_combination(coeffs: Sequence, vectors: Sequence[Vector], n: int, field: Field = QQ) -> Vector:
    out = [Scalar.zero(field)] * n
    for c, v in zip(coeffs, vectors, strict=True):
        if not c:
            continue
        for j, x in enumerate(v):
            if x:
                out[j] = out[j] + c * x
    return tuple(out)


# ── Row reduction ────────────────────────────────────────────────────────


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv if x else x for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [x - f * y if y else x for x, y in zip(m[i], pivot_row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _kernel_from_rref(rows: list[list[Scalar]], pivots: list[int], ncols: int, field: Field) -> list[Vector]:
    zero, one = Scalar.zero(field), Scalar.one(field)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, p in zip(rows, pivots):
            if row[free]:
                v[p] = -row[free]
        basis.append(tuple(v))
    return basis


# ── Matrices ─────────────────────────────────────────────────────────────


class Matrix:
    """Dense immutable matrix of Scalars sharing one Field.

    When a matrix represents a linear map, column j is the image of the
    j-th basis vector.
    """

    __slots__ = ("rows", "field", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], field: Field | None = None, ncols: int | None = None):
        raw = [[x if isinstance(x, Scalar) else Scalar.of(x) for x in row] for row in rows]
        f = field or QQ
        for row in raw:
            for x in row:
                if x.field != f:
                    f = f.join(x.field)
        width = len(raw[0]) if raw else (ncols or 0)
        if any(len(row) != width for row in raw):
            raise DimensionError("ragged matrix rows")
        self.rows = tuple(tuple(x.lift(f) for x in row) for row in raw)
        self.field = f
        self.nrows = len(raw)
        self.ncols = width

    @classmethod
    def _wrap(cls, rows: list[list[Scalar]] | tuple, field: Field, ncols: int) -> Matrix:
        m = object.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.field = field
        m.nrows = len(m.rows)
        m.ncols = ncols
        return m

    # ── Constructors ─────────────────────────────────────────────────────

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        return cls._wrap([unit_vector(n, i, field) for i in range(n)], field, n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field = QQ) -> Matrix:
        z = Scalar.zero(field)
        return cls._wrap([[z] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def diagonal(cls, values: Sequence, field: Field | None = None) -> Matrix:
        vals = [Scalar.of(v) if not isinstance(v, Scalar) else v for v in values]
        n = len(vals)
        rows = [[vals[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls(rows, field, ncols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field | None = None, nrows: int | None = None) -> Matrix:
        cols = list(columns)
        if not cols:
            return cls.zeros(nrows or 0, 0, field or QQ)
        return cls([list(r) for r in zip(*cols)], field)

    # ── Access ───────────────────────────────────────────────────────────

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> Vector:
        return self.rows[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.rows[i][j] == self.rows[j][i] for i in range(self.nrows) for j in range(i)
        )

    def over(self, field: Field) -> Matrix:
        f = self.field.join(field)
        return Matrix._wrap([[x.lift(f) for x in r] for r in self.rows], f, self.ncols)

    # ── Arithmetic ───────────────────────────────────────────────────────

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.nrows == other.nrows and self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field.join(other.field)
        return Matrix._wrap(
            [[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], f, self.ncols
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        f = self.field.join(other.field)
        return Matrix._wrap(
            [[x - y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], f, self.ncols
        )

    def __neg__(self) -> Matrix:
        return Matrix._wrap([[-x for x in r] for r in self.rows], self.field, self.ncols)

    def scaled(self, c) -> Matrix:
        c = Scalar.of(c) if not isinstance(c, Scalar) else c
        f = self.field.join(c.field)
        return Matrix._wrap([[c * x for x in r] for r in self.rows], f, self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            f = self.field.join(other.field)
            zero = Scalar.zero(f)
            out = []
            for row in self.rows:
                acc = [zero] * other.ncols
                for k, a in enumerate(row):
                    if not a:
                        continue
                    for j, b in enumerate(other.rows[k]):
                        if b:
                            acc[j] = acc[j] + a * b
                out.append(acc)
            return Matrix._wrap(out, f, other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} matrix to a {len(v)}-vector")
        f = self.field.join(vector_field(v))
        zero = Scalar.zero(f)
        out_v = []
        for row in self.rows:
            acc = zero
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out_v.append(acc)
        return tuple(out_v)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def _same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def transpose(self) -> Matrix:
        return Matrix._wrap([list(c) for c in zip(*self.rows)] if self.rows else [],
                            self.field, self.nrows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def conj(self) -> Matrix:
        return Matrix._wrap([[x.conj() for x in r] for r in self.rows], self.field, self.ncols)

    def trace(self) -> Scalar:
        self._require_square()
        acc = Scalar.zero(self.field)
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def __pow__(self, n: int) -> Matrix:
        self._require_square()
        result, base = Matrix.identity(self.nrows, self.field), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def _require_square(self) -> None:
        if not self.is_square:
            raise DimensionError(f"square matrix required, got {self.shape}")

    # ── Elimination ──────────────────────────────────────────────────────

    def rref(self) -> tuple[Matrix, list[int]]:
        rows, pivots = rref(self.rows, self.ncols)
        return Matrix._wrap(rows, self.field, self.ncols), pivots

    def rank(self) -> int:
        return len(rref(self.rows, self.ncols)[1])

    def kernel(self) -> list[Vector]:
        rows, pivots = rref(self.rows, self.ncols)
        return _kernel_from_rref(rows, pivots, self.ncols, self.field)

    def solve(self, rhs: Sequence[Scalar]) -> Vector | None:
        """One solution x of self·x = rhs (free variables 0), or None."""
        rhs = tuple(rhs)
        if len(rhs) != self.nrows:
            raise DimensionError("right-hand side has the wrong length")
        f = self.field.join(vector_field(rhs))
        aug = [list(r) + [b.lift(f)] for r, b in zip(self.rows, rhs)]
        rows, pivots = rref([[x.lift(f) for x in r] for r in aug], self.ncols + 1)
        if pivots and pivots[-1] == self.ncols:
            return None
        x = [Scalar.zero(f)] * self.ncols
        for row, p in zip(rows, pivots):
            x[p] = row[-1]
        return tuple(x)

    def determinant(self) -> Scalar:
        self._require_square()
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = Scalar.one(self.field)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return Scalar.zero(self.field)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                f = m[i][c] * inv
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[c])]
        return det

    def inverse(self) -> Matrix:
        self._require_square()
        n = self.nrows
        ident = Matrix.identity(n, self.field)
        aug = [list(r) + list(e) for r, e in zip(self.rows, ident.rows)]
        rows, pivots = rref(aug, 2 * n)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise ZeroDivisionError("matrix is singular")
        return Matrix._wrap([r[n:] for r in rows], self.field, n)

    # ── Polynomials and forms ────────────────────────────────────────────

    def char_poly(self) -> list[Scalar]:
        """Faddeev–LeVerrier; ``coeffs[k]`` multiplies t^(n−k), coeffs[0] = 1."""
        self._require_square()
        n = self.nrows
        field = self.field
        coeffs = [Scalar.one(field)] + [Scalar.zero(field)] * n
        ident = Matrix.identity(n, field)
        mk = Matrix.zeros(n, n, field)
        for k in range(1, n + 1):
            mk = self @ mk + ident.scaled(coeffs[k - 1])
            coeffs[k] = -(self @ mk).trace() / k
        return coeffs

    def min_poly(self) -> list[Scalar]:
        """Monic minimal polynomial, highest degree first."""
        self._require_square()
        n = self.nrows
        flat = lambda m: [x for r in m.rows for x in r]
        powers = [Matrix.identity(n, self.field)]
        while True:
            nxt = powers[-1] @ self
            basis = Matrix.from_columns([flat(p) for p in powers], self.field)
            coeffs = basis.solve(flat(nxt))
            if coeffs is not None:
                # t^k − Σ c_j t^j, listed from t^k down to t^0
                return [Scalar.one(self.field)] + [-c for c in reversed(coeffs)]
            powers.append(nxt)

    def is_nilpotent(self) -> bool:
        self._require_square()
        p, power = self, 1
        while power < self.nrows:
            p = p @ p
            power *= 2
        return p.is_zero()

    def signature(self) -> tuple[int, int, int]:
        """(positive, negative, zero) counts by symmetric Gaussian congruence."""
        if not self.is_symmetric():
            raise DimensionError("signature needs a symmetric matrix")
        if not self.field.is_real:
            raise FieldError(f"signature needs a real field, got {self.field}")
        s = [list(r) for r in self.rows]
        active = list(range(self.nrows))
        pos = neg = zero = 0
        while active:
            i = next((t for t in active if s[t][t]), None)
            if i is None:
                pair = next(((t, u) for t in active for u in active if t < u and s[t][u]), None)
                if pair is None:
                    zero += len(active)
                    break
                i, j = pair
                # e_i ↦ e_i + e_j makes the (i,i) entry 2·s[i][j]
                for t in active:
                    s[i][t] = s[i][t] + s[j][t]
                for t in active:
                    s[t][i] = s[t][i] + s[t][j]
            p = s[i][i]
            if p.sign() > 0:
                pos += 1
            else:
                neg += 1
            active.remove(i)
            col = {t: s[t][i] for t in active}
            for t in active:
                if not col[t]:
                    continue
                f = col[t] / p
                for u in active:
                    if s[i][u]:
                        s[t][u] = s[t][u] - f * s[i][u]
        return pos, neg, zero

    # ── Display ──────────────────────────────────────────────────────────

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"

    def __str__(self) -> str:
        cells = [[str(x) for x in r] for r in self.rows]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in cells)


# ── Operation-style entry points ─────────────────────────────────────────


def rank(m: Matrix) -> int:
    return m.rank()


def kernel(m: Matrix) -> list[Vector]:
    return m.kernel()


def char_poly(m: Matrix) -> list[Scalar]:
    return m.char_poly()


def min_poly(m: Matrix) -> list[Scalar]:
    return m.min_poly()


def is_nilpotent(m: Matrix) -> bool:
    return m.is_nilpotent()


def signature(m: Matrix) -> tuple[int, int, int]:
    return m.signature()


def elementary_symmetric(m: Matrix, k: int) -> Scalar:
    """e_k of the eigenvalues, read from the characteristic polynomial."""
    c = m.char_poly()[k]
    return c if k % 2 == 0 else -c
