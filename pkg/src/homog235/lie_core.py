"""
Lie algebras given by structure constants, and the structural invariants the
identification algorithms read off them: Killing form, radical, center,
derived series, trace subspace, centroid and the splitting of a
two-ideal semisimple algebra.

Usage:
    from homog235.lie_core import LieAlgebra, killing_form, radical

    sl2 = LieAlgebra.from_relations(
        ["X", "Y", "H"],
        {("X", "Y"): {"H": 1}, ("H", "X"): {"X": 2}, ("H", "Y"): {"Y": -2}},
    )
    print(check_jacobi(sl2).ok, killing_form(sl2).signature())
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from homog235.errors import (
    CentroidDimensionError,
    DimensionError,
    FieldTooSmallError,
    SplitError,
)
from homog235.exact_arith import (
    QQ,
    Field,
    Matrix,
    Scalar,
    Vector,
    field_sqrt,
    rref,
    unit_vector,
    vector_field,
)

Brackets = dict[tuple[int, int], dict[int, Scalar]]


class LieAlgebra:
    """Finite-dimensional Lie algebra stored by its nonzero brackets.

    ``brackets[(i, j)]`` with i < j maps k to c^k_ij, so that
    [e_i, e_j] = Σ_k c^k_ij e_k.  Antisymmetry is implied by storage.
    """

    __slots__ = ("dim", "field", "labels", "brackets")

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        field: Field | None = None,
        labels: Sequence[str] | None = None,
    ):
        if dim < 1:
            raise DimensionError("a Lie algebra needs dimension ≥ 1")
        f = field or QQ
        table: Brackets = {}
        for (i, j), image in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionError(f"bracket index ({i}, {j}) out of range for dim {dim}")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            for k, coef in image.items():
                if not 0 <= k < dim:
                    raise DimensionError(f"bracket image index {k} out of range for dim {dim}")
                c = coef if isinstance(coef, Scalar) else Scalar.of(coef)
                if not c:
                    continue
                if i == j:
                    raise DimensionError(f"[e_{i}, e_{i}] must vanish")
                f = f.join(c.field)
                slot = table.setdefault((i, j), {})
                slot[k] = slot.get(k, Scalar.zero()) + (c if sign > 0 else -c)
        self.dim = dim
        self.field = f
        self.labels = tuple(labels) if labels else tuple(f"e{n + 1}" for n in range(dim))
        if len(self.labels) != dim:
            raise DimensionError("one label per basis vector is required")
        self.brackets = {
            key: {k: c.lift(f) for k, c in img.items() if c}
            for key, img in sorted(table.items())
            if any(img.values())
        }

    @classmethod
    def from_relations(
        cls,
        labels: Sequence[str],
        relations: Mapping[tuple[str, str], Mapping[str, object]],
        field: Field | None = None,
    ) -> LieAlgebra:
        """Build from named relations such as ``{("X", "Y"): {"H": 1}}``."""
        index = {name: n for n, name in enumerate(labels)}
        try:
            table = {
                (index[a], index[b]): {index[k]: c for k, c in img.items()}
                for (a, b), img in relations.items()
            }
        except KeyError as exc:
            raise DimensionError(f"unknown basis label {exc.args[0]!r}") from None
        return cls(len(labels), table, field, labels)

    # ── Brackets ─────────────────────────────────────────────────────────

    def basis_bracket(self, i: int, j: int) -> Vector:
        zero = Scalar.zero(self.field)
        out = [zero] * self.dim
        if i == j:
            return tuple(out)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        for k, c in self.brackets.get((i, j), {}).items():
            out[k] = c if sign > 0 else -c
        return tuple(out)

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError(f"vectors must have length {self.dim}")
        f = self.field.join(vector_field(tuple(x))).join(vector_field(tuple(y)))
        out = [Scalar.zero(f)] * self.dim
        for (i, j), image in self.brackets.items():
            w = x[i] * y[j] - x[j] * y[i]
            if not w:
                continue
            for k, c in image.items():
                out[k] = out[k] + w * c
        return tuple(out)

    def ad(self, x: Sequence[Scalar]) -> Matrix:
        """Matrix of y ↦ [x, y]; column j is [x, e_j]."""
        f = self.field.join(vector_field(tuple(x)))
        zero = Scalar.zero(f)
        cols = [[zero] * self.dim for _ in range(self.dim)]
        for (i, j), image in self.brackets.items():
            if x[i]:
                for k, c in image.items():
                    cols[j][k] = cols[j][k] + x[i] * c
            if x[j]:
                for k, c in image.items():
                    cols[i][k] = cols[i][k] - x[j] * c
        return Matrix._wrap([list(r) for r in zip(*cols)], f, self.dim)

    def ad_basis(self) -> list[Matrix]:
        return [self.ad(unit_vector(self.dim, n, self.field)) for n in range(self.dim)]

    # ── Basis and field changes ──────────────────────────────────────────

    def change_basis(self, p: Matrix, labels: Sequence[str] | None = None) -> LieAlgebra:
        """Re-express the algebra in the basis formed by the columns of ``p``."""
        if p.shape != (self.dim, self.dim):
            raise DimensionError(f"basis change must be {self.dim}×{self.dim}")
        pinv = p.inverse()
        cols = p.columns()
        table = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                v = pinv @ self.bracket(cols[a], cols[b])
                image = {k: c for k, c in enumerate(v) if c}
                if image:
                    table[(a, b)] = image
        return LieAlgebra(self.dim, table, self.field.join(p.field), labels)

    def over(self, field: Field) -> LieAlgebra:
        return LieAlgebra(self.dim, self.brackets, self.field.join(field), self.labels)

    def structure_constants(self) -> Iterable[tuple[int, int, int, Scalar]]:
        for (i, j), image in self.brackets.items():
            for k, c in sorted(image.items()):
                yield i, j, k, c

    def is_abelian(self) -> bool:
        return not self.brackets

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.brackets == other.brackets

    def __hash__(self) -> int:
        return hash((self.dim, tuple((k, tuple(sorted(v.items()))) for k, v in self.brackets.items())))

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, field={self.field}, labels={list(self.labels)})"


# ── Subspaces ────────────────────────────────────────────────────────────


def _scalar_key(x: Scalar) -> tuple[Fraction, ...]:
    return (x.a, x.b, x.c, x.e)


class Subspace:
    """Subspace of an n-dimensional coordinate space, kept in reduced echelon form.

    Two Subspace objects are equal exactly when they span the same space.
    """

    __slots__ = ("ambient", "basis", "pivots", "field")

    def __init__(self, vectors: Iterable[Sequence[Scalar]], ambient: int, field: Field | None = None):
        vecs = [tuple(v) for v in vectors]
        f = field or QQ
        for v in vecs:
            if len(v) != ambient:
                raise DimensionError(f"vector of length {len(v)} in a {ambient}-dimensional space")
            f = f.join(vector_field(v))
        rows, pivots = rref([[x.lift(f) for x in v] for v in vecs], ambient)
        self.ambient = ambient
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in rows)
        self.pivots = tuple(pivots)
        self.field = f

    @classmethod
    def zero(cls, ambient: int, field: Field = QQ) -> Subspace:
        return cls([], ambient, field)

    @classmethod
    def whole(cls, ambient: int, field: Field = QQ) -> Subspace:
        return cls([unit_vector(ambient, n, field) for n in range(ambient)], ambient, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim}, [{rows}])"

    def sort_key(self) -> tuple:
        return (self.pivots, tuple(tuple(_scalar_key(x) for x in v) for v in self.basis))

    # ── Membership ───────────────────────────────────────────────────────

    def coordinates(self, v: Sequence[Scalar]) -> Vector | None:
        """Coefficients of v in the echelon basis, or None when v is outside."""
        coeffs = tuple(v[p] for p in self.pivots)
        f = self.field.join(vector_field(tuple(v)))
        recon = [Scalar.zero(f)] * self.ambient
        for c, b in zip(coeffs, self.basis):
            if c:
                recon = [r + c * x for r, x in zip(recon, b)]
        return coeffs if tuple(recon) == tuple(v) else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains(self, other: Subspace) -> bool:
        return all(v in self for v in other.basis)

    def __le__(self, other: Subspace) -> bool:
        return other.contains(self)

    # ── Lattice operations ───────────────────────────────────────────────

    def __add__(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        return Subspace(self.basis + other.basis, self.ambient, self.field.join(other.field))

    def intersect(self, other: Subspace) -> Subspace:
        self._same_ambient(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient, self.field.join(other.field))
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        m = Matrix.from_columns(cols)
        vecs = []
        for sol in m.kernel():
            coeffs = sol[: self.dim]
            vecs.append(_combine(coeffs, self.basis, self.ambient, m.field))
        return Subspace(vecs, self.ambient, m.field)

    def __and__(self, other: Subspace) -> Subspace:
        return self.intersect(other)

    def image(self, m: Matrix) -> Subspace:
        return Subspace([m @ v for v in self.basis], m.nrows, self.field.join(m.field))

    def over(self, field: Field) -> Subspace:
        return Subspace(self.basis, self.ambient, self.field.join(field))

    def complement_in(self, whole: Subspace) -> list[Vector]:
        """Vectors of ``whole``'s echelon basis completing self to a basis of ``whole``."""
        picked: list[Vector] = []
        span = self
        for v in whole.basis:
            if v not in span:
                picked.append(v)
                span = span + Subspace([v], self.ambient, span.field)
        return picked

    def _same_ambient(self, other: Subspace) -> None:
        if self.ambient != other.ambient:
            raise DimensionError(f"subspaces of {self.ambient}- and {other.ambient}-dimensional spaces")


def _combine(coeffs: Sequence[Scalar], vectors: Sequence[Vector], n: int, field: Field) -> Vector:
    out = [Scalar.zero(field)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            out = [o + c * x for o, x in zip(out, v)]
    return tuple(out)


def span(L: LieAlgebra, vectors: Iterable[Sequence[Scalar]]) -> Subspace:
    return Subspace(vectors, L.dim, L.field)


# ── Jacobi ───────────────────────────────────────────────────────────────


@dataclass(slots=True)
class JacobiReport:
    """Basis triples (i < j < k) on which the Jacobi identity fails."""

    violations: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "Jacobi identity: ok"
        shown = ", ".join(str(t) for t in self.violations[:10])
        more = f" (+{len(self.violations) - 10} more)" if len(self.violations) > 10 else ""
        return f"Jacobi identity: {len(self.violations)} violating triples {shown}{more}"


def check_jacobi(L: LieAlgebra) -> JacobiReport:
    report = JacobiReport()
    e = [unit_vector(L.dim, n, L.field) for n in range(L.dim)]
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            bij = L.basis_bracket(i, j)
            for k in range(j + 1, L.dim):
                total = [
                    a + b + c
                    for a, b, c in zip(
                        L.bracket(bij, e[k]),
                        L.bracket(L.basis_bracket(j, k), e[i]),
                        L.bracket(L.basis_bracket(k, i), e[j]),
                    )
                ]
                if any(total):
                    report.violations.append((i, j, k))
    return report


# ── Brackets of subspaces ────────────────────────────────────────────────


def bracket(L: LieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    return L.bracket(x, y)


def subspace_bracket(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    if A.ambient != L.dim or B.ambient != L.dim:
        raise DimensionError("subspaces do not live in this algebra")
    vecs = [L.bracket(a, b) for a in A.basis for b in B.basis]
    return Subspace(vecs, L.dim, L.field.join(A.field).join(B.field))


# ── Killing form and derived invariants ─────────────────────────────────


def _trace_product(a: Matrix, b: Matrix) -> Scalar:
    acc = Scalar.zero(a.field.join(b.field))
    for i, row in enumerate(a.rows):
        for j, x in enumerate(row):
            if x:
                y = b.rows[j][i]
                if y:
                    acc = acc + x * y
    return acc


def killing_form(L: LieAlgebra) -> Matrix:
    """κ(e_i, e_j) = tr(ad e_i ∘ ad e_j)."""
    ads = L.ad_basis()
    n = L.dim
    rows = [[Scalar.zero(L.field)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            k = _trace_product(ads[i], ads[j])
            rows[i][j] = rows[j][i] = k
    return Matrix._wrap(rows, L.field, n)


def killing_value(L: LieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar], kappa: Matrix | None = None) -> Scalar:
    kappa = kappa or killing_form(L)
    kx = kappa @ tuple(y)
    acc = Scalar.zero(kappa.field)
    for a, b in zip(x, kx):
        if a and b:
            acc = acc + a * b
    return acc


def derived_algebra(L: LieAlgebra) -> Subspace:
    whole = Subspace.whole(L.dim, L.field)
    return subspace_bracket(L, whole, whole)


def radical(L: LieAlgebra) -> Subspace:
    """rad 𝔥 = {x : κ(x, [𝔥, 𝔥]) = 0} (characteristic zero)."""
    kappa = killing_form(L)
    derived = derived_algebra(L)
    if not derived.basis:
        return Subspace.whole(L.dim, L.field)
    rows = [kappa @ d for d in derived.basis]
    return Subspace(Matrix(rows, L.field).kernel(), L.dim, L.field)


def center(L: LieAlgebra) -> Subspace:
    rows = [r for m in L.ad_basis() for r in m.rows]
    return Subspace(Matrix(rows, L.field).kernel(), L.dim, L.field)


def derived_series(L: LieAlgebra, start: Subspace | None = None) -> list[Subspace]:
    """[S, S⁽¹⁾, S⁽²⁾, ...] until the series stabilizes (S defaults to 𝔥)."""
    series = [start or Subspace.whole(L.dim, L.field)]
    while True:
        nxt = subspace_bracket(L, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if not nxt.basis:
            return series


def trace_subspace(L: LieAlgebra) -> Subspace:
    """𝔱 = {v : tr ad v = 0}."""
    traces = [m.trace() for m in L.ad_basis()]
    return Subspace(Matrix([traces], L.field).kernel(), L.dim, L.field)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return S.contains(subspace_bracket(L, Subspace.whole(L.dim, L.field), S))


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return S.contains(subspace_bracket(L, S, S))


# ── Centroid and splitting ───────────────────────────────────────────────


def centroid(L: LieAlgebra) -> list[Matrix]:
    """Basis of the endomorphisms φ with φ[x, y] = [x, φy].

    Equivalently φ commutes with every ad e_i; the commutant is cut down one
    ad-matrix at a time.
    """
    n = L.dim
    f = L.field
    # current solution space: a list of n×n matrices
    zero, one = Scalar.zero(f), Scalar.one(f)
    space = [
        Matrix._wrap([[one if (a, b) == (r, c) else zero for b in range(n)] for a in range(n)], f, n)
        for r in range(n)
        for c in range(n)
    ]
    for ad in L.ad_basis():
        if not space:
            break
        if ad.is_zero():
            continue
        commutators = [(phi @ ad) - (ad @ phi) for phi in space]
        cols = [[x for r in c.rows for x in r] for c in commutators]
        system = Matrix.from_columns(cols, f)
        kernel = system.kernel()
        nxt = []
        for coeffs in kernel:
            acc = Matrix.zeros(n, n, f)
            for c, phi in zip(coeffs, space):
                if c:
                    acc = acc + phi.scaled(c)
            nxt.append(acc)
        space = nxt
    return space


def _is_scalar_matrix(m: Matrix) -> bool:
    return m == Matrix.identity(m.nrows, m.field).scaled(m[0, 0])


def simple_ideal_split(L: LieAlgebra) -> tuple[Subspace, Subspace]:
    """The two simple ideals of a semisimple algebra with a 2-dimensional centroid.

    The eigenspaces of a non-scalar centroid element are the ideals; they are
    returned in echelon order.
    """
    kappa = killing_form(L)
    if kappa.rank() < L.dim:
        raise SplitError("Killing form is degenerate; the algebra is not semisimple")
    cent = centroid(L)
    if len(cent) != 2:
        raise CentroidDimensionError(f"centroid has dimension {len(cent)}, expected 2")
    c = next(m for m in cent if not _is_scalar_matrix(m))
    mp = c.min_poly()
    if len(mp) != 3:
        raise CentroidDimensionError(f"centroid element has minimal polynomial of degree {len(mp) - 1}")
    _one, p, q = mp
    disc = p * p - q * 4
    root = field_sqrt(disc)
    if root is None:
        raise FieldTooSmallError(
            f"discriminant {disc} has no square root in {disc.field}; "
            "re-present the model over the extended field"
        )
    ident = Matrix.identity(L.dim, c.field)
    ideals = []
    for r in ((-p + root) / 2, (-p - root) / 2):
        ideals.append(Subspace((c - ident.scaled(r)).kernel(), L.dim, c.field.join(r.field)))
    ideals.sort(key=Subspace.sort_key)
    return ideals[0], ideals[1]


# ── Random changes of basis ──────────────────────────────────────────────


def random_invertible(n: int, seed: int, bound: int = 3, field: Field = QQ) -> Matrix:
    """Seeded random invertible matrix with small integer entries."""
    rng = np.random.default_rng(seed)
    while True:
        entries = rng.integers(-bound, bound + 1, size=(n, n))
        m = Matrix([[int(x) for x in row] for row in entries], field)
        if m.rank() == n:
            return m
