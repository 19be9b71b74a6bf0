"""
Algebraic models (𝔥, 𝔨; 𝔡): validity axioms, complexification,
anti-involutions and their fixed-point real forms, and explicit
equivalence checks.

Usage:
    from homog235.models import validate_model, fixed_points

    report = validate_model(model)
    print(report.summary())
    real = fixed_points(complex_model, phi)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from homog235.errors import DimensionError, ModelError, SingularMapError
from homog235.exact_arith import Field, Matrix, Scalar, Vector, rref
from homog235.lie_core import (
    JacobiReport,
    LieAlgebra,
    Subspace,
    check_jacobi,
    subspace_bracket,
)


class Reality(Enum):
    REAL = "real"
    COMPLEX = "complex"


@dataclass(slots=True)
class AlgebraicModel:
    """A Lie algebra with nested subspaces 𝔨 ⊂ 𝔡 ⊂ 𝔥.

    ``adapted_basis`` (optional) holds the vectors e_1..e_n as columns, so that
    𝔨 = span{e_n}, 𝔡 = span{e_{n-2}, e_{n-1}} ⊕ 𝔨 and so on.
    """

    algebra: LieAlgebra
    k: Subspace
    d: Subspace
    reality: Reality = Reality.COMPLEX
    adapted_basis: Matrix | None = None

    def __post_init__(self):
        n = self.algebra.dim
        if self.k.ambient != n or self.d.ambient != n:
            raise DimensionError(f"𝔨 and 𝔡 must live in the {n}-dimensional algebra")
        if self.reality is Reality.REAL and not self.algebra.field.is_real:
            raise ModelError(f"real model over the non-real field {self.algebra.field}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self) -> Field:
        return self.algebra.field.join(self.k.field).join(self.d.field)

    @property
    def is_real(self) -> bool:
        return self.reality is Reality.REAL

    def change_basis(self, p: Matrix) -> AlgebraicModel:
        """The same model written in the basis given by the columns of ``p``."""
        pinv = p.inverse()
        adapted = pinv @ self.adapted_basis if self.adapted_basis is not None else None
        return AlgebraicModel(
            self.algebra.change_basis(p),
            self.k.image(pinv),
            self.d.image(pinv),
            self.reality,
            adapted,
        )

    def over(self, field: Field) -> AlgebraicModel:
        return AlgebraicModel(
            self.algebra.over(field), self.k.over(field), self.d.over(field),
            self.reality, self.adapted_basis,
        )

    def in_adapted_basis(self) -> AlgebraicModel:
        if self.adapted_basis is None:
            raise ModelError("model carries no adapted basis")
        return self.change_basis(self.adapted_basis)


# ── Validation ───────────────────────────────────────────────────────────


@dataclass(slots=True)
class AxiomResult:
    name: str
    ok: bool
    witness: str = ""


@dataclass(slots=True)
class ModelReport:
    """Outcome of every model axiom, with witnesses for the failures."""

    results: list[AxiomResult] = field(default_factory=list)
    dims: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list[str]:
        return [r.name for r in self.results if not r.ok]

    def summary(self) -> str:
        lines = ["═══ Model Axioms ═══", ""]
        for r in self.results:
            mark = "pass" if r.ok else "FAIL"
            line = f"  {r.name:<12} {mark}"
            if r.witness:
                line += f"   {r.witness}"
            lines.append(line)
        if self.dims:
            lines.append("")
            lines.append("  dims: " + "  ".join(f"{k}={v}" for k, v in self.dims.items()))
        return "\n".join(lines)


def _first_outside(L: LieAlgebra, A: Subspace, B: Subspace, target: Subspace) -> str:
    for a_idx, a in enumerate(A.basis):
        for b_idx, b in enumerate(B.basis):
            if L.bracket(a, b) not in target:
                return f"bracket of basis vectors #{a_idx + 1} and #{b_idx + 1} leaves the subspace"
    return ""


def validate_model(model: AlgebraicModel, jacobi: JacobiReport | None = None) -> ModelReport:
    """Check Jacobi plus the five model axioms."""
    L, k, d = model.algebra, model.k, model.d
    report = ModelReport()
    jacobi = jacobi or check_jacobi(L)
    report.results.append(AxiomResult("jacobi", jacobi.ok, "" if jacobi.ok else jacobi.summary()))

    kk = subspace_bracket(L, k, k)
    ok = k.contains(kk)
    report.results.append(AxiomResult("subalgebra", ok, "" if ok else _first_outside(L, k, k, k)))

    nested = d.contains(k) and d.dim - k.dim == 2
    witness = ""
    if not d.contains(k):
        witness = "𝔨 is not contained in 𝔡"
    elif d.dim - k.dim != 2:
        witness = f"dim 𝔡/𝔨 = {d.dim - k.dim}, expected 2"
    report.results.append(AxiomResult("nested", nested, witness))

    kd = subspace_bracket(L, k, d)
    ok = d.contains(kd)
    report.results.append(AxiomResult("invariance", ok, "" if ok else _first_outside(L, k, d, d)))

    dd = d + subspace_bracket(L, d, d)
    ddd = dd + subspace_bracket(L, d, dd)
    ok = ddd.dim == L.dim
    report.results.append(AxiomResult(
        "genericity", ok, "" if ok else f"𝔡 + [𝔡,𝔡] + [𝔡,[𝔡,𝔡]] has dimension {ddd.dim} of {L.dim}",
    ))

    ok = dd.dim == k.dim + 3
    report.results.append(AxiomResult(
        "growth", ok, "" if ok else f"dim(𝔡 + [𝔡,𝔡]) = {dd.dim}, expected {k.dim + 3}",
    ))

    report.dims = {"h": L.dim, "k": k.dim, "d": d.dim, "d+[d,d]": dd.dim}
    return report


def complexify(model: AlgebraicModel) -> AlgebraicModel:
    if not model.is_real:
        raise ModelError("complexify expects a real model")
    f = model.field.complexified()
    return AlgebraicModel(
        model.algebra.over(f), model.k.over(f), model.d.over(f),
        Reality.COMPLEX, model.adapted_basis,
    )


# ── Anti-involutions ─────────────────────────────────────────────────────


@dataclass(slots=True)
class AntiInvolution:
    """Antilinear map v ↦ M·conj(v) on a complex algebra."""

    matrix: Matrix

    def __call__(self, v) -> Vector:
        return self.matrix @ tuple(x.conj() for x in v)

    def square(self) -> Matrix:
        """φ∘φ as a linear map: M·conj(M)."""
        return self.matrix @ self.matrix.conj()

    def transport(self, alpha: Matrix) -> AntiInvolution:
        """α∘φ∘α⁻¹, which acts by α·M·conj(α⁻¹)."""
        return AntiInvolution(alpha @ self.matrix @ alpha.inverse().conj())

    def image(self, S: Subspace) -> Subspace:
        return Subspace([self(v) for v in S.basis], S.ambient, S.field.join(self.matrix.field))

    @classmethod
    def conjugation(cls, n: int, field: Field) -> AntiInvolution:
        return cls(Matrix.identity(n, field.complexified()))


@dataclass(slots=True)
class AntiInvolutionReport:
    involutive: bool = True
    bracket_compatible: bool = True
    preserves_k: bool | None = None
    preserves_d: bool | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.involutive and self.bracket_compatible

    @property
    def admissible(self) -> bool:
        return self.ok and bool(self.preserves_k) and bool(self.preserves_d)


def check_anti_involution(L: LieAlgebra, phi: AntiInvolution) -> AntiInvolutionReport:
    if phi.matrix.shape != (L.dim, L.dim):
        raise DimensionError(f"anti-involution must be {L.dim}×{L.dim}")
    report = AntiInvolutionReport()
    if phi.square() != Matrix.identity(L.dim, phi.matrix.field):
        report.involutive = False
        report.failures.append("φ² ≠ id")
    cols = phi.matrix.columns()
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            lhs = phi(L.basis_bracket(a, b))
            rhs = L.bracket(cols[a], cols[b])
            if lhs != rhs:
                report.bracket_compatible = False
                report.failures.append(f"φ[e{a + 1}, e{b + 1}] ≠ [φe{a + 1}, φe{b + 1}]")
    return report


def check_admissible(model: AlgebraicModel, phi: AntiInvolution) -> bool:
    return admissibility_report(model, phi).admissible


def admissibility_report(model: AlgebraicModel, phi: AntiInvolution) -> AntiInvolutionReport:
    report = check_anti_involution(model.algebra, phi)
    report.preserves_k = phi.image(model.k) == model.k.over(phi.matrix.field)
    report.preserves_d = phi.image(model.d) == model.d.over(phi.matrix.field)
    if not report.preserves_k:
        report.failures.append("φ(𝔨) ≠ 𝔨")
    if not report.preserves_d:
        report.failures.append("φ(𝔡) ≠ 𝔡")
    return report


def fixed_basis(model: AlgebraicModel, phi: AntiInvolution) -> Matrix:
    """Columns: an echelonized real basis of the φ-fixed vectors.

    Writing v = x + iy and M = R + iJ, φ(v) = v becomes the real system
    (R − I)x + Jy = 0, Jx − (R + I)y = 0 in the interleaved unknowns
    (x1, y1, x2, y2, ...).
    """
    m = phi.matrix
    n = m.nrows
    real = m.field.real
    R = [[x.real_part() for x in row] for row in m.rows]
    J = [[x.imag_part() for x in row] for row in m.rows]
    one, zero = Scalar.one(real), Scalar.zero(real)
    rows = []
    for a in range(n):
        re_row, im_row = [], []
        for b in range(n):
            delta = one if a == b else zero
            re_row += [R[a][b] - delta, J[a][b]]
            im_row += [J[a][b], -(R[a][b] + delta)]
        rows += [re_row, im_row]
    reduced, _pivots = rref(rows, 2 * n)
    kernel = Matrix._wrap(reduced, real, 2 * n).kernel()
    kernel_rows, _ = rref(kernel, 2 * n)
    if len(kernel_rows) != n:
        raise ModelError(
            f"φ-fixed real subspace has dimension {len(kernel_rows)}, expected {n}; "
            "φ is not an anti-involution"
        )
    i = Scalar.i(real)
    cols = [tuple(row[2 * t] + i * row[2 * t + 1] for t in range(n)) for row in kernel_rows]
    return Matrix.from_columns(cols, m.field)


def _realify(v: Vector, real: Field, what: str) -> Vector:
    if any(not x.is_real for x in v):
        raise ModelError(f"{what} is not real in the φ-fixed basis")
    return tuple(x.real_part().lift(real) for x in v)


def fixed_points(model: AlgebraicModel, phi: AntiInvolution) -> AlgebraicModel:
    """The real model (𝔥^φ, 𝔨^φ; 𝔡^φ) written in the basis from fixed_basis."""
    if model.is_real:
        raise ModelError("fixed_points expects a complex model")
    report = admissibility_report(model, phi)
    if not report.admissible:
        raise ModelError("φ is not an admissible anti-involution: " + "; ".join(report.failures))
    F = fixed_basis(model, phi)
    Finv = F.inverse()
    real = F.field.real.join(model.algebra.field.real)
    L = model.algebra
    cols = F.columns()
    table = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            v = _realify(Finv @ L.bracket(cols[a], cols[b]), real, f"[f{a + 1}, f{b + 1}]")
            image = {c: x for c, x in enumerate(v) if x}
            if image:
                table[(a, b)] = image
    algebra = LieAlgebra(L.dim, table, real)
    k = model.k.image(Finv)
    d = model.d.image(Finv)
    k_real = Subspace([_realify(v, real, "𝔨^φ") for v in k.basis], L.dim, real)
    d_real = Subspace([_realify(v, real, "𝔡^φ") for v in d.basis], L.dim, real)
    return AlgebraicModel(algebra, k_real, d_real, Reality.REAL)


# ── Equivalence ──────────────────────────────────────────────────────────


@dataclass(slots=True)
class EquivalenceReport:
    invertible: bool = True
    homomorphism: bool = True
    maps_k: bool = True
    maps_d: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.invertible and self.homomorphism and self.maps_k and self.maps_d


def equivalence_report(m1: AlgebraicModel, m2: AlgebraicModel, alpha: Matrix) -> EquivalenceReport:
    """Check that α (columns: images of m1's basis in m2's coordinates) is an equivalence."""
    n = m1.dim
    if m2.dim != n or alpha.shape != (n, n):
        raise DimensionError(f"cannot compare models of dimensions {m1.dim} and {m2.dim} via {alpha.shape}")
    report = EquivalenceReport()
    if alpha.rank() < n:
        report.invertible = False
        report.failures.append("α is singular")
        return report
    cols = alpha.columns()
    for a in range(n):
        for b in range(a + 1, n):
            if alpha @ m1.algebra.basis_bracket(a, b) != m2.algebra.bracket(cols[a], cols[b]):
                report.homomorphism = False
                report.failures.append(f"α[e{a + 1}, e{b + 1}] ≠ [αe{a + 1}, αe{b + 1}]")
    f = alpha.field.join(m2.field)
    if m1.k.image(alpha) != m2.k.over(f):
        report.maps_k = False
        report.failures.append("α(𝔨) ≠ 𝔨′")
    if m1.d.image(alpha) != m2.d.over(f):
        report.maps_d = False
        report.failures.append("α(𝔡) ≠ 𝔡′")
    return report


def check_equivalence(m1: AlgebraicModel, m2: AlgebraicModel, alpha: Matrix) -> bool:
    report = equivalence_report(m1, m2, alpha)
    if not report.invertible:
        raise SingularMapError("the proposed isomorphism is singular")
    return report.ok
