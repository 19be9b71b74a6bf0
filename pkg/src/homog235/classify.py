"""
Identification of multiply transitive models: map a valid algebraic model
to its catalog label and the invariants that determine it.

Dispatch is on dim 𝔥:

    14  O (complex) or O^R (real), after checking κ is nondegenerate
     7  N.7 with Λ = 64σ4/(100σ4 − 9σ2²) and, for real models, the compass
        arrow of (sign r, sign s) = (−sign σ2, sign σ4)
     6  D.6_*, N.6, D.6_∞ by radical and derived-radical dimension, or
        D.6_λ through the two simple ideals; real models refine the label
        of their complexification

Usage:
    from homog235.classify import classify

    result = classify(model)
    print(result.line())
    print(result.to_json())
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from homog235.catalog import (
    CatalogLabel,
    Family,
    cartan_invariant_J,
    compass,
    lambda_from_rs,
    lambda_invariant,
    lambda_pair,
)
from homog235.errors import ClassificationError, FieldTooSmallError, ParameterError, SplitError
from homog235.exact_arith import Matrix, Scalar, Vector, elementary_symmetric
from homog235.lie_core import (
    LieAlgebra,
    Subspace,
    killing_form,
    killing_value,
    radical,
    simple_ideal_split,
    subspace_bracket,
    trace_subspace,
)
from homog235.models import AlgebraicModel, Reality, complexify

__all__ = [
    "ClassificationResult",
    "classify",
    "classify_dim6_complex",
    "classify_dim6_real",
    "lambda_dim7",
    "real_signs_dim7",
    "n6_mu_sign",
    "lambda_invariant",
    "lambda_from_rs",
    "cartan_invariant_J",
    "lambda_pair",
]


def _sign_text(s: int) -> str:
    return {1: "+", -1: "-", 0: "0"}[s]


@dataclass(slots=True)
class ClassificationResult:
    """A label plus the invariants its branch computed; the rest stay None."""

    label: CatalogLabel
    dim: int
    Lambda: Scalar | None = None
    sigma2: Scalar | None = None
    sigma4: Scalar | None = None
    signs: tuple[int, int] | None = None
    lambda_pair: tuple[Scalar, Scalar] | None = None
    killing: tuple[int, int, int] | None = None
    kappa_k: int | None = None
    mu: Scalar | None = None
    radical_dim: int | None = None
    derived_radical_dim: int | None = None

    @property
    def family(self) -> Family:
        return self.label.family

    def line(self) -> str:
        """One-line report: the label, then every populated invariant."""
        parts = [str(self.label)]
        if self.family is Family.O:
            parts.append(f"dim={self.dim}")
        if self.signs is not None:
            parts.append(f"signs=({_sign_text(self.signs[0])},{_sign_text(self.signs[1])})")
        elif self.sigma2 is not None:
            parts.append(f"sigma2={self.sigma2} sigma4={self.sigma4}")
        if self.killing is not None:
            p, n, z = self.killing
            parts.append(f"killing=({p},{n})" if not z else f"killing=({p},{n},{z})")
        if self.kappa_k is not None:
            parts.append(f"kappa_k={_sign_text(self.kappa_k)}")
        if self.mu is not None:
            parts.append(f"mu={self.mu}")
        if self.radical_dim and self.mu is None:
            parts.append(f"radical_dim={self.radical_dim} derived_radical_dim={self.derived_radical_dim}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        out: dict = {
            "label": str(self.label),
            "family": self.family.value,
            "reality": self.label.reality.value,
            "variant": self.label.variant,
            "dim": self.dim,
        }
        if self.Lambda is not None:
            out["Lambda"] = str(self.Lambda)
        if self.sigma2 is not None:
            out["sigma2"] = str(self.sigma2)
            out["sigma4"] = str(self.sigma4)
        if self.signs is not None:
            out["signs"] = [_sign_text(s) for s in self.signs]
        if self.lambda_pair is not None:
            out["lambda_pair"] = [str(x) for x in self.lambda_pair]
        if self.killing is not None:
            out["killing"] = list(self.killing)
        if self.kappa_k is not None:
            out["kappa_k"] = _sign_text(self.kappa_k)
        if self.mu is not None:
            out["mu"] = str(self.mu)
        if self.radical_dim is not None:
            out["radical_dim"] = self.radical_dim
            out["derived_radical_dim"] = self.derived_radical_dim
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


# ── Entry point ──────────────────────────────────────────────────────────


def classify(model: AlgebraicModel) -> ClassificationResult:
    n = model.dim
    if n == 14:
        return _classify_dim14(model)
    if n == 7:
        return _classify_dim7(model)
    if n == 6:
        if model.is_real:
            return classify_dim6_real(model)
        return classify_dim6_complex(model)
    raise ClassificationError(
        f"dim 𝔥 = {n}: multiply transitive models have symmetry dimension 14, 7 or 6"
    )


def _classify_dim14(model: AlgebraicModel) -> ClassificationResult:
    kappa = killing_form(model.algebra)
    if kappa.rank() < 14:
        raise ClassificationError("14-dimensional 𝔥 with degenerate Killing form is not g2")
    return ClassificationResult(CatalogLabel(Family.O, model.reality), 14)


# ── Dimension 7 ──────────────────────────────────────────────────────────


def lambda_dim7(L: LieAlgebra) -> tuple[Scalar, Scalar, Scalar]:
    """(Λ, σ2, σ4) from the first non-nilpotent ad v₀ with v₀ in 𝔱 = {tr ad = 0}."""
    if L.dim != 7:
        raise ClassificationError(f"lambda_dim7 needs a 7-dimensional algebra, got {L.dim}")
    t = trace_subspace(L)
    if t.dim != 6:
        raise ClassificationError(f"trace subspace has dimension {t.dim}, expected 6")
    for v in t.basis:
        ad = L.ad(v)
        if ad.is_nilpotent():
            continue
        s2 = elementary_symmetric(ad, 2)
        s4 = elementary_symmetric(ad, 4)
        try:
            return lambda_invariant(s2, s4), s2, s4
        except ParameterError as exc:
            raise ClassificationError(str(exc)) from None
    raise ClassificationError("every element of the trace subspace is ad-nilpotent")


def real_signs_dim7(L: LieAlgebra) -> tuple[int, int]:
    """(sign σ2, sign σ4); both signs survive rescaling v₀ by a real factor."""
    if not L.field.is_real:
        raise ClassificationError("real_signs_dim7 needs a real algebra")
    _lam, s2, s4 = lambda_dim7(L)
    return s2.sign(), s4.sign()


def _classify_dim7(model: AlgebraicModel) -> ClassificationResult:
    L = model.algebra
    lam, s2, s4 = lambda_dim7(L)
    if not model.is_real:
        return ClassificationResult(
            CatalogLabel(Family.N7, Reality.COMPLEX, "", (lam,)), 7,
            Lambda=lam, sigma2=s2, sigma4=s4,
        )
    signs = (s2.sign(), s4.sign())
    arrow = compass(-signs[0], signs[1])
    return ClassificationResult(
        CatalogLabel(Family.N7, Reality.REAL, arrow, (lam,)), 7,
        Lambda=lam, sigma2=s2, sigma4=s4, signs=signs,
    )


# ── Dimension 6, complex ─────────────────────────────────────────────────

_BY_DERIVED_RADICAL = {0: Family.D6_STAR, 1: Family.N6, 2: Family.D6_INFTY}


def classify_dim6_complex(model: AlgebraicModel) -> ClassificationResult:
    """Radical dimension 3 splits by dim [𝔯,𝔯]; radical 0 is D.6_λ."""
    L = model.algebra
    rad = radical(L)
    if rad.dim == 3:
        derived = subspace_bracket(L, rad, rad).dim
        if derived not in _BY_DERIVED_RADICAL:
            raise ClassificationError(f"radical has derived algebra of dimension {derived}")
        family = _BY_DERIVED_RADICAL[derived]
        return ClassificationResult(
            CatalogLabel(family, Reality.COMPLEX), 6,
            radical_dim=3, derived_radical_dim=derived,
        )
    if rad.dim == 0:
        pair = _lambda_pair_of(model)
        return ClassificationResult(
            CatalogLabel(Family.D6_LAMBDA, Reality.COMPLEX, "", pair), 6,
            lambda_pair=pair, radical_dim=0, derived_radical_dim=0,
        )
    raise ClassificationError(f"radical has dimension {rad.dim}, expected 0 or 3")


def _project(v: Vector, frame: Matrix, first: Subspace) -> tuple[Vector, Vector]:
    """Components of v in first ⊕ second, where frame lists both bases as columns."""
    coords = frame.solve(v)
    if coords is None:
        raise ClassificationError("the two simple ideals do not span 𝔥")
    cols = frame.columns()
    n, m = len(v), first.dim
    zero = Scalar.zero(frame.field.join(coords[0].field))
    a, b = [zero] * n, [zero] * n
    for t, c in enumerate(coords):
        if not c:
            continue
        target = a if t < m else b
        for r in range(n):
            target[r] = target[r] + c * cols[t][r]
    return tuple(a), tuple(b)


def _lambda_pair_of(model: AlgebraicModel) -> tuple[Scalar, Scalar]:
    """{λ, 1/λ} from the Killing quadratics of the two ideals, pulled back to [𝔨,𝔡]."""
    L = model.algebra
    try:
        first, second = simple_ideal_split(L)
    except FieldTooSmallError:
        raise
    except SplitError as exc:
        raise ClassificationError(f"not a sum of two simple ideals: {exc}") from None
    e = subspace_bracket(L, model.k, model.d)
    if e.dim == 0:
        raise ClassificationError("[𝔨, 𝔡] = 0")
    frame = Matrix.from_columns(list(first.basis) + list(second.basis))
    kappa = killing_form(L)
    parts = [_project(v, frame, first) for v in e.basis]
    g1 = [[killing_value(L, p[0], q[0], kappa) for q in parts] for p in parts]
    g2 = [[killing_value(L, p[1], q[1], kappa) for q in parts] for p in parts]
    pivot = next(((i, j) for i, row in enumerate(g1) for j, x in enumerate(row) if x), None)
    if pivot is None:
        raise ClassificationError("the first Gram matrix vanishes")
    lam = g2[pivot[0]][pivot[1]] / g1[pivot[0]][pivot[1]]
    if any(y != lam * x for r1, r2 in zip(g1, g2) for x, y in zip(r1, r2)):
        raise ClassificationError("Gram matrices not proportional")
    try:
        return lambda_pair(lam)
    except ParameterError as exc:
        raise ClassificationError(str(exc)) from None


# ── Dimension 6, real ────────────────────────────────────────────────────


def _kappa_k_sign(model: AlgebraicModel, kappa: Matrix) -> int:
    k = model.k.basis[0]
    s = killing_value(model.algebra, k, k, kappa).sign()
    if s == 0:
        raise ClassificationError("κ vanishes on 𝔨; the model is not in the classification")
    return s


_D6_LAMBDA_BY_SIGNATURE = {(0, 6): "6", (2, 4): "4"}
_D6_INFTY_BY_NEGATIVE = {1: "1", 2: "2", 4: "4"}


def classify_dim6_real(model: AlgebraicModel) -> ClassificationResult:
    if not model.is_real:
        raise ClassificationError("classify_dim6_real needs a real model")
    base = classify_dim6_complex(complexify(model))
    family = base.family
    kappa = killing_form(model.algebra)
    sig = kappa.signature()
    result = ClassificationResult(
        base.label, 6,
        lambda_pair=base.lambda_pair,
        radical_dim=base.radical_dim,
        derived_radical_dim=base.derived_radical_dim,
    )

    if family is Family.N6:
        sign, mu = n6_mu_sign(model)
        variant = "+" if sign > 0 else "-"
        result.mu = mu
    elif family is Family.D6_LAMBDA:
        result.killing = sig
        pn = sig[:2]
        if sig[2]:
            raise ClassificationError(f"D.6_lambda with degenerate Killing form {sig}")
        if pn in _D6_LAMBDA_BY_SIGNATURE:
            variant = _D6_LAMBDA_BY_SIGNATURE[pn]
        elif pn in ((4, 2), (3, 3)):
            result.kappa_k = _kappa_k_sign(model, kappa)
            if pn == (3, 3):
                if base.lambda_pair[0] != -1:
                    raise ClassificationError(f"signature (3,3) needs λ = −1, got {base.lambda_pair[0]}")
                variant = "3-" if result.kappa_k > 0 else "3+"
            else:
                variant = "2-" if result.kappa_k > 0 else "2+"
        else:
            raise ClassificationError(f"Killing signature {pn} is not a real form of D.6_lambda")
    elif family is Family.D6_INFTY:
        result.killing = sig
        p, n, z = sig
        if z != 2 or p + n != 4 or n not in _D6_INFTY_BY_NEGATIVE:
            raise ClassificationError(f"Killing signature {sig} is not a real form of D.6_infty")
        variant = _D6_INFTY_BY_NEGATIVE[n]
    else:
        result.killing = sig
        if sig[0] == 0:
            variant = "3"
        else:
            result.kappa_k = _kappa_k_sign(model, kappa)
            variant = "1-" if result.kappa_k > 0 else "1+"

    result.label = CatalogLabel(family, Reality.REAL, variant, base.label.parameters)
    return result


# ── N.6 real forms ───────────────────────────────────────────────────────


def _first_nonzero(v: Vector) -> int | None:
    return next((t for t, x in enumerate(v) if x), None)


def _add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def _scale(c: Scalar, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def n6_mu_sign(model: AlgebraicModel) -> tuple[int, Scalar]:
    """Sign of μ in [f1, f3] = μ f2 for the adapted frame of an N.6 model, and μ.

    f6 spans 𝔨, f5 ∈ [𝔨,𝔡] has [f5, f6] = 2f6, f4 completes 𝔡 with the
    f5-coefficient of [f6, f4] equal to 2, f3 is the radical part of
    [f4, f5] in 𝔥 = rad ⊕ 𝔡, f1 = [f3, f4] and f2 = [f3, f5] + f3.
    """
    L = model.algebra
    n = L.dim
    f6 = model.k.basis[0]

    e = subspace_bracket(L, model.k, model.d)
    system = Matrix.from_columns([L.bracket(b, f6) for b in e.basis], nrows=n)
    coeffs = system.solve(_scale(Scalar.of(2), f6))
    if coeffs is None:
        raise ClassificationError("no f5 in [𝔨,𝔡] with [f5, f6] = 2f6")
    f5: Vector = tuple(Scalar.zero(system.field) for _ in range(n))
    for c, b in zip(coeffs, e.basis):
        f5 = _add(f5, _scale(c, b))

    pair = Subspace([f5, f6], n)
    f4 = next((v for v in model.d.basis if v not in pair), None)
    if f4 is None:
        raise ClassificationError("𝔡 is spanned by f5 and f6")
    d_frame = Matrix.from_columns([f4, f5, f6])
    coords = d_frame.solve(L.bracket(f6, f4))
    if coords is None or not coords[1]:
        raise ClassificationError("[f6, f4] has no f5-component")
    f4 = _scale(Scalar.of(2) / coords[1], f4)

    rad = radical(L)
    frame = Matrix.from_columns(list(rad.basis) + [f4, f5, f6], nrows=n)
    if frame.rank() < n:
        raise ClassificationError("𝔥 is not the direct sum of its radical and 𝔡")
    split = frame.solve(L.bracket(f4, f5))
    f3: Vector = tuple(Scalar.zero(frame.field) for _ in range(n))
    for c, b in zip(split[: rad.dim], rad.basis):
        f3 = _add(f3, _scale(c, b))

    f1 = L.bracket(f3, f4)
    f2 = _add(L.bracket(f3, f5), f3)
    t = _first_nonzero(f2)
    if t is None:
        raise ClassificationError("f2 vanishes")
    w = L.bracket(f1, f3)
    mu = w[t] / f2[t]
    if w != _scale(mu, f2):
        raise ClassificationError("[f1, f3] is not a multiple of f2")
    if not mu.is_real:
        raise ClassificationError(f"μ = {mu} is not real")
    if not mu:
        raise ClassificationError("μ = 0")
    return mu.sign(), mu
