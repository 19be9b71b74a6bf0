"""
The catalog of multiply transitive models: labels, the G2 matrix
realization, data-driven entries and their anti-involutions and
dictionaries.

Every non-G2 entry lives in one JSON file under the catalog directory: the
model in ModelDocument form, with scalars written as exact templates in the
entry's parameters (``"-lambda"``, ``"i/(2*root)"``), plus the row's
metadata.

Usage:
    from homog235.catalog import default_catalog, make_D6_lambda
    from homog235.models import Reality

    model = make_D6_lambda(Reality.REAL, "2+", 4)
    catalog = default_catalog()
    print(catalog.summary())
    print(catalog.expected_label("N.7^NE[outer]", {"a": 1, "b": 2}))
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, Mapping

from homog235.document import ModelDocument
from homog235.errors import CatalogError, Homog235Error, ParameterError, ParseError
from homog235.exact_arith import QQ, Matrix, Scalar, radical, unit_vector
from homog235.expr import Expr, evaluate_exact, parse_expr
from homog235.lie_core import LieAlgebra, Subspace
from homog235.models import AlgebraicModel, AntiInvolution, Reality, complexify


class Family(Enum):
    O = "O"
    N7 = "N.7"
    N6 = "N.6"
    D6_LAMBDA = "D.6_lambda"
    D6_INFTY = "D.6_infty"
    D6_STAR = "D.6_star"


# (sign r, sign s) → compass arrow of a real N.7 row
COMPASS = {
    (1, 1): "NE", (1, 0): "E", (1, -1): "SE",
    (0, 1): "N", (0, -1): "S",
    (-1, 1): "NW", (-1, 0): "W", (-1, -1): "SW",
}

REAL_VARIANTS = {
    Family.O: {""},
    Family.N7: set(COMPASS.values()),
    Family.N6: {"+", "-"},
    Family.D6_LAMBDA: {"2-", "2+", "4", "6", "3-", "3+"},
    Family.D6_INFTY: {"1", "2", "4"},
    Family.D6_STAR: {"1-", "1+", "3"},
}


# ── Labels ───────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class CatalogLabel:
    """Classification label.

    ``parameters`` is (Λ,) for N.7 and the canonically ordered λ-pair for
    D.6_λ; it is empty for every other family.
    """

    family: Family
    reality: Reality
    variant: str = ""
    parameters: tuple[Scalar, ...] = ()

    def __post_init__(self):
        if self.reality is Reality.COMPLEX and self.variant:
            raise CatalogError(f"complex label {self.family.value} takes no variant")
        if self.reality is Reality.REAL and self.variant not in REAL_VARIANTS[self.family]:
            raise CatalogError(f"{self.variant!r} is not a real form of {self.family.value}")
        expected = {Family.N7: 1, Family.D6_LAMBDA: 2}.get(self.family, 0)
        if len(self.parameters) != expected:
            raise CatalogError(f"{self.family.value} labels carry {expected} parameter(s)")

    def __str__(self) -> str:
        name = self.family.value
        if self.reality is Reality.REAL:
            name += "^R" if self.family is Family.O else f"^{self.variant}"
        if self.family is Family.N7:
            name += f" Lambda={self.parameters[0]}"
        elif self.family is Family.D6_LAMBDA:
            a, b = self.parameters
            name += f" lambda_pair={{{a},{b}}}"
        return name


def lambda_invariant(sigma2, sigma4) -> Scalar:
    """Λ = 64σ4 / (100σ4 − 9σ2²) of a non-nilpotent element of the N.7 torus."""
    s2, s4 = Scalar.of(sigma2), Scalar.of(sigma4)
    denominator = 100 * s4 - 9 * s2 * s2
    if not denominator:
        raise ParameterError("100σ4 = 9σ2²: the parameters give a flat distribution")
    return 64 * s4 / denominator


def lambda_from_rs(r, s) -> Scalar:
    return lambda_invariant(-Scalar.of(r), s)


def cartan_invariant_J(sigma2, sigma4) -> Scalar:
    """J = 4σ4/σ2², the invariant used in older tables; Λ = 16J/(25J − 9)."""
    s2 = Scalar.of(sigma2)
    if not s2:
        raise ParameterError("J is undefined for σ2 = 0")
    return 4 * Scalar.of(sigma4) / (s2 * s2)


def lambda_pair(lam) -> tuple[Scalar, Scalar]:
    """{λ, 1/λ} ordered by larger |λ|², then larger real part, then imaginary part."""
    a = Scalar.of(lam)
    if not a:
        raise ParameterError("λ = 0 has no reciprocal")
    b = a.inverse()

    def key(x: Scalar):
        return (x.norm2(), x.real_part(), x.imag_part())

    return (a, b) if key(a) >= key(b) else (b, a)


def compass(sign_r: int, sign_s: int) -> str:
    try:
        return COMPASS[(sign_r, sign_s)]
    except KeyError:
        raise ParameterError("r = s = 0 is flat and has no arrow") from None


# ── G2 realization ───────────────────────────────────────────────────────

_SQRT2 = radical(2)
_G2_FIELD = _SQRT2.field

G2_BASIS = ("Y1", "Y2", "X1", "X2", "A11", "A12", "A21", "A22", "Z1", "Z2", "W1", "W2", "r", "s")
G2_K = ("A11", "A12", "A21", "A22", "Z1", "Z2", "W1", "W2", "s")
G2_D = G2_K + ("X1", "X2")


@dataclass(frozen=True, slots=True)
class G2Element:
    """One element of the 14-dimensional matrix realization of split G2.

    The 7×7 matrix has row/column blocks of sizes 1, 2, 1, 2, 1:

        [ −trA    Z            s       Wᵀ           0   ]
        [ X       A − trA·I    √2·JZᵀ  (s/√2)·J     −W  ]
        [ r       −√2·XᵀJ      0       −√2·ZJ       s   ]
        [ Yᵀ      −(r/√2)·J    √2·JX   trA·I − Aᵀ   −Zᵀ ]
        [ 0       −Y           r       −Xᵀ          trA ]

    with J = [[0, −1], [1, 0]].
    """

    X: tuple[Scalar, Scalar]
    Y: tuple[Scalar, Scalar]
    A: tuple[tuple[Scalar, Scalar], tuple[Scalar, Scalar]]
    Z: tuple[Scalar, Scalar]
    W: tuple[Scalar, Scalar]
    r: Scalar
    s: Scalar

    @classmethod
    def from_coordinates(cls, c) -> G2Element:
        c = [Scalar.of(x) for x in c]
        if len(c) != 14:
            raise CatalogError(f"G2 coordinates have 14 entries, got {len(c)}")
        return cls(
            X=(c[2], c[3]), Y=(c[0], c[1]), A=((c[4], c[5]), (c[6], c[7])),
            Z=(c[8], c[9]), W=(c[10], c[11]), r=c[12], s=c[13],
        )

    def coordinates(self) -> tuple[Scalar, ...]:
        (a11, a12), (a21, a22) = self.A
        return (*self.Y, *self.X, a11, a12, a21, a22, *self.Z, *self.W, self.r, self.s)

    def matrix(self) -> Matrix:
        f = _G2_FIELD
        zero = Scalar.zero(f)
        rt2, inv_rt2 = _SQRT2, _SQRT2 / 2
        X, Y, Z, W, A, r, s = self.X, self.Y, self.Z, self.W, self.A, self.r, self.s
        tr = A[0][0] + A[1][1]
        J = ((zero, -Scalar.one(f)), (Scalar.one(f), zero))
        JZ = (-Z[1], Z[0])           # J·Zᵀ
        XJ = (X[1], -X[0])           # Xᵀ·J
        ZJ = (Z[1], -Z[0])           # Z·J
        JX = (-X[1], X[0])           # J·X
        m = [[zero] * 7 for _ in range(7)]
        m[0] = [-tr, Z[0], Z[1], s, W[0], W[1], zero]
        for a in range(2):
            row = m[1 + a]
            row[0] = X[a]
            row[1], row[2] = A[a][0] - (tr if a == 0 else 0), A[a][1] - (tr if a == 1 else 0)
            row[3] = rt2 * JZ[a]
            row[4], row[5] = inv_rt2 * s * J[a][0], inv_rt2 * s * J[a][1]
            row[6] = -W[a]
        m[3] = [r, -rt2 * XJ[0], -rt2 * XJ[1], zero, -rt2 * ZJ[0], -rt2 * ZJ[1], s]
        for a in range(2):
            row = m[4 + a]
            row[0] = Y[a]
            row[1], row[2] = -inv_rt2 * r * J[a][0], -inv_rt2 * r * J[a][1]
            row[3] = rt2 * JX[a]
            row[4] = (tr if a == 0 else 0) - A[0][a]
            row[5] = (tr if a == 1 else 0) - A[1][a]
            row[6] = -Z[a]
        m[6] = [zero, -Y[0], -Y[1], r, -X[0], -X[1], tr]
        return Matrix(m, f)

    @classmethod
    def from_matrix(cls, m: Matrix) -> G2Element:
        """Read the parameters back; CatalogError if m is outside the realization."""
        if m.shape != (7, 7):
            raise CatalogError(f"G2 matrices are 7×7, got {m.shape}")
        tr = m[6, 6]
        element = cls(
            X=(m[1, 0], m[2, 0]),
            Y=(m[4, 0], m[5, 0]),
            A=((m[1, 1] + tr, m[1, 2]), (m[2, 1], m[2, 2] + tr)),
            Z=(m[0, 1], m[0, 2]),
            W=(m[0, 4], m[0, 5]),
            r=m[3, 0],
            s=m[0, 3],
        )
        if element.matrix() != m:
            raise CatalogError("matrix does not lie in the G2 realization")
        return element


def g2_algebra() -> LieAlgebra:
    """Structure constants of the realization, checking closure of every commutator."""
    n = len(G2_BASIS)
    mats = [G2Element.from_coordinates(unit_vector(n, k)).matrix() for k in range(n)]
    table = {}
    for a in range(n):
        for b in range(a + 1, n):
            comm = mats[a] @ mats[b] - mats[b] @ mats[a]
            coords = G2Element.from_matrix(comm).coordinates()
            image = {c: x for c, x in enumerate(coords) if x}
            if image:
                table[(a, b)] = image
    return LieAlgebra(n, table, _G2_FIELD, G2_BASIS)


def make_O(reality: Reality = Reality.COMPLEX) -> AlgebraicModel:
    """The flat model: G2 with its parabolic 𝔨 and 𝔡 = 𝔨 ⊕ 𝔤₋₁.

    The matrix realization is split real; the complex model is its complexification.
    """
    L = _cached_g2()
    index = {name: n for n, name in enumerate(G2_BASIS)}
    k = Subspace([unit_vector(L.dim, index[x], L.field) for x in G2_K], L.dim, L.field)
    d = Subspace([unit_vector(L.dim, index[x], L.field) for x in G2_D], L.dim, L.field)
    model = AlgebraicModel(L, k, d, Reality.REAL)
    return model if reality is Reality.REAL else complexify(model)


@lru_cache(maxsize=1)
def _cached_g2() -> LieAlgebra:
    return g2_algebra()


# ── Entries ──────────────────────────────────────────────────────────────


@lru_cache(maxsize=None)
def _template(text: str) -> Expr:
    return parse_expr(text)


def evaluate_template(text: str, env: Mapping[str, Scalar]) -> Scalar:
    try:
        return evaluate_exact(_template(text), env)
    except ZeroDivisionError:
        raise ParameterError(f"{text!r} divides by zero at these parameters") from None


@dataclass(frozen=True, slots=True)
class Guard:
    """A parameter restriction: the template must be nonzero, positive or negative."""

    kind: str
    template: str
    reason: str

    def check(self, env: Mapping[str, Scalar], key: str) -> None:
        value = evaluate_template(self.template, env)
        if self.kind == "nonzero":
            ok = bool(value)
        elif self.kind in ("positive", "negative"):
            want = 1 if self.kind == "positive" else -1
            ok = value.is_real and value.sign() == want
        else:
            raise CatalogError(f"{key}: unknown guard kind {self.kind!r}")
        if not ok:
            raise ParameterError(f"{key}: {self.reason} ({self.template} = {value})")


@dataclass(slots=True)
class CatalogEntry:
    key: str
    family: Family
    reality: Reality
    variant: str = ""
    algebra: str = ""
    comment: str = ""
    correction: str = ""
    params: dict[str, str] = field(default_factory=dict)
    samples: list[dict[str, str]] = field(default_factory=list)
    radicals: dict[str, str] = field(default_factory=dict)
    guards: list[Guard] = field(default_factory=list)
    invariant: dict[str, str] = field(default_factory=dict)
    model: dict | None = None
    complex: dict | None = None
    anti_involution: list[list[str]] | None = None
    dictionary: dict[str, dict[str, str]] | None = None
    builder: Callable[[], AlgebraicModel] | None = None
    path: Path | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> CatalogEntry:
        path = Path(path)
        try:
            with open(path, encoding="utf-8") as f:
                obj = json.load(f)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path.name}: malformed JSON: {exc.msg}", exc.pos) from None
        return cls.from_dict(obj, path)

    @classmethod
    def from_dict(cls, obj: dict, path: Path | None = None) -> CatalogEntry:
        where = path.name if path else obj.get("key", "<entry>")
        try:
            family = Family(obj["family"])
            reality = Reality(obj.get("reality", "complex"))
            guards = [
                Guard(kind, g[kind], g.get("reason", "excluded parameter value"))
                for g in obj.get("guards", [])
                for kind in ("nonzero", "positive", "negative")
                if kind in g
            ]
            entry = cls(
                key=obj["key"],
                family=family,
                reality=reality,
                variant=obj.get("variant", ""),
                algebra=obj.get("algebra", ""),
                comment=obj.get("comment", ""),
                correction=obj.get("correction", ""),
                params={k: str(v) for k, v in obj.get("params", {}).items()},
                samples=[{k: str(v) for k, v in s.items()} for s in obj.get("samples", [])],
                radicals=dict(obj.get("radicals", {})),
                guards=guards,
                invariant=dict(obj.get("invariant", {})),
                model=obj["model"],
                complex=obj.get("complex"),
                anti_involution=obj.get("anti_involution"),
                dictionary=obj.get("dictionary"),
                path=path,
            )
        except (KeyError, ValueError, TypeError, AttributeError) as exc:
            raise CatalogError(f"{where}: bad catalog entry ({exc!r})") from None
        if reality is Reality.REAL and entry.variant not in REAL_VARIANTS[family]:
            raise CatalogError(f"{where}: {entry.variant!r} is not a real form of {family.value}")
        if entry.complex is None and (entry.dictionary is not None or entry.anti_involution is not None):
            raise CatalogError(f"{where}: dictionaries and anti-involutions need a 'complex' counterpart")
        return entry

    @property
    def sample_points(self) -> list[dict[str, str]]:
        return self.samples or [dict(self.params)]

    # ── Evaluation ───────────────────────────────────────────────────────

    def environment(self, params: Mapping[str, object] | None = None, enforce: bool = True) -> dict[str, Scalar]:
        """Parameter values, derived radicals and ``i`` as exact scalars."""
        given = dict(params or {})
        unknown = set(given) - set(self.params)
        if unknown:
            raise ParameterError(f"{self.key} has no parameter(s) {', '.join(sorted(unknown))}")
        env: dict[str, Scalar] = {}
        for name, default in self.params.items():
            raw = given.get(name, default)
            try:
                value = Scalar.of(raw)
            except Homog235Error as exc:
                raise ParameterError(f"{self.key}: bad value {raw!r} for {name}: {exc}") from None
            if self.reality is Reality.REAL and not value.is_real:
                raise ParameterError(f"{self.key}: parameter {name} must be real, got {value}")
            env[name] = value
        env["i"] = Scalar.i()
        if enforce:
            for guard in self.guards:
                guard.check(env, self.key)
            if "r" in self.invariant and "s" in self.invariant:
                r, s = self.rs(env)
                if not 100 * s - 9 * r * r:
                    raise ParameterError(f"{self.key}: 9r² = 100s gives a flat distribution")
        for name, template in self.radicals.items():
            value = evaluate_template(template, env)
            if not value.is_rational:
                raise ParameterError(f"{self.key}: radicand {template} = {value} is not rational")
            env[name] = radical(value.to_fraction())
        return env

    def rs(self, env: Mapping[str, Scalar]) -> tuple[Scalar, Scalar]:
        return (evaluate_template(self.invariant["r"], env), evaluate_template(self.invariant["s"], env))

    def build(self, params: Mapping[str, object] | None = None, enforce: bool = True) -> AlgebraicModel:
        env = self.environment(params, enforce)
        if self.builder is not None:
            return self.builder()
        raw = dict(self.model)
        raw["reality"] = self.reality.value
        try:
            doc = ModelDocument.from_dict(raw, read_scalar=lambda text: evaluate_template(text, env))
        except ParseError as exc:
            raise CatalogError(f"{self.key}: {exc}") from None
        return doc.to_model()

    def expected_label(self, params: Mapping[str, object] | None = None) -> CatalogLabel:
        env = self.environment(params)
        if self.family is Family.N7:
            return CatalogLabel(self.family, self.reality, self.variant, (lambda_from_rs(*self.rs(env)),))
        if self.family is Family.D6_LAMBDA:
            lam = evaluate_template(self.invariant["lambda"], env)
            return CatalogLabel(self.family, self.reality, self.variant, lambda_pair(lam))
        return CatalogLabel(self.family, self.reality, self.variant)


def _builtin_entries() -> list[CatalogEntry]:
    return [
        CatalogEntry(
            key="O", family=Family.O, reality=Reality.COMPLEX, algebra="g2",
            comment="flat model, symmetry G2 (matrix realization)",
            builder=lambda: make_O(Reality.COMPLEX),
        ),
        CatalogEntry(
            key="O^R", family=Family.O, reality=Reality.REAL, algebra="split real g2",
            comment="flat model, split real G2",
            builder=lambda: make_O(Reality.REAL),
        ),
    ]


# ── Catalog ──────────────────────────────────────────────────────────────


class Catalog:
    """All catalog entries, keyed by their label key (``"D.6_lambda^2+"``)."""

    def __init__(self, entries: list[CatalogEntry]):
        self._entries: dict[str, CatalogEntry] = {}
        for entry in entries:
            if entry.key in self._entries:
                raise CatalogError(f"duplicate catalog key {entry.key!r}")
            self._entries[entry.key] = entry

    @classmethod
    def from_dir(cls, path: str | Path) -> Catalog:
        path = Path(path)
        if not path.is_dir():
            raise CatalogError(f"catalog directory not found: {path}")
        files = sorted(path.glob("*.json"))
        if not files:
            raise CatalogError(f"no catalog files in {path}")
        return cls(_builtin_entries() + [CatalogEntry.from_file(p) for p in files])

    def __getitem__(self, key: str) -> CatalogEntry:
        try:
            return self._entries[key]
        except KeyError:
            raise CatalogError(f"unknown catalog label {key!r}") from None

    def __contains__(self, key: str) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def keys(self) -> list[str]:
        return list(self._entries)

    def build(self, key: str, params: Mapping[str, object] | None = None, enforce: bool = True) -> AlgebraicModel:
        return self[key].build(params, enforce)

    def expected_label(self, key: str, params: Mapping[str, object] | None = None) -> CatalogLabel:
        return self[key].expected_label(params)

    # ── Real forms ───────────────────────────────────────────────────────

    def counterpart(self, key: str, params: Mapping[str, object] | None = None) -> tuple[AlgebraicModel, dict[str, Scalar]]:
        """The complex model a real entry is a form of, and the joint environment."""
        entry = self[key]
        if entry.complex is None:
            raise CatalogError(f"{key} records no complex counterpart")
        env = entry.environment(params)
        target = self[entry.complex["key"]]
        target_params = {
            name: evaluate_template(template, env)
            for name, template in entry.complex.get("params", {}).items()
        }
        model = target.build(target_params)
        return model, {**target.environment(target_params), **env}

    def anti_involution(self, key: str, params: Mapping[str, object] | None = None) -> AntiInvolution:
        """The row's anti-involution, as a matrix in the adapted basis of the complex model."""
        entry = self[key]
        if entry.anti_involution is None:
            raise CatalogError(f"{key} records no anti-involution")
        _model, env = self.counterpart(key, params)
        rows = [[evaluate_template(str(x), env) for x in row] for row in entry.anti_involution]
        return AntiInvolution(Matrix(rows, QQ.complexified()))

    def primary_anti_involution(self, key: str, params: Mapping[str, object] | None = None) -> AntiInvolution:
        """The same anti-involution written in the complex model's primary basis."""
        model, _env = self.counterpart(key, params)
        if model.adapted_basis is None:
            raise CatalogError(f"the counterpart of {key} has no adapted basis")
        return self.anti_involution(key, params).transport(model.adapted_basis)

    def dictionary(self, key: str, params: Mapping[str, object] | None = None) -> Matrix:
        """Columns: images of the real basis in the complex model's primary coordinates.

        Dictionary targets are complex basis names or adapted vectors ``e1``..``en``.
        """
        entry = self[key]
        if entry.dictionary is None:
            raise CatalogError(f"{key} records no dictionary")
        model, env = self.counterpart(key, params)
        labels = list(model.algebra.labels)
        n = model.dim
        adapted = model.adapted_basis.columns() if model.adapted_basis is not None else []
        field = model.field.complexified()
        columns = []
        for name in entry.model["basis"]:
            if name not in entry.dictionary:
                raise CatalogError(f"{key}: dictionary has no image for {name!r}")
            col = [Scalar.zero(field)] * n
            for target, template in entry.dictionary[name].items():
                c = evaluate_template(template, env)
                if target in labels:
                    vec = unit_vector(n, labels.index(target))
                elif target.startswith("e") and target[1:].isdigit() and 1 <= int(target[1:]) <= len(adapted):
                    vec = adapted[int(target[1:]) - 1]
                else:
                    raise CatalogError(f"{key}: unknown dictionary target {target!r}")
                col = [x + c * y for x, y in zip(col, vec)]
            columns.append(col)
        return Matrix.from_columns(columns)

    def summary(self) -> str:
        lines = [f"═══ Catalog ({len(self)} labels) ═══", ""]
        lines.append(f"  {'key':<18} {'reality':<8} {'parameters':<16} symmetry")
        for entry in self:
            params = ", ".join(f"{k}={v}" for k, v in entry.params.items()) or "-"
            lines.append(f"  {entry.key:<18} {entry.reality.value:<8} {params:<16} {entry.algebra}")
        return "\n".join(lines)


@lru_cache(maxsize=None)
def load_catalog(path: str | Path) -> Catalog:
    return Catalog.from_dir(path)


def default_catalog() -> Catalog:
    from homog235.config import Settings

    return load_catalog(str(Settings.from_config().catalog_dir))


# ── Per-family constructors ──────────────────────────────────────────────


def make_N7(reality: Reality, row: str | None = None, **params) -> AlgebraicModel:
    """Complex N.7 dispatches on (a, b); real rows are ids like ``"nw-outer"`` or ``"w"``."""
    catalog = default_catalog()
    if reality is Reality.REAL:
        if row is None:
            raise ParameterError("a real N.7 model needs a row id, e.g. 'ne-outer'")
        return catalog.build(n7_row_key(row), params)
    key, params = n7_complex_key(params.get("a", 1), params.get("b", 2))
    return catalog.build(key, params)


def n7_row_key(row: str) -> str:
    """``"nw-outer"`` → ``"N.7^NW[outer]"``; ``"w"`` → ``"N.7^W"``."""
    arrow, _, kind = row.partition("-")
    key = f"N.7^{arrow.upper()}"
    return f"{key}[{kind}]" if kind else key


def n7_complex_key(a, b) -> tuple[str, dict[str, Scalar]]:
    """Catalog key and parameters of complex N.7 at (a, b)."""
    a, b = Scalar.of(a), Scalar.of(b)
    if not a and not b:
        raise ParameterError("(a, b) = (0, 0) is flat")
    if not a:
        a, b = b, a
    if not b:
        return "N.7[Lambda=0]", {"a": a}
    if a * a == b * b:
        return "N.7[Lambda=1]", {"a": a}
    return "N.7", {"a": a, "b": b}


def make_N6(reality: Reality, sign: str | None = None) -> AlgebraicModel:
    if reality is Reality.REAL:
        if sign not in ("+", "-"):
            raise ParameterError(f"real N.6 sign must be '+' or '-', got {sign!r}")
        return default_catalog().build(f"N.6^{sign}")
    return default_catalog().build("N.6")


def make_D6_lambda(reality: Reality, variant: str | None = None, lam=None) -> AlgebraicModel:
    catalog = default_catalog()
    if reality is Reality.COMPLEX:
        return catalog.build("D.6_lambda", None if lam is None else {"lambda": lam})
    if variant in ("3-", "3+"):
        if lam is not None and Scalar.of(lam) != -1:
            raise ParameterError(f"D.6_lambda^{variant} exists only at λ = −1")
        return catalog.build(f"D.6_lambda^{variant}")
    return catalog.build(f"D.6_lambda^{variant}", None if lam is None else {"lambda": lam})


def make_D6_infty(reality: Reality, variant: str | None = None) -> AlgebraicModel:
    if reality is Reality.REAL:
        return default_catalog().build(f"D.6_infty^{variant}")
    return default_catalog().build("D.6_infty")


def make_D6_star(reality: Reality, variant: str | None = None) -> AlgebraicModel:
    if reality is Reality.REAL:
        return default_catalog().build(f"D.6_star^{variant}")
    return default_catalog().build("D.6_star")


def table_anti_involution(key: str, **params) -> AntiInvolution:
    return default_catalog().anti_involution(key, params)


def summand_swap() -> Matrix:
    """X ↔ X′, Y ↔ Y′, H ↔ H′: an equivalence D.6_λ → D.6_{1/λ} for every λ."""
    columns = [unit_vector(6, (k + 3) % 6) for k in range(6)]
    return Matrix.from_columns(columns)

