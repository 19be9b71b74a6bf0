"""
Monge normal forms z' = F(x, y, y', y'', z), vector fields given by
expression text, and the sampling checks that verify a coordinate
presentation: (2,3,5) rank growth, infinitesimal symmetries, frame/coframe
pairing, structure-constant fitting and the isotropy model at a base point.

Corpus files (``data/monge/*.monge``) are line-oriented:

    # comment
    name: n6-minus
    description: q^(1/3) - y
    chart: x y p q z
    monge: q^(1/3) - y
    define g: <expr>                    macro usable in later lines
    frame E1: c1, c2, c3, c4, c5        distribution generator (no monge line)
    form w1: c1, ..., c5                annihilating 1-form
    field X: c1, ..., c5                symmetry field
    field Y (unconfirmed): ...          checked and reported, never fails
    box: q 1/2 2                        sampling interval (default [1/4, 2])
    require: <expr>                     must be positive at every sample
    point: 0 0 0 1 0                    base point for the isotropy model
    expect: N.6^-                       its expected classification
    relation: S1 T1 = S2 T2             [S1, T1] = [S2, T2]
    reality: real                       or complex

Usage:
    from homog235.monge import load_corpus, SamplePlan

    corpus = load_corpus("n6-minus")
    report = corpus.verify(corpus.plan(points=25, seed=235, tolerance=1e-8))
    print(report.summary())
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from homog235.errors import DomainViolation, Homog235Error, MongeError, ParseError
from homog235.exact_arith import Matrix, Scalar
from homog235.expr import (
    ZERO,
    Const,
    Expr,
    Var,
    add,
    diff,
    evaluate,
    mul,
    parse_expr,
    sub,
    substitute,
    to_text,
)
from homog235.lie_core import LieAlgebra, Subspace
from homog235.models import AlgebraicModel, Reality

MONGE_CHART = ("x", "y", "p", "q", "z")
DEFAULT_BOX = (Fraction(1, 4), Fraction(2))
MAX_ATTEMPTS_PER_POINT = 200
FIT_TOLERANCE = 1e-6
FIT_DENOMINATOR = 1000
POINT_DENOMINATOR = 10**6


# ── Vector fields ────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class VectorField:
    """Σ components[i] ∂/∂chart[i]."""

    components: tuple[Expr, ...]
    chart: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.components) != len(self.chart):
            raise MongeError(
                f"field {self.name or '?'} has {len(self.components)} components "
                f"on a {len(self.chart)}-dimensional chart"
            )

    @classmethod
    def parse(
        cls,
        texts: Sequence[str],
        chart: Sequence[str],
        name: str = "",
        definitions: Mapping[str, Expr] | None = None,
    ) -> VectorField:
        defs = dict(definitions or {})
        allowed = set(chart) | set(defs)
        comps = tuple(substitute(parse_expr(t, allowed), defs) for t in texts)
        return cls(comps, tuple(chart), name)

    @classmethod
    def coordinate(cls, var: str, chart: Sequence[str], name: str = "") -> VectorField:
        """The coordinate field ∂/∂var."""
        comps = tuple(Const(Fraction(1)) if v == var else ZERO for v in chart)
        return cls(comps, tuple(chart), name or f"d{var}")

    @property
    def dim(self) -> int:
        return len(self.chart)

    def apply(self, f: Expr) -> Expr:
        """X(f) = Σ X^j ∂_j f."""
        out = ZERO
        for c, v in zip(self.components, self.chart):
            out = add(out, mul(c, diff(f, v)))
        return out

    def values(self, samples: np.ndarray) -> np.ndarray:
        """Components at each sample point, shape (N, dim)."""
        return _evaluate_rows(self.components, self.chart, samples, self.name or "field")

    def __str__(self) -> str:
        terms = [
            f"({to_text(c)})∂{v}"
            for c, v in zip(self.components, self.chart)
            if c != ZERO
        ]
        return " + ".join(terms) or "0"


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = X(Y^i) − Y(X^i)."""
    if X.chart != Y.chart:
        raise MongeError("fields live on different charts")
    comps = tuple(sub(X.apply(yi), Y.apply(xi)) for xi, yi in zip(X.components, Y.components))
    name = f"[{X.name},{Y.name}]" if X.name and Y.name else ""
    return VectorField(comps, X.chart, name)


def monge_distribution(F: Expr) -> tuple[VectorField, VectorField]:
    """∂q and the total derivative Dx = ∂x + p∂y + q∂p + F∂z."""
    one, zero = Const(Fraction(1)), ZERO
    Q = VectorField((zero, zero, zero, one, zero), MONGE_CHART, "Q")
    Dx = VectorField((one, Var("p"), Var("q"), zero, F), MONGE_CHART, "Dx")
    return Q, Dx


def _evaluate_rows(exprs: Sequence[Expr], chart: Sequence[str], samples: np.ndarray, what: str) -> np.ndarray:
    n = samples.shape[0]
    env = {v: samples[:, i] for i, v in enumerate(chart)}
    try:
        cols = [np.broadcast_to(evaluate(e, env), (n,)) for e in exprs]
    except DomainViolation:
        # locate the offending point for the report
        for row in samples:
            point_env = {v: float(x) for v, x in zip(chart, row)}
            try:
                for e in exprs:
                    evaluate(e, point_env)
            except DomainViolation as exc:
                raise DomainViolation(f"{what}: {exc} at {format_point(row)}") from None
        raise
    return np.stack(cols, axis=1)


def format_point(row: Sequence[float]) -> str:
    return "(" + ", ".join(f"{x:.6g}" for x in row) + ")"


def numeric_rank(m: np.ndarray, tolerance: float) -> int:
    """Singular values above tolerance·(largest singular value)."""
    s = np.linalg.svd(np.atleast_2d(m), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > tolerance * s[0]))


# ── Sampling ─────────────────────────────────────────────────────────────


@dataclass(frozen=True, slots=True)
class SamplePlan:
    points: int = 25
    seed: int = 235
    boxes: Mapping[str, tuple[Fraction, Fraction]] = field(default_factory=dict)
    require: tuple[Expr, ...] = ()
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.points < 1:
            raise MongeError("a sample plan needs at least one point")
        if not self.tolerance > 0:
            raise MongeError("tolerance must be positive")

    def box(self, var: str) -> tuple[Fraction, Fraction]:
        return self.boxes.get(var, DEFAULT_BOX)

    def sample(self, chart: Sequence[str]) -> np.ndarray:
        """Seeded uniform points in the boxes where every ``require`` is positive."""
        rng = np.random.default_rng(self.seed)
        lo = np.array([float(self.box(v)[0]) for v in chart])
        hi = np.array([float(self.box(v)[1]) for v in chart])
        accepted: list[np.ndarray] = []
        for _ in range(self.points * MAX_ATTEMPTS_PER_POINT):
            row = lo + (hi - lo) * rng.random(len(chart))
            if self._admits(chart, row):
                accepted.append(row)
                if len(accepted) == self.points:
                    return np.array(accepted)
        raise MongeError(
            f"only {len(accepted)} of {self.points} sample points satisfy the requirements"
        )

    def _admits(self, chart: Sequence[str], row: np.ndarray) -> bool:
        env = {v: float(x) for v, x in zip(chart, row)}
        for r in self.require:
            try:
                if not float(evaluate(r, env)) > 0:
                    return False
            except DomainViolation:
                return False
        return True


# ── Check reports ────────────────────────────────────────────────────────


@dataclass(slots=True)
class CheckReport:
    """One sampled check: ok when no sample point failed."""

    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    residual: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        self.failures.append(message)

    def line(self) -> str:
        mark = "pass" if self.ok else "FAIL"
        text = f"  {self.name:<28} {mark}"
        if self.checked:
            text += f"  ({self.checked} points"
            text += f", residual {self.residual:.1e})" if self.residual else ")"
        if self.failures:
            text += f"\n      {self.failures[0]}"
            if len(self.failures) > 1:
                text += f"\n      … and {len(self.failures) - 1} more"
        return text


def check_235(
    fields: Sequence[VectorField],
    plan: SamplePlan,
    monge: Expr | None = None,
    samples: np.ndarray | None = None,
) -> CheckReport:
    """Rank growth 2 → 3 → 5 of D, [D, D], [D, [D, D]] at every sample.

    With a Monge F, |∂q²F| > tolerance is required as well.
    """
    report = CheckReport("(2,3,5) growth")
    if len(fields) != 2 or fields[0].dim != 5:
        report.fail("need two fields on a 5-dimensional chart")
        return report
    D1, D2 = fields
    chart = D1.chart
    if samples is None:
        samples = plan.sample(chart)

    if monge is not None:
        Fqq = diff(diff(monge, "q"), "q")
        if Fqq == ZERO:
            report.fail("∂q²F vanishes identically")
            return report
        try:
            values = _evaluate_rows([Fqq], chart, samples, "∂q²F")[:, 0]
        except DomainViolation as exc:
            report.fail(str(exc))
            return report
        for row, v in zip(samples, values):
            if abs(v) <= plan.tolerance:
                report.fail(f"∂q²F vanishes at {format_point(row)}")

    B3 = vf_bracket(D1, D2)
    B4 = vf_bracket(D1, B3)
    B5 = vf_bracket(D2, B3)
    try:
        stacked = [f.values(samples) for f in (D1, D2, B3, B4, B5)]
    except DomainViolation as exc:
        report.fail(str(exc))
        return report

    for k, row in enumerate(samples):
        cols = [v[k] for v in stacked]
        ranks = (
            numeric_rank(np.column_stack(cols[:2]), plan.tolerance),
            numeric_rank(np.column_stack(cols[:3]), plan.tolerance),
            numeric_rank(np.column_stack(cols), plan.tolerance),
        )
        if ranks != (2, 3, 5):
            report.fail(f"ranks {ranks[0]}/{ranks[1]}/{ranks[2]} at {format_point(row)}")
        report.checked += 1
    return report


def check_symmetry(
    distribution: Sequence[VectorField],
    xi: VectorField,
    plan: SamplePlan,
    samples: np.ndarray | None = None,
) -> CheckReport:
    """[ξ, D1] and [ξ, D2] stay in span{D1, D2} at every sample."""
    D1, D2 = distribution
    report = CheckReport(f"symmetry {xi.name}" if xi.name else "symmetry")
    if samples is None:
        samples = plan.sample(D1.chart)
    try:
        stacked = [f.values(samples) for f in (D1, D2, vf_bracket(xi, D1), vf_bracket(xi, D2))]
    except DomainViolation as exc:
        report.fail(str(exc))
        return report
    for k, row in enumerate(samples):
        m = np.column_stack([v[k] for v in stacked])
        s = np.linalg.svd(m, compute_uv=False)
        rel = s[2] / s[0] if s[0] > 0 else 0.0
        report.residual = max(report.residual, rel)
        if rel > plan.tolerance:
            report.fail(f"bracket leaves the distribution at {format_point(row)} (σ3/σ1 = {rel:.2e})")
        report.checked += 1
    return report


def check_pairing(
    forms: Mapping[str, tuple[Expr, ...]],
    fields: Sequence[VectorField],
    plan: SamplePlan,
    samples: np.ndarray | None = None,
) -> CheckReport:
    """Every form annihilates every field at every sample."""
    report = CheckReport("form/frame pairing")
    chart = fields[0].chart
    if samples is None:
        samples = plan.sample(chart)
    try:
        field_values = {f.name: f.values(samples) for f in fields}
        form_values = {
            name: _evaluate_rows(comps, chart, samples, f"form {name}") for name, comps in forms.items()
        }
    except DomainViolation as exc:
        report.fail(str(exc))
        return report
    for k, row in enumerate(samples):
        for wname, w in form_values.items():
            for fname, X in field_values.items():
                terms = w[k] * X[k]
                scale = max(float(np.sum(np.abs(terms))), 1.0)
                rel = abs(float(np.sum(terms))) / scale
                report.residual = max(report.residual, rel)
                if rel > plan.tolerance:
                    report.fail(f"{wname}({fname}) = {np.sum(terms):.3e} at {format_point(row)}")
        report.checked += 1
    return report


def check_relation(
    fields: Mapping[str, VectorField],
    lhs: tuple[str, str],
    rhs: tuple[str, ...],
    plan: SamplePlan,
    samples: np.ndarray | None = None,
) -> CheckReport:
    """[A, B] equals [C, D] (or the field C) at every sample."""
    right = f"[{rhs[0]},{rhs[1]}]" if len(rhs) == 2 else rhs[0]
    report = CheckReport(f"[{lhs[0]},{lhs[1]}] = {right}")
    try:
        left_field = vf_bracket(fields[lhs[0]], fields[lhs[1]])
        right_field = vf_bracket(fields[rhs[0]], fields[rhs[1]]) if len(rhs) == 2 else fields[rhs[0]]
    except KeyError as exc:
        report.fail(f"unknown field {exc.args[0]!r}")
        return report
    if samples is None:
        samples = plan.sample(left_field.chart)
    try:
        a = left_field.values(samples)
        b = right_field.values(samples)
    except DomainViolation as exc:
        report.fail(str(exc))
        return report
    for k, row in enumerate(samples):
        scale = max(float(np.max(np.abs(a[k]))), float(np.max(np.abs(b[k]))), 1.0)
        rel = float(np.max(np.abs(a[k] - b[k]))) / scale
        report.residual = max(report.residual, rel)
        if rel > plan.tolerance:
            report.fail(f"brackets differ at {format_point(row)} (relative {rel:.2e})")
        report.checked += 1
    return report


# ── Structure constants and isotropy ─────────────────────────────────────


def _stacked_values(fields: Sequence[VectorField], samples: np.ndarray) -> np.ndarray:
    """Column j holds field j evaluated at all samples, flattened."""
    return np.column_stack([f.values(samples).ravel() for f in fields])


def fit_structure_constants(
    fields: Sequence[VectorField],
    plan: SamplePlan,
    samples: np.ndarray | None = None,
) -> LieAlgebra:
    """Rational structure constants of the span of ``fields``.

    Each bracket is fitted by least squares over the samples, rationalised
    with a bounded denominator and then re-checked against the samples.
    """
    if samples is None:
        samples = plan.sample(fields[0].chart)
    A = _stacked_values(fields, samples)
    if numeric_rank(A, plan.tolerance) < len(fields):
        raise MongeError("fields are linearly dependent on the samples")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            b = vf_bracket(fields[i], fields[j]).values(samples).ravel()
            coeffs, *_ = np.linalg.lstsq(A, b, rcond=None)
            rational = [Fraction(float(c)).limit_denominator(FIT_DENOMINATOR) for c in coeffs]
            approx = A @ np.array([float(c) for c in rational])
            scale = max(float(np.max(np.abs(b))), float(np.max(np.abs(A))), 1.0)
            if float(np.max(np.abs(approx - b))) > FIT_TOLERANCE * scale:
                raise MongeError(
                    f"[{fields[i].name},{fields[j].name}] is not a rational combination of the fields"
                )
            image = {k: c for k, c in enumerate(rational) if c}
            if image:
                table[(i, j)] = image
    return LieAlgebra(len(fields), table, labels=[f.name for f in fields])


def check_closure(
    fields: Sequence[VectorField],
    algebra: LieAlgebra,
    plan: SamplePlan,
    samples: np.ndarray | None = None,
) -> CheckReport:
    """The fields' brackets match the structure constants of ``algebra``."""
    report = CheckReport("closure")
    if algebra.dim != len(fields):
        report.fail(f"{len(fields)} fields for a {algebra.dim}-dimensional algebra")
        return report
    if samples is None:
        samples = plan.sample(fields[0].chart)
    values = [f.values(samples) for f in fields]
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            actual = vf_bracket(fields[i], fields[j]).values(samples)
            expected = sum(
                (complex(c).real * values[k] for k, c in enumerate(algebra.basis_bracket(i, j))),
                np.zeros_like(actual),
            )
            scale = max(float(np.max(np.abs(actual))), float(np.max(np.abs(expected))), 1.0)
            rel = float(np.max(np.abs(actual - expected))) / scale
            report.residual = max(report.residual, rel)
            if rel > FIT_TOLERANCE:
                report.fail(f"[{fields[i].name},{fields[j].name}] disagrees (relative {rel:.2e})")
    report.checked = samples.shape[0]
    return report


def _rational_point_values(exprs: Sequence[Expr], chart: Sequence[str], point: Sequence[Fraction]) -> list[Scalar]:
    env = {v: float(x) for v, x in zip(chart, point)}
    out = []
    for e in exprs:
        try:
            value = float(evaluate(e, env))
        except DomainViolation as exc:
            raise MongeError(f"base point outside the domain: {exc}") from None
        rat = Fraction(value).limit_denominator(POINT_DENOMINATOR)
        if abs(float(rat) - value) > 1e-12 * max(1.0, abs(value)):
            raise MongeError(f"{to_text(e)} is not rational at the base point")
        out.append(Scalar.of(rat))
    return out


def isotropy_model(
    fields: Sequence[VectorField],
    distribution: Sequence[VectorField],
    point: Sequence[Fraction],
    plan: SamplePlan,
    algebra: LieAlgebra | None = None,
    reality: Reality = Reality.REAL,
) -> AlgebraicModel:
    """The algebraic model (𝔥, 𝔨; 𝔡) of a homogeneous distribution at ``point``.

    𝔨 is the kernel of the evaluation map 𝔥 → T_u M and 𝔡 the preimage of
    the distribution's plane at u. Without ``algebra`` the structure
    constants are fitted from samples.
    """
    chart = fields[0].chart
    samples = plan.sample(chart)
    if algebra is None:
        algebra = fit_structure_constants(fields, plan, samples)
    else:
        closure = check_closure(fields, algebra, plan, samples)
        if not closure.ok:
            raise MongeError(f"fields do not close: {closure.failures[0]}")

    columns = [_rational_point_values(f.components, chart, point) for f in fields]
    E = Matrix.from_columns(columns)
    if E.rank() != len(chart):
        raise MongeError(
            f"evaluation map has rank {E.rank()} < {len(chart)}: not locally homogeneous at the point"
        )
    k = Subspace(E.kernel(), len(fields), algebra.field)

    plane = [_rational_point_values(f.components, chart, point) for f in distribution]
    negated = [[-x for x in col] for col in plane]
    preimage = Matrix.from_columns(columns + negated).kernel()
    d = Subspace([v[: len(fields)] for v in preimage], len(fields), algebra.field)
    return AlgebraicModel(algebra, k, d, reality)


# ── Corpus files ─────────────────────────────────────────────────────────


@dataclass(slots=True)
class UnconfirmedField:
    name: str
    text: str
    field: VectorField | None = None
    error: str = ""


@dataclass(slots=True)
class MongeCorpus:
    """A coordinate presentation with its symmetry fields and sampling setup."""

    name: str
    chart: tuple[str, ...]
    description: str = ""
    monge: Expr | None = None
    frames: list[VectorField] = field(default_factory=list)
    forms: dict[str, tuple[Expr, ...]] = field(default_factory=dict)
    fields: list[VectorField] = field(default_factory=list)
    unconfirmed: list[UnconfirmedField] = field(default_factory=list)
    boxes: dict[str, tuple[Fraction, Fraction]] = field(default_factory=dict)
    require: list[Expr] = field(default_factory=list)
    point: tuple[Fraction, ...] | None = None
    expect: str | None = None
    relations: list[tuple[tuple[str, str], tuple[str, ...]]] = field(default_factory=list)
    reality: Reality = Reality.REAL
    path: Path | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> MongeCorpus:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Corpus not found: {path}")
        return cls.from_text(path.read_text(encoding="utf-8"), default_name=path.stem, path=path)

    @classmethod
    def from_text(cls, text: str, default_name: str = "corpus", path: Path | None = None) -> MongeCorpus:
        return _CorpusReader(text, default_name, path).read()

    @property
    def distribution(self) -> tuple[VectorField, VectorField]:
        if self.monge is not None:
            return monge_distribution(self.monge)
        if len(self.frames) != 2:
            raise MongeError(f"{self.name}: a distribution needs a monge line or exactly two frames")
        return self.frames[0], self.frames[1]

    def plan(self, points: int = 25, seed: int = 235, tolerance: float = 1e-8) -> SamplePlan:
        return SamplePlan(points, seed, dict(self.boxes), tuple(self.require), tolerance)

    def verify(self, plan: SamplePlan) -> CorpusReport:
        report = CorpusReport(self.name, self.description)
        try:
            samples = plan.sample(self.chart)
        except MongeError as exc:
            report.checks.append(CheckReport("sampling", failures=[str(exc)]))
            return report
        distribution = self.distribution

        report.checks.append(check_235(distribution, plan, self.monge, samples))
        if self.forms:
            report.checks.append(check_pairing(self.forms, list(distribution), plan, samples))
        for xi in self.fields:
            report.checks.append(check_symmetry(distribution, xi, plan, samples))
        named = {f.name: f for f in self.fields}
        for lhs, rhs in self.relations:
            report.checks.append(check_relation(named, lhs, rhs, plan, samples))

        for u in self.unconfirmed:
            if u.field is None:
                report.unconfirmed.append(f"{u.name}: unparsable ({u.error})")
                continue
            outcome = check_symmetry(distribution, u.field, plan, samples)
            report.unconfirmed.append(f"{u.name}: {'symmetry' if outcome.ok else 'not a symmetry'}")

        if self.point is not None:
            self._classify_point(plan, report)
        return report

    def isotropy(self, plan: SamplePlan) -> AlgebraicModel:
        if self.point is None:
            raise MongeError(f"{self.name}: no base point")
        return isotropy_model(self.fields, self.distribution, self.point, plan, reality=self.reality)

    def _classify_point(self, plan: SamplePlan, report: CorpusReport) -> None:
        from homog235.classify import classify

        check = CheckReport("isotropy classification")
        try:
            result = classify(self.isotropy(plan))
        except Homog235Error as exc:
            check.fail(str(exc))
        else:
            report.classification = (
                f"{result.label} (mu = {result.mu})" if result.mu is not None else str(result.label)
            )
            if self.expect is not None and str(result.label) != self.expect:
                check.fail(f"expected {self.expect}, got {result.label}")
        report.checks.append(check)


@dataclass(slots=True)
class CorpusReport:
    name: str
    description: str = ""
    checks: list[CheckReport] = field(default_factory=list)
    unconfirmed: list[str] = field(default_factory=list)
    classification: str | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def summary(self) -> str:
        lines = [f"═══ Monge Corpus: {self.name} ═══", ""]
        if self.description:
            lines += [f"  {self.description}", ""]
        lines += [c.line() for c in self.checks]
        if self.unconfirmed:
            lines += ["", "Unconfirmed readings:"]
            lines += [f"  {u}" for u in self.unconfirmed]
        if self.classification:
            lines += ["", f"Isotropy model: {self.classification}"]
        passed = sum(c.ok for c in self.checks)
        lines += ["", f"{passed}/{len(self.checks)} checks passed"]
        return "\n".join(lines)


class _CorpusReader:
    def __init__(self, text: str, default_name: str, path: Path | None):
        self.lines = text.splitlines()
        self.path = path
        self.corpus = MongeCorpus(default_name, MONGE_CHART, path=path)
        self.definitions: dict[str, Expr] = {}
        self.lineno = 0

    def error(self, message: str) -> ParseError:
        where = f"{self.path or self.corpus.name}:{self.lineno}"
        return ParseError(f"{where}: {message}")

    def read(self) -> MongeCorpus:
        for self.lineno, raw in enumerate(self.lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition(":")
            if not sep:
                raise self.error(f"expected 'key: value', got {line!r}")
            try:
                self.handle(key.split(), value.strip())
            except ParseError:
                raise
            except (ValueError, ZeroDivisionError) as exc:
                raise self.error(str(exc)) from None
        return self.corpus

    def expr(self, text: str) -> Expr:
        allowed = set(self.corpus.chart) | set(self.definitions)
        try:
            return substitute(parse_expr(text, allowed), self.definitions)
        except ParseError as exc:
            raise self.error(f"{exc} in {text!r}") from None

    def components(self, text: str) -> list[str]:
        parts, depth, current = [], 0, []
        for ch in text:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            if ch == "," and depth == 0:
                parts.append("".join(current).strip())
                current = []
            else:
                current.append(ch)
        parts.append("".join(current).strip())
        if len(parts) != len(self.corpus.chart):
            raise self.error(f"{len(parts)} components on a {len(self.corpus.chart)}-dimensional chart")
        return parts

    def handle(self, key: list[str], value: str) -> None:
        c = self.corpus
        match key:
            case ["name"]:
                c.name = value
            case ["description"]:
                c.description = value
            case ["chart"]:
                c.chart = tuple(value.split())
            case ["monge"]:
                if c.chart != MONGE_CHART:
                    raise self.error(f"a monge line needs the chart {' '.join(MONGE_CHART)}")
                c.monge = self.expr(value)
            case ["define", name]:
                self.definitions[name] = self.expr(value)
            case ["frame", name]:
                c.frames.append(VectorField(tuple(map(self.expr, self.components(value))), c.chart, name))
            case ["form", name]:
                c.forms[name] = tuple(map(self.expr, self.components(value)))
            case ["field", name]:
                c.fields.append(VectorField(tuple(map(self.expr, self.components(value))), c.chart, name))
            case ["field", name, "(unconfirmed)"]:
                self.unconfirmed(name, value)
            case ["box"]:
                parts = value.split()
                if len(parts) != 3 or parts[0] not in c.chart:
                    raise self.error("box needs a chart variable and two bounds")
                lo, hi = Fraction(parts[1]), Fraction(parts[2])
                if not lo < hi:
                    raise self.error(f"empty box for {parts[0]}")
                c.boxes[parts[0]] = (lo, hi)
            case ["require"]:
                c.require.append(self.expr(value))
            case ["point"]:
                coords = tuple(Fraction(x) for x in value.split())
                if len(coords) != len(c.chart):
                    raise self.error("point needs one coordinate per chart variable")
                c.point = coords
            case ["expect"]:
                c.expect = value
            case ["relation"]:
                left, eq, right = value.partition("=")
                lhs, rhs = tuple(left.split()), tuple(right.split())
                if not eq or len(lhs) != 2 or len(rhs) not in (1, 2):
                    raise self.error("relation reads 'A B = C D' or 'A B = C'")
                c.relations.append((lhs, rhs))
            case ["reality"]:
                try:
                    c.reality = Reality(value)
                except ValueError:
                    raise self.error(f"reality must be real or complex, got {value!r}") from None
            case _:
                raise self.error(f"unknown key {' '.join(key)!r}")

    def unconfirmed(self, name: str, value: str) -> None:
        try:
            comps = tuple(map(self.expr, self.components(value)))
            entry = UnconfirmedField(name, value, VectorField(comps, self.corpus.chart, name))
        except ParseError as exc:
            entry = UnconfirmedField(name, value, None, str(exc))
        self.corpus.unconfirmed.append(entry)
        warnings.warn(
            f"homog235: {self.corpus.name}: field {name} is an unconfirmed reading",
            stacklevel=2,
        )


# ── Lookup ───────────────────────────────────────────────────────────────


def corpus_dir(settings=None) -> Path:
    if settings is None:
        from homog235.config import Settings

        settings = Settings.from_config()
    return Path(settings.monge_dir)


def list_corpora(settings=None) -> list[str]:
    return sorted(p.stem for p in corpus_dir(settings).glob("*.monge"))


def load_corpus(name: str, settings=None) -> MongeCorpus:
    """A corpus by name from the configured directory, or a path to a file."""
    candidate = Path(name)
    if candidate.suffix == ".monge" or candidate.exists():
        return MongeCorpus.from_file(candidate)
    return MongeCorpus.from_file(corpus_dir(settings) / f"{name}.monge")
