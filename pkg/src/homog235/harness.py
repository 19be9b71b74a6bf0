"""
The table-verification battery: every catalog row is built, validated and
classified (also after seeded random changes of basis); real rows are
checked against their complex counterpart through the recorded
anti-involution and identification dictionary; the D.6_λ summand swap
and the G2 realization get their own checks.

Usage:
    from homog235.catalog import default_catalog
    from homog235.config import Settings
    from homog235.harness import verify_tables

    report = verify_tables(default_catalog(), Settings.from_config(), echo=print)
    print(report.summary())
"""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable

from homog235.catalog import Catalog, CatalogEntry, Family, g2_algebra, summand_swap
from homog235.classify import classify
from homog235.config import Settings
from homog235.errors import CatalogError, Homog235Error
from homog235.exact_arith import Scalar
from homog235.lie_core import check_jacobi, random_invertible
from homog235.models import (
    admissibility_report,
    complexify,
    equivalence_report,
    fixed_points,
    validate_model,
)

# λ values whose summand swap D.6_λ → D.6_{1/λ} is checked
SWAP_LAMBDAS = ("2", "3", "4", "-1", "-2")
O_FILTRATION = {"k": 9, "d": 11, "d+[d,d]": 12, "h": 14}


@dataclass(slots=True)
class CheckOutcome:
    family: Family
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        mark = "pass" if self.ok else "FAIL"
        text = f"  {mark}  {self.name}"
        return f"{text}  ({self.detail})" if self.detail and not self.ok else text


@dataclass(slots=True)
class VerificationReport:
    outcomes: list[CheckOutcome] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(o.ok for o in self.outcomes)

    def failed(self) -> list[CheckOutcome]:
        return [o for o in self.outcomes if not o.ok]

    def summary(self) -> str:
        if not self.outcomes:
            return "No checks run."
        total = Counter(o.family for o in self.outcomes)
        passed = Counter(o.family for o in self.outcomes if o.ok)
        lines = ["═══ Table Verification ═══", ""]
        for family in Family:
            if total[family]:
                lines.append(f"  {family.value:<12} {passed[family]:4d}/{total[family]:<4d}")
        n_ok = sum(passed.values())
        n = len(self.outcomes)
        lines += ["", f"Checks passed: {n_ok}/{n}"]
        if not self.ok:
            lines += ["", "Failures:"]
            lines += [f"  {o.family.value}: {o.name}: {o.detail}" for o in self.failed()]
        return "\n".join(lines)


def parse_family(text: str) -> Family:
    """``D6_STAR``, ``d6-star`` or ``D.6_star`` → Family.D6_STAR."""
    norm = text.strip().upper().replace(".", "").replace("-", "_")
    for family in Family:
        if norm in (family.name, family.value.upper().replace(".", "")):
            return family
    raise CatalogError(f"unknown family {text!r}; expected one of {', '.join(f.name for f in Family)}")


class _Runner:
    def __init__(self, catalog: Catalog, settings: Settings, echo: Callable[[str], None] | None):
        self.catalog = catalog
        self.settings = settings
        self.echo = echo
        self.report = VerificationReport()
        self._family: Family | None = None

    def record(self, family: Family, name: str, check: Callable[[], str | bool | None]) -> None:
        """Run one check; a falsy/str result is a failure, exceptions too."""
        try:
            result = check()
        except Homog235Error as exc:
            outcome = CheckOutcome(family, name, False, f"{type(exc).__name__}: {exc}")
        else:
            if isinstance(result, str):
                outcome = CheckOutcome(family, name, False, result)
            else:
                outcome = CheckOutcome(family, name, result is not False)
        self.report.outcomes.append(outcome)
        if self.echo is not None:
            if family is not self._family:
                self._family = family
                self.echo(f"── {family.value} ──")
            self.echo(outcome.line())

    # ── Per-entry checks ─────────────────────────────────────────────────

    def entry(self, entry: CatalogEntry) -> None:
        for n, params in enumerate(entry.sample_points):
            tag = entry.key + (f" [{_params_text(params)}]" if params else "")
            self.record(entry.family, f"{tag} valid", lambda: _validity(entry, params))
            self.record(entry.family, f"{tag} classify", lambda: _round_trip(entry, params))
            if n == 0 and self.settings.basis_changes:
                self.record(
                    entry.family, f"{tag} basis changes ×{self.settings.basis_changes}",
                    lambda: self._basis_changes(entry, params),
                )
            if entry.anti_involution is not None:
                self.record(entry.family, f"{tag} anti-involution", lambda: self._admissible(entry, params))
                self.record(entry.family, f"{tag} fixed points", lambda: self._fixed_points(entry, params))
            if entry.dictionary is not None:
                self.record(entry.family, f"{tag} dictionary", lambda: self._dictionary(entry, params))
        if entry.family is Family.O:
            self.record(entry.family, f"{entry.key} filtration 9/11/12/14", lambda: _filtration(entry))

    def _basis_changes(self, entry: CatalogEntry, params) -> str | None:
        model = entry.build(params)
        expected = entry.expected_label(params)
        for t in range(self.settings.basis_changes):
            p = random_invertible(model.dim, self.settings.classify_seed + t)
            got = classify(model.change_basis(p)).label
            if got != expected:
                return f"basis change {t}: got {got}, expected {expected}"
        return None

    def _admissible(self, entry: CatalogEntry, params) -> str | None:
        model, _env = self.catalog.counterpart(entry.key, params)
        phi = self.catalog.anti_involution(entry.key, params)
        report = admissibility_report(model.in_adapted_basis(), phi)
        return None if report.admissible else "; ".join(report.failures)

    def _fixed_points(self, entry: CatalogEntry, params) -> str | None:
        model, _env = self.catalog.counterpart(entry.key, params)
        phi = self.catalog.anti_involution(entry.key, params)
        real = fixed_points(model.in_adapted_basis(), phi)
        got = classify(real).label
        expected = entry.expected_label(params)
        return None if got == expected else f"fixed points classify to {got}, expected {expected}"

    def _dictionary(self, entry: CatalogEntry, params) -> str | None:
        if entry.correction:
            warnings.warn(f"homog235: {entry.key}: {entry.correction}", stacklevel=2)
        model, _env = self.catalog.counterpart(entry.key, params)
        alpha = self.catalog.dictionary(entry.key, params)
        real = entry.build(params)
        report = equivalence_report(complexify(real), model, alpha)
        return None if report.ok else "; ".join(report.failures)

    # ── Family-wide checks ───────────────────────────────────────────────

    def summand_swaps(self) -> None:
        if "D.6_lambda" not in self.catalog:
            return
        swap = summand_swap()
        for text in SWAP_LAMBDAS:
            lam = Scalar.of(text)
            self.record(
                Family.D6_LAMBDA, f"summand swap λ={lam} → {1 / lam}",
                lambda: _swap(self.catalog, lam, swap),
            )

    def g2(self) -> None:
        self.record(Family.O, "G2 commutators close, Jacobi", lambda: check_jacobi(g2_algebra()).ok)


def _params_text(params) -> str:
    return ", ".join(f"{k}={v}" for k, v in params.items())


def _validity(entry: CatalogEntry, params) -> str | None:
    report = validate_model(entry.build(params))
    return None if report.ok else "failed: " + ", ".join(report.failed())


def _round_trip(entry: CatalogEntry, params) -> str | None:
    got = classify(entry.build(params)).label
    expected = entry.expected_label(params)
    return None if got == expected else f"got {got}, expected {expected}"


def _filtration(entry: CatalogEntry) -> str | None:
    dims = validate_model(entry.build()).dims
    return None if dims == O_FILTRATION else f"dimensions {dims}"


def _swap(catalog: Catalog, lam: Scalar, swap) -> str | None:
    m1 = catalog.build("D.6_lambda", {"lambda": lam})
    m2 = catalog.build("D.6_lambda", {"lambda": 1 / lam})
    report = equivalence_report(m1, m2, swap)
    return None if report.ok else "; ".join(report.failures)


def verify_tables(
    catalog: Catalog,
    settings: Settings | None = None,
    only: Iterable[Family] | None = None,
    echo: Callable[[str], None] | None = None,
) -> VerificationReport:
    """Run the whole battery (restricted to ``only`` families when given)."""
    settings = settings or Settings()
    families = set(only) if only is not None else set(Family)
    runner = _Runner(catalog, settings, echo)
    for family in Family:
        if family not in families:
            continue
        if family is Family.O:
            runner.g2()
        for entry in catalog:
            if entry.family is family:
                runner.entry(entry)
        if family is Family.D6_LAMBDA:
            runner.summand_swaps()
    return runner.report

