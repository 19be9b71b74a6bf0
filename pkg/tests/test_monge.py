"""Tests for Monge corpora and the sampled checks (monge.py)."""

from fractions import Fraction

import numpy as np
import pytest

from homog235.errors import MongeError, ParseError
from homog235.expr import parse_expr
from homog235.monge import (
    MONGE_CHART,
    MongeCorpus,
    SamplePlan,
    VectorField,
    check_235,
    check_symmetry,
    fit_structure_constants,
    list_corpora,
    load_corpus,
    monge_distribution,
    numeric_rank,
    vf_bracket,
)

PLAN = SamplePlan(points=8, seed=1)


def _verify(name, settings):
    corpus = load_corpus(name, settings)
    return corpus.verify(corpus.plan(points=10, seed=settings.seed, tolerance=settings.tolerance))


# ── Vector fields ─────────────────────────────────────────────────────────

def test_coordinate_fields_commute():
    dx = VectorField.coordinate("x", MONGE_CHART)
    dq = VectorField.coordinate("q", MONGE_CHART)
    assert not vf_bracket(dx, dq).values(PLAN.sample(MONGE_CHART)).any()


def test_bracket_of_monge_pair():
    # [∂q, Dx] = ∂p + F_q ∂z
    Q, Dx = monge_distribution(parse_expr("q^2", set(MONGE_CHART)))
    B = vf_bracket(Q, Dx)
    values = B.values(np.array([[0.5, 0.5, 0.5, 0.75, 0.5]]))
    assert values.tolist() == [[0.0, 0.0, 1.0, 0.0, 1.5]]


def test_component_count_must_match_chart():
    with pytest.raises(MongeError):
        VectorField.parse(["1", "0"], MONGE_CHART, "X")


def test_parse_with_definitions():
    defs = {"g": parse_expr("x*q", set(MONGE_CHART))}
    X = VectorField.parse(["g", "0", "0", "0", "1"], MONGE_CHART, "X", defs)
    assert X.values(np.array([[2.0, 0, 0, 3.0, 0]]))[0, 0] == 6.0


def test_numeric_rank():
    assert numeric_rank(np.eye(3), 1e-8) == 3
    assert numeric_rank(np.array([[1.0, 2.0], [2.0, 4.0]]), 1e-8) == 1
    assert numeric_rank(np.zeros((2, 2)), 1e-8) == 0


# ── Sampling ──────────────────────────────────────────────────────────────

def test_sample_plan_is_seeded_and_boxed():
    plan = SamplePlan(points=5, seed=3, boxes={"q": (Fraction(1), Fraction(3, 2))})
    a = plan.sample(MONGE_CHART)
    assert a.shape == (5, 5)
    assert np.array_equal(a, plan.sample(MONGE_CHART))
    assert np.all((a[:, 3] >= 1.0) & (a[:, 3] <= 1.5))
    assert np.all((a[:, 0] >= 0.25) & (a[:, 0] <= 2.0))


def test_sample_plan_requirements():
    plan = SamplePlan(points=4, require=(parse_expr("x - y", set(MONGE_CHART)),))
    a = plan.sample(MONGE_CHART)
    assert np.all(a[:, 0] > a[:, 1])


def test_unsatisfiable_requirement():
    plan = SamplePlan(points=2, require=(parse_expr("-1"),))
    with pytest.raises(MongeError):
        plan.sample(MONGE_CHART)


@pytest.mark.parametrize("kwargs", [{"points": 0}, {"tolerance": 0.0}])
def test_bad_sample_plan(kwargs):
    with pytest.raises(MongeError):
        SamplePlan(**kwargs)


# ── Sampled checks ────────────────────────────────────────────────────────

def test_linear_monge_function_is_not_235():
    corpus = MongeCorpus.from_text("name: linear\nmonge: q\n")
    report = corpus.verify(corpus.plan(points=5))
    assert not report.ok
    assert "∂q²F vanishes" in report.summary()


def test_hilbert_cartan_growth():
    F = parse_expr("q^2", set(MONGE_CHART))
    report = check_235(monge_distribution(F), PLAN, F)
    assert report.ok
    assert report.checked == 8


def test_growth_needs_two_fields():
    dx = VectorField.coordinate("x", MONGE_CHART)
    assert not check_235([dx], PLAN).ok


def test_translation_is_a_symmetry_and_scaling_of_x_is_not():
    distribution = monge_distribution(parse_expr("q^2", set(MONGE_CHART)))
    dz = VectorField.coordinate("z", MONGE_CHART, "dz")
    assert check_symmetry(distribution, dz, PLAN).ok
    stretch = VectorField.parse(["x", "0", "0", "0", "0"], MONGE_CHART, "stretch")
    assert not check_symmetry(distribution, stretch, PLAN).ok


def test_fit_structure_constants_of_affine_fields():
    # ∂x and x∂x + y∂y: [∂x, x∂x + y∂y] = ∂x
    chart = MONGE_CHART
    fields = [
        VectorField.coordinate("x", chart, "P"),
        VectorField.parse(["x", "y", "0", "0", "0"], chart, "E"),
    ]
    L = fit_structure_constants(fields, PLAN)
    assert L.basis_bracket(0, 1) == (1, 0)
    assert L.labels == ("P", "E")


def test_fit_refuses_dependent_fields():
    dx = VectorField.coordinate("x", MONGE_CHART, "a")
    twice = VectorField.parse(["2", "0", "0", "0", "0"], MONGE_CHART, "b")
    with pytest.raises(MongeError):
        fit_structure_constants([dx, twice], PLAN)


# ── Corpus files ──────────────────────────────────────────────────────────

def test_reader_errors_carry_line_numbers():
    with pytest.raises(ParseError) as excinfo:
        MongeCorpus.from_text("name: bad\n\nmonge: q^2 +\n")
    assert "bad:3:" in str(excinfo.value)


@pytest.mark.parametrize(
    "text",
    [
        "no colon here",
        "colour: red",
        "field X: 1, 0, 0",
        "box: q 2 1",
        "box: w 0 1",
        "point: 0 0 0",
        "relation: A = B",
        "reality: quaternionic",
        "chart: a b c d e\nmonge: a",
    ],
)
def test_malformed_corpus(text):
    with pytest.raises(ParseError):
        MongeCorpus.from_text(text)


def test_unconfirmed_field_warns_and_never_fails():
    text = "monge: q^2\nfield V (unconfirmed): 0, 0, 0, 0, 1\nfield W (unconfirmed): x log q, 0, 0, 0, 0\n"
    with pytest.warns(UserWarning, match="unconfirmed"):
        corpus = MongeCorpus.from_text(text)
    report = corpus.verify(corpus.plan(points=5))
    assert report.ok
    assert report.unconfirmed[0] == "V: symmetry"
    assert report.unconfirmed[1].startswith("W: unparsable")


def test_frames_without_monge_line():
    text = "chart: a b c d e\nframe E1: 1, 0, 0, 0, 0\n"
    corpus = MongeCorpus.from_text(text)
    with pytest.raises(MongeError):
        corpus.distribution


def test_missing_corpus_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        MongeCorpus.from_file(tmp_path / "absent.monge")


# ── Shipped corpora ───────────────────────────────────────────────────────

def test_every_corpus_is_listed(settings):
    names = list_corpora(settings)
    assert "flat" in names
    assert "n6-minus" in names
    assert len(names) == 13


@pytest.mark.parametrize(
    "name",
    ["flat", "d6-lambda", "d6-star-3", "d6-star-3-euler", "d6-star-3-goursat", "two-spheres"],
)
def test_corpus_verifies(name, settings):
    report = _verify(name, settings)
    assert report.ok, report.summary()


def test_flat_corpus_has_fourteen_symmetries(settings):
    assert len(load_corpus("flat", settings).fields) == 14


def test_n6_minus_isotropy_model(settings):
    report = _verify("n6-minus", settings)
    assert report.ok, report.summary()
    assert report.classification == "N.6^- (mu = -18)"
    assert "Isotropy model: N.6^- (mu = -18)" in report.summary()


def test_corpus_by_path(settings):
    corpus = load_corpus(str(settings.monge_dir / "flat.monge"))
    assert corpus.name == "flat"
