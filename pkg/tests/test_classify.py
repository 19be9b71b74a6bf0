"""Tests for model classification (classify.py)."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homog235.catalog import Family, make_O
from homog235.classify import (
    classify,
    lambda_dim7,
    n6_mu_sign,
    real_signs_dim7,
)
from homog235.errors import ClassificationError
from homog235.exact_arith import Scalar
from homog235.lie_core import LieAlgebra, Subspace, random_invertible
from homog235.models import AlgebraicModel, Reality


def _bare_model(algebra: LieAlgebra) -> AlgebraicModel:
    return AlgebraicModel(algebra, Subspace.zero(algebra.dim), Subspace.zero(algebra.dim))


# ── Round trips ───────────────────────────────────────────────────────────

def test_every_sample_classifies_to_its_label(catalog):
    for entry in catalog:
        for params in entry.sample_points:
            got = classify(entry.build(params)).label
            assert got == entry.expected_label(params), (entry.key, params, str(got))


@settings(max_examples=10)
@given(st.sampled_from(["N.6^+", "N.6^-", "D.6_star^3", "D.6_infty^2", "D.6_lambda^3+", "N.7^SE"]),
       st.integers(0, 10_000))
def test_label_survives_basis_change(catalog, key, seed):
    model = catalog.build(key)
    p = random_invertible(model.dim, seed)
    assert classify(model.change_basis(p)).label == catalog.expected_label(key)


# ── Dimension 14 ──────────────────────────────────────────────────────────

def test_flat_real_model():
    result = classify(make_O(Reality.REAL))
    assert result.line() == "O^R dim=14"
    assert result.family is Family.O


def test_degenerate_14_dimensional_algebra():
    with pytest.raises(ClassificationError):
        classify(_bare_model(LieAlgebra(14, {})))


# ── Dimension 7 ───────────────────────────────────────────────────────────

def test_complex_n7_lambda(catalog):
    result = classify(catalog.build("N.7", {"a": 1, "b": 2}))
    assert result.Lambda == Scalar.of("256/175")
    assert str(result.label) == "N.7 Lambda=256/175"


def test_complex_n7_at_imaginary_parameter(catalog):
    # (a, b) = (1, i): r = 0, s = -1
    result = classify(catalog.build("N.7", {"a": 1, "b": "i"}))
    assert result.Lambda == Scalar.of("16/25")


def test_real_n7_line(catalog):
    result = classify(catalog.build("N.7^NE[one]"))
    assert result.line() == "N.7^NE Lambda=1 signs=(-,+)"


def test_real_n7_signs(catalog):
    model = catalog.build("N.7^SW", {"a": 1, "b": 2})
    assert real_signs_dim7(model.algebra) == (1, -1)
    assert str(classify(model).label) == "N.7^SW Lambda=256/481"


def test_n7_lambda_is_basis_free(catalog):
    model = catalog.build("N.7^NW[outer]", {"a": 1, "b": 4})
    lam, _s2, _s4 = lambda_dim7(model.change_basis(random_invertible(7, 3)).algebra)
    assert lam == Scalar.of("-1024/1001")


def test_lambda_dim7_needs_dimension_7():
    with pytest.raises(ClassificationError):
        lambda_dim7(LieAlgebra(6, {}))


def test_real_signs_need_real_algebra(catalog):
    with pytest.raises(ClassificationError):
        real_signs_dim7(catalog.build("N.7", {"a": 1, "b": "i"}).algebra)


# ── Dimension 6 ───────────────────────────────────────────────────────────

def test_n6_mu(catalog):
    plus = classify(catalog.build("N.6^+"))
    minus = classify(catalog.build("N.6^-"))
    assert plus.mu == 18
    assert minus.mu == -18
    assert minus.line() == "N.6^- mu=-18"
    assert n6_mu_sign(catalog.build("N.6^+")) == (1, Scalar.of(18))


def test_complex_radical_branches(catalog):
    assert classify(catalog.build("N.6")).derived_radical_dim == 1
    assert classify(catalog.build("D.6_infty")).derived_radical_dim == 2
    assert classify(catalog.build("D.6_star")).derived_radical_dim == 0


def test_d6_lambda_pair(catalog):
    result = classify(catalog.build("D.6_lambda", {"lambda": "1/2"}))
    assert result.lambda_pair == (2, Scalar.of("1/2"))
    result = classify(catalog.build("D.6_lambda", {"lambda": "1+i"}))
    assert result.lambda_pair == (Scalar.of("1+i"), Scalar.of("1/2-1/2*i"))


def test_d6_lambda_real_line(catalog):
    result = classify(catalog.build("D.6_lambda^2+", {"lambda": 4}))
    assert result.line() == "D.6_lambda^2+ lambda_pair={4,1/4} killing=(4,2) kappa_k=-"


def test_d6_lambda_real_forms_by_signature(catalog):
    assert classify(catalog.build("D.6_lambda^6", {"lambda": 4})).killing == (0, 6, 0)
    assert classify(catalog.build("D.6_lambda^4", {"lambda": -2})).killing == (2, 4, 0)
    assert classify(catalog.build("D.6_lambda^3-")).killing[:2] == (3, 3)
    assert classify(catalog.build("D.6_lambda^2-", {"lambda": 2})).kappa_k == 1


def test_d6_infty_real_forms(catalog):
    for n in (1, 2, 4):
        result = classify(catalog.build(f"D.6_infty^{n}"))
        assert result.killing[1:] == (n, 2)
        assert result.label.variant == str(n)


def test_d6_star_real_forms(catalog):
    assert classify(catalog.build("D.6_star^3")).killing == (0, 3, 3)
    assert classify(catalog.build("D.6_star^1-")).kappa_k == 1
    assert classify(catalog.build("D.6_star^1+")).kappa_k == -1


def test_solvable_six_dimensional_algebra_refused():
    with pytest.raises(ClassificationError) as excinfo:
        classify(_bare_model(LieAlgebra(6, {})))
    assert "radical has dimension 6" in str(excinfo.value)


def test_unsupported_dimension():
    with pytest.raises(ClassificationError):
        classify(_bare_model(LieAlgebra(5, {})))


# ── Output ────────────────────────────────────────────────────────────────

def test_json_output(catalog):
    result = classify(catalog.build("D.6_lambda^2+", {"lambda": 4}))
    data = json.loads(result.to_json())
    assert data["label"] == "D.6_lambda^2+ lambda_pair={4,1/4}"
    assert data["family"] == "D.6_lambda"
    assert data["reality"] == "real"
    assert data["variant"] == "2+"
    assert data["lambda_pair"] == ["4", "1/4"]
    assert data["killing"] == [4, 2, 0]
    assert data["kappa_k"] == "-"
    assert "Lambda" not in data
    assert "mu" not in data


def test_json_output_for_n7(catalog):
    data = classify(catalog.build("N.7^NE[one]")).to_dict()
    assert data["Lambda"] == "1"
    assert data["signs"] == ["-", "+"]
