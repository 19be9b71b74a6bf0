"""Tests for the model file format (document.py)."""

import json

import pytest

from homog235.document import ModelDocument
from homog235.errors import ParseError
from homog235.exact_arith import QQ, Field, Scalar
from homog235.models import Reality, validate_model

SL2_DOC = {
    "basis": ["H", "X", "Y"],
    "brackets": [
        ["H", "X", {"X": "2"}],
        ["H", "Y", {"Y": "-2"}],
        [1, 2, [[0, "1"]]],
    ],
    "k": [{"H": "1"}],
    "d": [["1", "0", "0"], {"X": "1"}],
}


# ── Reading ───────────────────────────────────────────────────────────────

def test_names_and_indices_mix():
    doc = ModelDocument.from_dict(SL2_DOC)
    assert doc.dim == 3
    assert doc.field == QQ
    assert doc.reality is Reality.COMPLEX
    model = doc.to_model()
    assert model.algebra.basis_bracket(1, 2) == (Scalar.of(1), Scalar.zero(), Scalar.zero())
    assert model.k.dim == 1
    assert model.d.dim == 2


def test_dim_without_basis_names():
    doc = ModelDocument.from_dict({"dim": 2, "brackets": [[0, 1, {"e2": "1"}]], "k": [], "d": [[1, 0]]})
    assert doc.basis == ["e1", "e2"]


def test_field_declaration():
    doc = ModelDocument.from_dict({**SL2_DOC, "field": {"sqrt": 2, "imaginary": False}})
    assert doc.field == Field(2, False)


def test_malformed_json():
    with pytest.raises(ParseError):
        ModelDocument.from_json("{\"basis\": [")


@pytest.mark.parametrize(
    "patch",
    [
        {"basis": ["H", "H", "Y"]},
        {"dim": 4},
        {"k": [{"H": "1//2"}]},
        {"k": [{"Z": "1"}]},
        {"k": [[1, 0]]},
        {"k": [{"H": 1.5}]},
        {"brackets": [["H", "H", {"X": "1"}]]},
        {"brackets": [["H", "X"]]},
        {"reality": "quaternionic"},
        {"field": {"sqrt": "2"}},
        {"field": {"sqrt": 4}},
        {"k": [{"Y": "1"}]},
        {"d": [{"H": "1"}, {"H": "2"}]},
        {"adapted_basis": [["1", "0", "0"]]},
    ],
)
def test_malformed_documents(patch):
    with pytest.raises(ParseError):
        ModelDocument.from_dict({**SL2_DOC, **patch})


def test_missing_d():
    obj = dict(SL2_DOC)
    del obj["d"]
    with pytest.raises(ParseError) as excinfo:
        ModelDocument.from_dict(obj)
    assert "'d'" in str(excinfo.value)


def test_document_must_be_an_object():
    with pytest.raises(ParseError):
        ModelDocument.from_json("[1, 2, 3]")


def test_real_document_with_complex_scalars():
    obj = {**SL2_DOC, "reality": "real", "field": {"imaginary": True}, "k": [{"H": "i"}]}
    with pytest.raises(ParseError):
        ModelDocument.from_dict(obj).to_model()


# ── Writing ───────────────────────────────────────────────────────────────

def test_emitted_document_is_canonical(catalog):
    doc = ModelDocument.from_model(catalog.build("N.6"), meta={"label": "N.6"})
    data = doc.to_dict()
    assert data["dim"] == 6
    assert data["reality"] == "complex"
    assert data["meta"] == {"label": "N.6"}
    triples = [(i, j) for i, j, _terms in data["brackets"]]
    assert triples == sorted(triples)
    assert all(isinstance(c, str) for v in data["d"] for c in v)


def test_write_and_read_back(catalog, tmp_path):
    model = catalog.build("D.6_lambda", {"lambda": "1+i"})
    path = tmp_path / "model.json"
    ModelDocument.from_model(model).write(path)
    back = ModelDocument.from_file(path).to_model()
    assert back.algebra == model.algebra
    assert back.k == model.k
    assert back.d == model.d
    assert validate_model(back).ok


def test_adapted_basis_survives_writing(catalog):
    model = catalog.build("D.6_lambda", {"lambda": 3})
    text = ModelDocument.from_model(model).to_json()
    assert "adapted_basis" in json.loads(text)
    assert ModelDocument.from_json(text).to_model().adapted_basis == model.adapted_basis
