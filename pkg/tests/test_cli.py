"""Tests for the command-line surface (cli.py)."""

import json

import pytest

from homog235.cli import EXIT_FAILURE, EXIT_INPUT, EXIT_OK, main
from homog235.document import ModelDocument
from homog235.exact_arith import as_vector
from homog235.lie_core import Subspace
from homog235.models import AlgebraicModel


@pytest.fixture
def config(tmp_path, catalog_dir, monge_dir):
    path = tmp_path / "homog235.toml"
    path.write_text(
        f'[catalog]\ndir = "{catalog_dir.resolve().as_posix()}"\n\n'
        f'[monge]\ndir = "{monge_dir.resolve().as_posix()}"\npoints = 8\n\n'
        "[classify]\nbasis_changes = 2\n",
        encoding="utf-8",
    )
    return str(path)


def run(config, *argv):
    return main(["--config", config, *argv])


# ── Catalog ───────────────────────────────────────────────────────────────

def test_catalog_list(config, capsys):
    assert run(config, "catalog", "list") == EXIT_OK
    out = capsys.readouterr().out
    assert "D.6_lambda^2+" in out
    assert "N.7 arrows" in out


def test_emit_to_stdout(config, capsys):
    assert run(config, "catalog", "emit", "D.6_lambda", "--param", "lambda=4") == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 6
    assert data["meta"]["label"] == "D.6_lambda lambda_pair={4,1/4}"


def test_emit_excluded_parameter(config, capsys):
    assert run(config, "catalog", "emit", "D.6_lambda", "--param", "lambda=9") == EXIT_FAILURE
    assert "ERROR" in capsys.readouterr().err


def test_emit_bad_param_syntax(config):
    assert run(config, "catalog", "emit", "N.6", "--param", "lambda") == EXIT_INPUT


def test_emit_n7_dispatches_on_parameters(config, tmp_path, capsys):
    out = tmp_path / "n7.json"
    assert run(config, "catalog", "emit", "N.7", "--param", "a=1", "--param", "b=1", "--out", str(out)) == EXIT_OK
    assert json.loads(out.read_text(encoding="utf-8"))["meta"]["key"] == "N.7[Lambda=1]"
    capsys.readouterr()
    assert run(config, "classify", str(out)) == EXIT_OK
    assert capsys.readouterr().out.strip() == "N.7 Lambda=1 sigma2=-2 sigma4=1"


# ── Validate / classify ───────────────────────────────────────────────────

def test_validate_emitted_document(config, tmp_path, capsys):
    out = tmp_path / "n6.json"
    assert run(config, "catalog", "emit", "N.6", "--out", str(out)) == EXIT_OK
    assert run(config, "validate", str(out)) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out


def test_validate_reports_growth_failure(config, catalog, tmp_path, capsys):
    model = catalog.build("D.6_lambda", {"lambda": 2})
    d = Subspace([as_vector(v) for v in ([0, 0, 1, 0, 0, 1], [1, 0, 0, -1, 0, 0], [0, 1, 0, 0, -1, 0])], 6)
    path = tmp_path / "lambda-one.json"
    ModelDocument.from_model(AlgebraicModel(model.algebra, model.k, d)).write(path)
    assert run(config, "validate", str(path)) == EXIT_FAILURE
    assert "growth" in capsys.readouterr().out


def test_validate_malformed_scalar(config, tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"dim": 2, "k": [], "d": [["1//2", "0"]]}), encoding="utf-8")
    assert run(config, "validate", str(path)) == EXIT_INPUT
    assert "ERROR" in capsys.readouterr().err


def test_validate_missing_file(config, tmp_path):
    assert run(config, "validate", str(tmp_path / "absent.json")) == EXIT_INPUT


def test_classify_line_and_json(config, tmp_path, capsys):
    out = tmp_path / "n6.json"
    run(config, "catalog", "emit", "N.6^-", "--out", str(out))
    capsys.readouterr()
    assert run(config, "classify", str(out)) == EXIT_OK
    assert capsys.readouterr().out.strip() == "N.6^- mu=-18"
    assert run(config, "classify", str(out), "--json") == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["label"] == "N.6^-"
    assert data["mu"] == "-18"


def test_classify_unsupported_algebra(config, tmp_path, capsys):
    path = tmp_path / "abelian.json"
    path.write_text(json.dumps({"dim": 6, "k": [], "d": []}), encoding="utf-8")
    assert run(config, "classify", str(path)) == EXIT_FAILURE
    assert "ERROR" in capsys.readouterr().err


# ── Verification ──────────────────────────────────────────────────────────

def test_verify_tables_only(config, capsys):
    assert run(config, "verify-tables", "--only", "D6_STAR", "--basis-changes", "1") == EXIT_OK
    out = capsys.readouterr().out
    assert "═══ Table Verification ═══" in out
    assert "D.6_star" in out


def test_verify_tables_unknown_family(config):
    assert run(config, "verify-tables", "--only", "E8") == EXIT_FAILURE


def test_monge_list(config, capsys):
    assert run(config, "monge", "list") == EXIT_OK
    assert "n6-minus" in capsys.readouterr().out.split()


def test_monge_verify(config, capsys):
    assert run(config, "monge", "verify", "n6-minus", "--points", "6") == EXIT_OK
    out = capsys.readouterr().out
    assert "═══ Monge Corpus: n6-minus ═══" in out
    assert "N.6^- (mu = -18)" in out


def test_monge_check_failing_file(config, tmp_path, capsys):
    path = tmp_path / "linear.monge"
    path.write_text("monge: q + y\n", encoding="utf-8")
    assert run(config, "monge", "check", str(path)) == EXIT_FAILURE
    assert "FAIL" in capsys.readouterr().out


def test_missing_config(tmp_path):
    assert main(["--config", str(tmp_path / "absent.toml"), "catalog", "list"]) == EXIT_INPUT
