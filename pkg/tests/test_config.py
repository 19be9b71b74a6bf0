"""Tests for TOML settings (config.py)."""

from pathlib import Path

import pytest

from homog235.config import DEFAULT_CATALOG_DIR, DEFAULT_MONGE_DIR, Settings


def test_defaults():
    s = Settings()
    assert s.catalog_dir == DEFAULT_CATALOG_DIR
    assert s.monge_dir == DEFAULT_MONGE_DIR
    assert (s.points, s.seed, s.tolerance) == (25, 235, 1e-8)
    assert (s.basis_changes, s.classify_seed) == (2, 7)


def test_shipped_config_keeps_the_quick_sweep():
    shipped = Path(__file__).resolve().parents[1] / "homog235.toml"
    if not shipped.exists():
        pytest.skip("homog235.toml not found")
    assert Settings.from_config(shipped).basis_changes == Settings().basis_changes


def test_no_config_file_gives_defaults(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert Settings.from_config() == Settings()


def test_config_in_working_directory(tmp_path, monkeypatch):
    (tmp_path / "homog235.toml").write_text("[monge]\npoints = 7\n", encoding="utf-8")
    monkeypatch.chdir(tmp_path)
    assert Settings.from_config().points == 7


def test_relative_paths_resolve_against_config(tmp_path):
    (tmp_path / "cat").mkdir()
    (tmp_path / "corpora").mkdir()
    cfg = tmp_path / "ci.toml"
    cfg.write_text(
        '[catalog]\ndir = "cat"\n\n'
        '[monge]\ndir = "corpora"\npoints = 10\nseed = 1\ntolerance = 1e-6\n\n'
        "[classify]\nbasis_changes = 3\nseed = 99\n",
        encoding="utf-8",
    )
    s = Settings.from_config(cfg)
    assert s.catalog_dir == tmp_path / "cat"
    assert s.monge_dir == tmp_path / "corpora"
    assert (s.points, s.seed, s.tolerance) == (10, 1, 1e-6)
    assert (s.basis_changes, s.classify_seed) == (3, 99)


def test_missing_directory_falls_back_with_warning(tmp_path):
    cfg = tmp_path / "ci.toml"
    cfg.write_text('[catalog]\ndir = "nowhere"\n', encoding="utf-8")
    with pytest.warns(UserWarning, match="config path not found"):
        s = Settings.from_config(cfg)
    assert s.catalog_dir == DEFAULT_CATALOG_DIR


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        Settings.from_config(tmp_path / "absent.toml")


def test_override_skips_none():
    s = Settings().override(points=5, seed=None, catalog_dir=Path("x"))
    assert s.points == 5
    assert s.seed == 235
    assert s.catalog_dir == Path("x")
