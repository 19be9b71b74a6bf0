"""
Settings read from homog235.toml.

Usage:
    from homog235.config import Settings

    settings = Settings.from_config()              # auto-detects homog235.toml
    settings = Settings.from_config("ci.toml")
    print(settings.catalog_dir, settings.points)
"""

from __future__ import annotations

import tomllib
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

# src/homog235/config.py → repository root
_REPO_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CATALOG_DIR = _REPO_ROOT / "data" / "catalog"
DEFAULT_MONGE_DIR = _REPO_ROOT / "data" / "monge"
CONFIG_NAME = "homog235.toml"


@dataclass(frozen=True, slots=True)
class Settings:
    catalog_dir: Path = DEFAULT_CATALOG_DIR
    monge_dir: Path = DEFAULT_MONGE_DIR
    points: int = 25
    seed: int = 235
    tolerance: float = 1e-8
    basis_changes: int = 2
    classify_seed: int = 7

    @classmethod
    def from_config(cls, config_path: str | Path | None = None) -> Settings:
        """Read a TOML config; paths resolve relative to the file's directory.

        With no path, ``homog235.toml`` in the working directory is used when
        present, else the built-in defaults.
        """
        if config_path is None:
            candidate = Path(CONFIG_NAME)
            if not candidate.exists():
                return cls()
            config_path = candidate
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Config not found: {config_path}")

        with config_path.open("rb") as f:
            cfg = tomllib.load(f)

        base_dir = config_path.parent
        catalog_cfg = cfg.get("catalog", {})
        monge_cfg = cfg.get("monge", {})
        classify_cfg = cfg.get("classify", {})

        return cls(
            catalog_dir=_resolve_dir(catalog_cfg.get("dir"), base_dir, DEFAULT_CATALOG_DIR),
            monge_dir=_resolve_dir(monge_cfg.get("dir"), base_dir, DEFAULT_MONGE_DIR),
            points=int(monge_cfg.get("points", 25)),
            seed=int(monge_cfg.get("seed", 235)),
            tolerance=float(monge_cfg.get("tolerance", 1e-8)),
            basis_changes=int(classify_cfg.get("basis_changes", 2)),
            classify_seed=int(classify_cfg.get("seed", 7)),
        )

    def override(self, **values) -> Settings:
        """Copy with the non-None values replaced (CLI flags beat the config)."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


def _resolve_dir(raw: str | None, base_dir: Path, default: Path) -> Path:
    if not raw:
        return default
    path = Path(raw)
    if not path.is_absolute():
        path = base_dir / path
    if not path.is_dir():
        warnings.warn(
            f"homog235: config path not found, using {default}: {path}",
            stacklevel=3,
        )
        return default
    return path
