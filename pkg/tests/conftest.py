"""Shared test fixtures."""

from pathlib import Path

import pytest
from hypothesis import settings as hypothesis_settings

from homog235.config import Settings

hypothesis_settings.register_profile("homog235", max_examples=60, deadline=None)
hypothesis_settings.load_profile("homog235")


def find_data(dirname: str) -> Path | None:
    """Find a data directory relative to the project root."""
    here = Path(__file__).resolve().parent
    for base in [Path("data"), Path("../data"), here.parent / "data"]:
        p = base / dirname
        if p.is_dir():
            return p.resolve()
    return None


@pytest.fixture(scope="session")
def catalog_dir() -> Path:
    """Skips the test if data/catalog is not found."""
    path = find_data("catalog")
    if path is None:
        pytest.skip("data/catalog not found")
    return path


@pytest.fixture(scope="session")
def monge_dir() -> Path:
    path = find_data("monge")
    if path is None:
        pytest.skip("data/monge not found")
    return path


@pytest.fixture(scope="session")
def catalog(catalog_dir):
    from homog235.catalog import load_catalog

    return load_catalog(str(catalog_dir))


@pytest.fixture(scope="session")
def settings(catalog_dir, monge_dir) -> Settings:
    return Settings(catalog_dir=catalog_dir, monge_dir=monge_dir, basis_changes=3)
