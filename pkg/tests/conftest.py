"""
    Shared fixtures for the negcone test-suite.

    Read more about conftest.py under:
    - https://docs.pytest.org/en/stable/fixture.html
"""

import pytest

from negcone.classification import load_curated_table
from negcone.config import Settings


@pytest.fixture
def settings(tmp_path):
    """Settings with a private cache directory."""
    return Settings(cache_dir=tmp_path / "cache")


@pytest.fixture(scope="session")
def curated():
    """The packaged curated differential table."""
    return load_curated_table()


@pytest.fixture(autouse=True)
def _isolated_environment(monkeypatch):
    for key in ("NEGCONE_CACHE_DIR", "NEGCONE_MAX_STEM", "NEGCONE_MAX_FIL", "NEGCONE_CURATED"):
        monkeypatch.delenv(key, raising=False)
