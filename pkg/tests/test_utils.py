"""Tests for utility functions."""

from unittest.mock import patch

import pytest

from negcone.utils import atomic_write


def test_atomic_write_creates_directories(tmp_path):
    """Missing parent directories are created."""
    target = tmp_path / "a" / "b" / "out.tsv"
    atomic_write(target, b"n\tpsi\n")
    assert target.read_bytes() == b"n\tpsi\n"


def test_atomic_write_replaces(tmp_path):
    """An existing file is replaced as a whole."""
    target = tmp_path / "out.svg"
    target.write_bytes(b"old content that is longer")
    atomic_write(str(target), b"new")
    assert target.read_bytes() == b"new"
    assert [p.name for p in tmp_path.iterdir()] == ["out.svg"]


@patch("negcone.utils.os.replace", side_effect=OSError("disk full"))
def test_atomic_write_cleans_up(mock_replace, tmp_path):
    """A failed write leaves the old file and no temporary behind."""
    target = tmp_path / "out.tsv"
    target.write_bytes(b"old")
    with pytest.raises(OSError):
        atomic_write(target, b"new")
    mock_replace.assert_called_once()
    assert target.read_bytes() == b"old"
    assert [p.name for p in tmp_path.iterdir()] == ["out.tsv"]
