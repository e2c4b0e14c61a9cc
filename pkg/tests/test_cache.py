"""Tests for the chart cache."""

import json
from unittest.mock import Mock

import pytest

from negcone.cache import cache_path, cache_roundtrip, cached_chart, load_chart, store_chart
from negcone.chart import BigradedChart, ExtEntry
from negcone.errors import CacheRejected


@pytest.fixture
def ext():
    return BigradedChart(
        "RP[21..inf]",
        (21, 23),
        (0, 1),
        {(21, 0): ExtEntry(1, ("1[21]",), (((21, ()),),)), (22, 1): ExtEntry(1, ("h1[21]",), (((21, (1,)),),))},
    )


def test_cache_path(tmp_path):
    """Keys are sanitized into file names."""
    assert cache_path(tmp_path, "ext-RP[21..inf]-21-23-1").name == "ext-RP_21..inf_-21-23-1.json"


def test_roundtrip(ext, tmp_path):
    """A stored chart loads back unchanged."""
    assert cache_roundtrip(ext, tmp_path) == ext


def test_rejects_tampering(ext, tmp_path):
    """Edited payloads fail the checksum."""
    path = cache_path(tmp_path, "k")
    store_chart(path, ext)
    document = json.loads(path.read_text())
    document["payload"]["entries"][0]["dimension"] = 2
    path.write_text(json.dumps(document))
    with pytest.raises(CacheRejected, match="checksum"):
        load_chart(path)


def test_rejects_other_conventions(ext, tmp_path):
    """Charts from other Lambda conventions are rejected."""
    path = cache_path(tmp_path, "k")
    store_chart(path, ext)
    document = json.loads(path.read_text())
    document["header"]["conventions"] = "0" * 64
    path.write_text(json.dumps(document))
    with pytest.raises(CacheRejected, match="conventions"):
        load_chart(path)


@pytest.mark.parametrize("text", ["not json", "{}", '{"header": {"format": "other"}, "payload": {}}'])
def test_rejects_garbage(text, tmp_path):
    """Unreadable files are rejected."""
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(CacheRejected):
        load_chart(path)


def test_cached_chart(ext, tmp_path):
    """Compute once, then hit the cache; bad files are recomputed."""
    compute = Mock(return_value=ext)
    assert cached_chart(tmp_path, "k", compute) == ext
    assert cached_chart(tmp_path, "k", compute) == ext
    assert compute.call_count == 1
    cache_path(tmp_path, "k").write_text("garbage")
    assert cached_chart(tmp_path, "k", compute) == ext
    assert compute.call_count == 2
    assert load_chart(cache_path(tmp_path, "k")) == ext


def test_no_cache_dir(ext):
    """Without a directory the chart is always computed."""
    compute = Mock(return_value=ext)
    cached_chart(None, "k", compute)
    cached_chart(None, "k", compute)
    assert compute.call_count == 2


def test_cache_bytes_are_canonical(ext, tmp_path):
    """Storing the same chart twice gives identical files."""
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    store_chart(a, ext)
    store_chart(b, ext)
    assert a.read_bytes() == b.read_bytes()
