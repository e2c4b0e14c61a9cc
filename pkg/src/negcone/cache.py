"""On-disk cache for Ext charts.

A cache file is canonical JSON::

    {"header": {"format": "negcone-chart", "version": 1,
                "conventions": <checksum>, "spectrum": ..., "payload_sha256": ...},
     "payload": <chart payload>}

Files are written atomically.  A file whose header does not match the
running conventions, or whose payload digest is wrong, is rejected.
"""

import hashlib
import json
import logging
import re
from pathlib import Path
from typing import Callable, Optional

from negcone.chart import BigradedChart
from negcone.errors import CacheRejected, DomainError
from negcone.lambda_algebra import convention_checksum
from negcone.utils import atomic_write

_logger = logging.getLogger(__name__)

FORMAT = "negcone-chart"
VERSION = 1


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode("utf-8")


def cache_path(cache_dir: Path, key: str) -> Path:
    """File name for a cache key such as ``ext-RP[21..32]-31-5``."""
    safe = re.sub(r"[^A-Za-z0-9_.-]+", "_", key)
    return Path(cache_dir) / f"{safe}.json"


def store_chart(path: Path, chart: BigradedChart) -> None:
    payload = chart.to_payload()
    header = {
        "format": FORMAT,
        "version": VERSION,
        "conventions": convention_checksum(),
        "spectrum": chart.spectrum,
        "payload_sha256": hashlib.sha256(_canonical(payload)).hexdigest(),
    }
    atomic_write(path, _canonical({"header": header, "payload": payload}) + b"\n")
    _logger.debug(f"Cached {chart.spectrum} chart at {path}")


def load_chart(path: Path) -> BigradedChart:
    """Read and validate a cached chart.

    Raises:
        CacheRejected: on any header, digest or payload problem.
    """
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
        header, payload = document["header"], document["payload"]
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise CacheRejected(f"{path}: unreadable cache file ({e})") from e
    if header.get("format") != FORMAT or header.get("version") != VERSION:
        raise CacheRejected(f"{path}: unknown format {header.get('format')!r} v{header.get('version')}")
    if header.get("conventions") != convention_checksum():
        raise CacheRejected(f"{path}: computed under different Lambda conventions")
    if header.get("payload_sha256") != hashlib.sha256(_canonical(payload)).hexdigest():
        raise CacheRejected(f"{path}: payload checksum mismatch")
    try:
        chart = BigradedChart.from_payload(payload)
    except DomainError as e:
        raise CacheRejected(f"{path}: {e}") from e
    if chart.spectrum != header.get("spectrum"):
        raise CacheRejected(f"{path}: spectrum mismatch")
    return chart


def cached_chart(
    cache_dir: Optional[Path], key: str, compute: Callable[[], BigradedChart]
) -> BigradedChart:
    """Load ``key`` from ``cache_dir`` or compute and store it.

    Without a cache directory this just calls ``compute``.  A rejected cache
    file is logged and overwritten with a fresh computation.
    """
    if cache_dir is None:
        return compute()
    path = cache_path(cache_dir, key)
    if path.exists():
        try:
            chart = load_chart(path)
            _logger.info(f"Cache hit for {key}")
            return chart
        except CacheRejected as e:
            _logger.warning(f"Cache rejected, recomputing: {e}")
    chart = compute()
    store_chart(path, chart)
    return chart


def cache_roundtrip(chart: BigradedChart, cache_dir: Path, key: str = "roundtrip") -> BigradedChart:
    """Store ``chart`` and load it back."""
    path = cache_path(cache_dir, key)
    store_chart(path, chart)
    return load_chart(path)
