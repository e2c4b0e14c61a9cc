"""Utilities for negcone."""

import logging
import os
import tempfile
from pathlib import Path
from typing import Union

_logger = logging.getLogger(__name__)


def atomic_write(path: Union[str, Path], data: bytes) -> None:
    """Write ``data`` to ``path`` through a temporary file and ``os.replace``.

    Readers see either the old file or the complete new one.

    Args:
        path: Destination file; its directory is created if missing
        data: Bytes to write
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as tmp:
            tmp.write(data)
            tmp.flush()
            os.fsync(tmp.fileno())
        os.replace(tmp_path, path)
    except Exception as e:
        _logger.error(f"Error writing {path}: {e}")
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    _logger.debug(f"Wrote {path}")
