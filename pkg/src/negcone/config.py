"""Runtime settings, read from the environment and overridden by CLI flags."""

import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional, Tuple

from negcone.errors import DomainError

_logger = logging.getLogger(__name__)

CACHE_ENV = "NEGCONE_CACHE_DIR"
CURATED_ENV = "NEGCONE_CURATED"
MAX_STEM_ENV = "NEGCONE_MAX_STEM"
MAX_FIL_ENV = "NEGCONE_MAX_FIL"


@dataclass(frozen=True)
class Settings:
    """Ceilings and default windows shared by the library and the CLI."""

    max_stem: int = 30
    max_fil: int = 15
    s_range: Tuple[int, int] = (-8, 34)
    w_range: Tuple[int, int] = (-8, 40)
    cache_dir: Optional[Path] = None
    curated_path: Optional[Path] = None

    def with_overrides(self, **kwargs) -> "Settings":
        """Return a copy with every non-``None`` keyword applied."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


def _int_from_env(environ: Mapping[str, str], key: str, default: int) -> int:
    raw = environ.get(key)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError as e:
        raise DomainError(f"{key} must be an integer, got {raw!r}") from e


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    """Build :class:`Settings` from environment variables.

    Args:
        environ: Mapping to read from, ``os.environ`` by default.

    Returns:
        The settings object.
    """
    if environ is None:
        environ = os.environ
    cache = environ.get(CACHE_ENV)
    curated = environ.get(CURATED_ENV)
    settings = Settings(
        max_stem=_int_from_env(environ, MAX_STEM_ENV, Settings.max_stem),
        max_fil=_int_from_env(environ, MAX_FIL_ENV, Settings.max_fil),
        cache_dir=Path(cache) if cache else None,
        curated_path=Path(curated) if curated else None,
    )
    _logger.debug(f"Loaded settings: {settings}")
    return settings
