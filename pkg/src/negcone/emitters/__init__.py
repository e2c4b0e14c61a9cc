"""Chart emitters for negcone."""

import logging
from importlib import import_module

from .base import BaseEmitter

_logger = logging.getLogger(__name__)

EMITTER_REGISTRY = {
    "tsv": "negcone.emitters.tsv.TsvEmitter",
    "svg": "negcone.emitters.svg.SvgEmitter",
}


def get_emitter(format_name: str, **kwargs) -> BaseEmitter:
    """Get an emitter for the specified output format.

    Args:
        format_name: ``tsv`` or ``svg``
        **kwargs: Emitter-specific options

    Returns:
        An instance of an emitter
    """
    key = format_name.lower()

    if key not in EMITTER_REGISTRY:
        raise ValueError(f"Unknown format: {format_name}. Available formats: {', '.join(EMITTER_REGISTRY)}")

    emitter_path = EMITTER_REGISTRY[key]
    module_path, class_name = emitter_path.rsplit(".", 1)

    try:
        module = import_module(module_path)
        emitter_class = getattr(module, class_name)
        return emitter_class(**kwargs)
    except (ImportError, AttributeError) as e:
        _logger.error(f"Failed to load emitter for format {format_name}: {e}")
        raise ImportError(f"Could not load emitter for format {format_name}") from e
