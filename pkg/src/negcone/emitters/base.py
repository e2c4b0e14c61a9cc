"""Base chart emitter for negcone."""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional, Union

from negcone.chart import Chart
from negcone.utils import atomic_write

_logger = logging.getLogger(__name__)


class BaseEmitter(ABC):
    """Base class for all chart emitters."""

    suffix = ""

    @abstractmethod
    def emit(self, chart: Chart) -> bytes:
        """Render a chart.

        Args:
            chart: The chart to render

        Returns:
            The rendered bytes; identical charts give identical bytes
        """

    def write(self, chart: Chart, out: Optional[Union[str, Path]] = None) -> bytes:
        """Render ``chart`` and, when ``out`` is given, write it atomically."""
        data = self.emit(chart)
        if out is not None:
            atomic_write(Path(out), data)
            _logger.info(f"Wrote {len(data)} bytes to {out}")
        return data
