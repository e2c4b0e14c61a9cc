"""SVG chart output drawn with matplotlib.

Stems run rightward and weights (or filtrations) upward.  The figure is
rendered through the Agg-free SVG canvas with a fixed hash salt and no date
metadata, so identical charts give identical bytes.
"""

import io
import logging

import matplotlib as mpl
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure
from matplotlib.lines import Line2D

from negcone.chart import Chart, Glyph
from negcone.errors import RangeError

from .base import BaseEmitter

_logger = logging.getLogger(__name__)

GLYPH_STYLES = {
    Glyph.F2_DOT: dict(marker="o", markerfacecolor="black", markeredgecolor="black"),
    Glyph.Z_SQUARE: dict(marker="s", markerfacecolor="white", markeredgecolor="black"),
    Glyph.BURNSIDE_SQUARE: dict(marker="s", markerfacecolor="black", markeredgecolor="black"),
    Glyph.HOLLOW_CIRCLE: dict(marker="o", markerfacecolor="white", markeredgecolor="black"),
    Glyph.RED_DOT: dict(marker="o", markerfacecolor="red", markeredgecolor="red"),
    Glyph.BLUE_DOT: dict(marker="o", markerfacecolor="blue", markeredgecolor="blue"),
}

_RC = {
    "svg.hashsalt": "negcone",
    "svg.fonttype": "path",
    "font.size": 7,
}


class SvgEmitter(BaseEmitter):
    """Grid chart with dashed axes, one glyph per cell and a legend."""

    suffix = ".svg"

    def __init__(self, cell_size: float = 0.35, labels: bool = True):
        self.cell_size = cell_size
        self.labels = labels

    def emit(self, chart: Chart) -> bytes:
        if not chart.bounded:
            raise RangeError(f"chart {chart.title!r} has no bounded window")
        (x0, x1), (y0, y1) = chart.x_range, chart.y_range
        width = max(4.0, (x1 - x0 + 3) * self.cell_size)
        height = max(3.0, (y1 - y0 + 3) * self.cell_size)

        with mpl.rc_context(_RC):
            fig = Figure(figsize=(width, height))
            FigureCanvasSVG(fig)
            ax = fig.add_subplot(1, 1, 1)
            ax.set_xlim(x0 - 1, x1 + 1)
            ax.set_ylim(y0 - 1, y1 + 1)
            ax.set_xticks(range(x0, x1 + 1))
            ax.set_yticks(range(y0, y1 + 1))
            ax.tick_params(labelsize=5)
            ax.grid(True, color="0.9", linewidth=0.4)
            ax.set_xlabel(chart.x_name)
            ax.set_ylabel(chart.y_name)
            ax.set_title(chart.title)
            if x0 <= 0 <= x1:
                ax.axvline(0, color="0.4", linestyle="--", linewidth=0.6)
            if y0 <= 0 <= y1:
                ax.axhline(0, color="0.4", linestyle="--", linewidth=0.6)

            for cell in chart.sorted_cells():
                ax.plot([cell.x], [cell.y], linestyle="none", markersize=4, **GLYPH_STYLES[cell.glyph])
                if self.labels and cell.label:
                    ax.annotate(
                        cell.label,
                        (cell.x, cell.y),
                        xytext=(3, 3),
                        textcoords="offset points",
                        fontsize=4,
                        color="blue" if cell.highlight else "black",
                    )

            handles = [
                Line2D([], [], linestyle="none", markersize=5, label=glyph.value, **style)
                for glyph, style in GLYPH_STYLES.items()
            ]
            ax.legend(handles=handles, loc="upper left", bbox_to_anchor=(1.01, 1.0), fontsize=5)
            fig.tight_layout()

            buf = io.BytesIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        _logger.debug(f"SVG for {chart.title!r}: {len(chart.cells)} cells")
        return buf.getvalue()


def emit_svg(chart: Chart) -> bytes:
    return SvgEmitter().emit(chart)
