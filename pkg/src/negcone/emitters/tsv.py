"""Tab-separated chart output."""

from negcone.chart import Chart

from .base import BaseEmitter


class TsvEmitter(BaseEmitter):
    """One row per nonzero cell, sorted by ``(y, x)``, UTF-8 with LF endings."""

    suffix = ".tsv"

    def emit(self, chart: Chart) -> bytes:
        lines = [f"{chart.x_name}\t{chart.y_name}\tgroup\tlabel\tfate"]
        for cell in chart.sorted_cells():
            lines.append(f"{cell.x}\t{cell.y}\t{cell.group}\t{cell.label}\t{cell.fate}")
        return ("\n".join(lines) + "\n").encode("utf-8")


def emit_tsv(chart: Chart) -> bytes:
    return TsvEmitter().emit(chart)
