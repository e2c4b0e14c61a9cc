"""Tests for the TSV and SVG emitters."""

import pytest

from negcone.chart import Chart, ChartCell, Glyph, hurewicz_chart
from negcone.emitters import EMITTER_REGISTRY, get_emitter
from negcone.emitters.svg import SvgEmitter, emit_svg
from negcone.emitters.tsv import TsvEmitter, emit_tsv
from negcone.errors import RangeError


@pytest.fixture
def small_chart():
    cells = (
        ChartCell(1, 4, Glyph.BLUE_DOT, "F2", "theta/(rho tau)", "PermanentCycle", True),
        ChartCell(0, 2, Glyph.BLUE_DOT, "F2", "theta", "PermanentCycle", True),
        ChartCell(-1, -1, Glyph.F2_DOT, "F2", "rho"),
    )
    return Chart("test", "s", "w", (-1, 1), (-1, 4), cells)


def test_registry():
    """Both formats are registered."""
    assert set(EMITTER_REGISTRY) == {"tsv", "svg"}
    assert isinstance(get_emitter("TSV"), TsvEmitter)
    assert isinstance(get_emitter("svg", labels=False), SvgEmitter)
    with pytest.raises(ValueError):
        get_emitter("png")


def test_tsv(small_chart):
    """Header plus rows sorted by (y, x), LF line endings."""
    assert emit_tsv(small_chart) == (
        b"s\tw\tgroup\tlabel\tfate\n"
        b"-1\t-1\tF2\trho\t\n"
        b"0\t2\tF2\ttheta\tPermanentCycle\n"
        b"1\t4\tF2\ttheta/(rho tau)\tPermanentCycle\n"
    )


def test_tsv_write(small_chart, tmp_path):
    """write() returns the bytes and stores them atomically."""
    out = tmp_path / "sub" / "chart.tsv"
    data = TsvEmitter().write(small_chart, out)
    assert out.read_bytes() == data
    assert not list(out.parent.glob(".*.tmp"))


def test_svg_is_deterministic(small_chart):
    """Identical charts render to identical SVG bytes."""
    first = emit_svg(small_chart)
    assert first.lstrip().startswith(b"<?xml")
    assert b"<svg" in first
    assert first == emit_svg(small_chart)


def test_svg_real_chart():
    """A Hurewicz chart renders."""
    chart = hurewicz_chart("hz", (-2, 2), (-4, 4))
    assert b"</svg>" in SvgEmitter(labels=False).emit(chart)


def test_svg_needs_bounds():
    """Unbounded charts cannot be drawn."""
    with pytest.raises(RangeError):
        emit_svg(Chart("t", "s", "w", None, None))
