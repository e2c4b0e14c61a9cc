"""Tests for chart construction."""

import pytest

from negcone.chart import (
    BigradedChart,
    Chart,
    ChartCell,
    ExtEntry,
    Glyph,
    coefficient_chart,
    fate_chart,
    hurewicz_chart,
    parse_range,
    zeroline_chart,
)
from negcone.errors import DomainError, RangeError


@pytest.mark.parametrize(
    "text, expected",
    [("2..32", (2, 32, 1)), ("-8..34", (-8, 34, 1)), ("1..9:2", (1, 9, 2)), ("5", (5, 5, 1)), ("-3..-1", (-3, -1, 1))],
)
def test_parse_range(text, expected):
    """Inclusive a..b ranges with optional step."""
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["a..b", "3..1", "1..5:0", "1..5:x", ""])
def test_parse_range_rejects(text):
    """Malformed ranges are domain errors."""
    with pytest.raises(DomainError):
        parse_range(text)


def test_chart_sorting():
    """Cells sort by (y, x)."""
    cells = (
        ChartCell(2, 1, Glyph.F2_DOT, "F2", "b"),
        ChartCell(5, 0, Glyph.F2_DOT, "F2", "a"),
        ChartCell(1, 1, Glyph.F2_DOT, "F2", "c"),
    )
    chart = Chart("t", "x", "y", (0, 5), (0, 1), cells)
    assert [c.label for c in chart.sorted_cells()] == ["a", "c", "b"]
    assert chart.cell_at(2, 1).label == "b"
    assert chart.cell_at(0, 0) is None
    assert chart.bounded
    assert not Chart("t", "x", "y", None, (0, 1)).bounded


def test_bigraded_chart():
    """Dimensions, labels and conversion to a chart."""
    ext = BigradedChart(
        "S0",
        (0, 3),
        (0, 3),
        {(0, 0): ExtEntry(1, ("1",), (((),),)), (3, 1): ExtEntry(2, ("a", "b"))},
    )
    assert ext.dimension(3, 1) == 2
    assert ext.dimension(2, 2) == 0
    assert ext.labels(0, 0) == ("1",)
    assert ext.dimensions() == {(0, 0): 1, (3, 1): 2}
    chart = ext.to_chart()
    assert chart.title == "Ext(S0)"
    assert (chart.x_name, chart.y_name) == ("stem", "fil")
    assert chart.cell_at(3, 1).group == "F2^2"
    assert chart.cell_at(3, 1).label == "a, b"


def test_payload_round_trip():
    """Payloads survive a JSON-style list conversion."""
    ext = BigradedChart("RP[1..inf]", (1, 3), (0, 2), {(2, 1): ExtEntry(1, ("h1[1]",), (((1, (1,)),),))})
    assert BigradedChart.from_payload(ext.to_payload()) == ext
    with pytest.raises(DomainError):
        BigradedChart.from_payload({"spectrum": "S0"})


def test_coefficient_chart():
    """The F2 coefficients around the origin."""
    chart = coefficient_chart("hf2", (-2, 2), (-2, 4))
    assert chart.cell_at(0, 2).label == "theta"
    assert chart.cell_at(-1, -1).label == "rho"
    assert chart.cell_at(1, 1) is None
    integral = coefficient_chart("ha", (0, 0), (0, 0))
    assert integral.cell_at(0, 0).glyph is Glyph.BURNSIDE_SQUARE
    with pytest.raises(DomainError):
        coefficient_chart("hq", (0, 1), (0, 1))
    with pytest.raises(RangeError):
        coefficient_chart("hf2", (3, 1), (0, 1))


def test_zeroline_chart():
    """The zero line includes the diagonal and the staircase."""
    chart = zeroline_chart((-2, 9), (-2, 26))
    assert chart.cell_at(-2, -2).label == "rho^2"
    assert chart.cell_at(8, 25) is not None
    assert chart.cell_at(9, 26) is not None
    assert chart.cell_at(1, 1) is None


def test_hurewicz_chart_hf2(curated):
    """Blue for the image, red for supporting classes, plain for rho-tau."""
    chart = hurewicz_chart("hf2", (-1, 9), (-3, 26), curated)
    assert chart.cell_at(8, 25).glyph is Glyph.BLUE_DOT
    assert chart.cell_at(8, 25).highlight
    assert chart.cell_at(9, 26).glyph is Glyph.RED_DOT
    assert chart.cell_at(9, 26).fate == "d2:CuratedExample"
    assert chart.cell_at(-1, -3).glyph is Glyph.F2_DOT
    assert chart.cell_at(2, 5).glyph is Glyph.HOLLOW_CIRCLE
    assert chart.cell_at(2, 5).fate == "NotPresent"


def test_hurewicz_chart_integral():
    """Integral image labels are highlighted."""
    chart = hurewicz_chart("hz", (0, 0), (-4, 4))
    cell = chart.cell_at(0, -4)
    assert (cell.glyph, cell.label, cell.fate, cell.highlight) == (Glyph.Z_SQUARE, "2 tau^4", "InImage", True)
    chart = hurewicz_chart("ha", (5, 5), (5, 5))
    assert chart.cell_at(5, 5).label == "8 eta/rho^4"
    with pytest.raises(DomainError):
        hurewicz_chart("hq", (0, 0), (0, 0))


def test_fate_chart(curated):
    """Coweight -17 has nine permanent classes and seven d2 sources."""
    chart = fate_chart(-17, curated)
    blue = [c for c in chart.cells if c.glyph is Glyph.BLUE_DOT]
    red = [c for c in chart.cells if c.glyph is Glyph.RED_DOT]
    assert (len(blue), len(red)) == (9, 7)
    assert chart.x_range == (0, 15)
    assert chart.y_range == (17, 32)
