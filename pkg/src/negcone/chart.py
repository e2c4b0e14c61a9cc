"""Chart data shared by the computations and the emitters.

A :class:`Chart` is a flat list of :class:`ChartCell` objects on an integer
grid; the emitters in :mod:`negcone.emitters` turn it into TSV or SVG.  Ext
computations produce a :class:`BigradedChart`, which keeps dimensions and
cycle representatives and converts to a :class:`Chart` for emission.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

from negcone.errors import DomainError, RangeError

_logger = logging.getLogger(__name__)

Range = Tuple[int, int]


class Glyph(Enum):
    F2_DOT = "F2dot"
    Z_SQUARE = "Zsquare"
    BURNSIDE_SQUARE = "BurnsideSquare"
    HOLLOW_CIRCLE = "HollowCircle"
    RED_DOT = "RedDot"
    BLUE_DOT = "BlueDot"


@dataclass(frozen=True)
class ChartCell:
    """One cell of a chart.

    ``highlight`` marks labels drawn in blue (classes in a Hurewicz image).
    """

    x: int
    y: int
    glyph: Glyph
    group: str
    label: str
    fate: str = ""
    highlight: bool = False


@dataclass(frozen=True)
class Chart:
    """Cells on a rectangular grid with named axes."""

    title: str
    x_name: str
    y_name: str
    x_range: Optional[Range]
    y_range: Optional[Range]
    cells: Tuple[ChartCell, ...] = ()

    @property
    def bounded(self) -> bool:
        return self.x_range is not None and self.y_range is not None

    def sorted_cells(self) -> List[ChartCell]:
        return sorted(self.cells, key=lambda c: (c.y, c.x))

    def cell_at(self, x: int, y: int) -> Optional[ChartCell]:
        for cell in self.cells:
            if (cell.x, cell.y) == (x, y):
                return cell
        return None


@dataclass(frozen=True)
class ExtEntry:
    """Ext in one bidegree: dimension, basis names, cycle representatives."""

    dimension: int
    labels: Tuple[str, ...] = ()
    representatives: Tuple[Tuple[Any, ...], ...] = ()


@dataclass(frozen=True)
class BigradedChart:
    """Ext groups indexed by ``(stem, fil)``; absent keys have dimension 0."""

    spectrum: str
    stem_range: Range
    fil_range: Range
    entries: Dict[Tuple[int, int], ExtEntry] = field(default_factory=dict)

    def dimension(self, stem: int, fil: int) -> int:
        entry = self.entries.get((stem, fil))
        return entry.dimension if entry else 0

    def dimensions(self) -> Dict[Tuple[int, int], int]:
        return {deg: e.dimension for deg, e in self.entries.items() if e.dimension}

    def labels(self, stem: int, fil: int) -> Tuple[str, ...]:
        entry = self.entries.get((stem, fil))
        return entry.labels if entry else ()

    def to_chart(self) -> Chart:
        cells = []
        for (stem, fil), entry in sorted(self.entries.items()):
            if not entry.dimension:
                continue
            group = "F2" if entry.dimension == 1 else f"F2^{entry.dimension}"
            cells.append(
                ChartCell(stem, fil, Glyph.F2_DOT, group, ", ".join(entry.labels))
            )
        return Chart(
            title=f"Ext({self.spectrum})",
            x_name="stem",
            y_name="fil",
            x_range=self.stem_range,
            y_range=self.fil_range,
            cells=tuple(cells),
        )

    def to_payload(self) -> Dict[str, Any]:
        """JSON-ready form used by the cache."""
        return {
            "spectrum": self.spectrum,
            "stem_range": list(self.stem_range),
            "fil_range": list(self.fil_range),
            "entries": [
                {
                    "stem": stem,
                    "fil": fil,
                    "dimension": e.dimension,
                    "labels": list(e.labels),
                    "representatives": _thaw(e.representatives),
                }
                for (stem, fil), e in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_payload(cls, payload: Dict[str, Any]) -> "BigradedChart":
        try:
            entries = {
                (int(e["stem"]), int(e["fil"])): ExtEntry(
                    dimension=int(e["dimension"]),
                    labels=tuple(e["labels"]),
                    representatives=_freeze(e["representatives"]),
                )
                for e in payload["entries"]
            }
            return cls(
                spectrum=payload["spectrum"],
                stem_range=tuple(payload["stem_range"]),
                fil_range=tuple(payload["fil_range"]),
                entries=entries,
            )
        except (KeyError, TypeError, ValueError) as e:
            raise DomainError(f"malformed chart payload: {e}") from e


def _thaw(obj):
    if isinstance(obj, (tuple, list)):
        return [_thaw(x) for x in obj]
    return obj


def _freeze(obj):
    if isinstance(obj, list):
        return tuple(_freeze(x) for x in obj)
    return obj


def parse_range(text: str) -> Tuple[int, int, int]:
    """Parse ``a..b`` or ``a..b:step`` (inclusive bounds).

    Returns:
        ``(start, stop, step)``.
    """
    body, _, step_text = text.partition(":")
    start, sep, stop = body.partition("..")
    try:
        if not sep:
            value = int(body)
            return value, value, 1
        step = int(step_text) if step_text else 1
        lo, hi = int(start), int(stop)
    except ValueError as e:
        raise DomainError(f"bad range {text!r}; expected a..b[:step]") from e
    if step <= 0:
        raise DomainError(f"range step must be positive, got {step}")
    if lo > hi:
        raise DomainError(f"empty range {text!r}")
    return lo, hi, step


def _window(x_range: Range, y_range: Range) -> Iterable[Tuple[int, int]]:
    if x_range[0] > x_range[1] or y_range[0] > y_range[1]:
        raise RangeError(f"empty window {x_range} x {y_range}")
    for y in range(y_range[0], y_range[1] + 1):
        for x in range(x_range[0], x_range[1] + 1):
            yield x, y


# -- chart builders ----------------------------------------------------------

_KIND_GLYPHS = {"F2": Glyph.F2_DOT, "Z": Glyph.Z_SQUARE, "BurnsideRing": Glyph.BURNSIDE_SQUARE}


def _glyph_for(value) -> Glyph:
    return _KIND_GLYPHS[value.kind.value]


def coefficient_chart(kind: str, s_range: Range, w_range: Range) -> Chart:
    """The additive coefficients of ``hf2``, ``hz`` or ``ha`` in a window."""
    from negcone import classification

    fn = _pick(kind, {
        "hf2": classification.coefficients_hf2,
        "hz": classification.coefficients_hz,
        "ha": classification.coefficients_ha,
    })
    cells = []
    for s, w in _window(s_range, w_range):
        value = fn((s, w))
        if value.is_zero:
            continue
        cells.append(ChartCell(s, w, _glyph_for(value), value.kind.value, value.generator_label))
    return Chart(f"coefficients {kind}", "s", "w", s_range, w_range, tuple(cells))


def zeroline_chart(s_range: Range, w_range: Range) -> Chart:
    from negcone.classification import zero_line

    cells = []
    for s, w in _window(s_range, w_range):
        value = zero_line((s, w))
        if not value.is_zero:
            cells.append(ChartCell(s, w, Glyph.F2_DOT, value.kind.value, value.generator_label))
    return Chart("zero line", "s", "w", s_range, w_range, tuple(cells))


def _hf2_cell(s: int, w: int, curated) -> Optional[ChartCell]:
    from negcone import classification as cl

    coefficient = cl.coefficients_hf2((s, w))
    if coefficient.is_zero:
        return None
    label = coefficient.generator_label
    if s < 0 or w <= s:
        image = cl.hurewicz_hf2((s, w))
        if s >= 0 and not image.is_zero:
            return ChartCell(s, w, Glyph.BLUE_DOT, "F2", label, "PermanentCycle", True)
        return ChartCell(s, w, Glyph.F2_DOT, "F2", label)
    fate = cl.classify_fil0((s, w), curated)
    if fate.status is cl.FateStatus.PERMANENT_CYCLE:
        return ChartCell(s, w, Glyph.BLUE_DOT, "F2", label, fate.describe(), True)
    if fate.status is cl.FateStatus.SUPPORTS_DIFFERENTIAL:
        return ChartCell(s, w, Glyph.RED_DOT, "F2", label, fate.describe())
    return ChartCell(s, w, Glyph.HOLLOW_CIRCLE, "F2", label, fate.describe())


def _integral_cell(s: int, w: int, coefficients: Callable, hurewicz: Callable) -> Optional[ChartCell]:
    coefficient = coefficients((s, w))
    if coefficient.is_zero:
        return None
    image = hurewicz((s, w))
    if image.is_zero:
        return ChartCell(s, w, _glyph_for(coefficient), coefficient.kind.value, coefficient.generator_label)
    return ChartCell(
        s, w, _glyph_for(coefficient), coefficient.kind.value, image.generator_label, "InImage", True
    )


def hurewicz_chart(kind: str, s_range: Range, w_range: Range, curated=None) -> Chart:
    """Hurewicz image chart.

    For ``hf2`` the glyph records the fate of each class: blue dots are in
    the image, red dots support a differential, hollow circles die in the
    rho-Bockstein spectral sequence and plain dots are rho-tau classes.  For
    ``hz`` and ``ha`` the glyph is the group and image labels are
    highlighted.
    """
    from negcone import classification as cl

    _pick(kind, {"hf2": None, "hz": None, "ha": None})
    cells = []
    for s, w in _window(s_range, w_range):
        if kind == "hf2":
            cell = _hf2_cell(s, w, curated)
        elif kind == "hz":
            cell = _integral_cell(s, w, cl.coefficients_hz, cl.hurewicz_hz)
        else:
            cell = _integral_cell(s, w, cl.coefficients_ha, cl.hurewicz_ha)
        if cell is not None:
            cells.append(cell)
    _logger.debug(f"hurewicz {kind}: {len(cells)} cells")
    return Chart(f"Hurewicz image {kind}", "s", "w", s_range, w_range, tuple(cells))


def fate_chart(coweight: int, curated=None) -> Chart:
    """Zero-line classes along one coweight, coloured by fate."""
    from negcone import classification as cl

    rows = cl.coweight_fates(coweight, curated)
    cells = []
    for deg, fate in rows:
        label = cl.zero_line(deg).generator_label
        if fate.status is cl.FateStatus.PERMANENT_CYCLE:
            cells.append(ChartCell(deg.s, deg.w, Glyph.BLUE_DOT, "F2", label, fate.describe(), True))
        else:
            cells.append(ChartCell(deg.s, deg.w, Glyph.RED_DOT, "F2", label, fate.describe()))
    x_range = (rows[0][0].s, rows[-1][0].s)
    y_range = (rows[0][0].w, rows[-1][0].w)
    return Chart(f"fates at coweight {coweight}", "s", "w", x_range, y_range, tuple(cells))


def _pick(kind: str, table: Dict[str, Any]):
    if kind not in table:
        raise DomainError(f"unknown kind {kind!r}; expected one of {', '.join(table)}")
    return table[kind]
