"""Dwell intervals, inspected sets, coverage, and colour bands.

All arithmetic on timestamps stays in Decimal so threshold comparisons at
sub-second precision are exact.  The inspection threshold comparison is
strictly greater-than; this is fixed, not configurable.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

from . import events as ev
from .errors import UndefinedCoverageError, UsageError
from .refs import CellRef
from .workbook import CellKind, Workbook


class DwellMode(enum.Enum):
    PER_VISIT = "per_visit"
    CUMULATIVE = "cumulative"


class RangeAttribution(enum.Enum):
    ALL_CELLS = "all_cells"
    ANCHOR_ONLY = "anchor_only"


@dataclass(frozen=True)
class AnalysisConfig:
    inspect_threshold: Decimal = Decimal("0.3")
    dwell_mode: DwellMode = DwellMode.PER_VISIT
    range_attribution: RangeAttribution = RangeAttribution.ALL_CELLS

    def __post_init__(self):
        object.__setattr__(self, "inspect_threshold", ev.as_seconds(self.inspect_threshold))
        if self.inspect_threshold <= 0:
            raise UsageError("inspect_threshold must be positive")


@dataclass
class DwellRecord:
    cell: CellRef
    intervals: list[tuple[Decimal, Decimal]] = field(default_factory=list)
    edited: bool = False

    @property
    def max_interval(self) -> Decimal:
        return max((end - start for start, end in self.intervals), default=Decimal(0))

    @property
    def total(self) -> Decimal:
        return sum((end - start for start, end in self.intervals), Decimal(0))


def _plain(ref: CellRef) -> CellRef:
    """Strip absolute flags so dwell keys match workbook addressing."""
    if not (ref.col_abs or ref.row_abs):
        return ref
    return CellRef(ref.sheet, ref.col, ref.row)


def dwell_records(session: ev.Session, config: AnalysisConfig | None = None) -> dict[CellRef, DwellRecord]:
    """Per-cell dwell intervals and edited flags for one session.

    A Select opens an interval that closes at the next focus-changing event
    (Select / SelectRange / SheetActivate / Close), or at the session's
    final timestamp if focus never moves again.
    """
    config = config or AnalysisConfig()
    records: dict[CellRef, DwellRecord] = {}
    open_cells: list[tuple[CellRef, Decimal]] = []

    def record(ref: CellRef) -> DwellRecord:
        ref = _plain(ref)
        if ref not in records:
            records[ref] = DwellRecord(ref)
        return records[ref]

    def close_open(t: Decimal) -> None:
        for ref, start in open_cells:
            record(ref).intervals.append((start, t))
        open_cells.clear()

    for e in session.events:
        if isinstance(e, ev.Select):
            close_open(e.t)
            open_cells.append((e.cell, e.t))
        elif isinstance(e, ev.SelectRange):
            close_open(e.t)
            if config.range_attribution is RangeAttribution.ALL_CELLS:
                open_cells.extend((c, e.t) for c in e.range.cells())
            else:
                open_cells.append((e.range.start, e.t))
        elif isinstance(e, (ev.SheetActivate, ev.Close)):
            close_open(e.t)
        elif isinstance(e, ev.Edit):
            record(e.cell).edited = True
        elif isinstance(e, ev.EditRange):
            for c in e.range.cells():
                record(c).edited = True
        # Open and Highlight events neither open nor close intervals

    if session.events:
        close_open(session.last_t)
    return records


def edit_duration(session: ev.Session, edit_index: int):
    """Seconds from the nearest preceding selection of the edited cell to
    the edit's commit; None when no such selection exists."""
    if not 0 <= edit_index < len(session.events):
        raise UsageError(f"event index {edit_index} out of range")
    event = session.events[edit_index]
    if not isinstance(event, ev.Edit):
        raise UsageError(f"event {edit_index} is not an Edit")
    target = _plain(event.cell).coord
    for prior in reversed(session.events[:edit_index]):
        if isinstance(prior, ev.Select) and _plain(prior.cell).coord == target:
            return event.t - prior.t
    return None


def is_inspected(rec: DwellRecord, config: AnalysisConfig) -> bool:
    if rec.edited:
        return True
    if config.dwell_mode is DwellMode.PER_VISIT:
        return rec.max_interval > config.inspect_threshold
    return rec.total > config.inspect_threshold


def inspected_cells(session: ev.Session, config: AnalysisConfig | None = None) -> set[CellRef]:
    config = config or AnalysisConfig()
    return {
        ref
        for ref, rec in dwell_records(session, config).items()
        if is_inspected(rec, config)
    }


def eligible_cells(workbook: Workbook, sheet: str | None = None) -> set[CellRef]:
    """Data and formula cells (the coverage denominator); labels and blanks
    are excluded."""
    out = set()
    for ref, cell in workbook.iter_cells():
        if sheet is not None and ref.sheet != sheet:
            continue
        if cell.kind in (CellKind.DATA, CellKind.FORMULA):
            out.add(ref)
    return out


def session_coverage(session: ev.Session, workbook: Workbook, config: AnalysisConfig | None = None) -> float:
    eligible = eligible_cells(workbook)
    if not eligible:
        raise UndefinedCoverageError("workbook has no data or formula cells")
    inspected = inspected_cells(session, config) & eligible
    return len(inspected) / len(eligible)


class ColourBand(enum.IntEnum):
    """The ten coverage bands plus uncoloured, ordered low to high."""

    UNCOLOURED = 0
    LIGHT_GRAY = 1
    LIGHT_TURQUOISE = 2
    PALE_BLUE = 3
    SKY_BLUE = 4
    LIGHT_BLUE = 5
    ROSE = 6
    LIGHT_YELLOW = 7
    LIGHT_ORANGE = 8
    ORANGE = 9
    BROWN = 10


BAND_LABELS = {
    ColourBand.BROWN: "90% - 100%",
    ColourBand.ORANGE: "80% - 90%",
    ColourBand.LIGHT_ORANGE: "70% - 80%",
    ColourBand.LIGHT_YELLOW: "60% - 70%",
    ColourBand.ROSE: "50% - 60%",
    ColourBand.LIGHT_BLUE: "40% - 50%",
    ColourBand.SKY_BLUE: "30% - 40%",
    ColourBand.PALE_BLUE: "20% - 30%",
    ColourBand.LIGHT_TURQUOISE: "10% - 20%",
    ColourBand.LIGHT_GRAY: ">0% - 10%",
}


def colour_band(fraction) -> ColourBand:
    """Half-open banding: 0 is uncoloured, then (0,0.1], (0.1,0.2], ...,
    (0.9,1.0]."""
    if isinstance(fraction, float):
        # via the decimal repr: the float literal 0.1 means the boundary
        # 1/10, not the slightly-larger binary double it rounds to
        f = Fraction(Decimal(repr(fraction)))
    elif isinstance(fraction, Fraction):
        f = fraction
    else:
        f = Fraction(fraction)
    if f < 0 or f > 1:
        raise UsageError(f"fraction out of range: {fraction}")
    if f == 0:
        return ColourBand.UNCOLOURED
    for band_value in range(1, 11):
        if f <= Fraction(band_value, 10):
            return ColourBand(band_value)
    return ColourBand.BROWN


@dataclass
class CoverageMap:
    """Per-cell inspected fraction across a population of sessions."""

    fractions: dict[CellRef, Fraction]
    population: int

    def band(self, ref: CellRef) -> ColourBand:
        return colour_band(self.fractions[ref])


def coverage_per_cell(sessions: list[ev.Session], workbook: Workbook, config: AnalysisConfig | None = None) -> CoverageMap:
    """Fraction of sessions inspecting each data/formula cell; label and
    blank cells carry no fraction so the sheet structure stays readable."""
    if not sessions:
        raise UsageError("coverage_per_cell needs at least one session")
    eligible = eligible_cells(workbook)
    counts = {ref: 0 for ref in eligible}
    for session in sessions:
        for ref in inspected_cells(session, config) & eligible:
            counts[ref] += 1
    n = len(sessions)
    return CoverageMap({ref: Fraction(c, n) for ref, c in counts.items()}, n)
