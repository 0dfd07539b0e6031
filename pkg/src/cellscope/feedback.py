"""Live cell-coverage highlight feedback.

Each request recomputes from the full event history — any previous
highlighting is conceptually cleared, and there is no hidden state between
calls.  Only cells of the requested sheet can be affected, and clicking
the highlight button teaches nothing, so Highlight events never count as
inspection.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from . import events as ev
from .analytics import AnalysisConfig, eligible_cells, inspected_cells
from .errors import UsageError
from .refs import CellRef
from .workbook import Workbook


@dataclass(frozen=True)
class HighlightResult:
    sheet: str
    t: Decimal
    cells: tuple[CellRef, ...]  # row-major order


def highlight_set(
    workbook: Workbook,
    session: ev.Session,
    sheet: str,
    config: AnalysisConfig | None = None,
    t=None,
) -> HighlightResult:
    """Data/formula cells of the sheet not yet inspected in the session."""
    if workbook.sheet(sheet) is None:
        raise UsageError(f"unknown sheet {sheet!r}")
    config = config or AnalysisConfig()
    eligible = eligible_cells(workbook, sheet)
    inspected = inspected_cells(session, config)
    remaining = sorted(eligible - inspected, key=lambda r: (r.row, r.col))
    at = ev.as_seconds(t) if t is not None else session.last_t
    return HighlightResult(sheet, at, tuple(remaining))


def record_highlight(session: ev.Session, result: HighlightResult) -> ev.Session:
    """Append the highlight action to the event stream for later analysis."""
    return ev.append_event(session, ev.Highlight(result.t, result.sheet, result.cells))


def highlight_timeline(session: ev.Session) -> list[tuple[Decimal, str, int]]:
    """(t, sheet, affected-cell count) per Highlight event, in time order —
    the data behind per-subject tool-behaviour timelines."""
    return [
        (e.t, e.sheet, len(e.cells))
        for e in session.events
        if isinstance(e, ev.Highlight)
    ]
