"""Deterministic replay of session edits onto a workbook.

Replay returns a new Workbook; the input is never mutated.  A range edit
uses fill semantics: the anchor content lands on the range's top-left cell
and every other cell receives the anchor formula shifted by its offset
(non-formula content is copied verbatim).
"""

from __future__ import annotations

from . import events as ev
from . import formula
from .errors import ReplayError
from .refs import CellRef
from .workbook import Cell, CellKind, Workbook


def _check_target(wb: Workbook, ref: CellRef, event: ev.Event) -> None:
    sheet = wb.sheet(ref.sheet)
    if sheet is None:
        raise ReplayError(f"edit target {ref} at t={event.t}: unknown sheet")
    if not sheet.in_bounds(ref.col, ref.row):
        raise ReplayError(f"edit target {ref} at t={event.t}: outside sheet bounds")


def _set_cell(wb: Workbook, ref: CellRef, content: str) -> None:
    sheet = wb.sheet(ref.sheet)
    cell = Cell.from_content(content)
    if cell.kind is CellKind.BLANK:
        sheet.cells.pop((ref.col, ref.row), None)
    else:
        sheet.cells[(ref.col, ref.row)] = cell


def apply_edit(wb: Workbook, event: ev.Edit | ev.EditRange) -> None:
    """Apply one edit in place (``wb`` must be a private copy)."""
    if isinstance(event, ev.Edit):
        _check_target(wb, event.cell, event)
        _set_cell(wb, event.cell, event.content)
        return
    rng = event.range
    _check_target(wb, rng.start, event)
    _check_target(wb, rng.end, event)
    anchor_ast = None
    if event.content.startswith("="):
        anchor_ast = formula.parse_formula(event.content)
    for ref in rng.cells():
        if anchor_ast is None:
            _set_cell(wb, ref, event.content)
        else:
            shifted = formula.translate_formula(
                anchor_ast, ref.col - rng.start.col, ref.row - rng.start.row
            )
            _set_cell(wb, ref, formula.render_formula(shifted))


def replay(workbook: Workbook, session: ev.Session, until_t=None) -> Workbook:
    """Apply the session's edits (those with t <= until_t) in time order."""
    wb = workbook.copy()
    limit = None if until_t is None else ev.as_seconds(until_t)
    for _, event in session.edits():
        if limit is not None and event.t > limit:
            continue
        apply_edit(wb, event)
    return wb
