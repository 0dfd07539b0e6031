"""Importer for the hidden-worksheet dump layout.

The dump is a CSV export with two column pairs: cell edits plus their
timestamps, and cell selections plus theirs.  Column positions are not
trusted — headers are located by text, and each row's timestamp is the
first non-empty cell to the right of the detail cell (real exports carry
an unexplained blank column between the selection details and their
times).

The reference lexer here is deliberately lenient: stray ``\\`` markers are
dropped and the OCR-style ``:3F`` artifact is read as ``:$F``.  Leniency is
importer-only; the canonical log parser stays strict.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation

from . import events as ev
from .errors import ParseError
from .refs import parse_cell_ref, parse_range, valid_sheet_name

EDIT_HEADER = "Cell Edit and Resulting Cell Value"
SELECTION_HEADER = "Cell Selection Details"

# reference token at the start of a dump cell: optional sheet name, then
# $C$R, optionally followed by :<end>; everything after is edit content
_REF_TOKEN_RE = re.compile(
    r"^(?P<ref>[^$]*\$[A-Za-z]{1,3}\$[0-9]+(?::\$?[A-Za-z]{1,3}\$?[0-9]+)?)"
    r"(?:\s+(?P<content>.*))?$",
    re.DOTALL,
)


@dataclass
class ImportIssue:
    row: int
    column: str  # "edit" or "selection"
    text: str
    message: str


@dataclass
class ImportResult:
    session: ev.Session
    issues: list[ImportIssue] = field(default_factory=list)


def _scrub(text: str) -> str:
    """Drop visual artifacts the dump picks up in transit."""
    text = text.replace("\\", "")
    # ':3F' for ':$F' style damage: a digit standing in for the $ marker
    text = re.sub(r":3(?=[A-Za-z])", ":$", text)
    return text.strip()


def _parse_selection(text: str) -> ev.Event | None:
    """Sheet name, cell ref, or range ref (event without timestamp yet)."""
    if "$" not in text and valid_sheet_name(text):
        return ev.SheetActivate(Decimal(0), text)
    if ":" in text:
        return ev.SelectRange(Decimal(0), parse_range(text))
    return ev.Select(Decimal(0), parse_cell_ref(text))


def _parse_edit(text: str) -> ev.Event:
    m = _REF_TOKEN_RE.match(text)
    if not m:
        raise ParseError(f"no reference token in edit row {text!r}")
    ref_text = m.group("ref")
    content = m.group("content") or ""
    if ":" in ref_text:
        return ev.EditRange(Decimal(0), parse_range(ref_text), content)
    return ev.Edit(Decimal(0), parse_cell_ref(ref_text), content)


def _with_t(event: ev.Event, t: Decimal) -> ev.Event:
    import dataclasses

    return dataclasses.replace(event, t=t)


def _find_time(row: list[str], detail_col: int) -> Decimal | None:
    for cell in row[detail_col + 1 :]:
        if cell.strip():
            try:
                return Decimal(cell.strip())
            except InvalidOperation:
                return None
    return None


def import_tcat_dump(stream_or_text, session_id: str = "imported", participant: str = "", group: str | None = None) -> ImportResult:
    """Parse a dump CSV into a time-sorted Session plus an issue report."""
    if isinstance(stream_or_text, str):
        stream_or_text = io.StringIO(stream_or_text)
    rows = list(csv.reader(stream_or_text))

    edit_col = selection_col = None
    header_row = None
    for i, row in enumerate(rows):
        cleaned = [_scrub(c) for c in row]
        if EDIT_HEADER in cleaned:
            edit_col = cleaned.index(EDIT_HEADER)
        if SELECTION_HEADER in cleaned:
            selection_col = cleaned.index(SELECTION_HEADER)
        if edit_col is not None and selection_col is not None:
            header_row = i
            break
    if header_row is None:
        raise ParseError("dump is missing the edit/selection header pair")

    issues: list[ImportIssue] = []
    # (t, stream priority, arrival order, event); edits sort before
    # selections at equal timestamps (commit fires as focus moves on)
    keyed: list[tuple[Decimal, int, int, ev.Event]] = []

    for rowno, row in enumerate(rows[header_row + 1 :], start=header_row + 2):
        for col, label, priority, parser in (
            (edit_col, "edit", 0, _parse_edit),
            (selection_col, "selection", 1, _parse_selection),
        ):
            if col >= len(row):
                continue
            text = _scrub(row[col])
            if not text:
                continue
            t = _find_time(row, col)
            if t is None:
                issues.append(ImportIssue(rowno, label, text, "missing or bad timestamp"))
                continue
            try:
                event = parser(text)
            except ParseError as exc:
                issues.append(ImportIssue(rowno, label, text, str(exc)))
                continue
            if event is None:
                issues.append(ImportIssue(rowno, label, text, "unrecognized selection"))
                continue
            keyed.append((t, priority, len(keyed), _with_t(event, t)))

    keyed.sort(key=lambda item: (item[0], item[1], item[2]))
    session = ev.Session(session_id=session_id, participant=participant, group=group,
                         events=tuple(item[3] for item in keyed))
    return ImportResult(session, issues)
