"""Canonical session log: line-oriented UTF-8, one JSON record per line.

First line is the session header; each further line is one event with its
timestamp as a decimal string.  ``parse_log(serialize_log(s)) == s`` for any
valid session; parsing then re-serializing a foreign-but-equivalent stream
yields the canonical formatting.
"""

from __future__ import annotations

import io
import json

from . import events as ev
from .errors import ParseError
from .refs import parse_cell_ref, parse_range


def _event_record(e: ev.Event) -> dict:
    rec: dict = {"t": str(e.t)}
    if isinstance(e, ev.Open):
        rec["kind"] = "open"
    elif isinstance(e, ev.Close):
        rec["kind"] = "close"
    elif isinstance(e, ev.SheetActivate):
        rec.update(kind="sheet", sheet=e.sheet)
    elif isinstance(e, ev.Select):
        rec.update(kind="select", cell=e.cell.render())
    elif isinstance(e, ev.SelectRange):
        rec.update(kind="select_range", range=e.range.render())
    elif isinstance(e, ev.Edit):
        rec.update(kind="edit", cell=e.cell.render(), content=e.content)
    elif isinstance(e, ev.EditRange):
        rec.update(kind="edit_range", range=e.range.render(), content=e.content)
    elif isinstance(e, ev.Highlight):
        rec.update(kind="highlight", sheet=e.sheet, cells=[c.addr for c in e.cells])
    else:
        raise TypeError(f"unknown event type: {e!r}")
    return rec


def serialize_log(session: ev.Session, stream=None) -> str | None:
    """Write the canonical log; returns the text when no stream is given."""
    out = stream or io.StringIO()
    header = {
        "session_id": session.session_id,
        "participant": session.participant,
        "group": session.group,
        "workbook_title": session.workbook_title,
    }
    out.write(json.dumps(header, ensure_ascii=False) + "\n")
    for e in session.events:
        out.write(json.dumps(_event_record(e), ensure_ascii=False) + "\n")
    if stream is None:
        return out.getvalue()
    return None


def _parse_event(rec: dict, lineno: int) -> ev.Event:
    try:
        t = ev.as_seconds(rec["t"])
        kind = rec["kind"]
        if kind == "open":
            return ev.Open(t)
        if kind == "close":
            return ev.Close(t)
        if kind == "sheet":
            return ev.SheetActivate(t, rec["sheet"])
        if kind == "select":
            return ev.Select(t, parse_cell_ref(rec["cell"]))
        if kind == "select_range":
            return ev.SelectRange(t, parse_range(rec["range"]))
        if kind == "edit":
            return ev.Edit(t, parse_cell_ref(rec["cell"]), rec["content"])
        if kind == "edit_range":
            return ev.EditRange(t, parse_range(rec["range"]), rec["content"])
        if kind == "highlight":
            sheet = rec["sheet"]
            cells = tuple(parse_cell_ref(c, default_sheet=sheet) for c in rec["cells"])
            return ev.Highlight(t, sheet, cells)
    except ParseError as exc:
        raise ParseError(f"bad event record: {exc}", line=lineno) from exc
    except (KeyError, ArithmeticError, ValueError) as exc:
        raise ParseError(f"bad event record: {exc!r}", line=lineno) from exc
    raise ParseError(f"unknown event kind {rec.get('kind')!r}", line=lineno)


def parse_log(stream_or_text) -> ev.Session:
    """Parse a canonical log document into a Session."""
    if isinstance(stream_or_text, str):
        stream_or_text = io.StringIO(stream_or_text)
    lines = [ln for ln in stream_or_text.read().splitlines()]
    if not lines or not lines[0].strip():
        raise ParseError("missing session header", line=1)
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad header: {exc}", line=1) from exc
    if not isinstance(header, dict) or "session_id" not in header:
        raise ParseError("header must be an object with session_id", line=1)
    session = ev.Session(
        session_id=header["session_id"],
        participant=header.get("participant", ""),
        group=header.get("group"),
        workbook_title=header.get("workbook_title"),
    )
    parsed: list[ev.Event] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed line: {exc}", line=lineno) from exc
        if isinstance(rec, dict) and "session_id" in rec:
            raise ParseError("duplicate session header", line=lineno)
        parsed.append(_parse_event(rec, lineno))
    for e in parsed:
        session = ev.append_event(session, e)
    return session
