"""HTTP session service consumed by the grid UI.

Per session, appends are serialized under a lock (single writer) while
reads snapshot the event tuple; a concurrent append can never tear a
highlight computation.  Events persist append-on-event to a log file with
an atomic finalize on close, so a crashed client still leaves a usable
truncated log.  Seeds are never exposed over the API.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from . import events as ev
from . import logfmt
from .analytics import AnalysisConfig, eligible_cells, inspected_cells, session_coverage
from .errors import CellscopeError, ClockSkewError, ParseError
from .evaluate import Evaluator
from .refs import CellRef
from .replay import replay
from .workbook import Workbook


class EventRecord(BaseModel):
    t: str
    kind: str
    sheet: str | None = None
    cell: str | None = None
    range: str | None = None
    content: str | None = None
    cells: list[str] | None = None
    seq: int | None = None  # client sequence number for de-duplication


class EventBatch(BaseModel):
    events: list[EventRecord]


class NewSession(BaseModel):
    participant: str = ""
    group: str | None = None


@dataclass
class _LiveSession:
    session: ev.Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_seq: int = -1
    log_path: str | None = None
    closed: bool = False


def _grid_payload(wb: Workbook, evaluator: Evaluator | None = None) -> dict:
    evaluator = evaluator or Evaluator(wb)
    sheets = []
    for sheet in wb.sheets:
        cells = {}
        for (col, row), cell in sheet.cells.items():
            ref = CellRef(sheet.name, col, row)
            value = evaluator.value(ref)
            cells[ref.addr] = {
                "content": cell.content,
                "kind": cell.kind.value,
                "value": str(value) if value is not None else None,
            }
        sheets.append(
            {"name": sheet.name, "cols": sheet.cols, "rows": sheet.rows, "cells": cells}
        )
    return {"title": wb.title, "sheets": sheets}


def create_app(
    workbook: Workbook,
    config: AnalysisConfig | None = None,
    log_dir: str = ".",
) -> FastAPI:
    config = config or AnalysisConfig()
    app = FastAPI(title="cellscope session service")
    sessions: dict[str, _LiveSession] = {}
    os.makedirs(log_dir, exist_ok=True)

    def live(session_id: str) -> _LiveSession:
        try:
            return sessions[session_id]
        except KeyError:
            raise HTTPException(404, f"unknown session {session_id!r}")

    @app.get("/workbook")
    def get_workbook():
        return _grid_payload(workbook)

    @app.post("/sessions")
    def create_session(body: NewSession):
        session_id = uuid.uuid4().hex[:12]
        session = ev.Session(
            session_id=session_id,
            participant=body.participant,
            group=body.group,
            workbook_title=workbook.title,
        )
        path = os.path.join(log_dir, f"{session_id}.log.partial")
        with open(path, "w", encoding="utf-8") as fh:
            logfmt.serialize_log(session, fh)
        sessions[session_id] = _LiveSession(session, log_path=path)
        return {"session_id": session_id}

    @app.post("/sessions/{session_id}/events")
    def post_events(session_id: str, batch: EventBatch):
        state = live(session_id)
        with state.lock:
            if state.closed:
                raise HTTPException(409, "session is closed")
            accepted = 0
            for rec in batch.events:
                if rec.seq is not None and rec.seq <= state.last_seq:
                    continue  # duplicate delivery
                try:
                    event = logfmt._parse_event(rec.model_dump(exclude_none=True), 0)
                    state.session = ev.append_event(state.session, event)
                except (ParseError, ClockSkewError, CellscopeError) as exc:
                    raise HTTPException(422, f"bad event: {exc}")
                if rec.seq is not None:
                    state.last_seq = rec.seq
                accepted += 1
                with open(state.log_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps(logfmt._event_record(event), ensure_ascii=False) + "\n")
            return {"accepted": accepted, "total": len(state.session.events)}

    @app.get("/sessions/{session_id}/highlight")
    def get_highlight(session_id: str, sheet: str):
        from .feedback import highlight_set, record_highlight

        state = live(session_id)
        with state.lock:
            if workbook.sheet(sheet) is None:
                raise HTTPException(422, f"unknown sheet {sheet!r}")
            result = highlight_set(workbook, state.session, sheet, config)
            if not state.closed:
                state.session = record_highlight(state.session, result)
                with open(state.log_path, "a", encoding="utf-8") as fh:
                    event = state.session.events[-1]
                    fh.write(json.dumps(logfmt._event_record(event), ensure_ascii=False) + "\n")
            return {
                "sheet": result.sheet,
                "t": str(result.t),
                "cells": [c.addr.replace("$", "") for c in result.cells],
            }

    @app.get("/sessions/{session_id}/coverage")
    def get_coverage(session_id: str):
        state = live(session_id)
        with state.lock:
            snapshot = state.session
        eligible = eligible_cells(workbook)
        inspected = inspected_cells(snapshot, config) & eligible
        return {
            "coverage": session_coverage(snapshot, workbook, config),
            "inspected": len(inspected),
            "eligible": len(eligible),
        }

    @app.get("/sessions/{session_id}/grid")
    def get_session_grid(session_id: str):
        """Workbook with the session's edits replayed; values recomputed."""
        state = live(session_id)
        with state.lock:
            snapshot = state.session
        return _grid_payload(replay(workbook, snapshot))

    @app.post("/sessions/{session_id}/close")
    def close_session(session_id: str):
        state = live(session_id)
        with state.lock:
            if not state.closed:
                last = state.session.events[-1] if state.session.events else None
                if not isinstance(last, ev.Close):
                    t = state.session.last_t
                    state.session = ev.append_event(state.session, ev.Close(t))
                final_path = state.log_path.removesuffix(".partial")
                with open(state.log_path, "w", encoding="utf-8") as fh:
                    logfmt.serialize_log(state.session, fh)
                os.replace(state.log_path, final_path)
                state.log_path = final_path
                state.closed = True
            return {"log": state.log_path, "events": len(state.session.events)}

    @app.get("/sessions/{session_id}/log", response_class=PlainTextResponse)
    def get_log(session_id: str):
        state = live(session_id)
        with state.lock:
            return logfmt.serialize_log(state.session)

    return app
