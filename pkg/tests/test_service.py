import os

import pytest
from fastapi.testclient import TestClient

from cellscope import events as ev
from cellscope.analytics import AnalysisConfig, inspected_cells
from cellscope.feedback import highlight_set
from cellscope.logfmt import parse_log
from cellscope.service import create_app


@pytest.fixture
def client(workbook, tmp_path):
    app = create_app(workbook, AnalysisConfig(), log_dir=str(tmp_path))
    with TestClient(app) as c:
        c.log_dir = str(tmp_path)
        yield c


def new_session(client, **kwargs):
    resp = client.post("/sessions", json=kwargs)
    assert resp.status_code == 200
    return resp.json()["session_id"]


def post_events(client, sid, records, expect=200):
    resp = client.post(f"/sessions/{sid}/events", json={"events": records})
    assert resp.status_code == expect, resp.text
    return resp


def test_workbook_endpoint_hides_seeds(client):
    data = client.get("/workbook").json()
    assert data["title"]
    assert "seeds" not in data
    names = [s["name"] for s in data["sheets"]]
    assert names == ["Payroll", "Office Expenses", "Projections"]
    d10 = data["sheets"][0]["cells"]["D10"]
    assert d10 == {"content": "44", "kind": "data", "value": "44.0"}


def test_workbook_values_evaluated(client):
    cells = client.get("/workbook").json()["sheets"][0]["cells"]
    assert cells["F5"]["value"] == "300.0"
    assert cells["F5"]["kind"] == "formula"


def test_session_lifecycle(client):
    sid = new_session(client, participant="p1", group="tool")
    post_events(client, sid, [
        {"t": "0", "kind": "open"},
        {"t": "1.5", "kind": "select", "cell": "Payroll!C5"},
        {"t": "2.5", "kind": "edit", "cell": "Payroll!C5", "content": "7.50"},
    ])
    cov = client.get(f"/sessions/{sid}/coverage").json()
    assert cov["inspected"] == 1
    assert cov["eligible"] > 100
    assert cov["coverage"] == pytest.approx(1 / cov["eligible"])
    closed = client.post(f"/sessions/{sid}/close").json()
    assert closed["log"].endswith(f"{sid}.log")
    log_text = client.get(f"/sessions/{sid}/log").text
    session = parse_log(log_text)
    assert session.participant == "p1"
    assert isinstance(session.events[-1], ev.Close)


def test_unknown_session_404(client):
    assert client.get("/sessions/nope/coverage").status_code == 404
    assert client.post("/sessions/nope/close").status_code == 404


def test_bad_event_422(client):
    sid = new_session(client)
    resp = post_events(client, sid, [{"t": "0", "kind": "teleport"}], expect=422)
    assert "bad event" in resp.text


def test_clock_skew_422(client):
    sid = new_session(client)
    post_events(client, sid, [{"t": "5", "kind": "open"}])
    post_events(client, sid, [{"t": "1", "kind": "select", "cell": "Payroll!A1"}],
                expect=422)


def test_seq_deduplication(client):
    sid = new_session(client)
    batch = [
        {"t": "0", "kind": "open", "seq": 0},
        {"t": "1", "kind": "select", "cell": "Payroll!C5", "seq": 1},
    ]
    assert post_events(client, sid, batch).json()["accepted"] == 2
    # at-least-once delivery: the retry must be a no-op
    assert post_events(client, sid, batch).json()["accepted"] == 0
    assert post_events(client, sid, batch).json()["total"] == 2


def test_highlight_matches_offline_computation(client, workbook):
    sid = new_session(client)
    post_events(client, sid, [
        {"t": "0", "kind": "open"},
        {"t": "1", "kind": "select", "cell": "Payroll!C5"},
        {"t": "2", "kind": "edit", "cell": "Payroll!D10", "content": "40"},
        {"t": "2", "kind": "select", "cell": "Payroll!D10"},
    ])
    server = client.get(f"/sessions/{sid}/highlight", params={"sheet": "Payroll"}).json()
    offline_session = parse_log(client.get(f"/sessions/{sid}/log").text)
    # drop the Highlight event the request itself appended
    offline_session = ev.Session(
        "x", events=tuple(e for e in offline_session.events if not isinstance(e, ev.Highlight))
    )
    expected = highlight_set(workbook, offline_session, "Payroll")
    assert server["cells"] == [c.addr.replace("$", "") for c in expected.cells]
    assert "C5" not in server["cells"]
    assert "D10" not in server["cells"]


def test_highlight_request_logged_but_not_inspection(client):
    sid = new_session(client)
    post_events(client, sid, [{"t": "0", "kind": "open"}])
    first = client.get(f"/sessions/{sid}/highlight", params={"sheet": "Payroll"}).json()
    second = client.get(f"/sessions/{sid}/highlight", params={"sheet": "Payroll"}).json()
    assert first["cells"] == second["cells"]
    session = parse_log(client.get(f"/sessions/{sid}/log").text)
    highlights = [e for e in session.events if isinstance(e, ev.Highlight)]
    assert len(highlights) == 2
    assert not inspected_cells(session)


def test_highlight_unknown_sheet_422(client):
    sid = new_session(client)
    resp = client.get(f"/sessions/{sid}/highlight", params={"sheet": "Nope"})
    assert resp.status_code == 422


def test_grid_reflects_edits(client):
    sid = new_session(client)
    before = client.get(f"/sessions/{sid}/grid").json()
    assert before["sheets"][0]["cells"]["D10"]["content"] == "44"
    post_events(client, sid, [
        {"t": "0", "kind": "open"},
        {"t": "1", "kind": "edit", "cell": "Payroll!D10", "content": "40"},
    ])
    after = client.get(f"/sessions/{sid}/grid").json()
    d10 = after["sheets"][0]["cells"]["D10"]
    assert d10["content"] == "40"
    # F10 is =C10*D10+10 in the faulty workbook: 8.25 * 40 + 10
    assert after["sheets"][0]["cells"]["F10"]["value"] == "340.0"


def test_close_idempotent_and_atomic(client):
    sid = new_session(client)
    post_events(client, sid, [{"t": "0", "kind": "open"}])
    partial = os.path.join(client.log_dir, f"{sid}.log.partial")
    final = os.path.join(client.log_dir, f"{sid}.log")
    assert os.path.exists(partial)
    first = client.post(f"/sessions/{sid}/close").json()
    second = client.post(f"/sessions/{sid}/close").json()
    assert first == second
    assert os.path.exists(final) and not os.path.exists(partial)
    with open(final, encoding="utf-8") as fh:
        session = parse_log(fh)
    assert isinstance(session.events[-1], ev.Close)
    # no second Close appended
    assert sum(isinstance(e, ev.Close) for e in session.events) == 1


def test_events_after_close_409(client):
    sid = new_session(client)
    client.post(f"/sessions/{sid}/close")
    post_events(client, sid, [{"t": "0", "kind": "open"}], expect=409)


def test_partial_log_survives_without_close(client):
    sid = new_session(client)
    post_events(client, sid, [
        {"t": "0", "kind": "open"},
        {"t": "1", "kind": "select", "cell": "Payroll!C5"},
    ])
    partial = os.path.join(client.log_dir, f"{sid}.log.partial")
    with open(partial, encoding="utf-8") as fh:
        session = parse_log(fh)
    assert len(session.events) == 2
