from decimal import Decimal

import pytest
from hypothesis import given, settings

from cellscope import events as ev
from cellscope.analytics import AnalysisConfig, eligible_cells, inspected_cells
from cellscope.errors import UsageError
from cellscope.feedback import highlight_set, highlight_timeline, record_highlight
from cellscope.refs import CellRef
from cellscope.workbook import Cell, Sheet, Workbook

from conftest import sessions


def two_sheet_wb():
    alpha = Sheet("Alpha", cols=8, rows=8)
    beta = Sheet("Beta", cols=8, rows=8)
    for col in range(1, 5):
        for row in range(1, 5):
            alpha.cells[(col, row)] = Cell.from_content(str(col * row))
    beta.cells[(1, 1)] = Cell.from_content("=A2*2")
    beta.cells[(1, 2)] = Cell.from_content("3")
    beta.cells[(2, 1)] = Cell.from_content("label text here")
    return Workbook("t", [alpha, beta])


def test_fresh_session_highlights_everything():
    wb = two_sheet_wb()
    session = ev.Session("s")
    result = highlight_set(wb, session, "Alpha")
    assert set(result.cells) == eligible_cells(wb, "Alpha")
    assert len(result.cells) == 16


def test_labels_never_highlighted():
    wb = two_sheet_wb()
    result = highlight_set(wb, ev.Session("s"), "Beta")
    assert CellRef("Beta", 2, 1) not in result.cells
    assert set(result.cells) == {CellRef("Beta", 1, 1), CellRef("Beta", 1, 2)}


def test_row_major_order():
    wb = two_sheet_wb()
    cells = highlight_set(wb, ev.Session("s"), "Alpha").cells
    keys = [(c.row, c.col) for c in cells]
    assert keys == sorted(keys)


def test_inspected_cells_drop_out():
    wb = two_sheet_wb()
    session = ev.Session("s", events=(
        ev.Select(Decimal(1), CellRef("Alpha", 1, 1)),
        ev.Select(Decimal(2), CellRef("Alpha", 2, 1)),   # 1s dwell on A1
        ev.Edit(Decimal(2), CellRef("Alpha", 3, 3), "9"),
    ))
    result = highlight_set(wb, session, "Alpha")
    assert CellRef("Alpha", 1, 1) not in result.cells
    assert CellRef("Alpha", 3, 3) not in result.cells
    # 14 of 16 remain; the zero-width tail visit of B1 does not count
    assert len(result.cells) == 14


def test_sheet_isolation():
    wb = two_sheet_wb()
    session = ev.Session("s", events=(
        ev.Edit(Decimal(1), CellRef("Alpha", 1, 1), "9"),
    ))
    assert all(c.sheet == "Beta" for c in highlight_set(wb, session, "Beta").cells)
    assert len(highlight_set(wb, session, "Beta").cells) == 2


def test_highlight_event_is_not_inspection():
    wb = two_sheet_wb()
    session = ev.Session("s")
    first = highlight_set(wb, session, "Alpha", t=1)
    session = record_highlight(session, first)
    second = highlight_set(wb, session, "Alpha", t=2)
    assert first.cells == second.cells


def test_unknown_sheet_rejected():
    with pytest.raises(UsageError):
        highlight_set(two_sheet_wb(), ev.Session("s"), "Gamma")


def test_default_timestamp_is_session_end():
    wb = two_sheet_wb()
    session = ev.Session("s", events=(ev.Open(Decimal(0)), ev.Close(Decimal("4.5"))))
    assert highlight_set(wb, session, "Alpha").t == Decimal("4.5")


def test_timeline_lists_highlights_in_order():
    wb = two_sheet_wb()
    session = ev.Session("s")
    session = record_highlight(session, highlight_set(wb, session, "Alpha", t=1))
    session = ev.append_event(session, ev.Edit(Decimal(2), CellRef("Alpha", 1, 1), "5"))
    session = record_highlight(session, highlight_set(wb, session, "Alpha", t=3))
    timeline = highlight_timeline(session)
    assert [(t, n) for t, _, n in timeline] == [(Decimal(1), 16), (Decimal(3), 15)]


@given(sessions(max_events=20))
@settings(max_examples=60)
def test_highlight_is_complement_of_inspected(session):
    wb = two_sheet_wb()
    config = AnalysisConfig()
    for sheet in ("Alpha", "Beta"):
        result = highlight_set(wb, session, sheet, config)
        expected = eligible_cells(wb, sheet) - inspected_cells(session, config)
        assert set(result.cells) == expected


@given(sessions(max_events=20))
@settings(max_examples=60)
def test_highlight_shrinks_over_prefixes(session):
    wb = two_sheet_wb()
    previous = None
    for i in range(len(session.events) + 1):
        prefix = ev.Session("s", events=session.events[:i])
        current = set(highlight_set(wb, prefix, "Alpha").cells)
        if previous is not None:
            assert current <= previous
        previous = current
