import os
from decimal import Decimal

import pytest
from hypothesis import strategies as st

from cellscope import events as ev
from cellscope.importer import import_tcat_dump
from cellscope.refs import CellRef, normalize_range
from cellscope.workbook import load_workbook

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
WORKBOOK_PATH = os.path.join(FIXTURES, "payroll_workbook.json")
DUMP_PATH = os.path.join(FIXTURES, "tcat_dump.csv")


@pytest.fixture(scope="session")
def workbook():
    return load_workbook(WORKBOOK_PATH)


@pytest.fixture(scope="session")
def dump_session():
    with open(DUMP_PATH, encoding="utf-8") as fh:
        result = import_tcat_dump(fh)
    assert not result.issues
    return result.session


@pytest.fixture
def workbook_path():
    return WORKBOOK_PATH


@pytest.fixture
def dump_path():
    return DUMP_PATH


# --- hypothesis strategies ------------------------------------------------

SHEETS = ("Alpha", "Beta")

cell_refs = st.builds(
    CellRef,
    sheet=st.sampled_from(SHEETS),
    col=st.integers(1, 8),
    row=st.integers(1, 8),
    col_abs=st.booleans(),
    row_abs=st.booleans(),
)

range_refs = st.builds(
    lambda a, b: normalize_range(a, CellRef(a.sheet, b.col, b.row, b.col_abs, b.row_abs)),
    cell_refs,
    cell_refs,
)

contents = st.one_of(
    st.just(""),
    st.sampled_from(["40", "6.75", "2,500", "Total:", "=A1+B2", "=SUM(A1:B3)", "hello"]),
    st.text(alphabet="abcxyz 0123456789", max_size=8),
)


@st.composite
def timestamps(draw, n):
    steps = draw(st.lists(st.integers(0, 5000), min_size=n, max_size=n))
    out, t = [], Decimal(0)
    for s in steps:
        t += Decimal(s) / 1000
        out.append(t)
    return out


@st.composite
def sessions(draw, min_events=0, max_events=30, with_open_close=False):
    n = draw(st.integers(min_events, max_events))
    ts = draw(timestamps(n))
    events = []
    for t in ts:
        kind = draw(st.integers(0, 5))
        if kind == 0:
            events.append(ev.SheetActivate(t, draw(st.sampled_from(SHEETS))))
        elif kind in (1, 2):
            events.append(ev.Select(t, draw(cell_refs)))
        elif kind == 3:
            events.append(ev.SelectRange(t, draw(range_refs)))
        elif kind == 4:
            events.append(ev.Edit(t, draw(cell_refs), draw(contents)))
        else:
            events.append(ev.EditRange(t, draw(range_refs), draw(contents)))
    if with_open_close:
        events = [ev.Open(Decimal(0))] + events
        last = events[-1].t if events else Decimal(0)
        events.append(ev.Close(last + Decimal("0.001")))
    session = ev.Session(session_id="gen", participant="p", group="g", events=tuple(events))
    return session
