import pytest
from hypothesis import given

from cellscope.errors import MissingContextError, ParseError
from cellscope.refs import (
    CellRef,
    col_to_letters,
    letters_to_col,
    parse_cell_ref,
    parse_range,
)

from conftest import cell_refs, range_refs


def test_column_letters_roundtrip():
    for col in list(range(1, 200)) + [702, 703, 16384]:
        assert letters_to_col(col_to_letters(col)) == col
    assert col_to_letters(1) == "A"
    assert col_to_letters(26) == "Z"
    assert col_to_letters(27) == "AA"


def test_parse_dump_style():
    ref = parse_cell_ref("Payroll$D$10")
    assert ref == CellRef("Payroll", 4, 10, True, True)


def test_parse_bare_with_default_sheet():
    assert parse_cell_ref("A1", default_sheet="S") == CellRef("S", 1, 1)


def test_parse_sheet_with_space():
    ref = parse_cell_ref("Office Expenses$F$18")
    assert ref.sheet == "Office Expenses"
    assert (ref.col, ref.row) == (6, 18)


def test_bare_without_default_sheet_fails():
    with pytest.raises(MissingContextError):
        parse_cell_ref("A1")


@pytest.mark.parametrize("bad", ["", "Payroll!", "1A", "A0", "$$", "Payroll!A", "!A1"])
def test_malformed_refs(bad):
    with pytest.raises(ParseError):
        parse_cell_ref(bad, default_sheet="S")


def test_parse_error_carries_offset():
    with pytest.raises(ParseError) as exc:
        parse_cell_ref("Payroll!A0")
    assert exc.value.offset == 8


@given(cell_refs)
def test_render_parse_roundtrip(ref):
    assert parse_cell_ref(ref.render()) == ref


def test_range_from_figure_layout():
    rng = parse_range("Payroll$F$12:$F$14")
    assert rng.sheet == "Payroll"
    assert (rng.start.row, rng.end.row) == (12, 14)
    assert len(rng) == 3


def test_single_cell_range():
    rng = parse_range("B2:B2", default_sheet="S")
    assert len(rng) == 1
    assert rng.start.coord == rng.end.coord


def test_range_normalization():
    rng = parse_range("C3:A1", default_sheet="S")
    assert (rng.start.col, rng.start.row) == (1, 1)
    assert (rng.end.col, rng.end.row) == (3, 3)


def test_range_rejects_sheet_on_right():
    with pytest.raises(ParseError):
        parse_range("A1:Payroll$B$2", default_sheet="S")


@given(range_refs)
def test_range_render_roundtrip(rng):
    assert parse_range(rng.render()) == rng


@given(range_refs)
def test_range_cells_count(rng):
    cells = list(rng.cells())
    assert len(cells) == len(rng)
    assert all(c in rng for c in cells)
