"""Sheet-qualified A1 cell and range references.

Accepted single-cell forms:

    Sheet$C$R     (dump style, both axes absolute)
    Sheet!$C$R    (canonical, any combination of $ flags)
    Sheet!CR
    CR            (bare; requires a default sheet)

Sheet names may contain spaces but not ``!``, ``$`` or ``:``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import MissingContextError, ParseError

_BARE_RE = re.compile(r"^(\$?)([A-Za-z]{1,3})(\$?)([1-9][0-9]*)$")
_DUMP_RE = re.compile(r"^([^$!:]+?)\$([A-Za-z]{1,3})\$([1-9][0-9]*)$")
_RANGE_RE = re.compile(r"^(.+):(\$?[A-Za-z]{1,3}\$?[1-9][0-9]*)$")

_BAD_SHEET_CHARS = set("!$:")


def col_to_letters(col: int) -> str:
    """1 -> A, 26 -> Z, 27 -> AA."""
    if col < 1:
        raise ValueError(f"column index must be >= 1, got {col}")
    s = ""
    while col:
        col, rem = divmod(col - 1, 26)
        s = chr(ord("A") + rem) + s
    return s


def letters_to_col(letters: str) -> int:
    col = 0
    for ch in letters.upper():
        col = col * 26 + (ord(ch) - ord("A") + 1)
    return col


def valid_sheet_name(name: str) -> bool:
    return bool(name) and not (_BAD_SHEET_CHARS & set(name))


@dataclass(frozen=True, order=True)
class CellRef:
    sheet: str
    col: int
    row: int
    col_abs: bool = False
    row_abs: bool = False

    def __post_init__(self):
        if self.col < 1 or self.row < 1:
            raise ValueError(f"cell address out of grid: col={self.col} row={self.row}")
        if not valid_sheet_name(self.sheet):
            raise ValueError(f"invalid sheet name: {self.sheet!r}")

    @property
    def addr(self) -> str:
        """Bare A1 address with $ flags, e.g. ``$D$10``."""
        return "{}{}{}{}".format(
            "$" if self.col_abs else "",
            col_to_letters(self.col),
            "$" if self.row_abs else "",
            self.row,
        )

    @property
    def coord(self) -> tuple[str, int, int]:
        """(sheet, col, row) ignoring the absolute flags."""
        return (self.sheet, self.col, self.row)

    def render(self) -> str:
        return f"{self.sheet}!{self.addr}"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True, order=True)
class RangeRef:
    start: CellRef
    end: CellRef

    def __post_init__(self):
        if self.start.sheet != self.end.sheet:
            raise ValueError("range endpoints must share a sheet")
        if self.start.col > self.end.col or self.start.row > self.end.row:
            raise ValueError("range is not normalized")

    @property
    def sheet(self) -> str:
        return self.start.sheet

    def cells(self):
        """Contained cells in row-major order, with relative flags."""
        for row in range(self.start.row, self.end.row + 1):
            for col in range(self.start.col, self.end.col + 1):
                yield CellRef(self.sheet, col, row)

    def __len__(self) -> int:
        return (self.end.col - self.start.col + 1) * (self.end.row - self.start.row + 1)

    def __contains__(self, ref: CellRef) -> bool:
        return (
            ref.sheet == self.sheet
            and self.start.col <= ref.col <= self.end.col
            and self.start.row <= ref.row <= self.end.row
        )

    def render(self) -> str:
        return f"{self.sheet}!{self.start.addr}:{self.end.addr}"

    def __str__(self) -> str:
        return self.render()


def _parse_bare(text: str, sheet: str, base_offset: int) -> CellRef:
    m = _BARE_RE.match(text)
    if not m:
        raise ParseError(f"malformed cell address {text!r}", offset=base_offset)
    col_abs, letters, row_abs, row = m.groups()
    return CellRef(sheet, letters_to_col(letters), int(row), bool(col_abs), bool(row_abs))


def parse_cell_ref(text: str, default_sheet: str | None = None) -> CellRef:
    """Parse one cell reference; bare forms need ``default_sheet``."""
    text = text.strip()
    if "!" in text:
        sheet, _, rest = text.partition("!")
        if not valid_sheet_name(sheet):
            raise ParseError(f"invalid sheet name {sheet!r}", offset=0)
        return _parse_bare(rest, sheet, len(sheet) + 1)
    m = _DUMP_RE.match(text)
    if m:
        sheet, letters, row = m.groups()
        return CellRef(sheet, letters_to_col(letters), int(row), True, True)
    if _BARE_RE.match(text):
        if default_sheet is None:
            raise MissingContextError(
                f"bare reference {text!r} needs a default sheet", offset=0
            )
        return _parse_bare(text, default_sheet, 0)
    raise ParseError(f"malformed cell reference {text!r}", offset=0)


def normalize_range(start: CellRef, end: CellRef) -> RangeRef:
    """Order endpoints per axis; absolute flags travel with their coordinate."""
    (c1, a1), (c2, a2) = sorted([(start.col, start.col_abs), (end.col, end.col_abs)])
    (r1, b1), (r2, b2) = sorted([(start.row, start.row_abs), (end.row, end.row_abs)])
    return RangeRef(
        CellRef(start.sheet, c1, r1, a1, b1),
        CellRef(start.sheet, c2, r2, a2, b2),
    )


def parse_range(text: str, default_sheet: str | None = None) -> RangeRef:
    """Parse ``start:end``; a sheet qualifier may appear on the left side only."""
    text = text.strip()
    m = _RANGE_RE.match(text)
    if not m:
        raise ParseError(f"malformed range {text!r}", offset=0)
    left_text, right_text = m.groups()
    start = parse_cell_ref(left_text, default_sheet)
    end = _parse_bare(right_text, start.sheet, len(left_text) + 1)
    return normalize_range(start, end)
