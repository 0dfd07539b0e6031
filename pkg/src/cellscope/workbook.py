"""Workbook model: cells, kinds, seeded errors, loading and validation.

The on-disk workbook format is a UTF-8 JSON document:

    {
      "title": "...",
      "version": "1",
      "sheets": [
        {"name": "Payroll", "cols": 26, "rows": 100,
         "cells": {"A1": {"content": "Employee"}, ...}},
        ...
      ],
      "seeds": [
        {"sheet": "Payroll", "addr": "D10", "category": "data_entry",
         "faulty": "44", "accept": [{"exact": "40"}, {"value": 40}]},
        ...
      ]
    }

A per-sheet CSV import mode (``addr,content`` rows) builds fixtures.
"""

from __future__ import annotations

import csv
import datetime
import enum
import io
import json
import re
from dataclasses import dataclass, field

from . import formula
from .errors import LoadError, ParseError
from .refs import CellRef, letters_to_col, valid_sheet_name

DEFAULT_COLS = 256
DEFAULT_ROWS = 1024

_NUMBER_RE = re.compile(r"^-?(\d{1,3}(,\d{3})+|\d+)(\.\d+)?$")


class CellKind(enum.Enum):
    BLANK = "blank"
    LABEL = "label"
    DATA = "data"
    FORMULA = "formula"


class SeedCategory(enum.Enum):
    CLERICAL = "clerical"
    RULE_VIOLATION = "rule_violation"
    DATA_ENTRY = "data_entry"
    FORMULA = "formula"


def is_number_content(content: str) -> bool:
    return bool(_NUMBER_RE.match(content))


def is_date_content(content: str) -> bool:
    if not re.match(r"^\d{4}-\d{2}-\d{2}$", content):
        return False
    try:
        datetime.date.fromisoformat(content)
        return True
    except ValueError:
        return False


def parse_number(content: str) -> float:
    return float(content.replace(",", ""))


def classify_cell(content: str) -> CellKind:
    """Total function from raw content to cell kind."""
    if content == "":
        return CellKind.BLANK
    if content.startswith("="):
        return CellKind.FORMULA
    if is_number_content(content) or is_date_content(content):
        return CellKind.DATA
    return CellKind.LABEL


@dataclass(frozen=True)
class Cell:
    content: str
    kind: CellKind
    ast: formula.AstNode | None = None

    @classmethod
    def from_content(cls, content: str) -> "Cell":
        kind = classify_cell(content)
        ast = formula.parse_formula(content) if kind is CellKind.FORMULA else None
        return cls(content, kind, ast)


@dataclass(frozen=True)
class AcceptRule:
    """One way a seeded error counts as corrected."""

    exact: str | None = None
    value: float | None = None
    rel_tol: float = 1e-9

    def __post_init__(self):
        if (self.exact is None) == (self.value is None):
            raise ValueError("accept rule needs exactly one of 'exact' or 'value'")


@dataclass(frozen=True)
class ErrorSeed:
    target: CellRef
    category: SeedCategory
    faulty_content: str
    accepted: tuple[AcceptRule, ...]

    def __post_init__(self):
        if not self.accepted:
            raise ValueError("seed needs at least one acceptance rule")


@dataclass
class Sheet:
    name: str
    cells: dict[tuple[int, int], Cell] = field(default_factory=dict)
    cols: int = DEFAULT_COLS
    rows: int = DEFAULT_ROWS

    def cell(self, col: int, row: int) -> Cell | None:
        return self.cells.get((col, row))

    def in_bounds(self, col: int, row: int) -> bool:
        return 1 <= col <= self.cols and 1 <= row <= self.rows


@dataclass
class Workbook:
    """Immutable after load; replay copies rather than mutating."""

    title: str
    sheets: list[Sheet]
    seeds: list[ErrorSeed] = field(default_factory=list)
    version: str = "1"

    def sheet(self, name: str) -> Sheet | None:
        for s in self.sheets:
            if s.name == name:
                return s
        return None

    def sheet_names(self) -> list[str]:
        return [s.name for s in self.sheets]

    def cell(self, ref: CellRef) -> Cell | None:
        sheet = self.sheet(ref.sheet)
        if sheet is None:
            return None
        return sheet.cell(ref.col, ref.row)

    def iter_cells(self):
        """(CellRef, Cell) pairs in sheet order, row-major within a sheet."""
        for sheet in self.sheets:
            for (col, row) in sorted(sheet.cells, key=lambda cr: (cr[1], cr[0])):
                yield CellRef(sheet.name, col, row), sheet.cells[(col, row)]

    def copy(self) -> "Workbook":
        return Workbook(
            self.title,
            [Sheet(s.name, dict(s.cells), s.cols, s.rows) for s in self.sheets],
            list(self.seeds),
            self.version,
        )

    def to_document(self) -> dict:
        doc = {
            "title": self.title,
            "version": self.version,
            "sheets": [],
            "seeds": [],
        }
        for sheet in self.sheets:
            cells = {}
            for (col, row) in sorted(sheet.cells, key=lambda cr: (cr[1], cr[0])):
                ref = CellRef(sheet.name, col, row)
                cells[ref.addr] = {"content": sheet.cells[(col, row)].content}
            doc["sheets"].append(
                {"name": sheet.name, "cols": sheet.cols, "rows": sheet.rows, "cells": cells}
            )
        for seed in self.seeds:
            accept = []
            for rule in seed.accepted:
                if rule.exact is not None:
                    accept.append({"exact": rule.exact})
                else:
                    accept.append({"value": rule.value, "rel_tol": rule.rel_tol})
            doc["seeds"].append(
                {
                    "sheet": seed.target.sheet,
                    "addr": seed.target.addr.replace("$", ""),
                    "category": seed.category.value,
                    "faulty": seed.faulty_content,
                    "accept": accept,
                }
            )
        return doc


_ADDR_RE = re.compile(r"^([A-Za-z]{1,3})([1-9][0-9]*)$")


def _parse_addr(addr: str) -> tuple[int, int]:
    m = _ADDR_RE.match(addr.replace("$", ""))
    if m is None:
        raise ParseError(f"bad cell address {addr!r}")
    return letters_to_col(m.group(1)), int(m.group(2))


def _validate_references(wb: Workbook, problems: list[str]) -> None:
    names = set(wb.sheet_names())
    for ref, cell in wb.iter_cells():
        if cell.ast is None:
            continue
        for node in formula.formula_refs(cell.ast):
            sheet_name = node.sheet if isinstance(node, (formula.Ref, formula.RangeNode)) else None
            sheet_name = sheet_name or ref.sheet
            if sheet_name not in names:
                problems.append(f"{ref}: formula references unknown sheet {sheet_name!r}")
                continue
            target_sheet = wb.sheet(sheet_name)
            parts = [node] if isinstance(node, formula.Ref) else [node.start, node.end]
            for part in parts:
                if not target_sheet.in_bounds(part.col, part.row):
                    problems.append(
                        f"{ref}: formula reference outside {sheet_name!r} bounds"
                    )


def load_workbook_document(doc: dict) -> Workbook:
    """Build and validate a Workbook from a parsed JSON document.

    Every problem is collected so a LoadError lists all offending cells.
    """
    problems: list[str] = []
    if not isinstance(doc, dict):
        raise LoadError(["document root must be an object"])
    title = doc.get("title", "")
    version = str(doc.get("version", "1"))
    sheets: list[Sheet] = []
    seen_names: set[str] = set()
    for sdoc in doc.get("sheets", []):
        name = sdoc.get("name", "")
        if not valid_sheet_name(name):
            problems.append(f"invalid sheet name {name!r}")
            continue
        if name in seen_names:
            problems.append(f"duplicate sheet name {name!r}")
            continue
        seen_names.add(name)
        sheet = Sheet(name, cols=int(sdoc.get("cols", DEFAULT_COLS)), rows=int(sdoc.get("rows", DEFAULT_ROWS)))
        for addr, cdoc in sdoc.get("cells", {}).items():
            try:
                col, row = _parse_addr(addr)
            except ParseError as exc:
                problems.append(f"{name}: {exc}")
                continue
            if not sheet.in_bounds(col, row):
                problems.append(f"{name}!{addr}: outside declared sheet bounds")
                continue
            content = cdoc.get("content", "") if isinstance(cdoc, dict) else str(cdoc)
            try:
                cell = Cell.from_content(content)
            except ParseError as exc:
                problems.append(f"{name}!{addr}: unparseable formula: {exc}")
                continue
            if cell.kind is not CellKind.BLANK:
                sheet.cells[(col, row)] = cell
        sheets.append(sheet)
    if not sheets:
        problems.append("workbook has no sheets")

    wb = Workbook(title, sheets, [], version)
    for i, seed_doc in enumerate(doc.get("seeds", [])):
        label = f"seed {i}"
        try:
            sheet_name = seed_doc["sheet"]
            col, row = _parse_addr(seed_doc["addr"])
            target = CellRef(sheet_name, col, row)
            category = SeedCategory(seed_doc["category"])
            faulty = seed_doc["faulty"]
            accept = tuple(
                AcceptRule(
                    exact=rule.get("exact"),
                    value=rule.get("value"),
                    rel_tol=rule.get("rel_tol", 1e-9),
                )
                for rule in seed_doc["accept"]
            )
            seed = ErrorSeed(target, category, faulty, accept)
        except (KeyError, ValueError, ParseError) as exc:
            problems.append(f"{label}: {exc}")
            continue
        sheet = wb.sheet(seed.target.sheet)
        if sheet is None:
            problems.append(f"{label}: unknown sheet {seed.target.sheet!r}")
            continue
        if not sheet.in_bounds(seed.target.col, seed.target.row):
            problems.append(f"{label}: target {seed.target} outside sheet bounds")
            continue
        cell = sheet.cell(seed.target.col, seed.target.row)
        current = cell.content if cell else ""
        if current != seed.faulty_content:
            problems.append(
                f"{label}: faulty content {seed.faulty_content!r} does not match "
                f"workbook content {current!r} at {seed.target}"
            )
            continue
        wb.seeds.append(seed)

    _validate_references(wb, problems)
    if problems:
        raise LoadError(problems)
    return wb


def load_workbook(path_or_stream) -> Workbook:
    """Load a workbook document from a path or text stream."""
    if hasattr(path_or_stream, "read"):
        doc = json.load(path_or_stream)
    else:
        with open(path_or_stream, encoding="utf-8") as fh:
            doc = json.load(fh)
    return load_workbook_document(doc)


def save_workbook(wb: Workbook, path_or_stream) -> None:
    doc = wb.to_document()
    if hasattr(path_or_stream, "write"):
        json.dump(doc, path_or_stream, indent=2)
    else:
        with open(path_or_stream, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)


def sheet_from_csv(name: str, stream_or_text, cols: int = DEFAULT_COLS, rows: int = DEFAULT_ROWS) -> Sheet:
    """Fixture import: ``addr,content`` rows for one sheet."""
    if isinstance(stream_or_text, str):
        stream_or_text = io.StringIO(stream_or_text)
    sheet = Sheet(name, cols=cols, rows=rows)
    for rowno, record in enumerate(csv.reader(stream_or_text), start=1):
        if not record or (len(record) == 1 and not record[0].strip()):
            continue
        if len(record) < 2:
            raise LoadError([f"{name} csv row {rowno}: need addr,content"])
        col, row = _parse_addr(record[0].strip())
        cell = Cell.from_content(record[1])
        if cell.kind is not CellKind.BLANK:
            sheet.cells[(col, row)] = cell
    return sheet
