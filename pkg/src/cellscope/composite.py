"""Heuristic inference of composite actions from an event stream.

Recorders emit only primitive events, so drag-fill, copy/paste, undo and
redo must be reconstructed after the fact.  Undo/redo detection is a
content-restoration heuristic (there is no explicit undo event) and is
therefore approximate.  Priority on a contested event index:
Undo/Redo > CopyPaste > DragFill.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import events as ev
from . import formula
from .errors import ParseError
from .refs import CellRef, RangeRef


class CompositeKind(enum.Enum):
    DRAG_FILL = "drag_fill"
    COPY_PASTE = "copy_paste"
    UNDO = "undo"
    REDO = "redo"


@dataclass(frozen=True)
class CompositeAction:
    kind: CompositeKind
    span: RangeRef | tuple[CellRef, CellRef]
    source_indices: tuple[int, ...]


def _try_ast(content: str):
    if not content.startswith("="):
        return None
    try:
        return formula.parse_formula(content)
    except ParseError:
        return None


def infer_composite_actions(session: ev.Session) -> list[CompositeAction]:
    actions: list[CompositeAction] = []
    claimed: set[int] = set()

    # per-cell content history within the session (we cannot see pre-session
    # content, so undo needs at least two prior edits of the cell)
    history: dict[tuple[str, int, int], list[str]] = {}
    undone: dict[tuple[str, int, int], set[str]] = {}
    committed_formulas: list[tuple[int, CellRef, formula.AstNode]] = []

    for i, e in enumerate(session.events):
        if isinstance(e, ev.Edit):
            key = e.cell.coord
            past = history.setdefault(key, [])

            # redo first: re-entering just-undone content also matches the
            # undo pattern, and the redo reading is the right one then
            if e.content in undone.get(key, ()):
                actions.append(CompositeAction(CompositeKind.REDO, (e.cell, e.cell), (i,)))
                claimed.add(i)
                undone[key].discard(e.content)
            elif len(past) >= 2 and e.content == past[-2]:
                actions.append(CompositeAction(CompositeKind.UNDO, (e.cell, e.cell), (i,)))
                claimed.add(i)
                undone.setdefault(key, set()).add(past[-1])
            else:
                ast = _try_ast(e.content)
                if ast is not None:
                    match = _find_paste_source(session, i, e.cell, ast, committed_formulas)
                    if match is not None:
                        src_index, src_cell = match
                        actions.append(
                            CompositeAction(
                                CompositeKind.COPY_PASTE, (src_cell, e.cell), (src_index, i)
                            )
                        )
                        claimed.add(i)

            past.append(e.content)
            ast = _try_ast(e.content)
            if ast is not None:
                committed_formulas.append((i, e.cell, ast))

        elif isinstance(e, ev.EditRange):
            if i in claimed:
                continue
            anchor_is_formula = _try_ast(e.content) is not None
            if anchor_is_formula or len(e.range) >= 2:
                actions.append(CompositeAction(CompositeKind.DRAG_FILL, e.range, (i,)))
                claimed.add(i)

    actions.sort(key=lambda a: a.source_indices[-1])
    return actions


def _find_paste_source(session, edit_index, dst, dst_ast, committed):
    """A paste is a translated copy of an earlier formula whose source cell
    was selected within the two events preceding the paste."""
    recent = session.events[max(0, edit_index - 2) : edit_index]
    selected = {e.cell.coord for e in recent if isinstance(e, ev.Select)}
    for src_index, src_cell, src_ast in reversed(committed):
        if src_cell.coord == dst.coord or src_cell.coord not in selected:
            continue
        if src_cell.sheet != dst.sheet:
            continue
        try:
            shifted = formula.translate_formula(
                src_ast, dst.col - src_cell.col, dst.row - src_cell.row
            )
        except formula.OutOfGridError:
            continue
        if shifted == dst_ast:
            return src_index, src_cell
    return None
