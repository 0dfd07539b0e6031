"""Recursive formula evaluation with memoization and cycle detection.

Value space: float | str | bool | None (blank) | EvalError.  Compatibility
notes: a blank referenced numerically evaluates as 0; label text inside a
SUM range is skipped but yields a type error elsewhere in arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import formula
from .refs import CellRef
from .workbook import Cell, CellKind, Workbook, parse_number


@dataclass(frozen=True)
class EvalError:
    code: str  # CYCLE | DIV0 | TYPE | REF

    def __str__(self):
        return f"#{self.code}!"


CYCLE = EvalError("CYCLE")
DIV0 = EvalError("DIV0")
TYPE_ERR = EvalError("TYPE")
REF_ERR = EvalError("REF")

Value = float | str | bool | None | EvalError


class Evaluator:
    """Evaluates cells of one workbook, memoizing per (sheet, col, row)."""

    def __init__(self, workbook: Workbook):
        self.workbook = workbook
        self.memo: dict[tuple[str, int, int], Value] = {}
        self.in_progress: set[tuple[str, int, int]] = set()

    def value(self, ref: CellRef) -> Value:
        key = (ref.sheet, ref.col, ref.row)
        if key in self.memo:
            return self.memo[key]
        if key in self.in_progress:
            return CYCLE
        sheet = self.workbook.sheet(ref.sheet)
        if sheet is None or not sheet.in_bounds(ref.col, ref.row):
            return REF_ERR
        cell = sheet.cell(ref.col, ref.row)
        if cell is None or cell.kind is CellKind.BLANK:
            result: Value = None
        elif cell.kind is CellKind.DATA:
            result = parse_number(cell.content) if _is_numeric(cell) else cell.content
        elif cell.kind is CellKind.LABEL:
            result = cell.content
        else:
            self.in_progress.add(key)
            try:
                result = self._eval_node(cell.ast, ref.sheet)
            finally:
                self.in_progress.discard(key)
        self.memo[key] = result
        return result

    # -- node evaluation ---------------------------------------------------

    def _eval_node(self, node: formula.AstNode, sheet: str) -> Value:
        if isinstance(node, formula.Num):
            return node.value
        if isinstance(node, formula.Text):
            return node.value
        if isinstance(node, formula.Ref):
            return self.value(CellRef(node.sheet or sheet, node.col, node.row))
        if isinstance(node, formula.RangeNode):
            # a bare range outside SUM has no scalar meaning
            return TYPE_ERR
        if isinstance(node, formula.Neg):
            v = _as_number(self._eval_node(node.operand, sheet))
            return v if isinstance(v, EvalError) else -v
        if isinstance(node, formula.BinOp):
            return self._eval_binop(node, sheet)
        if isinstance(node, formula.Call):
            if node.name == "SUM":
                return self._eval_sum(node, sheet)
            return self._eval_if(node, sheet)
        raise TypeError(f"not an AST node: {node!r}")

    def _eval_binop(self, node: formula.BinOp, sheet: str) -> Value:
        left = self._eval_node(node.left, sheet)
        if isinstance(left, EvalError):
            return left
        right = self._eval_node(node.right, sheet)
        if isinstance(right, EvalError):
            return right
        op = node.op
        if op in formula.COMPARISON_OPS:
            return _compare(op, left, right)
        a, b = _as_number(left), _as_number(right)
        if isinstance(a, EvalError):
            return a
        if isinstance(b, EvalError):
            return b
        if op == "+":
            return a + b
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        if b == 0:
            return DIV0
        return a / b

    def _eval_sum(self, node: formula.Call, sheet: str) -> Value:
        total = 0.0
        for arg in node.args:
            if isinstance(arg, formula.RangeNode):
                for ref in _range_cells(arg, sheet):
                    v = self.value(ref)
                    if isinstance(v, EvalError):
                        return v
                    if isinstance(v, float):
                        total += v
                    # text, booleans and blanks in a range are skipped
            else:
                v = _as_number(self._eval_node(arg, sheet))
                if isinstance(v, EvalError):
                    return v
                total += v
        return total

    def _eval_if(self, node: formula.Call, sheet: str) -> Value:
        cond = self._eval_node(node.args[0], sheet)
        if isinstance(cond, EvalError):
            return cond
        if isinstance(cond, str):
            return TYPE_ERR
        truthy = bool(cond) if isinstance(cond, bool) else bool(_zero_if_blank(cond))
        return self._eval_node(node.args[1] if truthy else node.args[2], sheet)


def _is_numeric(cell: Cell) -> bool:
    from .workbook import is_number_content

    return is_number_content(cell.content)


def _zero_if_blank(v: Value) -> Value:
    return 0.0 if v is None else v


def _as_number(v: Value) -> float | EvalError:
    if isinstance(v, EvalError):
        return v
    if v is None:
        return 0.0
    if isinstance(v, bool):
        return 1.0 if v else 0.0
    if isinstance(v, float):
        return v
    return TYPE_ERR


def _compare(op: str, left: Value, right: Value) -> Value:
    left = _zero_if_blank(left)
    right = _zero_if_blank(right)
    if isinstance(left, bool) or isinstance(right, bool):
        left, right = _as_number(left), _as_number(right)
        if isinstance(left, EvalError) or isinstance(right, EvalError):
            return TYPE_ERR
    if isinstance(left, str) != isinstance(right, str):
        return TYPE_ERR
    if op == "=":
        return left == right
    if op == "<>":
        return left != right
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    return left >= right


def _range_cells(node: formula.RangeNode, sheet: str):
    name = node.sheet or sheet
    c1, c2 = sorted((node.start.col, node.end.col))
    r1, r2 = sorted((node.start.row, node.end.row))
    for row in range(r1, r2 + 1):
        for col in range(c1, c2 + 1):
            yield CellRef(name, col, row)


def evaluate(workbook: Workbook, ref: CellRef) -> Value:
    """Evaluate one cell; see Evaluator for caching across many cells."""
    return Evaluator(workbook).value(ref)
