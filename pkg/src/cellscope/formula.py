"""Formula mini-language: lexer, recursive-descent parser, renderer, translation.

The language covers what appears in the kind of models this toolkit targets:
numbers, strings, cell/range references, unary minus, ``+ - * /``, the six
comparisons, and the functions ``SUM`` and ``IF``.  Anything else is a parse
error rather than a silent skip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CellscopeError, ParseError
from .refs import col_to_letters, letters_to_col

COMPARISON_OPS = ("=", "<>", "<=", ">=", "<", ">")
ADDITIVE_OPS = ("+", "-")
MULTIPLICATIVE_OPS = ("*", "/")

FUNCTIONS = ("SUM", "IF")


# --- AST nodes ------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Text:
    value: str


@dataclass(frozen=True)
class Ref:
    """A cell reference inside a formula; ``sheet`` is None when unqualified."""

    sheet: str | None
    col: int
    row: int
    col_abs: bool = False
    row_abs: bool = False


@dataclass(frozen=True)
class RangeNode:
    sheet: str | None
    start: Ref
    end: Ref


@dataclass(frozen=True)
class Neg:
    operand: "AstNode"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "AstNode"
    right: "AstNode"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


AstNode = Num | Text | Ref | RangeNode | Neg | BinOp | Call


# --- Lexer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>[0-9]+(?:\.[0-9]+)?)
  | (?P<string>"[^"]*")
  | (?P<qsheet>'[^']+'!)
  | (?P<word>[A-Za-z_][A-Za-z0-9_ ]*!|[A-Za-z_$][A-Za-z0-9_$]*)
  | (?P<op><>|<=|>=|[=<>+\-*/(),:])
  | (?P<refstart>\$[A-Za-z])
    """,
    re.VERBOSE,
)

_REF_PART_RE = re.compile(r"^(\$?)([A-Za-z]{1,3})(\$?)([1-9][0-9]*)$")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        # $-prefixed refs don't fit the bare word pattern; stitch them manually
        m = re.match(r"\$?[A-Za-z]{1,3}\$?[1-9][0-9]*", text[i:])
        if m and (text[i] == "$" or re.match(r"[A-Za-z]{1,3}\$[1-9]", text[i:])):
            tokens.append(_Token("word", m.group(0), i))
            i += m.end()
            continue
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", offset=i)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, m.group(0), i))
        i = m.end()
    tokens.append(_Token("eof", "", len(text)))
    return tokens


def _make_ref(sheet: str | None, addr: str, pos: int) -> Ref:
    m = _REF_PART_RE.match(addr)
    if not m:
        raise ParseError(f"malformed reference {addr!r}", offset=pos)
    col_abs, letters, row_abs, row = m.groups()
    return Ref(sheet, letters_to_col(letters), int(row), bool(col_abs), bool(row_abs))


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str) -> None:
        if self.cur.kind != "op" or self.cur.text != op:
            raise ParseError(f"expected {op!r}, found {self.cur.text!r}", offset=self.cur.pos)
        self.advance()

    def at_op(self, *ops: str) -> bool:
        return self.cur.kind == "op" and self.cur.text in ops

    # precedence: comparison < additive < multiplicative < unary < primary
    def expression(self) -> AstNode:
        node = self.additive()
        while self.at_op(*COMPARISON_OPS):
            op = self.advance().text
            node = BinOp(op, node, self.additive())
        return node

    def additive(self) -> AstNode:
        node = self.multiplicative()
        while self.at_op(*ADDITIVE_OPS):
            op = self.advance().text
            node = BinOp(op, node, self.multiplicative())
        return node

    def multiplicative(self) -> AstNode:
        node = self.unary()
        while self.at_op(*MULTIPLICATIVE_OPS):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> AstNode:
        if self.at_op("-"):
            self.advance()
            return Neg(self.unary())
        return self.primary()

    def primary(self) -> AstNode:
        tok = self.cur
        if tok.kind == "number":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "string":
            self.advance()
            return Text(tok.text[1:-1])
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            node = self.expression()
            self.expect_op(")")
            return node
        if tok.kind == "qsheet" or (tok.kind == "word" and tok.text.endswith("!")):
            sheet = tok.text[:-1]
            if tok.kind == "qsheet":
                sheet = sheet[1:-1]
            self.advance()
            return self.reference(sheet, tok.pos)
        if tok.kind == "word":
            upper = tok.text.upper()
            if self.tokens[self.i + 1].kind == "op" and self.tokens[self.i + 1].text == "(":
                if upper not in FUNCTIONS:
                    raise ParseError(f"unknown function {tok.text!r}", offset=tok.pos)
                self.advance()
                return self.call(upper)
            return self.reference(None, tok.pos)
        raise ParseError(f"unexpected token {tok.text!r}", offset=tok.pos)

    def reference(self, sheet: str | None, pos: int) -> AstNode:
        tok = self.cur
        if tok.kind != "word":
            raise ParseError(f"expected cell address, found {tok.text!r}", offset=tok.pos)
        start = _make_ref(sheet, tok.text, tok.pos)
        self.advance()
        if self.at_op(":"):
            self.advance()
            end_tok = self.cur
            if end_tok.kind != "word":
                raise ParseError("expected range end address", offset=end_tok.pos)
            end = _make_ref(None, end_tok.text, end_tok.pos)
            self.advance()
            # the qualifier lives on the RangeNode; endpoints stay bare
            if start.sheet is not None:
                start = Ref(None, start.col, start.row, start.col_abs, start.row_abs)
            return RangeNode(sheet, start, end)
        return start

    def call(self, name: str) -> Call:
        self.expect_op("(")
        args = []
        if not self.at_op(")"):
            args.append(self.expression())
            while self.at_op(","):
                self.advance()
                args.append(self.expression())
        self.expect_op(")")
        if name == "IF" and len(args) != 3:
            raise ParseError(f"IF takes 3 arguments, got {len(args)}")
        if name == "SUM" and not args:
            raise ParseError("SUM needs at least one argument")
        return Call(name, tuple(args))


def parse_formula(text: str) -> AstNode:
    """Parse a formula string beginning with ``=``."""
    if not text.startswith("="):
        raise ParseError("formula must begin with '='", offset=0)
    tokens = _lex(text[1:])
    parser = _Parser(tokens)
    node = parser.expression()
    if parser.cur.kind != "eof":
        raise ParseError(
            f"trailing tokens after formula: {parser.cur.text!r}",
            offset=parser.cur.pos + 1,
        )
    return node


# --- Rendering ------------------------------------------------------------

def _render_ref_part(ref: Ref) -> str:
    return "{}{}{}{}".format(
        "$" if ref.col_abs else "",
        col_to_letters(ref.col),
        "$" if ref.row_abs else "",
        ref.row,
    )


def _render_sheet(sheet: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", sheet):
        return f"{sheet}!"
    return f"'{sheet}'!"


def render_node(node: AstNode) -> str:
    if isinstance(node, Num):
        v = node.value
        return str(int(v)) if v == int(v) else repr(v)
    if isinstance(node, Text):
        return f'"{node.value}"'
    if isinstance(node, Ref):
        prefix = _render_sheet(node.sheet) if node.sheet else ""
        return prefix + _render_ref_part(node)
    if isinstance(node, RangeNode):
        prefix = _render_sheet(node.sheet) if node.sheet else ""
        return f"{prefix}{_render_ref_part(node.start)}:{_render_ref_part(node.end)}"
    if isinstance(node, Neg):
        return f"-{_render_operand(node.operand, Neg)}"
    if isinstance(node, BinOp):
        return "{}{}{}".format(
            _render_operand(node.left, type(node), node.op, left=True),
            node.op,
            _render_operand(node.right, type(node), node.op, left=False),
        )
    if isinstance(node, Call):
        return "{}({})".format(node.name, ",".join(render_node(a) for a in node.args))
    raise TypeError(f"not an AST node: {node!r}")


def _precedence(node: AstNode) -> int:
    if isinstance(node, BinOp):
        if node.op in COMPARISON_OPS:
            return 1
        if node.op in ADDITIVE_OPS:
            return 2
        return 3
    if isinstance(node, Neg):
        return 4
    return 5


def _render_operand(node: AstNode, parent_type, parent_op=None, left=True) -> str:
    text = render_node(node)
    if parent_op is None:
        level = 4
    elif parent_op in COMPARISON_OPS:
        level = 1
    elif parent_op in ADDITIVE_OPS:
        level = 2
    else:
        level = 3
    child = _precedence(node)
    # parenthesize when the child binds looser, or equally on the right
    # of a non-associative position (subtraction, division, comparisons)
    if child < level or (child == level and not left):
        return f"({text})"
    return text


def render_formula(node: AstNode) -> str:
    return "=" + render_node(node)


# --- Translation ----------------------------------------------------------

class OutOfGridError(CellscopeError):
    """A relative reference was shifted before column or row 1."""


def _shift_ref(ref: Ref, delta_col: int, delta_row: int) -> Ref:
    col = ref.col if ref.col_abs else ref.col + delta_col
    row = ref.row if ref.row_abs else ref.row + delta_row
    if col < 1 or row < 1:
        raise OutOfGridError(
            f"shift ({delta_col},{delta_row}) moves {_render_ref_part(ref)} off the grid"
        )
    return Ref(ref.sheet, col, row, ref.col_abs, ref.row_abs)


def translate_formula(node: AstNode, delta_col: int, delta_row: int) -> AstNode:
    """Shift every relative reference axis by the delta; absolute axes stay."""
    if isinstance(node, (Num, Text)):
        return node
    if isinstance(node, Ref):
        return _shift_ref(node, delta_col, delta_row)
    if isinstance(node, RangeNode):
        return RangeNode(
            node.sheet,
            _shift_ref(node.start, delta_col, delta_row),
            _shift_ref(node.end, delta_col, delta_row),
        )
    if isinstance(node, Neg):
        return Neg(translate_formula(node.operand, delta_col, delta_row))
    if isinstance(node, BinOp):
        return BinOp(
            node.op,
            translate_formula(node.left, delta_col, delta_row),
            translate_formula(node.right, delta_col, delta_row),
        )
    if isinstance(node, Call):
        return Call(node.name, tuple(translate_formula(a, delta_col, delta_row) for a in node.args))
    raise TypeError(f"not an AST node: {node!r}")


def formula_refs(node: AstNode):
    """Yield every Ref and RangeNode in the tree."""
    if isinstance(node, (Ref, RangeNode)):
        yield node
    elif isinstance(node, Neg):
        yield from formula_refs(node.operand)
    elif isinstance(node, BinOp):
        yield from formula_refs(node.left)
        yield from formula_refs(node.right)
    elif isinstance(node, Call):
        for a in node.args:
            yield from formula_refs(a)
