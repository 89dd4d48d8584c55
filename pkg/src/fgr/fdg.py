"""FDG Representational Level structures: parse, validate, format, tree.

Each layer rule has the shape::

    layer : '(' OPERATOR? L X ( ':' head '(' L X ')' )* ')' FUNCTION? ;
    head  : LEMMA? ( '[' ( soaffairs | property | individual | location | time )* ']' )? ;

with ``L`` the layer letter and ``X`` a digit string.  Content (``p``) is
only reachable as an entry point.  Indices may also be written in the
subscript markup ``p_{1}`` produced by :func:`format_rl`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    ConfigError,
    DuplicateKey,
    MalformedLine,
    RlSyntaxError,
    SourceSpan,
    UnknownRlFunction,
    UnknownRlOperator,
)

# layer letter -> rule name; data-driven so further levels can be added as tables
LAYER_RULES = {
    "p": "content",
    "e": "soaffairs",
    "f": "property",
    "x": "individual",
    "l": "location",
    "t": "time",
}
HEAD_LAYERS = ("e", "f", "x", "l", "t")
ENTRY_LAYERS = tuple(LAYER_RULES)

STYLES = ("compact", "indented", "subscript")
INDENT = "    "


@dataclass(frozen=True)
class TokenSets:
    functions: tuple[str, ...] = ("Ag", "Pat", "Inst")
    operators: tuple[str, ...] = ("Past", "Pres")

    def __post_init__(self) -> None:
        if not self.functions or not self.operators:
            raise ConfigError("token sets must be nonempty")


def load_token_sets(text: str) -> TokenSets:
    """Read ``functions:`` / ``operators:`` sections, one token per line."""
    sections: dict[str, list[str]] = {}
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("functions:", "operators:"):
            current = sections.setdefault(line[:-1], [])
            continue
        if current is None or not re.fullmatch(r"[A-Z][A-Za-z]*", line):
            raise MalformedLine(line_no, raw)
        if line in current:
            raise DuplicateKey(line)
        current.append(line)
    defaults = TokenSets()
    return TokenSets(tuple(sections.get("functions", defaults.functions)),
                     tuple(sections.get("operators", defaults.operators)))


@dataclass(frozen=True)
class RlRestrictor:
    """One ``':' head '(' L X ')'`` repetition of a layer rule."""

    lemma: str | None
    children: tuple["RlNode", ...] | None  # None when the head has no bracket
    ref_index: int
    ref_span: SourceSpan | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RlNode:
    layer: str
    index: int
    operator: str | None = None
    restrictors: tuple[RlRestrictor, ...] = ()
    function: str | None = None
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    @property
    def rule(self) -> str:
        return LAYER_RULES[self.layer]

    @property
    def head(self) -> str | None:
        return self.restrictors[0].lemma if self.restrictors else None

    @property
    def children(self) -> tuple["RlNode", ...]:
        return tuple(c for r in self.restrictors for c in (r.children or ()))

    @property
    def restrictor_refs(self) -> list[tuple[str, int]]:
        return [(self.layer, r.ref_index) for r in self.restrictors]


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # error | warning
    code: str
    message: str
    span: SourceSpan | None = None

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        return f"{where}{self.severity}: {self.code}: {self.message}"


# -- lexer ---------------------------------------------------------------------

_LEX = re.compile(r"""
    (?P<ws>\s+)
  | (?P<punct>[()\[\]:])
  | (?P<sub>_\{[0-9]+\})
  | (?P<index>[0-9]+)
  | (?P<word>[a-z]+)
  | (?P<cap>[A-Z][A-Za-z]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # punct | index | word | cap
    text: str
    span: SourceSpan
    offset: int

    @property
    def value(self) -> str:
        if self.kind == "index" and self.text.startswith("_"):
            return self.text[2:-1]
        return self.text


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _LEX.match(text, pos)
        span = SourceSpan(line, pos - line_start + 1, max(1, (m.end() - pos) if m else 1))
        if m is None:
            raise RlSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line += 1
                    line_start = i + 1
        else:
            toks.append(_Tok("index" if kind == "sub" else kind, m.group(), span, pos))
        pos = m.end()
    return toks


# -- parser --------------------------------------------------------------------

class _RlParser:
    def __init__(self, text: str, sets: TokenSets):
        self.text = text
        self.toks = _lex(text)
        self.sets = sets
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def fail(self, expected: Iterable[str]) -> RlSyntaxError:
        expected = frozenset(expected)
        want = " or ".join(sorted(expected))
        tok = self.peek()
        if tok is None:
            end = max(len(self.text.rstrip()) - 1, 0)
            line = self.text.count("\n", 0, end) + 1
            col = end - (self.text.rfind("\n", 0, end) + 1) + 1
            return RlSyntaxError(f"expected {want}, got end of input", SourceSpan(line, col), expected)
        return RlSyntaxError(f"expected {want}, got {tok.text!r}", tok.span, expected)

    def punct(self, ch: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.text != ch:
            raise self.fail({repr(ch)})
        self.i += 1
        return tok

    def layer_letter(self, allowed: Iterable[str]) -> str:
        tok = self.peek()
        allowed = tuple(allowed)
        if tok is None or tok.kind != "word" or tok.text not in allowed:
            raise self.fail({repr(a) for a in allowed})
        self.i += 1
        return tok.text

    def index(self) -> tuple[int, SourceSpan]:
        tok = self.peek()
        if tok is None or tok.kind != "index":
            raise self.fail({"index"})
        self.i += 1
        return int(tok.value), tok.span

    def node(self, allowed: Iterable[str]) -> RlNode:
        open_tok = self.punct("(")
        operator = None
        tok = self.peek()
        if tok is not None and tok.kind == "cap":
            if tok.text not in self.sets.operators:
                raise UnknownRlOperator(tok.text, tok.span)
            operator = tok.text
            self.i += 1
        layer = self.layer_letter(allowed)
        index, _ = self.index()
        restrictors = []
        while (tok := self.peek()) is not None and tok.text == ":":
            self.i += 1
            restrictors.append(self.restrictor(layer))
        close_tok = self.punct(")")
        function = None
        tok = self.peek()
        if tok is not None and tok.kind == "cap":
            if tok.text not in self.sets.functions:
                raise UnknownRlFunction(tok.text, tok.span)
            function = tok.text
            self.i += 1
        length = close_tok.offset - open_tok.offset + 1
        span = SourceSpan(open_tok.span.line, open_tok.span.column, length)
        return RlNode(layer, index, operator, tuple(restrictors), function, span)

    def restrictor(self, layer: str) -> RlRestrictor:
        lemma = None
        tok = self.peek()
        # single layer letters are grammar literals, never lemmas
        if tok is not None and tok.kind == "word" and tok.text not in LAYER_RULES:
            lemma = tok.text
            self.i += 1
        children = None
        if (tok := self.peek()) is not None and tok.text == "[":
            self.i += 1
            kids = []
            while (tok := self.peek()) is not None and tok.text == "(":
                kids.append(self.node(HEAD_LAYERS))
            if tok is None or tok.text != "]":
                raise self.fail({"'('", "']'"})
            self.i += 1
            children = tuple(kids)
        tok = self.peek()
        if tok is None or tok.text != "(":
            expected = {"'('"}
            if lemma is None and children is None:
                expected |= {"lemma", "'['"}
            elif children is None:
                expected |= {"'['"}
            raise self.fail(expected)
        self.i += 1
        self.layer_letter((layer,))
        ref_index, _ = self.index()
        close = self.punct(")")
        ref_span = SourceSpan(tok.span.line, tok.span.column, close.offset - tok.offset + 1)
        return RlRestrictor(lemma, children, ref_index, ref_span)


def parse_rl(text: str, sets: TokenSets | None = None) -> RlNode:
    parser = _RlParser(text, sets or TokenSets())
    node = parser.node(ENTRY_LAYERS)
    if parser.peek() is not None:
        raise parser.fail({"end of input"})
    return node


# -- validation ----------------------------------------------------------------

def validate_rl(node: RlNode) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    _validate(node, out)
    return out


def _validate(node: RlNode, out: list[Diagnostic]) -> None:
    for r in node.restrictors:
        if r.ref_index != node.index:
            out.append(Diagnostic(
                "error", "CorefMismatch",
                f"({node.layer}{r.ref_index}) closes {node.layer}{node.index}",
                r.ref_span))
        kids = r.children or ()
        seen: dict[tuple[str, int], RlNode] = {}
        for child in kids:
            key = (child.layer, child.index)
            first = seen.setdefault(key, child)
            if first is not child and first.head != child.head:
                out.append(Diagnostic(
                    "warning", "DuplicateDefinition",
                    f"{child.layer}{child.index} is defined twice with heads "
                    f"{first.head!r} and {child.head!r}",
                    child.span))
        for child in kids:
            _validate(child, out)


# -- formatting ----------------------------------------------------------------

def _idx(layer: str, index: int, subscript: bool) -> str:
    return f"{layer}_{{{index}}}" if subscript else f"{layer}{index}"


def _render(node: RlNode, depth: int, indented: bool, subscript: bool) -> str:
    out = "(" + (node.operator + " " if node.operator else "") + _idx(node.layer, node.index, subscript)
    for r in node.restrictors:
        out += ":" + (r.lemma or "")
        if r.children is not None:
            if not r.children:
                out += "[]"
            elif indented:
                inner = INDENT * (depth + 1)
                out += "[\n" + "".join(
                    inner + _render(c, depth + 1, indented, subscript) + "\n" for c in r.children
                ) + INDENT * depth + "]"
            else:
                out += "[" + " ".join(_render(c, depth, indented, subscript) for c in r.children) + "]"
        out += "(" + _idx(node.layer, r.ref_index, subscript) + ")"
    return out + ")" + (node.function or "")


def format_rl(node: RlNode, style: str = "compact", indented: bool | None = None) -> str:
    """Render as ``compact``, ``indented`` or ``subscript`` text.

    ``indented`` only matters for the subscript style, which is compact
    unless asked otherwise.
    """
    if style == "subscript-markup":
        style = "subscript"
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}; expected one of {', '.join(STYLES)}")
    if indented is None:
        indented = style == "indented"
    return _render(node, 0, indented, style == "subscript")


def rl_tree(node: RlNode) -> str:
    """Derivation tree, one rule per line with the tokens it consumed."""
    lines: list[str] = []
    _tree(node, 0, lines)
    return "\n".join(lines) + "\n"


def _tree(node: RlNode, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    own = ([node.operator] if node.operator else []) + [node.layer, str(node.index)]
    for r in node.restrictors:
        own += [node.layer, str(r.ref_index)]
    if node.function:
        own.append(node.function)
    lines.append(f"{pad}{node.rule}: {' '.join(own)}")
    for r in node.restrictors:
        lines.append(f"{pad}  head" + (f": {r.lemma}" if r.lemma else ""))
        for child in r.children or ():
            _tree(child, depth + 2, lines)
