"""Tokenizer, parser and canonical serializer for FG underlying structures.

Grammar (whitespace is insignificant)::

    predication := '(' operator* 'e' ':' head ':'? argument* ')'
    head        := lexeme '[V]' | term
    term        := '(' det? num? 'x' ':' lexeme '[N]' (':' (lexeme '[A]' | predication))* ')'
    argument    := term semfunc synfunc?

Operators are matched case-insensitively; semantic and syntactic
functions are written fused after the closing parenthesis of a term
(``AgSubj``, ``Rec``, ``0``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Union

from .errors import (
    EmptyStructure,
    SourceSpan,
    StructureSyntaxError,
    UnknownCharacter,
    UnknownFunction,
    UnterminatedLexeme,
)


class Tense(str, Enum):
    PAST = "Past"
    PRES = "Pres"


class Determinacy(str, Enum):
    DEF = "def"
    INDEF = "indef"
    UNSPECIFIED = "unspecified"


class Number(str, Enum):
    SG = "sg"
    PL = "pl"
    UNSPECIFIED = "unspecified"


class SemFunc(str, Enum):
    AG = "Ag"
    GO = "Go"
    REC = "Rec"
    ZERO = "0"


class SynFunc(str, Enum):
    SUBJ = "Subj"
    OBJ = "Obj"


# surface token -> AST value
DETERMINERS = {"d": Determinacy.DEF, "i": Determinacy.INDEF}
NUMBERS = {"1": Number.SG, "m": Number.PL}
OPERATOR_WORDS = {"past": "Past", "pres": "Pres", "pf": "Pf", "prog": "Prog"}
CATEGORIES = ("N", "V", "A")

_SEM_BY_TOKEN = {f.value: f for f in SemFunc}
_SYN_BY_TOKEN = {f.value: f for f in SynFunc}
_TERM_VAR = re.compile(r"([di])?([1m])?x")
_LEXEME_FORM = re.compile(r"[a-z]+")


@dataclass(frozen=True)
class Lexeme:
    form: str
    category: str  # one of CATEGORIES

    def __post_init__(self) -> None:
        if not _LEXEME_FORM.fullmatch(self.form):
            raise ValueError(f"lexeme form must match [a-z]+: {self.form!r}")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")


@dataclass(frozen=True)
class PredOperators:
    tense: Tense = Tense.PRES
    perfect: bool = False
    progressive: bool = False


@dataclass(frozen=True)
class Term:
    head: Lexeme
    determinacy: Determinacy = Determinacy.UNSPECIFIED
    number: Number = Number.UNSPECIFIED
    modifiers: tuple[Lexeme, ...] = ()
    restrictors: tuple["Predication", ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.head.category != "N":
            raise ValueError("term head must be a noun")
        if any(m.category != "A" for m in self.modifiers):
            raise ValueError("term modifiers must be adjectives")

    @property
    def is_bare(self) -> bool:
        return (self.determinacy is Determinacy.UNSPECIFIED
                and self.number is Number.UNSPECIFIED)


@dataclass(frozen=True)
class Argument:
    term: Term
    semantic: SemFunc
    syntactic: SynFunc | None = None


Head = Union[Lexeme, Term]


@dataclass(frozen=True)
class Predication:
    head: Head
    operators: PredOperators = PredOperators()
    arguments: tuple[Argument, ...] = ()
    span: SourceSpan | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if isinstance(self.head, Lexeme):
            if self.head.category != "V":
                raise ValueError("verbal head must have category V")
        elif len(self.arguments) != 1 or self.arguments[0].semantic is not SemFunc.ZERO:
            raise ValueError("a copular predication takes exactly one zero-function argument")

    @property
    def is_copular(self) -> bool:
        return isinstance(self.head, Term)


# -- tokenizer -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    span: SourceSpan
    offset: int

    def __str__(self) -> str:
        return _describe(self)


def _describe(tok: Token) -> str:
    if tok.kind == "LEXEME":
        return f"'{tok.value}'"
    if tok.kind == "CATEGORY":
        return f"[{tok.value}]"
    if tok.kind == "TERMVAR":
        det, num = tok.value
        return f"{det or ''}{num or ''}x"
    if tok.kind in ("SEMFUNC", "SYNFUNC"):
        return tok.value.value
    return str(tok.value)


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def span_at(self, length: int = 1) -> SourceSpan:
        return SourceSpan(self.line, self.col, max(1, length))

    def advance(self, n: int = 1) -> None:
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n


def _split_function_word(word: str, span: SourceSpan) -> list[tuple[str, Enum, int]]:
    """Split e.g. ``AgSubj`` into its semantic and syntactic parts."""
    sem = None
    for cand in sorted(_SEM_BY_TOKEN, key=len, reverse=True):
        if word.startswith(cand):
            sem = cand
            break
    if sem is None:
        raise UnknownFunction(f"unknown function {word!r}", span)
    rest = word[len(sem):]
    parts = [("SEMFUNC", _SEM_BY_TOKEN[sem], 0)]
    if rest:
        if rest not in _SYN_BY_TOKEN:
            bad = SourceSpan(span.line, span.column + len(sem), len(rest))
            raise UnknownFunction(f"unknown syntactic function {rest!r}", bad)
        parts.append(("SYNFUNC", _SYN_BY_TOKEN[rest], len(sem)))
    return parts


def tokenize(text: str) -> list[Token]:
    cur = _Cursor(text)
    tokens: list[Token] = []
    n = len(text)
    while cur.pos < n:
        ch = text[cur.pos]
        if ch in " \t\r\n":
            cur.advance()
        elif ch in "():":
            tokens.append(Token(ch, ch, cur.span_at(), cur.pos))
            cur.advance()
        elif ch == "'":
            start_span, start = cur.span_at(), cur.pos
            end = cur.pos + 1
            while end < n and text[end] not in "'\n":
                end += 1
            if end >= n or text[end] != "'":
                raise UnterminatedLexeme("unterminated lexeme", start_span)
            form = text[cur.pos + 1:end]
            if not form:
                raise UnknownCharacter("empty lexeme", start_span)
            for i, c in enumerate(form):
                if not ("a" <= c <= "z"):
                    bad = SourceSpan(cur.line, cur.col + 1 + i, 1)
                    raise UnknownCharacter(f"lexeme characters must be a-z, got {c!r}", bad)
            tokens.append(Token("LEXEME", form, cur.span_at(end - start + 1), start))
            cur.advance(end - start + 1)
        elif ch == "[":
            chunk = text[cur.pos:cur.pos + 3]
            if len(chunk) == 3 and chunk[1] in CATEGORIES and chunk[2] == "]":
                tokens.append(Token("CATEGORY", chunk[1], cur.span_at(3), cur.pos))
                cur.advance(3)
            else:
                raise UnknownCharacter("expected a category [N], [V] or [A]", cur.span_at())
        elif ch.isascii() and ch.isalnum():
            end = cur.pos
            while end < n and text[end].isascii() and text[end].isalnum():
                end += 1
            word = text[cur.pos:end]
            span, start = cur.span_at(len(word)), cur.pos
            if word.lower() in OPERATOR_WORDS:
                tokens.append(Token("OPERATOR", OPERATOR_WORDS[word.lower()], span, start))
            elif word == "e":
                tokens.append(Token("PREDVAR", "e", span, start))
            elif m := _TERM_VAR.fullmatch(word):
                tokens.append(Token("TERMVAR", (m.group(1), m.group(2)), span, start))
            elif word[0].isupper() or word[0].isdigit():
                for kind, value, off in _split_function_word(word, span):
                    length = len(value.value)
                    sub = SourceSpan(span.line, span.column + off, length)
                    tokens.append(Token(kind, value, sub, start + off))
            else:
                raise StructureSyntaxError(f"unknown word {word!r}", span)
            cur.advance(end - start)
        else:
            raise UnknownCharacter(f"unexpected character {ch!r}", cur.span_at())
    return tokens


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, tokens: list[Token]):
        self.text = text
        self.tokens = tokens
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def _eof_span(self) -> SourceSpan:
        # point at the last non-whitespace character so the span stays inside the text
        last = self.tokens[-1]
        end = last.offset + last.span.length - 1
        line = self.text.count("\n", 0, end) + 1
        col = end - (self.text.rfind("\n", 0, end) + 1) + 1
        return SourceSpan(line, col, 1)

    def fail(self, expected: set[str]) -> StructureSyntaxError:
        tok = self.peek()
        want = " or ".join(sorted(expected))
        if tok is None:
            return StructureSyntaxError(f"expected {want}, got end of input",
                                        self._eof_span(), frozenset(expected))
        return StructureSyntaxError(f"expected {want}, got {tok}", tok.span, frozenset(expected))

    def expect(self, kind: str, shown: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            raise self.fail({shown or repr(kind)})
        self.i += 1
        return tok

    def _span_from(self, open_tok: Token, close_tok: Token) -> SourceSpan:
        length = close_tok.offset - open_tok.offset + 1
        return SourceSpan(open_tok.span.line, open_tok.span.column, length)

    def predication(self) -> Predication:
        open_tok = self.expect("(", "'('")
        tense: Tense | None = None
        perfect = progressive = False
        while (tok := self.peek()) is not None and tok.kind == "OPERATOR":
            seen = {"Past": tense, "Pres": tense, "Pf": perfect, "Prog": progressive}[tok.value]
            if seen:
                raise StructureSyntaxError(f"repeated or conflicting operator {tok.value}", tok.span)
            if tok.value in ("Past", "Pres"):
                tense = Tense(tok.value)
            elif tok.value == "Pf":
                perfect = True
            else:
                progressive = True
            self.i += 1
        tok = self.peek()
        if tok is None or tok.kind != "PREDVAR":
            raise self.fail({"operator", "'e'"})
        self.i += 1
        self.expect(":", "':'")
        tok = self.peek()
        head: Head
        if tok is not None and tok.kind == "LEXEME":
            head = self.lexeme("V")
        elif tok is not None and tok.kind == "(":
            head = self.term()
        else:
            raise self.fail({"lexeme", "'('"})
        if (tok := self.peek()) is not None and tok.kind == ":":
            self.i += 1
        args = []
        while (tok := self.peek()) is not None and tok.kind == "(":
            args.append(self.argument())
        close_tok = self.expect(")", "')'")
        ops = PredOperators(tense or Tense.PRES, perfect, progressive)
        try:
            return Predication(head, ops, tuple(args), span=self._span_from(open_tok, close_tok))
        except ValueError as exc:
            raise StructureSyntaxError(str(exc), open_tok.span) from None

    def lexeme(self, category: str) -> Lexeme:
        tok = self.expect("LEXEME", "lexeme")
        cat = self.peek()
        if cat is None or cat.kind != "CATEGORY" or cat.value != category:
            raise self.fail({f"[{category}]"})
        self.i += 1
        return Lexeme(tok.value, category)

    def term(self) -> Term:
        open_tok = self.expect("(", "'('")
        tok = self.peek()
        if tok is None or tok.kind != "TERMVAR":
            raise self.fail({"term variable"})
        self.i += 1
        det_tok, num_tok = tok.value
        self.expect(":", "':'")
        head = self.lexeme("N")
        modifiers: list[Lexeme] = []
        restrictors: list[Predication] = []
        while (tok := self.peek()) is not None and tok.kind == ":":
            self.i += 1
            nxt = self.peek()
            if nxt is not None and nxt.kind == "LEXEME":
                modifiers.append(self.lexeme("A"))
            elif nxt is not None and nxt.kind == "(":
                restrictors.append(self.predication())
            else:
                raise self.fail({"lexeme", "'('"})
        close_tok = self.expect(")", "')'")
        return Term(
            head,
            DETERMINERS.get(det_tok, Determinacy.UNSPECIFIED),
            NUMBERS.get(num_tok, Number.UNSPECIFIED),
            tuple(modifiers),
            tuple(restrictors),
            span=self._span_from(open_tok, close_tok),
        )

    def argument(self) -> Argument:
        term = self.term()
        sem = self.expect("SEMFUNC", "semantic function")
        syn = None
        if (tok := self.peek()) is not None and tok.kind == "SYNFUNC":
            self.i += 1
            syn = tok.value
        return Argument(term, sem.value, syn)


def parse_structure(text: str) -> Predication:
    tokens = tokenize(text)
    if not tokens:
        raise EmptyStructure()
    parser = _Parser(text, tokens)
    pred = parser.predication()
    if parser.peek() is not None:
        raise parser.fail({"end of input"})
    return pred


# -- canonical serialization ---------------------------------------------------

_DET_TOKEN = {v: k for k, v in DETERMINERS.items()}
_NUM_TOKEN = {v: k for k, v in NUMBERS.items()}


def operator_tokens(ops: PredOperators) -> list[str]:
    """Surface operator words, canonical order, default tense omitted."""
    out = []
    if ops.tense is Tense.PAST:
        out.append("Past")
    if ops.perfect:
        out.append("Pf")
    if ops.progressive:
        out.append("Prog")
    return out


def serialize_term(term: Term) -> str:
    var = _DET_TOKEN.get(term.determinacy, "") + _NUM_TOKEN.get(term.number, "") + "x"
    parts = [f"{var}:'{term.head.form}'[N]"]
    parts += [f"'{m.form}'[A]" for m in term.modifiers]
    parts += [serialize(p) for p in term.restrictors]
    return "(" + ":".join(parts) + ")"


def serialize(pred: Predication) -> str:
    ops = operator_tokens(pred.operators)
    head = (f"'{pred.head.form}'[V]" if isinstance(pred.head, Lexeme)
            else serialize_term(pred.head))
    out = "(" + "".join(o + " " for o in ops) + "e:" + head
    if pred.arguments:
        args = [serialize_term(a.term) + a.semantic.value + (a.syntactic.value if a.syntactic else "")
                for a in pred.arguments]
        out += ": " + " ".join(args)
    return out + ")"
