"""Lexical entries stored as fact records.

Record shapes (one per logical line, ``%`` starts a comment)::

    verb(give, action, [gave, given], [[agent, animate, X1], [goal, any, X2]], Sat).
    noun(woman, women, [human, animate], common).
    adj(old).

Frame variables (``X1``) and the trailing satellite variable are accepted
and dropped; slot position carries the same information.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import (
    DuplicateLemma,
    MalformedRecord,
    UnknownAktionsart,
    UnknownLexeme,
)

AKTIONSARTEN = ("state", "action")

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<atom>[a-z][A-Za-z0-9_]*)
  | (?P<quoted>'[^'\n]*')
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Compound:
    functor: str
    args: tuple


@dataclass(frozen=True)
class VerbEntry:
    lemma: str
    aktionsart: str
    past: str | None = None  # None means regular
    participle: str | None = None
    frame: tuple[tuple[str, str], ...] = ()

    @property
    def roles(self) -> tuple[str, ...]:
        return tuple(role for role, _ in self.frame)


@dataclass(frozen=True)
class NounEntry:
    lemma: str
    plural: str | None = None  # None means regular
    features: frozenset[str] = frozenset()
    proper: bool = False


@dataclass(frozen=True)
class AdjEntry:
    lemma: str


@dataclass(frozen=True)
class Lexicon:
    verbs: Mapping[str, VerbEntry] = field(default_factory=dict)
    nouns: Mapping[str, NounEntry] = field(default_factory=dict)
    adjectives: Mapping[str, AdjEntry] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("verbs", "nouns", "adjectives"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    def verb(self, lemma: str) -> VerbEntry:
        try:
            return self.verbs[lemma]
        except KeyError:
            raise UnknownLexeme(lemma, "V") from None

    def noun(self, lemma: str) -> NounEntry:
        try:
            return self.nouns[lemma]
        except KeyError:
            raise UnknownLexeme(lemma, "N") from None

    def adjective(self, lemma: str) -> AdjEntry:
        try:
            return self.adjectives[lemma]
        except KeyError:
            raise UnknownLexeme(lemma, "A") from None


# -- record reader -------------------------------------------------------------

class _Reader:
    def __init__(self, text: str):
        self.toks: list[tuple[str, str, int]] = []
        line = 1
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                raise MalformedRecord(line, f"unexpected character {text[pos]!r}")
            kind = m.lastgroup
            if kind not in ("ws", "comment"):
                self.toks.append((kind, m.group(), line))
            line += m.group().count("\n")
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, value: str | None = None, line: int = 0):
        tok = self.peek()
        if tok is None or (value is not None and tok[1] != value):
            raise MalformedRecord(tok[2] if tok else line,
                                  f"expected {value!r}" if value else "unexpected end")
        self.i += 1
        return tok

    def term(self, line: int):
        kind, text, tline = self.take(line=line)
        if kind == "var":
            return Var(text)
        if kind == "quoted":
            return text[1:-1]
        if kind == "atom":
            nxt = self.peek()
            if nxt is not None and nxt[1] == "(":
                self.i += 1
                return Compound(text, tuple(self._items(")", tline)))
            return text
        if text == "[":
            return list(self._items("]", tline))
        raise MalformedRecord(tline, f"unexpected {text!r}")

    def _items(self, close: str, line: int) -> list:
        items: list = []
        if (tok := self.peek()) is not None and tok[1] == close:
            self.i += 1
            return items
        while True:
            items.append(self.term(line))
            kind, text, tline = self.take(line=line)
            if text == close:
                return items
            if text != ",":
                raise MalformedRecord(tline, f"expected ',' or {close!r}")

    def records(self):
        while (tok := self.peek()) is not None:
            line = tok[2]
            rec = self.term(line)
            self.take(".", line)
            yield line, rec


def _atom(value, line: int, what: str) -> str:
    if not isinstance(value, str) or not value:
        raise MalformedRecord(line, f"{what} must be an atom")
    return value


def _lemma(value, line: int) -> str:
    lemma = _atom(value, line, "lemma")
    if not re.fullmatch(r"[a-z]+", lemma):
        raise MalformedRecord(line, f"lemma must be lowercase: {lemma!r}")
    return lemma


def _form(value, line: int) -> str | None:
    form = _atom(value, line, "word form")
    return None if form == "regular" else form


def _verb(args: tuple, line: int) -> VerbEntry:
    if len(args) == 5:
        if not isinstance(args[4], Var):
            raise MalformedRecord(line, "satellite slot must be a variable")
        args = args[:4]
    if len(args) != 4:
        raise MalformedRecord(line, "verb/4 or verb/5 expected")
    lemma = _lemma(args[0], line)
    aktionsart = _atom(args[1], line, "aktionsart")
    if aktionsart not in AKTIONSARTEN:
        raise UnknownAktionsart(aktionsart)
    forms = args[2]
    if not isinstance(forms, list) or len(forms) != 2:
        raise MalformedRecord(line, "principal parts must be [past, participle]")
    frame_raw = args[3]
    if not isinstance(frame_raw, list) or not 1 <= len(frame_raw) <= 3:
        raise MalformedRecord(line, "argument frame must have 1 to 3 slots")
    frame = []
    for slot in frame_raw:
        if not isinstance(slot, list) or len(slot) not in (2, 3):
            raise MalformedRecord(line, "frame slot must be [role, restriction] or [role, restriction, Var]")
        if len(slot) == 3 and not isinstance(slot[2], Var):
            raise MalformedRecord(line, "third frame slot element must be a variable")
        frame.append((_atom(slot[0], line, "role"), _atom(slot[1], line, "restriction")))
    roles = [r for r, _ in frame]
    if len(set(roles)) != len(roles):
        raise MalformedRecord(line, "duplicate role in frame")
    return VerbEntry(lemma, aktionsart, _form(forms[0], line), _form(forms[1], line), tuple(frame))


def _noun(args: tuple, line: int) -> NounEntry:
    if len(args) != 4:
        raise MalformedRecord(line, "noun/4 expected")
    lemma = _lemma(args[0], line)
    if not isinstance(args[2], list):
        raise MalformedRecord(line, "features must be a list")
    features = frozenset(_atom(f, line, "feature") for f in args[2])
    kind = _atom(args[3], line, "noun kind")
    if kind not in ("proper", "common"):
        raise MalformedRecord(line, "noun kind must be proper or common")
    plural = _form(args[1], line)
    if kind == "proper" and plural is not None:
        raise MalformedRecord(line, "proper nouns take a regular plural slot")
    return NounEntry(lemma, plural, features, kind == "proper")


def load_lexicon(text: str) -> Lexicon:
    verbs: dict[str, VerbEntry] = {}
    nouns: dict[str, NounEntry] = {}
    adjectives: dict[str, AdjEntry] = {}
    for line, rec in _Reader(text).records():
        if not isinstance(rec, Compound):
            raise MalformedRecord(line, "record must be a compound term")
        if rec.functor == "verb":
            entry, table, cat = _verb(rec.args, line), verbs, "verb"
        elif rec.functor == "noun":
            entry, table, cat = _noun(rec.args, line), nouns, "noun"
        elif rec.functor == "adj":
            if len(rec.args) != 1:
                raise MalformedRecord(line, "adj/1 expected")
            entry, table, cat = AdjEntry(_lemma(rec.args[0], line)), adjectives, "adj"
        else:
            raise MalformedRecord(line, f"unknown record type {rec.functor!r}")
        if entry.lemma in table:
            raise DuplicateLemma(cat, entry.lemma)
        table[entry.lemma] = entry
    return Lexicon(verbs, nouns, adjectives)


def dump_lexicon(lex: Lexicon) -> str:
    """Canonical record text; ``load_lexicon(dump_lexicon(x)) == x``."""
    lines = []
    for v in lex.verbs.values():
        frame = ", ".join(f"[{role}, {restr}]" for role, restr in v.frame)
        lines.append(f"verb({v.lemma}, {v.aktionsart}, "
                     f"[{v.past or 'regular'}, {v.participle or 'regular'}], [{frame}]).")
    for n in lex.nouns.values():
        feats = ", ".join(sorted(n.features))
        kind = "proper" if n.proper else "common"
        lines.append(f"noun({n.lemma}, {n.plural or 'regular'}, [{feats}], {kind}).")
    for a in lex.adjectives.values():
        lines.append(f"adj({a.lemma}).")
    return "".join(line + "\n" for line in lines)


# -- morphology ----------------------------------------------------------------

_VOWELS = set("aeiou")


def _consonant_y(word: str) -> bool:
    return len(word) >= 2 and word.endswith("y") and word[-2] not in _VOWELS


def regular_past(lemma: str) -> str:
    if lemma.endswith("e"):
        return lemma + "d"
    if _consonant_y(lemma):
        return lemma[:-1] + "ied"
    return lemma + "ed"


def regular_plural(word: str) -> str:
    """Also serves as the third-person singular present suffix rule."""
    if word.endswith(("s", "x", "z", "ch", "sh")):
        return word + "es"
    if _consonant_y(word):
        return word[:-1] + "ies"
    return word + "s"


def present_participle(lemma: str) -> str:
    if lemma.endswith("ie"):
        return lemma[:-2] + "ying"
    if lemma.endswith("e") and not lemma.endswith("ee") and len(lemma) > 2:
        return lemma[:-1] + "ing"
    return lemma + "ing"


def verb_forms(lex: Lexicon, lemma: str) -> tuple[str, str]:
    entry = lex.verb(lemma)
    past = entry.past or regular_past(lemma)
    participle = entry.participle or regular_past(lemma)
    return past, participle


def plural_form(lex: Lexicon, lemma: str) -> str:
    entry = lex.noun(lemma)
    return entry.plural or regular_plural(lemma)
