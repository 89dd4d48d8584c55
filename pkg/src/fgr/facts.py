"""Compile FG structures into node/prop fact triples.

Surface tokens (``m``, ``Ag``, ``Past``...) reach the fact base only
through a :class:`MappingConfig`, so the notation can change without
touching the realizer's vocabulary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterator, Mapping, Union

from .errors import (
    DuplicateKey,
    MalformedLine,
    MissingRequiredKey,
    RoleMismatch,
    UnmappedToken,
)
from .lexicon import Lexicon
from .notation import (
    DETERMINERS,
    NUMBERS,
    Argument,
    Lexeme,
    Predication,
    SemFunc,
    SynFunc,
    Term,
)

Value = Union[str, tuple[str, ...]]

REQUIRED_KEYS = ("Past", "Pres", "Pf", "Prog", "d", "i", "1", "m",
                 "Ag", "Go", "Rec", "0", "Subj", "Obj")

# values that may appear without passing through the mapping
FIXED_DEFAULTS = frozenset({"pred", "term", "ind", "active", "passive", "decl", "mainclause",
                            "null", "restarg", "true", "false", "singular", "indef"})

PRED_KEYS = ("type", "tense", "perfect", "progressive", "mode", "voice",
             "subnodes", "lex", "nav", "det")
TERM_KEYS = ("type", "role", "relation", "proper", "pragmatic", "num",
             "modifs", "lex", "nav", "det")
# emitted only when they carry information, after the fixed keys
OPTIONAL_TERM_KEYS = ("subnodes", "det_given", "num_given")

CLAUSE = "clause"

_DET_TOKEN = {v: k for k, v in DETERMINERS.items()}
_NUM_TOKEN = {v: k for k, v in NUMBERS.items()}


def parse_properties(text: str) -> dict[str, str]:
    """Read ``key=value`` lines; ``#`` starts a comment line."""
    entries: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise MalformedLine(line_no, raw)
        if key in entries:
            raise DuplicateKey(key)
        entries[key] = value
    return entries


@dataclass(frozen=True)
class MappingConfig:
    entries: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def __getitem__(self, token: str) -> str:
        try:
            return self.entries[token]
        except KeyError:
            raise UnmappedToken(token) from None

    def values(self) -> set[str]:
        return set(self.entries.values())


def load_mapping(text: str) -> MappingConfig:
    entries = parse_properties(text)
    for key in REQUIRED_KEYS:
        if key not in entries:
            raise MissingRequiredKey(key)
    return MappingConfig(entries)


@dataclass(frozen=True)
class FactBase:
    nodes: tuple[tuple[str, int], ...]
    node_props: tuple[tuple[str, str, Value], ...]
    clause_props: tuple[tuple[str, str], ...]

    def triples(self) -> set[tuple[str, str, Value]]:
        return set(self.node_props) | {(CLAUSE, k, v) for k, v in self.clause_props}

    def props(self, node: str) -> dict[str, Value]:
        if node == CLAUSE:
            return dict(self.clause_props)
        return {k: v for n, k, v in self.node_props if n == node}

    @property
    def root(self) -> str:
        return self.nodes[0][0]

    def level(self, node: str) -> int:
        return dict(self.nodes)[node]


def query(fb: FactBase, node: str, key: str) -> Value | None:
    for k, v in (fb.clause_props if node == CLAUSE else ()):
        if k == key:
            return v
    for n, k, v in fb.node_props:
        if n == node and k == key:
            return v
    return None


class _Compiler:
    def __init__(self, mapping: MappingConfig, lexicon: Lexicon):
        self.mapping = mapping
        self.lexicon = lexicon
        self.nodes: list[tuple[str, int]] = []
        self.props: dict[str, list[tuple[str, Value]]] = {}

    def new_node(self, level: int) -> str:
        node = f"x{len(self.nodes) + 1}"
        self.nodes.append((node, level))
        self.props[node] = []
        return node

    def predication(self, pred: Predication, level: int) -> str:
        node = self.new_node(level)
        m = self.mapping
        ops = pred.operators
        if isinstance(pred.head, Lexeme):
            verb = self.lexicon.verb(pred.head.form)
            for arg in pred.arguments:
                role = m[arg.semantic.value]
                if role not in verb.roles:
                    raise RoleMismatch(verb.lemma, role)
            lex, nav = pred.head.form, ("V",)
            passive = any(a.syntactic is SynFunc.SUBJ and a.semantic is not SemFunc.AG
                          for a in pred.arguments)
            subnodes = [self.argument(a, level + 1) for a in pred.arguments]
        else:
            self.lexicon.noun(pred.head.head.form)
            lex, nav = pred.head.head.form, ("N",)
            passive = False
            subnodes = [self.term(pred.head, level + 1, role="null", relation="null")]
            subnodes += [self.argument(a, level + 1) for a in pred.arguments]
        self.props[node] = [
            ("type", "pred"),
            ("tense", m[ops.tense.value]),
            (m["Pf"], "true" if ops.perfect else "false"),
            (m["Prog"], "true" if ops.progressive else "false"),
            ("mode", "ind"),
            ("voice", "passive" if passive else "active"),
            ("subnodes", tuple(subnodes)),
            ("lex", lex),
            ("nav", nav),
            ("det", "def"),
        ]
        return node

    def argument(self, arg: Argument, level: int) -> str:
        relation = self.mapping[arg.syntactic.value] if arg.syntactic else "restarg"
        return self.term(arg.term, level, self.mapping[arg.semantic.value], relation)

    def term(self, term: Term, level: int, role: str, relation: str) -> str:
        m = self.mapping
        node = self.new_node(level)
        noun = self.lexicon.noun(term.head.form)
        det_token = _DET_TOKEN.get(term.determinacy)
        num_token = _NUM_TOKEN.get(term.number)
        props: list[tuple[str, Value]] = [
            ("type", "term"),
            ("role", role),
            ("relation", relation),
            ("proper", "true" if noun.proper else "false"),
            ("pragmatic", "null"),
            ("num", m[num_token] if num_token else "singular"),
            ("modifs", tuple(a.form for a in term.modifiers)),
            ("lex", term.head.form),
            ("nav", ("N",)),
            ("det", m[det_token] if det_token else "indef"),
        ]
        self.props[node] = props
        if term.restrictors:
            subnodes = tuple(self.predication(p, level + 1) for p in term.restrictors)
            props.append(("subnodes", subnodes))
        if det_token is None:
            props.append(("det_given", "false"))
        if num_token is None:
            props.append(("num_given", "false"))
        return node


def compile_facts(ast: Predication, mapping: MappingConfig, lexicon: Lexicon) -> FactBase:
    comp = _Compiler(mapping, lexicon)
    comp.predication(ast, 0)
    node_props = tuple((node, k, v) for node, _ in comp.nodes for k, v in comp.props[node])
    clause_props = (("illocution", "decl"), ("type", "mainclause"))
    return FactBase(tuple(comp.nodes), node_props, clause_props)


# -- canonical dump ------------------------------------------------------------

_QUOTED_KEYS = {"lex"}


def _fmt(key: str, value: Value) -> str:
    if isinstance(value, tuple):
        return "[" + ", ".join(value) + "]"
    if key in _QUOTED_KEYS:
        return f"'{value}'"
    return value


def _records(fb: FactBase) -> Iterator[list[str]]:
    yield [f"node({n}, {level})." for n, level in fb.nodes]
    yield [f"prop({CLAUSE}, {k}, {_fmt(k, v)})." for k, v in fb.clause_props]
    for node, _ in fb.nodes:
        yield [f"prop({n}, {k}, {_fmt(k, v)})." for n, k, v in fb.node_props if n == node]


def dump_facts(fb: FactBase) -> str:
    """Node records, then clause props, then one block per node."""
    return "\n".join("".join(line + "\n" for line in block) for block in _records(fb))
