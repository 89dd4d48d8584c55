"""Bundled seed data and the parse -> compile -> realize chain."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Mapping

from .facts import FactBase, MappingConfig, compile_facts, dump_facts, load_mapping
from .lexicon import Lexicon, load_lexicon
from .notation import parse_structure
from .realizer import DEFAULT_PREPOSITIONS, realize

SEED_MAPPING = "mapping.properties"
SEED_LEXICON = "lexicon.pl"
SEED_PREPOSITIONS = "prepositions.properties"
SEED_TOKEN_SETS = "token_sets.txt"


def seed_text(name: str) -> str:
    return resources.files("fgr").joinpath("data", name).read_text(encoding="utf-8")


def seed_lexicon() -> Lexicon:
    return load_lexicon(seed_text(SEED_LEXICON))


def seed_mapping() -> MappingConfig:
    return load_mapping(seed_text(SEED_MAPPING))


@dataclass(frozen=True)
class Toolchain:
    mapping: MappingConfig = field(default_factory=seed_mapping)
    lexicon: Lexicon = field(default_factory=seed_lexicon)
    prepositions: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_PREPOSITIONS))

    def facts(self, text: str) -> FactBase:
        return compile_facts(parse_structure(text), self.mapping, self.lexicon)

    def realize(self, text: str) -> str:
        return realize(self.facts(text), self.lexicon, self.prepositions)

    def dump(self, text: str) -> str:
        return dump_facts(self.facts(text))
