"""Sentence generation from Functional Grammar underlying structures,
plus checking and typesetting of FDG representational-level notation."""

from .facts import FactBase, MappingConfig, compile_facts, dump_facts, load_mapping, query
from .fdg import (
    Diagnostic,
    RlNode,
    TokenSets,
    format_rl,
    load_token_sets,
    parse_rl,
    rl_tree,
    validate_rl,
)
from .lexicon import Lexicon, dump_lexicon, load_lexicon, plural_form, verb_forms
from .notation import Predication, parse_structure, serialize, tokenize
from .pipeline import Toolchain
from .realizer import NounPhraseSpec, VerbGroupSpec, inflect_verb, realize, realize_term

__all__ = [
    "Diagnostic", "FactBase", "Lexicon", "MappingConfig", "NounPhraseSpec", "Predication",
    "RlNode", "TokenSets", "Toolchain", "VerbGroupSpec", "compile_facts", "dump_facts",
    "dump_lexicon", "format_rl", "inflect_verb", "load_lexicon", "load_mapping",
    "load_token_sets", "parse_rl", "parse_structure", "plural_form", "query", "realize",
    "realize_term", "rl_tree", "serialize", "tokenize", "validate_rl", "verb_forms",
]
