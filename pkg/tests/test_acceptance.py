"""End-to-end acceptance checks, one test group per criterion.

Run ``pytest tests/test_acceptance.py`` for a per-criterion PASS/FAIL summary.
"""

import random
import time
from collections import defaultdict

import pytest

from corpus import (
    COPULAR_RELATIVE,
    COPULAR_SENTENCE,
    DITRANSITIVE,
    DITRANSITIVE_FACTS,
    DITRANSITIVE_SENTENCE,
    LOVE,
    LOVE_SENTENCE,
    RELATIVE_SUBSTRING,
    SERIAL_VERB,
    VERB_FRAMES,
)
from generators import loose_predication, random_rl, realizable_predication
from fgr.errors import MissingRequiredKey, RlError
from fgr.facts import REQUIRED_KEYS, compile_facts, dump_facts, load_mapping
from fgr.fdg import STYLES, format_rl, parse_rl, validate_rl
from fgr.lexicon import load_lexicon, plural_form, verb_forms
from fgr.notation import parse_structure, serialize
from fgr.pipeline import SEED_MAPPING, seed_text
from fgr.realizer import realize, realize_words

BUDGET_SECONDS = 0.050


def _records(text):
    return {line for line in text.splitlines() if line}


@pytest.mark.criterion(1, "simple present transitive realizes byte-exact under 50 ms")
def test_simple_present_golden(chain):
    start = time.perf_counter()
    sentence = chain.realize(LOVE)
    elapsed = time.perf_counter() - start
    assert sentence == LOVE_SENTENCE
    assert elapsed < BUDGET_SECONDS, f"{elapsed * 1000:.1f} ms"


@pytest.mark.criterion(2, "past perfect ditransitive realizes byte-exact")
def test_ditransitive_golden(chain):
    assert chain.realize(DITRANSITIVE) == DITRANSITIVE_SENTENCE


@pytest.mark.criterion(3, "copular structure with relative clause")
def test_copular_relative_substring(chain):
    assert RELATIVE_SUBSTRING in chain.realize(COPULAR_RELATIVE)


@pytest.mark.criterion(3, "copular structure with relative clause")
def test_copular_relative_sentence(chain):
    assert chain.realize(COPULAR_RELATIVE) == COPULAR_SENTENCE


@pytest.mark.criterion(4, "compiled facts reproduce every published record")
def test_fact_records(chain):
    dumped = dump_facts(chain.facts(DITRANSITIVE))
    got, want = _records(dumped), _records(DITRANSITIVE_FACTS)
    assert got == want
    assert len([r for r in got if r.startswith("node(")]) == 4
    assert len([r for r in got if r.startswith("prop(clause")]) == 2
    # the golden record set holds 40 node props; a headline count of 30 undercounts it
    node_props = [r for r in got if r.startswith("prop(x")]
    assert len(node_props) == len([r for r in want if r.startswith("prop(x")]) == 40


@pytest.mark.criterion(4, "compiled facts reproduce every published record")
def test_fact_dump_bytes(chain):
    assert dump_facts(chain.facts(DITRANSITIVE)) == DITRANSITIVE_FACTS


FDG_PERTURBATIONS = [
    ("deleted ')'", lambda t: t.replace("(x2:naif(x2))", "(x2:naif(x2)"), "parse"),
    ("uppercase lemma initial", lambda t: t.replace(":tek[", ":Tek["), "parse"),
    ("unknown function", lambda t: t.replace("(x3))Pat", "(x3))Foo"), "parse"),
    ("unknown operator", lambda t: t.replace("(Past e1", "(Fut e1"), "parse"),
    ("coref index change", lambda t: t.replace("naif(x2)", "naif(x4)"), "validate"),
    ("reference layer change", lambda t: t.replace("](f2)", "](e2)"), "parse"),
    ("definition index change", lambda t: t.replace("(f1:tek", "(f7:tek"), "validate"),
]


@pytest.mark.criterion(5, "FDG structure accepted; perturbations rejected at the right stage")
def test_fdg_accepts_structure():
    assert validate_rl(parse_rl(SERIAL_VERB)) == []


@pytest.mark.criterion(5, "FDG structure accepted; perturbations rejected at the right stage")
@pytest.mark.parametrize("name, mutate, stage", FDG_PERTURBATIONS, ids=[p[0] for p in FDG_PERTURBATIONS])
def test_fdg_perturbation(name, mutate, stage):
    text = mutate(SERIAL_VERB)
    assert text != SERIAL_VERB
    if stage == "parse":
        with pytest.raises(RlError):
            parse_rl(text)
    else:
        diags = validate_rl(parse_rl(text))
        assert [d.code for d in diags if d.severity == "error"] == ["CorefMismatch"]


@pytest.mark.criterion(6, "formatter round trip and idempotence over 20+ structures")
def test_formatter_round_trip():
    rng = random.Random(2024)
    corpus = [parse_rl(SERIAL_VERB)] + [random_rl(rng) for _ in range(40)]
    assert len(corpus) >= 20
    for node in corpus:
        for style in STYLES:
            once = format_rl(node, style)
            assert parse_rl(once) == node
            assert format_rl(parse_rl(once), style) == once


@pytest.mark.criterion(7, "lexicon records yield the expected word forms")
def test_lexicon_forms(lexicon):
    frames = load_lexicon(VERB_FRAMES)
    assert verb_forms(frames, "give") == ("gave", "given")
    assert verb_forms(frames, "believe") == ("believed", "believed")
    assert plural_form(lexicon, "woman") == "women"


@pytest.mark.criterion(8, "property suite: round trip, one finite verb per clause, mapping totality")
def test_generated_structures_round_trip():
    rng = random.Random(8)
    for _ in range(150):
        for ast in (loose_predication(rng), realizable_predication(rng)):
            assert parse_structure(serialize(ast)) == ast


@pytest.mark.criterion(8, "property suite: round trip, one finite verb per clause, mapping totality")
def test_one_finite_verb_per_clause(mapping, lexicon):
    rng = random.Random(88)
    outputs = [COPULAR_RELATIVE, DITRANSITIVE, LOVE]
    structures = [parse_structure(t) for t in outputs] + [realizable_predication(rng) for _ in range(150)]
    for ast in structures:
        fb = compile_facts(ast, mapping, lexicon)
        finite = defaultdict(int)
        for word in realize_words(fb, lexicon):
            finite[word.clause] += word.finite
        clauses = [n for n, _ in fb.nodes if fb.props(n)["type"] == "pred"]
        assert {c: finite[c] for c in clauses} == {c: 1 for c in clauses}
        assert realize(fb, lexicon)


@pytest.mark.criterion(8, "property suite: round trip, one finite verb per clause, mapping totality")
def test_mapping_totality(mapping, lexicon):
    rng = random.Random(888)
    for _ in range(300):
        compile_facts(realizable_predication(rng), mapping, lexicon)  # never UnmappedToken
    lines = seed_text(SEED_MAPPING).splitlines()
    for key in REQUIRED_KEYS:
        kept = [l for l in lines if l.split("=", 1)[0].strip() != key]
        with pytest.raises(MissingRequiredKey):
            load_mapping("\n".join(kept))
