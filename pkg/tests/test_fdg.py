import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import SERIAL_VERB
from generators import enumerate_rl, random_rl
from fgr.errors import (
    ConfigError,
    DuplicateKey,
    MalformedLine,
    RlError,
    RlSyntaxError,
    UnknownRlFunction,
    UnknownRlOperator,
)
from fgr.fdg import (
    STYLES,
    RlNode,
    RlRestrictor,
    TokenSets,
    format_rl,
    load_token_sets,
    parse_rl,
    rl_tree,
    validate_rl,
)

INDEX_TOKEN = re.compile(r"(?<=[pefxlt])\d+")
TOKEN = re.compile(r"_\{\d+\}|[()\[\]:]|\d+|[a-z]+|[A-Z][A-Za-z]*")


def tokens(text):
    return TOKEN.findall(text)


def strip_lines(text):
    return "\n".join(line.rstrip() for line in text.strip("\n").splitlines())


@pytest.fixture(scope="module")
def serial():
    return parse_rl(SERIAL_VERB)


class TestParse:
    def test_serial_verb_shape(self, serial):
        assert (serial.rule, serial.index) == ("content", 1)
        (e1,) = serial.children
        assert (e1.rule, e1.operator) == ("soaffairs", "Past")
        f1, f2 = e1.children
        assert (f1.head, f2.head) == ("tek", "kot")
        assert [(c.layer, c.index, c.head, c.function) for c in f1.children + f2.children] == [
            ("x", 1, "im", "Ag"), ("x", 2, "naif", "Inst"),
            ("x", 1, "im", "Ag"), ("x", 3, "mi", "Pat")]

    def test_minimal(self):
        assert parse_rl("(x1)") == RlNode("x", 1)

    def test_multiple_restrictors(self):
        node = parse_rl("(x1:im(x1):kot(x1))")
        assert [r.lemma for r in node.restrictors] == ["im", "kot"]

    def test_bracket_without_lemma(self):
        node = parse_rl("(e1:[(x1)](e1))")
        assert node.head is None and node.children == (RlNode("x", 1),)

    def test_empty_bracket(self):
        assert parse_rl("(f1:[](f1))").restrictors[0].children == ()

    def test_uppercase_lemma(self):
        with pytest.raises(RlSyntaxError):
            parse_rl("(x1:Im(x1))")

    def test_unknown_function(self):
        with pytest.raises(UnknownRlFunction) as exc:
            parse_rl("(x1:im(x1))Foo")
        assert exc.value.span.column == 12

    def test_unknown_operator(self):
        with pytest.raises(UnknownRlOperator) as exc:
            parse_rl("(Fut e1)")
        assert exc.value.span.column == 2

    def test_custom_token_sets(self):
        sets = TokenSets(functions=("Ag", "Loc"), operators=("Fut",))
        assert parse_rl("(Fut e1:[(l1)Loc](e1))", sets).operator == "Fut"
        with pytest.raises(UnknownRlOperator):
            parse_rl("(Past e1)", sets)

    def test_content_not_allowed_inside_brackets(self):
        with pytest.raises(RlSyntaxError) as exc:
            parse_rl("(e1:[(p1)](e1))")
        assert "'p'" not in exc.value.expected
        assert "'x'" in exc.value.expected

    def test_reference_layer_must_match(self):
        with pytest.raises(RlSyntaxError):
            parse_rl("(x1:im(e1))")

    def test_layer_letter_is_not_a_lemma(self):
        with pytest.raises(RlSyntaxError):
            parse_rl("(x1:x(x1))")

    def test_trailing_tokens(self):
        with pytest.raises(RlSyntaxError) as exc:
            parse_rl("(x1) (x2)")
        assert exc.value.expected == frozenset({"end of input"})

    def test_truncations_all_rejected(self):
        for cut in range(1, len(SERIAL_VERB.rstrip())):
            prefix = SERIAL_VERB[:cut]
            if prefix.strip():
                with pytest.raises(RlError):
                    parse_rl(prefix)


class TestValidate:
    def test_serial_verb_clean(self, serial):
        assert validate_rl(serial) == []

    def test_coreference_mismatch(self):
        text = "(x1:im(x2))"
        (diag,) = validate_rl(parse_rl(text))
        assert (diag.severity, diag.code) == ("error", "CorefMismatch")
        assert (diag.span.column, diag.span.length) == (text.index("(x2)") + 1, 4)

    def test_bare_node(self):
        assert validate_rl(parse_rl("(x1)")) == []

    def test_duplicate_sibling_warning(self):
        diags = validate_rl(parse_rl("(f1:[(x1:im(x1)) (x1:mi(x1))](f1))"))
        assert [(d.severity, d.code) for d in diags] == [("warning", "DuplicateDefinition")]

    def test_repeated_identical_sibling_is_fine(self):
        assert validate_rl(parse_rl("(f1:[(x1:im(x1)) (x1:im(x1))](f1))")) == []

    def test_every_index_perturbation_flagged(self):
        positions = [m.span() for m in INDEX_TOKEN.finditer(SERIAL_VERB)]
        assert len(positions) == 16
        for start, end in positions:
            text = SERIAL_VERB[:start] + "9" + SERIAL_VERB[end:]
            errors = [d for d in validate_rl(parse_rl(text)) if d.severity == "error"]
            assert [d.code for d in errors] == ["CorefMismatch"], text
            span = errors[0].span
            line = text.splitlines()[span.line - 1]
            ref = line[span.column - 1:span.column - 1 + span.length]
            assert re.fullmatch(r"\([pefxlt]\d+\)", ref)


class TestFormat:
    def test_indented_matches_reference_layout(self, serial):
        assert strip_lines(format_rl(serial, "indented")) == strip_lines(SERIAL_VERB)

    def test_compact(self):
        node = parse_rl("(Past e1:[\n (x1:im(x1))Ag\n](e1))")
        assert format_rl(node) == "(Past e1:[(x1:im(x1))Ag](e1))"

    def test_subscript(self):
        assert format_rl(parse_rl("(x1:im(x1))Ag"), "subscript") == "(x_{1}:im(x_{1}))Ag"

    def test_subscript_indented(self, serial):
        text = format_rl(serial, "subscript", indented=True)
        assert "\n" in text and parse_rl(text) == serial

    def test_unknown_style(self, serial):
        with pytest.raises(ValueError):
            format_rl(serial, "fancy")

    @pytest.mark.parametrize("style", STYLES)
    def test_round_trip_and_idempotence(self, serial, style):
        once = format_rl(serial, style)
        assert parse_rl(once) == serial
        assert format_rl(parse_rl(once), style) == once


class TestTree:
    def test_leaf(self):
        assert rl_tree(parse_rl("(x1)")) == "individual: x 1\n"

    def test_serial_verb(self, serial):
        lines = rl_tree(serial).splitlines()
        assert lines[0] == "content: p 1 p 1"
        assert lines[1] == "  head"
        assert lines[2] == "    soaffairs: Past e 1 e 1"
        props = [l for l in lines if l.strip().startswith("property:")]
        assert len(props) == 2
        assert all(l.startswith("        property") for l in props)
        assert "            individual: x 1 x 1 Ag" in lines

    def test_every_token_accounted_for(self, serial):
        tree_tokens = []
        for line in rl_tree(serial).splitlines():
            label, _, rest = line.strip().partition(": ")
            tree_tokens += rest.split() if label != "head" else [rest] if rest else []
        significant = [t for t in tokens(SERIAL_VERB) if t not in "()[]:"]
        assert sorted(tree_tokens) == sorted(significant)


def test_load_token_sets():
    sets = load_token_sets("# custom\nfunctions:\nAg\nLoc\n\noperators:\nFut\n")
    assert sets == TokenSets(("Ag", "Loc"), ("Fut",))
    assert load_token_sets("functions:\nAg\n").operators == TokenSets().operators
    with pytest.raises(MalformedLine):
        load_token_sets("Ag\n")
    with pytest.raises(DuplicateKey):
        load_token_sets("functions:\nAg\nAg\n")
    with pytest.raises(ConfigError):
        load_token_sets("functions:\n")


# -- grammar fidelity -----------------------------------------------------------

def test_enumerated_structures_round_trip():
    nodes = enumerate_rl(depth=3)
    assert len(nodes) > 10_000
    for node in nodes:
        for style in STYLES:
            assert parse_rl(format_rl(node, style)) == node


def test_single_token_mutations_never_misparse():
    """A mutated string is rejected, or accepted with every token accounted for."""
    rng = random.Random(11)
    pool = ["(", ")", "[", "]", ":", "1", "x", "e", "p", "im", "Ag", "Past"]
    nodes = enumerate_rl(depth=3)
    for node in rng.sample(nodes, 400):
        toks = tokens(format_rl(node))
        for _ in range(5):
            i = rng.randrange(len(toks))
            op = rng.choice(["drop", "insert", "replace"])
            mutated = list(toks)
            if op == "drop":
                del mutated[i]
            elif op == "insert":
                mutated.insert(i, rng.choice(pool))
            else:
                mutated[i] = rng.choice(pool)
            text = " ".join(mutated)
            try:
                parsed = parse_rl(text)
            except RlError:
                continue
            assert tokens(format_rl(parsed)) == mutated


@settings(max_examples=200, deadline=None)
@given(rng=st.randoms(use_true_random=False))
def test_random_structures_round_trip(rng):
    node = random_rl(rng)
    for style in STYLES:
        text = format_rl(node, style)
        assert parse_rl(text) == node
        assert format_rl(parse_rl(text), style) == text


@settings(max_examples=100, deadline=None)
@given(rng=st.randoms(use_true_random=False))
def test_consistent_random_structures_validate_clean(rng):
    node = random_rl(rng)
    refs_ok = all(r.ref_index == n.index for n in _walk(node) for r in n.restrictors)
    errors = [d for d in validate_rl(node) if d.severity == "error"]
    assert refs_ok == (not errors)


def _walk(node):
    yield node
    for child in node.children:
        yield from _walk(child)


def test_restrictor_children_distinguish_bracket_absence():
    assert RlRestrictor("im", None, 1) != RlRestrictor("im", (), 1)
    assert format_rl(RlNode("x", 1, restrictors=(RlRestrictor("im", (), 1),))) == "(x1:im[](x1))"
