"""English surface realization from a compiled fact base.

Works purely on the fact vocabulary (``past``, ``plural``, ``agent``,
``subject``...), never on notation tokens.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import MissingGap, NoSubject, UnsupportedIllocution
from .facts import CLAUSE, FactBase, parse_properties
from .lexicon import Lexicon, plural_form, present_participle, regular_plural, verb_forms

DEFAULT_PREPOSITIONS: Mapping[str, str] = {"recipient": "to", "agent": "by"}

# finite forms keyed by (tense, agreement); non-finite by form name
_AUX = {
    "be": {("pres", "sg3"): "is", ("pres", "other"): "are",
           ("past", "sg3"): "was", ("past", "other"): "were",
           "pp": "been", "ing": "being"},
    "have": {("pres", "sg3"): "has", ("pres", "other"): "have",
             ("past", "sg3"): "had", ("past", "other"): "had",
             "pp": "had", "ing": "having"},
}

FUNCTION_WORDS = frozenset({"the", "a", "an", "to", "by", "who", "which", "is", "are", "was",
                            "were", "has", "have", "had", "be", "been", "being"})


@dataclass(frozen=True)
class VerbGroupSpec:
    lemma: str
    tense: str = "pres"  # pres | past
    perfect: bool = False
    progressive: bool = False
    voice: str = "active"  # active | passive
    agreement: str = "sg3"  # sg3 | other


@dataclass(frozen=True)
class NounPhraseSpec:
    lemma: str
    det: str | None = "def"  # def | indef | None for proper nouns
    num: str | None = "singular"
    proper: bool = False
    modifiers: tuple[str, ...] = ()
    relative_clause: str | None = None


def load_prepositions(text: str) -> dict[str, str]:
    return parse_properties(text)


def _verb_form(lemma: str, form, lex: Lexicon) -> str:
    if lemma in _AUX:
        return _AUX[lemma][form]
    if form == "pp":
        return verb_forms(lex, lemma)[1]
    if form == "ing":
        lex.verb(lemma)
        return present_participle(lemma)
    tense, agreement = form
    if tense == "past":
        return verb_forms(lex, lemma)[0]
    lex.verb(lemma)
    return regular_plural(lemma) if agreement == "sg3" else lemma


def inflect_verb(spec: VerbGroupSpec, lex: Lexicon) -> list[str]:
    """Auxiliary chain left to right; only the first word is finite."""
    chain: list[tuple[str, str]] = []  # (auxiliary, form it imposes on the next verb)
    if spec.perfect:
        chain.append(("have", "pp"))
    if spec.progressive:
        chain.append(("be", "ing"))
    if spec.voice == "passive":
        chain.append(("be", "pp"))
    verbs = [aux for aux, _ in chain] + [spec.lemma]
    forms = [(spec.tense, spec.agreement)] + [imposed for _, imposed in chain]
    return [_verb_form(v, f, lex) for v, f in zip(verbs, forms)]


def _article(next_word: str) -> str:
    return "an" if next_word[:1].lower() in "aeiou" else "a"


def realize_term(np: NounPhraseSpec, lex: Lexicon) -> str:
    noun = lex.noun(np.lemma)
    if np.proper or noun.proper:
        words = [np.lemma.capitalize()]
    else:
        head = plural_form(lex, np.lemma) if np.num == "plural" else np.lemma
        words = list(np.modifiers) + [head]
        if np.det == "def":
            words.insert(0, "the")
        elif np.det == "indef" and np.num != "plural":
            words.insert(0, _article(words[0]))
    if np.relative_clause:
        words.append(np.relative_clause)
    return " ".join(words)


@dataclass
class Word:
    """A realized word tagged with the clause it belongs to."""

    text: str
    clause: str
    finite: bool = False


@dataclass
class _Realizer:
    fb: FactBase
    lex: Lexicon
    prepositions: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_PREPOSITIONS))

    def p(self, node: str) -> dict:
        return self.fb.props(node)

    def term(self, node: str, clause: str) -> list[Word]:
        props = self.p(node)
        proper = props["proper"] == "true"
        # a term written without a determiner is read as definite
        det = "def" if props.get("det_given") == "false" else props["det"]
        np = NounPhraseSpec(props["lex"], det, props["num"], proper, tuple(props["modifs"]))
        words = [Word(w, clause) for w in realize_term(np, self.lex).split(" ")]
        for i, sub in enumerate(props.get("subnodes", ())):
            if i:
                words.append(Word("and", clause))
            words += self.clause(sub, gap_head=node)
        return words

    def clause(self, node: str, gap_head: str | None = None) -> list[Word]:
        props = self.p(node)
        args = list(props["subnodes"])
        gap = None
        if gap_head is not None:
            gap = self.find_gap(node, args, gap_head)
        if props["nav"] == ("N",):
            return self.copular(node, props, args, gap_head, gap)

        subject = self.find_subject(node, args)
        agreement_source = gap_head if subject == gap and gap is not None else subject
        agreement = "sg3" if self.p(agreement_source)["num"] == "singular" else "other"
        spec = VerbGroupSpec(props["lex"], props["tense"], props["perfect"] == "true",
                             props["progressive"] == "true", props["voice"], agreement)
        verb_group = inflect_verb(spec, self.lex)

        frame = self.lex.verb(props["lex"]).roles
        rest = [a for a in args if a != subject]
        obj = [a for a in rest if self.p(a)["relation"] == "object"]
        rest = [a for a in rest if a not in obj]
        rest.sort(key=lambda a: frame.index(self.p(a)["role"]) if self.p(a)["role"] in frame else len(frame))
        if props["voice"] == "passive":
            agents = [a for a in rest if self.p(a)["role"] == "agent"]
            rest = [a for a in rest if a not in agents] + agents

        words: list[Word] = []
        if gap is not None:
            words.append(Word(self.relative_pronoun(gap_head), node))
        words += self.argument(subject, node, gap, bare=True)
        words += [Word(w, node, finite=(i == 0)) for i, w in enumerate(verb_group)]
        for a in obj:
            words += self.argument(a, node, gap, bare=True)
        for a in rest:
            words += self.argument(a, node, gap)
        return words

    def copular(self, node: str, props: dict, args: list[str],
                gap_head: str | None, gap: str | None) -> list[Word]:
        predicate, subjects = args[0], args[1:]
        if not subjects:
            raise NoSubject(node)
        subject = subjects[0]
        source = gap_head if gap is not None and subject == gap else subject
        agreement = "sg3" if self.p(source)["num"] == "singular" else "other"
        spec = VerbGroupSpec("be", props["tense"], props["perfect"] == "true",
                             props["progressive"] == "true", "active", agreement)
        words = [Word(self.relative_pronoun(gap_head), node)] if gap is not None else []
        words += self.argument(subject, node, gap, bare=True)
        words += [Word(w, node, finite=(i == 0)) for i, w in enumerate(inflect_verb(spec, self.lex))]
        return words + self.argument(predicate, node, gap, bare=True)

    def argument(self, arg: str, clause: str, gap: str | None, bare: bool = False) -> list[Word]:
        if arg == gap:
            return []
        words = self.term(arg, clause)
        prep = None if bare else self.prepositions.get(self.p(arg)["role"])
        return ([Word(prep, clause)] if prep else []) + words

    def find_subject(self, node: str, args: list[str]) -> str:
        for rel, role in (("subject", None), (None, "zero")):
            for a in args:
                ap = self.p(a)
                if (rel and ap["relation"] == rel) or (role and ap["role"] == role):
                    return a
        raise NoSubject(node)

    def find_gap(self, node: str, args: list[str], head: str) -> str:
        lemma = self.p(head)["lex"]
        for a in args:
            ap = self.p(a)
            if (ap["lex"] == lemma and ap.get("det_given") == "false"
                    and ap.get("num_given") == "false"):
                return a
        raise MissingGap(node, lemma)

    def relative_pronoun(self, head: str) -> str:
        features = self.lex.noun(self.p(head)["lex"]).features
        return "who" if features & {"human", "animate"} else "which"


def realize_words(fb: FactBase, lex: Lexicon,
                  prepositions: Mapping[str, str] | None = None) -> list[Word]:
    """Like :func:`realize` but keeps per-word clause and finiteness tags."""
    illocution = fb.props(CLAUSE).get("illocution")
    if illocution != "decl":
        raise UnsupportedIllocution(str(illocution))
    preps = dict(DEFAULT_PREPOSITIONS if prepositions is None else prepositions)
    return _Realizer(fb, lex, preps).clause(fb.root)


def realize(fb: FactBase, lex: Lexicon, prepositions: Mapping[str, str] | None = None) -> str:
    sentence = " ".join(w.text for w in realize_words(fb, lex, prepositions))
    return sentence[:1].upper() + sentence[1:]
