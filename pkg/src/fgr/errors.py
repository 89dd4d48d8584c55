"""Exception hierarchy and source positions shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    line: int  # 1-based
    column: int  # 1-based
    length: int = 1

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"line {self.line}, column {self.column}"


class FgrError(Exception):
    """Base class for every error raised by the toolchain."""


class PositionedError(FgrError):
    """An error that points at a location in some input text."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.span = span
        self.detail = message
        super().__init__(f"{span}: {message}" if span else message)


# -- notation (FG structures) --------------------------------------------------

class NotationError(PositionedError):
    pass


class UnknownCharacter(NotationError):
    pass


class UnterminatedLexeme(NotationError):
    pass


class UnknownFunction(NotationError):
    pass


class StructureSyntaxError(NotationError):
    def __init__(self, message: str, span: SourceSpan | None = None,
                 expected: frozenset[str] = frozenset()):
        self.expected = expected
        super().__init__(message, span)


class EmptyStructure(NotationError):
    def __init__(self) -> None:
        super().__init__("empty structure")


# -- key=value config files ----------------------------------------------------

class ConfigError(FgrError):
    pass


class MalformedLine(ConfigError):
    def __init__(self, line_no: int, text: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: expected key=value, got {text!r}")


class DuplicateKey(ConfigError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"duplicate key {key!r}")


class MissingRequiredKey(ConfigError):
    def __init__(self, key: str):
        self.key = key
        super().__init__(f"missing required key {key!r}")


# -- lexicon -------------------------------------------------------------------

class LexiconError(FgrError):
    pass


class MalformedRecord(LexiconError):
    def __init__(self, line_no: int, reason: str = ""):
        self.line_no = line_no
        super().__init__(f"line {line_no}: malformed record" + (f" ({reason})" if reason else ""))


class DuplicateLemma(LexiconError):
    def __init__(self, category: str, lemma: str):
        self.category = category
        self.lemma = lemma
        super().__init__(f"duplicate {category} entry {lemma!r}")


class UnknownAktionsart(LexiconError):
    def __init__(self, value: str):
        self.value = value
        super().__init__(f"unknown aktionsart {value!r}")


class UnknownLexeme(FgrError):
    def __init__(self, lemma: str, category: str | None = None):
        self.lemma = lemma
        self.category = category
        what = {"V": "verb", "N": "noun", "A": "adjective"}.get(category or "", "lexeme")
        super().__init__(f"unknown {what} {lemma!r}")


# -- compilation and realization -----------------------------------------------

class CompileError(FgrError):
    pass


class UnmappedToken(CompileError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"no mapping for token {token!r}")


class RoleMismatch(CompileError):
    def __init__(self, lemma: str, role: str):
        self.lemma = lemma
        self.role = role
        super().__init__(f"verb {lemma!r} has no {role!r} slot in its argument frame")


class RealizationError(FgrError):
    pass


class UnsupportedIllocution(RealizationError):
    def __init__(self, value: str):
        self.value = value
        super().__init__(f"unsupported illocution {value!r}")


class NoSubject(RealizationError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(f"clause {node} has no subject or zero-function argument")


class MissingGap(RealizationError):
    def __init__(self, node: str, lemma: str):
        self.node = node
        self.lemma = lemma
        super().__init__(f"relative clause {node} has no gap coreferent with {lemma!r}")


# -- FDG representational level ------------------------------------------------

class RlError(PositionedError):
    pass


class RlSyntaxError(RlError):
    def __init__(self, message: str, span: SourceSpan | None = None,
                 expected: frozenset[str] = frozenset()):
        self.expected = expected
        super().__init__(message, span)


class UnknownRlFunction(RlError):
    def __init__(self, token: str, span: SourceSpan | None = None):
        self.token = token
        super().__init__(f"unknown function {token!r}", span)


class UnknownRlOperator(RlError):
    def __init__(self, token: str, span: SourceSpan | None = None):
        self.token = token
        super().__init__(f"unknown operator {token!r}", span)
