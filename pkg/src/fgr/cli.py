"""Command-line front end.

Exit codes: 0 success, 1 semantic or validation failure, 2 syntax
failure, 3 configuration failure.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path
from typing import TextIO

from .errors import FgrError, NotationError, RlError
from .facts import load_mapping
from .fdg import STYLES, TokenSets, format_rl, load_token_sets, parse_rl, rl_tree, validate_rl
from .lexicon import load_lexicon
from .pipeline import SEED_LEXICON, SEED_MAPPING, SEED_PREPOSITIONS, Toolchain, seed_text
from .realizer import load_prepositions

EXIT_OK, EXIT_SEMANTIC, EXIT_SYNTAX, EXIT_CONFIG = 0, 1, 2, 3
PROMPT = ">> "


class ConfigFailure(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):  # bad flags are configuration failures
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _read_config(path: str | None, seed: str) -> str:
    if path is None:
        return seed_text(seed)
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigFailure(f"cannot read {path}: {exc.strerror}") from None


def build_toolchain(args: argparse.Namespace) -> Toolchain:
    lexicon_path = args.lexicon or os.environ.get("FGR_LEXICON")
    try:
        lexicon = load_lexicon(_read_config(lexicon_path, SEED_LEXICON))
        mapping = load_mapping(_read_config(args.mapping, SEED_MAPPING))
        preps = load_prepositions(_read_config(args.prepositions, SEED_PREPOSITIONS))
    except FgrError as exc:
        raise ConfigFailure(str(exc)) from None
    return Toolchain(mapping, lexicon, preps)


def build_token_sets(args: argparse.Namespace) -> TokenSets:
    if args.token_sets is None:
        return TokenSets()
    try:
        return load_token_sets(_read_config(args.token_sets, ""))
    except FgrError as exc:
        raise ConfigFailure(str(exc)) from None


def _error_code(exc: FgrError) -> int:
    return EXIT_SYNTAX if isinstance(exc, (NotationError, RlError)) else EXIT_SEMANTIC


def paren_depth(text: str) -> int:
    """Parenthesis balance, ignoring quoted lexemes."""
    depth = 0
    quoted = False
    for ch in text:
        if ch == "'":
            quoted = not quoted
        elif not quoted and ch == "(":
            depth += 1
        elif not quoted and ch == ")":
            depth -= 1
    return depth


def repl(chain: Toolchain, stdin: TextIO, stdout: TextIO, stderr: TextIO,
         prompt: bool = True) -> int:
    """Read structures until end of input, printing one sentence each.

    An entry ends when its parentheses balance; a blank line submits an
    unbalanced entry so the error can be reported.
    """
    buffer = ""

    def submit() -> None:
        try:
            stdout.write(chain.realize(buffer) + "\n")
        except FgrError as exc:
            stderr.write(f"error: {exc}\n")
        stdout.flush()

    while True:
        if prompt and not buffer:
            stdout.write(PROMPT)
            stdout.flush()
        line = stdin.readline()
        if not line:
            if buffer.strip():
                submit()
            if prompt:
                stdout.write("\n")
            return EXIT_OK
        if not line.strip():
            if buffer.strip():
                submit()
                buffer = ""
            continue
        buffer += line
        if paren_depth(buffer) <= 0:
            submit()
            buffer = ""


def split_blocks(text: str) -> list[str]:
    return [b for b in re.split(r"\n[ \t]*\n", text) if b.strip()]


def run_batch(chain: Toolchain, text: str, mode: str, stdout: TextIO, stderr: TextIO) -> int:
    status = EXIT_OK
    outputs = []
    for number, block in enumerate(split_blocks(text), start=1):
        try:
            outputs.append(chain.realize(block) + "\n" if mode == "realize" else chain.dump(block))
        except FgrError as exc:
            stderr.write(f"block {number}: error: {exc}\n")
            status = max(status, _error_code(exc))
    sep = "" if mode == "realize" else "\n"
    stdout.write(sep.join(outputs))
    return status


def fdg_command(sets: TokenSets, text: str, mode: str, style: str,
                stdout: TextIO, stderr: TextIO) -> int:
    try:
        node = parse_rl(text, sets)
    except RlError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_SYNTAX
    if mode == "fdg-validate":
        diags = validate_rl(node)
        for d in diags:
            stderr.write(f"{d}\n")
        return EXIT_SEMANTIC if any(d.severity == "error" for d in diags) else EXIT_OK
    if mode == "fdg-format":
        stdout.write(format_rl(node, style) + "\n")
    else:
        stdout.write(rl_tree(node))
    return EXIT_OK


def _make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lexicon", metavar="PATH", help="lexicon fact file (env FGR_LEXICON)")
    common.add_argument("--mapping", metavar="PATH", help="token mapping key=value file")
    common.add_argument("--prepositions", metavar="PATH", help="role=preposition file")
    common.add_argument("--token-sets", metavar="PATH", help="FDG functions/operators file")
    common.add_argument("--style", choices=STYLES, default="compact", help="FDG output style")

    parser = _ArgumentParser(prog="fgr", description="Generate sentences from FG structures "
                             "and check FDG representational-level notation.")
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_ArgumentParser)
    sub.add_parser("repl", parents=[common], help="interactive prompt")
    for mode, text in [("realize", "realize each structure in FILE"),
                       ("facts", "dump the compiled facts for each structure in FILE"),
                       ("fdg-validate", "validate an RL structure"),
                       ("fdg-format", "reformat an RL structure"),
                       ("fdg-tree", "print the derivation tree of an RL structure")]:
        p = sub.add_parser(mode, parents=[common], help=text)
        p.add_argument("input", metavar="FILE", help="input file, or - for standard input")
    return parser


def main(argv: list[str] | None = None, stdin: TextIO | None = None,
         stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = _make_parser().parse_args(argv)
    try:
        if args.mode.startswith("fdg-"):
            sets = build_token_sets(args)
        else:
            chain = build_toolchain(args)
        if args.mode == "repl":
            return repl(chain, stdin, stdout, stderr, prompt=stdin.isatty())
        text = stdin.read() if args.input == "-" else _read_config(args.input, "")
    except ConfigFailure as exc:
        stderr.write(f"fgr: {exc}\n")
        return EXIT_CONFIG
    if args.mode.startswith("fdg-"):
        return fdg_command(sets, text, args.mode, args.style, stdout, stderr)
    return run_batch(chain, text, args.mode, stdout, stderr)


if __name__ == "__main__":
    sys.exit(main())
