"""Command-line front end.

Exit status is 0 on success, 1 when a check answers no (``match``,
``equiv``, ``check-laws``, ``afa --run``), and 2 on any error.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import Sequence

from .automaton import (
    build_automaton,
    determinize,
    export_dot,
    export_json,
    export_text,
    run,
    to_nfa,
)
from .errors import DerivKitError
from .expr import Expr
from .oracle import witness
from .registry import SUPPORTS, get_base, get_support
from .sampling import law_samples
from .support import DEFAULT_CAP, check_support_laws, derivative_closure, derive_word, member_via
from .syntax import parse, render

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _word(text: str) -> str:
    if not all("a" <= c <= "z" for c in text):
        raise argparse.ArgumentTypeError(f"words use letters a-z only, got {text!r}")
    return text


def _alphabet(text: str) -> str:
    letters = text.replace(",", "")
    return "".join(sorted(set(_word(letters))))


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="derivkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def support_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--support", choices=list(SUPPORTS), default="clausal")
        p.add_argument("--no-simplify", action="store_true",
                       help="keep 0 and 1 factors and summands")
        p.add_argument("--alphabet", type=_alphabet, default="",
                       help="extra letters to derive by (the expression's own are always used)")

    p = sub.add_parser("parse", help="print the syntax tree")
    p.add_argument("expr")

    p = sub.add_parser("null", help="does the expression accept the empty word")
    p.add_argument("expr")

    p = sub.add_parser("derive", help="derivative by a word")
    support_opts(p)
    p.add_argument("--word", type=_word, required=True)
    p.add_argument("expr")

    p = sub.add_parser("closure", help="all derivatives by non-empty words")
    support_opts(p)
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p.add_argument("expr")

    p = sub.add_parser("afa", help="build the derivative automaton")
    support_opts(p)
    p.add_argument("--base", choices=["BA", "BB", "BC"], default="BC")
    p.add_argument("--format", choices=["text", "dot", "json", "nfa"], default="text",
                   help="nfa lists successor sets and fails unless every formula is a disjunction")
    p.add_argument("--determinize", action="store_true",
                   help="export the deterministic automaton over formula classes")
    p.add_argument("--run", type=_word, metavar="WORD",
                   help="run the automaton on WORD instead of exporting it")
    p.add_argument("--cap", type=_positive, default=DEFAULT_CAP)
    p.add_argument("--prune-false", action="store_true",
                   help="replace unsatisfiable transitions by false and drop dead states")
    p.add_argument("--initial-base", action="store_true",
                   help="use the base formula of the expression as initial condition")
    p.add_argument("--ascii", action="store_true", help="ASCII operators in text output")
    p.add_argument("expr")

    p = sub.add_parser("match", help="membership through derivatives")
    support_opts(p)
    p.add_argument("expr")
    p.add_argument("word", type=_word, help="the word; pass '' for the empty word")

    p = sub.add_parser("equiv", help="same language up to a length bound")
    p.add_argument("--upto", type=_natural, default=4)
    p.add_argument("--alphabet", type=_alphabet, default=None)
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("check-laws", help="check the readback laws on random samples")
    p.add_argument("--support", choices=list(SUPPORTS), default="clausal")
    p.add_argument("--no-simplify", action="store_true")
    p.add_argument("--samples", type=_positive, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--upto", type=_natural, default=4)
    return parser


def _support(args: argparse.Namespace):
    return get_support(args.support, simplify=not args.no_simplify)


def _nfa_text(aut) -> str:
    nfa = to_nfa(aut)
    names = " ".join(sorted(aut.name(q) for q in nfa.initial))
    lines = [f"alphabet: {' '.join(aut.alphabet)}", f"initial: {{{names}}}"]
    for q in aut.states:
        mark = "  final" if aut.final[q] else ""
        lines.append(f"  {aut.name(q)} = {render(q)}{mark}")
        for a in aut.alphabet:
            succ = " ".join(aut.name(r) for r in aut.states if r in nfa.trans[(q, a)])
            lines.append(f"    {a} -> {{{succ}}}")
    return "\n".join(lines) + "\n"


def _run(args: argparse.Namespace, out: io.StringIO) -> int:
    cmd = args.command
    if cmd == "parse":
        e = parse(args.expr)
        print(repr(e), file=out)
        return EXIT_OK
    if cmd == "null":
        print(str(parse(args.expr).nullable).lower(), file=out)
        return EXIT_OK
    if cmd == "derive":
        sup = _support(args)
        e = parse(args.expr)
        s = derive_word(sup, args.word, e)
        print(sup.display(s), file=out)
        return EXIT_OK
    if cmd == "closure":
        sup = _support(args)
        found = derivative_closure(sup, parse(args.expr), args.cap, args.alphabet)
        for s in found:
            print(sup.display(s), file=out)
        return EXIT_OK
    if cmd == "afa":
        sup = _support(args)
        aut = build_automaton(
            sup,
            get_base(args.base),
            parse(args.expr),
            cap=args.cap,
            alphabet=args.alphabet,
            prune=args.prune_false,
            initial_base=args.initial_base,
        )
        if args.determinize:
            aut = determinize(aut)
        if args.run is not None:
            verdict = run(aut, args.run)
            print(str(verdict).lower(), file=out)
            return EXIT_OK if verdict else EXIT_NO
        if args.format == "nfa":
            out.write(_nfa_text(aut))
        elif args.format == "dot":
            out.write(export_dot(aut))
        elif args.format == "json":
            out.write(export_json(aut))
        else:
            out.write(export_text(aut, ascii=args.ascii))
        return EXIT_OK
    if cmd == "match":
        verdict = member_via(_support(args), parse(args.expr), args.word)
        print(str(verdict).lower(), file=out)
        return EXIT_OK if verdict else EXIT_NO
    if cmd == "equiv":
        e1: Expr = parse(args.expr1)
        e2: Expr = parse(args.expr2)
        w = witness(e1, e2, args.upto, args.alphabet)
        if w is None:
            print("true", file=out)
            return EXIT_OK
        print(f"false (differ on {w!r})", file=out)
        return EXIT_NO
    if cmd == "check-laws":
        sup = _support(args)
        samples = law_samples(sup, args.samples, args.seed)
        report = check_support_laws(sup, samples, n=args.upto)
        print(report.summary(), file=out)
        return EXIT_OK if report.ok else EXIT_NO
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def execute(argv: Sequence[str]) -> tuple[int, str, str]:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    out, err = io.StringIO(), io.StringIO()
    try:
        with redirect_stdout(out), redirect_stderr(err):
            args = build_parser().parse_args(list(argv))
    except UsageError as exc:
        return EXIT_ERROR, out.getvalue(), err.getvalue() + f"{exc}\n"
    except SystemExit as exc:  # --help
        return (exc.code or 0), out.getvalue(), err.getvalue()
    try:
        code = _run(args, out)
    except (DerivKitError, ValueError) as exc:
        return EXIT_ERROR, out.getvalue(), f"error: {exc}\n"
    except RecursionError:
        return EXIT_ERROR, out.getvalue(), "error: expression nested too deeply\n"
    return code, out.getvalue(), err.getvalue()


def main(argv: Sequence[str] | None = None) -> int:
    code, out, err = execute(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
