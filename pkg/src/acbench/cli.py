"""Command-line interface: ``acbench <subcommand> ...``.

Exit codes: 0 success or found, 1 usage or data error, 2 search exhausted
(or an incomplete coset enumeration), 3 presentation not perfect.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import data_path
from .composition import compose, compose_power, expand_substitutions, transport_certificate
from .knot import (
    InvalidBalance,
    balance,
    eliminate_generator,
    eliminate_labeled,
    parse_elimination,
    read_crossings,
    wirtinger,
)
from .laurent import det2, evans_matrix, format_mat2, ge2_reduce, read_mat2
from .moves import (
    Certificate,
    IllegalMove,
    apply_move,
    format_certificate,
    parse_move,
    read_certificate,
    verify_certificate,
)
from .presentation import (
    Presentation,
    abelianization_matrix,
    canonical_key,
    default_names,
    format_presentation,
    parse_corpus,
    parse_presentation,
)
from .search import STRATEGIES, SearchLimits, ac_equivalent, enumerate_perfect, shorten, trivialize
from .series import FAMILIES, gen_series, parse_series_args
from .triviality import is_perfect, smith_normal_form, todd_coxeter
from .words import format_word, parse_word

EXIT_OK, EXIT_ERROR, EXIT_EXHAUSTED, EXIT_NOT_PERFECT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def resolve(path: str) -> Path:
    """A path as given, or else relative to the bundled data directory."""
    p = Path(path)
    if p.exists():
        return p
    bundled = data_path(path)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(f"no such file: {path}")


def load_presentations(arg: str) -> list[Presentation]:
    """A ``<...>`` literal, or a corpus file (local or bundled)."""
    if arg.lstrip().startswith("<"):
        return [parse_presentation(arg)]
    ps = parse_corpus(resolve(arg).read_text())
    if not ps:
        raise ValueError(f"{arg} holds no presentations")
    return ps


def load_one(arg: str, index: int | None) -> Presentation:
    ps = load_presentations(arg)
    if index is None:
        if len(ps) > 1:
            raise ValueError(f"{arg} holds {len(ps)} presentations; pick one with --index")
        return ps[0]
    if not 1 <= index <= len(ps):
        raise ValueError(f"--index {index} outside 1..{len(ps)}")
    return ps[index - 1]


class Output:
    def __init__(self, stream: TextIO, numeric: bool):
        self.stream = stream
        self.numeric = numeric

    def __call__(self, *parts) -> None:
        print(*parts, file=self.stream)

    def pres(self, p: Presentation) -> str:
        return format_presentation(p, numeric=self.numeric)

    def word(self, w, n: int) -> str:
        return format_word(w, None if self.numeric else default_names(n), numeric=self.numeric)


def limits_from(args) -> SearchLimits:
    return SearchLimits.from_env(
        max_relator_len=args.max_relator_len, max_total_len=args.max_total_len,
        max_states=args.max_states, strategy=args.strategy, parallelism=args.jobs,
        deterministic=True if args.deterministic else None)


def write_cert(out: Output, cert: Certificate, dest: str | None) -> None:
    if dest:
        Path(dest).write_text(format_certificate(cert))
        out(f"certificate: {dest}")
    else:
        out(format_certificate(cert).rstrip())


def report_search(out: Output, result, dest: str | None) -> int:
    out(f"status: {result.status}")
    if result.status == "not_perfect":
        return EXIT_NOT_PERFECT
    out(f"states: {result.states}")
    if result.best_total_length is not None:
        out(f"best total length: {result.best_total_length}")
    if not result.found:
        out(f"exhausted: {result.exhaustion}")
        return EXIT_EXHAUSTED
    out(f"depth: {result.depth}")
    out(f"end: {out.pres(result.certificate.end)}")
    write_cert(out, result.certificate, dest)
    return EXIT_OK


# -- subcommands -----------------------------------------------------------

def cmd_parse(args, out):
    for p in load_presentations(args.presentation):
        out(out.pres(p))
    return EXIT_OK


def cmd_canon(args, out):
    for p in load_presentations(args.presentation):
        out(out.pres(Presentation(p.gen_count, canonical_key(p))))
    return EXIT_OK


def cmd_abelian(args, out):
    p = load_one(args.presentation, args.index)
    for row in abelianization_matrix(p):
        out(" ".join(f"{v:3d}" for v in row))
    return EXIT_OK


def cmd_snf(args, out):
    p = load_one(args.presentation, args.index)
    d = smith_normal_form(abelianization_matrix(p)).diagonal
    out("diagonal:", " ".join(map(str, d)))
    out("perfect:", "yes" if is_perfect(p) else "no")
    return EXIT_OK


def cmd_tc(args, out):
    p = load_one(args.presentation, args.index)
    table = todd_coxeter(p, max_cosets=args.max_cosets)
    if not table.complete:
        out(f"incomplete after {table.cosets_defined} cosets")
        return EXIT_EXHAUSTED
    out(table.order)
    return EXIT_OK


def cmd_search(args, out):
    p = load_one(args.presentation, args.index)
    limits = limits_from(args)
    if args.target_len is not None:
        return report_search(out, shorten(p, args.target_len, limits), args.out)
    return report_search(out, trivialize(p, limits), args.out)


def cmd_equiv(args, out):
    p = load_one(args.p, args.index)
    q = load_one(args.q, None)
    return report_search(out, ac_equivalent(p, q, limits_from(args)), args.out)


def cmd_enumerate(args, out):
    limits = limits_from(args)
    count = failed = 0
    for p in enumerate_perfect(args.gens, args.max_len):
        count += 1
        line = out.pres(p)
        if args.trivialize:
            r = trivialize(p, limits)
            failed += not r.found
            line += f"  {r.status} ({r.states} states)"
        out(line)
    out(f"# {count} presentations" + (f", {failed} not trivialized" if args.trivialize else ""))
    return EXIT_EXHAUSTED if failed else EXIT_OK


def cmd_verify(args, out):
    cert = read_certificate(resolve(args.certificate))
    report = verify_certificate(cert, expand_macros=args.expand)
    for line in report.summary_lines():
        out(line)
    if report.ok and args.standard:
        std = canonical_key(Presentation.standard(report.final.gen_count))
        at_std = canonical_key(report.final) == std
        out(f"standard: {'yes' if at_std else 'no'}")
        if not at_std:
            return EXIT_ERROR
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_compose(args, out):
    out(out.pres(compose(load_one(args.p, None), load_one(args.q, None))))
    return EXIT_OK


def cmd_compose_pow(args, out):
    out(out.pres(compose_power(load_one(args.p, args.index), args.k)))
    return EXIT_OK


def cmd_transport(args, out):
    cert = read_certificate(resolve(args.certificate))
    if args.expand:
        cert = expand_substitutions(cert)
    moved = transport_certificate(cert, load_one(args.q, args.index))
    report = verify_certificate(moved)
    out(f"verified: {'yes' if report.ok else 'no'}")
    write_cert(out, moved, args.out)
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_wirtinger(args, out):
    out(out.pres(wirtinger(read_crossings(resolve(args.crossings)))))
    return EXIT_OK


def cmd_eliminate(args, out):
    p = wirtinger(read_crossings(resolve(args.crossings)))
    script = parse_elimination(resolve(args.script).read_text())
    result = eliminate_labeled(p, script)
    out("generators:", ", ".join(f"x{k}" for k in result.generator_labels))
    out(out.pres(result.presentation))
    return EXIT_OK


def cmd_balance(args, out):
    p = load_one(args.presentation, args.index)
    names = default_names(p.gen_count)
    try:
        b = balance(p, parse_word(args.word, names))
    except InvalidBalance as exc:
        out(f"invalid: determinant {exc.determinant}")
        return EXIT_NOT_PERFECT
    if args.eliminate:
        b = eliminate_generator(b, len(b.relators) - 1, args.eliminate)
    out(out.pres(b))
    return EXIT_OK


def cmd_series(args, out):
    spec = parse_series_args(args.family, args.params, args.word)
    out(out.pres(gen_series(spec)))
    return EXIT_OK


def cmd_evans(args, out):
    m = evans_matrix()
    out(format_mat2(m).rstrip())
    out(f"det: {det2(m)}")
    r = ge2_reduce(m, args.budget)
    out(f"ge2: {r.status} after {r.expanded} states")
    return EXIT_OK


def cmd_ge2(args, out):
    m = read_mat2(resolve(args.matrix))
    r = ge2_reduce(m, args.budget)
    out(f"status: {r.status} after {r.expanded} states")
    for f in r.factors:
        out(f"  {f}")
    return EXIT_OK if r.factored else EXIT_EXHAUSTED


def cmd_repl(args, out):
    p = load_one(args.presentation, args.index)
    return repl(p, sys.stdin, out.stream, numeric=out.numeric)


# -- repl ------------------------------------------------------------------

REPL_HELP = ("commands: show | len | key | move <step> | undo | save <file> | quit\n"
             "steps use certificate syntax, e.g. 'R 1 2 +', 'I 1', 'C 2 x', 'SWAP 1 2'")


def repl(start: Presentation, stdin: TextIO, stdout: TextIO, numeric: bool = False,
         prompt: str = "ac> ") -> int:
    history: list[tuple[object, Presentation]] = []
    cur = start

    def say(*parts):
        print(*parts, file=stdout)

    say(format_presentation(cur, numeric))
    while True:
        stdout.write(prompt)
        stdout.flush()
        line = stdin.readline()
        if not line:
            say()
            return EXIT_OK
        cmd, _, rest = line.strip().partition(" ")
        rest = rest.strip()
        if cmd in ("", "#"):
            continue
        if cmd in ("quit", "exit"):
            return EXIT_OK
        if cmd == "show":
            say(format_presentation(cur, numeric))
        elif cmd == "len":
            say(cur.total_length, [len(r) for r in cur.relators])
        elif cmd == "key":
            say(format_presentation(Presentation(cur.gen_count, canonical_key(cur)), numeric))
        elif cmd == "move":
            try:
                m = parse_move(rest, cur.gen_count)
                nxt = apply_move(cur, m)
            except (IllegalMove, ValueError, IndexError) as exc:
                say(f"rejected: {exc}")
                continue
            history.append((m, cur))
            cur = nxt
            say(format_presentation(cur, numeric))
        elif cmd == "undo":
            if not history:
                say("nothing to undo")
                continue
            _, cur = history.pop()
            say(format_presentation(cur, numeric))
        elif cmd == "save":
            if not rest:
                say("save needs a file name")
                continue
            cert = Certificate(start, [m for m, _ in history], cur, ["interactive session"])
            Path(rest).write_text(format_certificate(cert))
            say(f"saved {len(history)} steps to {rest}")
        elif cmd == "help":
            say(REPL_HELP)
        else:
            say(f"unknown command {cmd!r}; {REPL_HELP}")


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("compact", "numeric"), default="compact",
                        help="how words are printed")
    common.add_argument("--index", type=int, help="which presentation of a corpus file (1-based)")

    search = _Parser(add_help=False)
    search.add_argument("--max-relator-len", type=int)
    search.add_argument("--max-total-len", type=int)
    search.add_argument("--max-states", type=int)
    search.add_argument("--strategy", choices=STRATEGIES)
    search.add_argument("--jobs", type=int)
    search.add_argument("--deterministic", action="store_true")
    search.add_argument("--out", help="write the certificate here instead of stdout")

    parser = _Parser(prog="acbench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, helptext, *parents):
        sp = sub.add_parser(name, help=helptext, parents=[common, *parents])
        sp.set_defaults(func=func)
        return sp

    for name, func, text in [("parse", cmd_parse, "print presentations in normal form"),
                             ("canon", cmd_canon, "print canonical keys")]:
        add(name, func, text).add_argument("presentation")
    for name, func, text in [("abelian", cmd_abelian, "exponent-sum matrix"),
                             ("snf", cmd_snf, "Smith normal form of the abelianization")]:
        add(name, func, text).add_argument("presentation")
    sp = add("tc", cmd_tc, "order by coset enumeration")
    sp.add_argument("presentation")
    sp.add_argument("--max-cosets", type=int, default=100_000)

    sp = add("search", cmd_search, "trivialize, or shorten with --target-len", search)
    sp.add_argument("presentation")
    sp.add_argument("--target-len", type=int)
    sp = add("equiv", cmd_equiv, "search for a chain from P to Q", search)
    sp.add_argument("p")
    sp.add_argument("q")
    sp = add("enumerate", cmd_enumerate, "perfect balanced presentations up to a length", search)
    sp.add_argument("--gens", type=int, default=2)
    sp.add_argument("--max-len", type=int, default=6)
    sp.add_argument("--trivialize", action="store_true")

    sp = add("verify", cmd_verify, "replay and check a certificate")
    sp.add_argument("certificate")
    sp.add_argument("--expand", action="store_true", help="replay macros through their expansion")
    sp.add_argument("--standard", action="store_true", help="also require the standard end key")

    sp = add("compose", cmd_compose, "substitute the relators of Q into P")
    sp.add_argument("p")
    sp.add_argument("q")
    sp = add("compose-pow", cmd_compose_pow, "k-fold composition of P with itself")
    sp.add_argument("p")
    sp.add_argument("k", type=int)
    sp = add("transport", cmd_transport, "move a certificate along a composition", search)
    sp.add_argument("certificate")
    sp.add_argument("q")
    sp.add_argument("--expand", action="store_true", help="expand substitution steps first")

    sp = add("wirtinger", cmd_wirtinger, "presentation from a crossing table")
    sp.add_argument("crossings")
    sp = add("eliminate", cmd_eliminate, "run an elimination script on a crossing table")
    sp.add_argument("crossings")
    sp.add_argument("script")
    sp = add("balance", cmd_balance, "append a relator making the presentation perfect")
    sp.add_argument("presentation")
    sp.add_argument("word")
    sp.add_argument("--eliminate", type=int, metavar="GEN",
                    help="then eliminate generator GEN using the new relator")

    sp = add("series", cmd_series, "instantiate a named family")
    sp.add_argument("family", choices=FAMILIES)
    sp.add_argument("params", nargs="*")
    sp.add_argument("--word", help="the word w of the ms family")

    sp = add("evans", cmd_evans, "the determinant-one matrix that resists reduction")
    sp.add_argument("--budget", type=int, default=5000)
    sp = add("ge2", cmd_ge2, "factor a 2x2 Laurent matrix")
    sp.add_argument("matrix")
    sp.add_argument("--budget", type=int, default=5000)

    sp = add("repl", cmd_repl, "apply moves interactively")
    sp.add_argument("presentation")
    return parser


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"acbench: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    out = Output(stdout, args.format == "numeric")
    try:
        return args.func(args, out)
    except (ValueError, FileNotFoundError, IllegalMove) as exc:
        print(f"acbench: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
