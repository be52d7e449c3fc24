"""AC-transformations, certificates and their replay.

Relator and generator indices in moves are 1-based, matching the
certificate text format.  Moves are split three ways:

* primitive: ``R``, ``I``, ``C``, ``ADD``, ``DROP`` (the moves AC1-AC5);
* macro: ``L``, ``SWAP``, ``SUB``, which expand into primitive moves;
* conditional: ``AUT`` and ``PRIM``, sound only when the relators
  normally generate the whole free group.  The verifier never tries to
  establish that, it only flags these steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from .presentation import (
    Presentation,
    default_names,
    format_presentation,
    parse_presentation,
)
from .words import (
    Word,
    conjugate,
    format_word,
    invert,
    is_primitive_rank2,
    multiply,
    normalize,
    occurrences,
    parse_word,
    power,
    substitute,
)


class IllegalMove(ValueError):
    """A move whose preconditions fail.  ``reason`` is machine readable."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def _check_index(p: Presentation, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= len(p.relators):
            raise IllegalMove("index", f"relator {i} out of range 1..{len(p.relators)}")


def _check_distinct(i: int, j: int) -> None:
    if i == j:
        raise IllegalMove("index", f"relator indices must differ, got {i} twice")


def _check_sign(s: int) -> None:
    if s not in (1, -1):
        raise IllegalMove("sign", f"exponent must be +1 or -1, got {s}")


@dataclass(frozen=True)
class RightMultiply:
    i: int
    j: int
    sign: int = 1
    kind = "R"

    def apply(self, p):
        _check_index(p, self.i, self.j)
        _check_distinct(self.i, self.j)
        _check_sign(self.sign)
        r = p.relators
        return p.replace(self.i - 1, multiply(r[self.i - 1], power(r[self.j - 1], self.sign)))

    def to_line(self, names=None):
        return f"R {self.i} {self.j} {_sign(self.sign)}"


@dataclass(frozen=True)
class LeftMultiply:
    i: int
    j: int
    sign: int = 1
    kind = "L"

    def apply(self, p):
        _check_index(p, self.i, self.j)
        _check_distinct(self.i, self.j)
        _check_sign(self.sign)
        r = p.relators
        return p.replace(self.i - 1, multiply(power(r[self.j - 1], self.sign), r[self.i - 1]))

    def to_line(self, names=None):
        return f"L {self.i} {self.j} {_sign(self.sign)}"


@dataclass(frozen=True)
class Invert:
    i: int
    kind = "I"

    def apply(self, p):
        _check_index(p, self.i)
        return p.replace(self.i - 1, invert(p.relators[self.i - 1]))

    def to_line(self, names=None):
        return f"I {self.i}"


@dataclass(frozen=True)
class Conjugate:
    """``r_i <- w r_i w^-1``."""
    i: int
    word: Word
    kind = "C"

    def apply(self, p):
        _check_index(p, self.i)
        if any(abs(a) > p.gen_count for a in self.word):
            raise IllegalMove("index", "conjugator uses an undeclared generator")
        return p.replace(self.i - 1, conjugate(p.relators[self.i - 1], self.word))

    def to_line(self, names=None):
        return f"C {self.i} {format_word(self.word, names)}"


@dataclass(frozen=True)
class Swap:
    i: int
    j: int
    kind = "SWAP"

    def apply(self, p):
        _check_index(p, self.i, self.j)
        _check_distinct(self.i, self.j)
        rels = list(p.relators)
        rels[self.i - 1], rels[self.j - 1] = rels[self.j - 1], rels[self.i - 1]
        return Presentation(p.gen_count, tuple(rels))

    def to_line(self, names=None):
        return f"SWAP {self.i} {self.j}"


WitnessTerm = tuple[int, int, Word]


def witness_product(p: Presentation, witness: Sequence[WitnessTerm]) -> Word:
    """``prod_t c_t r_{j_t}^{s_t} c_t^-1`` in the free group."""
    out: Word = ()
    for j, s, c in witness:
        out = multiply(out, conjugate(power(p.relators[j - 1], s), c))
    return out


@dataclass(frozen=True)
class Substitute:
    """Replace r_i by ``new`` where ``new = E r_i`` and ``E`` is the witness
    product of conjugates of the other relators."""
    i: int
    new: Word
    witness: tuple[WitnessTerm, ...]
    kind = "SUB"

    def apply(self, p):
        _check_index(p, self.i)
        for j, s, c in self.witness:
            _check_index(p, j)
            _check_sign(s)
            if j == self.i:
                raise IllegalMove("witness", f"witness uses relator {j} being replaced")
        lhs = multiply(witness_product(p, self.witness), p.relators[self.i - 1])
        if lhs != normalize(self.new):
            raise IllegalMove(
                "witness", f"witness product gives {format_word(lhs)}, "
                f"expected {format_word(self.new)}")
        return p.replace(self.i - 1, self.new)

    def to_line(self, names=None):
        terms = "".join(f"({j},{_sign(s)},{format_word(c, names)})"
                        for j, s, c in self.witness)
        return f"SUB {self.i} {format_word(self.new, names)} := {terms}"


@dataclass(frozen=True)
class Automorphism:
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]
    kind = "AUT"

    def apply(self, p):
        n = p.gen_count
        if len(self.images) != n or len(self.inverse_images) != n:
            raise IllegalMove("automorphism", f"need {n} images and {n} inverse images")
        for k in range(1, n + 1):
            there = substitute(substitute((k,), self.images), self.inverse_images)
            back = substitute(substitute((k,), self.inverse_images), self.images)
            if there != (k,) or back != (k,):
                raise IllegalMove("automorphism", f"inverse check fails on generator {k}")
        return Presentation(n, tuple(substitute(r, self.images) for r in p.relators))

    def to_line(self, names=None):
        imgs = ",".join(format_word(w, names) for w in self.images)
        invs = ",".join(format_word(w, names) for w in self.inverse_images)
        return f"AUT {imgs} / {invs}"


@dataclass(frozen=True)
class AddGenerator:
    kind = "ADD"

    def apply(self, p):
        n = p.gen_count + 1
        return Presentation(n, p.relators + ((n,),))

    def to_line(self, names=None):
        return "ADD"


@dataclass(frozen=True)
class DropGenerator:
    kind = "DROP"

    def apply(self, p):
        n = p.gen_count
        if not p.relators or p.relators[-1] != (n,):
            raise IllegalMove("drop", f"last relator is not the single letter x{n}")
        if any(occurrences(r, n) for r in p.relators[:-1]):
            raise IllegalMove("drop", f"x{n} occurs in another relator")
        return Presentation(n - 1, p.relators[:-1])

    def to_line(self, names=None):
        return "DROP"


@dataclass(frozen=True)
class PrimitiveFinish:
    """Rank 2: a presentation of the trivial group with a primitive relator
    goes straight to the standard one."""
    i: int
    kind = "PRIM"

    def apply(self, p):
        _check_index(p, self.i)
        if p.gen_count != 2 or len(p.relators) != 2:
            raise IllegalMove("primitive", "only balanced rank-2 presentations")
        if not is_primitive_rank2(p.relators[self.i - 1]):
            raise IllegalMove("primitive", f"relator {self.i} is not primitive")
        return Presentation.standard(2)

    def to_line(self, names=None):
        return f"PRIM {self.i}"


AcMove = Union[RightMultiply, LeftMultiply, Invert, Conjugate, Swap, Substitute,
               Automorphism, AddGenerator, DropGenerator, PrimitiveFinish]

PRIMITIVE_KINDS = frozenset({"R", "I", "C", "ADD", "DROP"})
MACRO_KINDS = frozenset({"L", "SWAP", "SUB"})
CONDITIONAL_KINDS = frozenset({"AUT", "PRIM"})


def apply_move(p: Presentation, m: AcMove) -> Presentation:
    return m.apply(p)


def is_conditional(m: AcMove) -> bool:
    return m.kind in CONDITIONAL_KINDS


def inverse_move(m: AcMove, before: Presentation) -> AcMove:
    """A move undoing ``m`` when ``m`` was applied to ``before``."""
    if isinstance(m, (RightMultiply, LeftMultiply)):
        return type(m)(m.i, m.j, -m.sign)
    if isinstance(m, (Invert, Swap)):
        return m
    if isinstance(m, Conjugate):
        return Conjugate(m.i, invert(m.word))
    if isinstance(m, Substitute):
        witness = tuple((j, -s, c) for j, s, c in reversed(m.witness))
        return Substitute(m.i, before.relators[m.i - 1], witness)
    if isinstance(m, AddGenerator):
        return DropGenerator()
    if isinstance(m, DropGenerator):
        return AddGenerator()
    if isinstance(m, Automorphism):
        return Automorphism(m.inverse_images, m.images)
    raise IllegalMove("inverse", f"{m.kind} has no inverse move")


def expand_move(p: Presentation, m: AcMove) -> list[AcMove]:
    """Rewrite a macro as primitive moves valid at ``p``.

    Conditional moves are returned unchanged.
    """
    if isinstance(m, LeftMultiply):
        # r_j^s r_i = (r_j^s r_i r_j^-s) r_j^s
        return [Conjugate(m.i, power(p.relators[m.j - 1], m.sign)),
                RightMultiply(m.i, m.j, m.sign)]
    if isinstance(m, Swap):
        a = p.relators[m.i - 1]
        return [RightMultiply(m.i, m.j, 1), RightMultiply(m.j, m.i, -1),
                RightMultiply(m.i, m.j, 1), Conjugate(m.i, invert(a)), Invert(m.j)]
    if isinstance(m, Substitute):
        m.apply(p)
        out: list[AcMove] = []
        cur = p
        for j, s, c in reversed(m.witness):
            for step in (Conjugate(m.i, invert(c)), LeftMultiply(m.i, j, s), Conjugate(m.i, c)):
                for prim in expand_move(cur, step):
                    out.append(prim)
                    cur = prim.apply(cur)
        return out
    return [m]


def expand_moves(p: Presentation, steps: Sequence[AcMove]) -> list[AcMove]:
    out = []
    for m in steps:
        for prim in expand_move(p, m):
            out.append(prim)
            p = prim.apply(p)
    return out


# -- certificates ----------------------------------------------------------

@dataclass
class Certificate:
    start: Presentation
    steps: list[AcMove]
    end: Presentation
    comments: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    ok: bool
    final: Presentation
    semantic_steps: list[tuple[int, AcMove]] = field(default_factory=list)
    macro_steps: list[tuple[int, AcMove]] = field(default_factory=list)
    failed_step: int | None = None
    reason: str | None = None

    @property
    def classification(self) -> str:
        return "conditional" if self.semantic_steps else "elementary"

    def summary_lines(self) -> list[str]:
        lines = [f"status: {'ok' if self.ok else 'FAILED'}"]
        if not self.ok:
            where = "end" if self.failed_step is None else f"step {self.failed_step}"
            lines.append(f"failure at {where}: {self.reason}")
        if self.macro_steps:
            counts: dict[str, int] = {}
            for _, m in self.macro_steps:
                counts[_MACRO_NAMES[m.kind]] = counts.get(_MACRO_NAMES[m.kind], 0) + 1
            parts = ", ".join(f"{v} {k} macro{'s' if v > 1 else ''}"
                              for k, v in sorted(counts.items()))
            lines.append(f"elementary: no ({parts})")
        else:
            lines.append("elementary: yes")
        if self.semantic_steps:
            lines.append("conditional: yes (" + ", ".join(
                f"{m.kind} at step {k}" for k, m in self.semantic_steps) + ")")
        else:
            lines.append("conditional: no")
        lines.append(f"classification: {self.classification}")
        lines.append(f"final: {format_presentation(self.final)}")
        return lines


_MACRO_NAMES = {"L": "left-multiply", "SWAP": "swap", "SUB": "substitution"}


def replay(start: Presentation, steps: Sequence[AcMove]) -> Presentation:
    p = start
    for m in steps:
        p = m.apply(p)
    return p


def verify_certificate(cert: Certificate, expand_macros: bool = False) -> VerificationReport:
    """Replay ``cert`` and compare with its stated end, letter for letter.

    With ``expand_macros`` every macro is replayed through its primitive
    expansion instead.
    """
    p = cert.start
    report = VerificationReport(ok=False, final=p)
    for k, m in enumerate(cert.steps, 1):
        try:
            if expand_macros and m.kind in MACRO_KINDS:
                for prim in expand_move(p, m):
                    p = prim.apply(p)
            else:
                p = m.apply(p)
        except IllegalMove as exc:
            report.failed_step = k
            report.reason = str(exc)
            report.final = p
            return report
        if m.kind in CONDITIONAL_KINDS:
            report.semantic_steps.append((k, m))
        elif m.kind in MACRO_KINDS:
            report.macro_steps.append((k, m))
    report.final = p
    if p != cert.end:
        report.reason = (f"replay ends at {format_presentation(p)}, "
                         f"certificate claims {format_presentation(cert.end)}")
        return report
    report.ok = True
    return report


# -- neighbours ------------------------------------------------------------

def neighbors(p: Presentation, max_relator_len: int) -> list[tuple[AcMove, Presentation]]:
    """All single AC moves whose result keeps every changed relator short.

    Conjugators are single letters; no-op moves are omitted.
    """
    out = []
    m = len(p.relators)
    letters = [a for k in range(1, p.gen_count + 1) for a in (k, -k)]
    for i in range(1, m + 1):
        ri = p.relators[i - 1]
        cands: list[AcMove] = []
        for j in range(1, m + 1):
            if j != i:
                for s in (1, -1):
                    cands.append(RightMultiply(i, j, s))
                    cands.append(LeftMultiply(i, j, s))
        cands.append(Invert(i))
        cands.extend(Conjugate(i, (a,)) for a in letters)
        for mv in cands:
            q = mv.apply(p)
            new = q.relators[i - 1]
            if len(new) <= max_relator_len and new != ri:
                out.append((mv, q))
    return out


# -- text format -----------------------------------------------------------

def _parse_sign(tok: str) -> int:
    if tok in ("+", "+1", "1"):
        return 1
    if tok in ("-", "-1"):
        return -1
    raise ValueError(f"bad sign {tok!r}")


def _parse_witness(text: str, names) -> tuple[WitnessTerm, ...]:
    text = text.strip()
    terms = []
    while text:
        if not text.startswith("("):
            raise ValueError(f"bad witness near {text!r}")
        close = text.index(")")
        j, s, c = (t.strip() for t in text[1:close].split(","))
        terms.append((int(j), _parse_sign(s), parse_word(c, names)))
        text = text[close + 1:].strip()
    return tuple(terms)


def parse_move(line: str, gen_count: int) -> AcMove:
    """Parse one certificate step for a presentation with ``gen_count`` generators."""
    names = default_names(gen_count)
    head, _, rest = line.strip().partition(" ")
    rest = rest.strip()
    toks = rest.split()
    head = head.upper()
    if head in ("R", "L"):
        i, j, s = toks
        cls = RightMultiply if head == "R" else LeftMultiply
        return cls(int(i), int(j), _parse_sign(s))
    if head == "I":
        return Invert(int(toks[0]))
    if head == "C":
        i, _, w = rest.partition(" ")
        return Conjugate(int(i), parse_word(w, names))
    if head == "SWAP":
        return Swap(int(toks[0]), int(toks[1]))
    if head == "SUB":
        i, _, rest = rest.partition(" ")
        new, _, wit = rest.partition(":=")
        return Substitute(int(i), parse_word(new, names), _parse_witness(wit, names))
    if head == "AUT":
        imgs, _, invs = rest.partition("/")
        return Automorphism(tuple(parse_word(w, names) for w in imgs.split(",")),
                            tuple(parse_word(w, names) for w in invs.split(",")))
    if head == "ADD":
        return AddGenerator()
    if head == "DROP":
        return DropGenerator()
    if head == "PRIM":
        return PrimitiveFinish(int(toks[0]))
    raise ValueError(f"unknown step {line!r}")


def parse_certificate(text: str) -> Certificate:
    start = end = None
    steps: list[AcMove] = []
    comments: list[str] = []
    gen_count = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("START"):
                start = parse_presentation(line[5:])
                gen_count = start.gen_count
            elif line.startswith("END"):
                end = parse_presentation(line[3:])
            else:
                if gen_count is None:
                    raise ValueError("step before START")
                m = parse_move(line, gen_count)
                if isinstance(m, AddGenerator):
                    gen_count += 1
                elif isinstance(m, DropGenerator):
                    gen_count -= 1
                steps.append(m)
        except (ValueError, IndexError) as exc:
            raise ValueError(f"certificate line {lineno}: {exc}") from None
    if start is None or end is None:
        raise ValueError("certificate needs START and END lines")
    return Certificate(start, steps, end, comments)


def format_certificate(cert: Certificate) -> str:
    lines = [f"# {c}" for c in cert.comments]
    lines.append(f"START {format_presentation(cert.start)}")
    n = cert.start.gen_count
    for m in cert.steps:
        lines.append(m.to_line(default_names(n)))
        if isinstance(m, AddGenerator):
            n += 1
        elif isinstance(m, DropGenerator):
            n -= 1
    lines.append(f"END {format_presentation(cert.end)}")
    return "\n".join(lines) + "\n"


def read_certificate(path: str | Path) -> Certificate:
    return parse_certificate(Path(path).read_text())


def write_certificate(cert: Certificate, path: str | Path) -> None:
    Path(path).write_text(format_certificate(cert))
