"""Group presentations, their text formats and AC-coarsened dedup keys."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .words import (
    ALPHABET,
    Word,
    cyclic_reduce,
    exponent_sums,
    format_word,
    invert,
    normalize,
    parse_word,
    rank_of,
    shortlex_key,
)

CanonicalKey = tuple[Word, ...]


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def default_names(gen_count: int) -> str | None:
    if gen_count <= 3:
        return "xyz"[:gen_count]
    if gen_count <= len(ALPHABET):
        return ALPHABET[:gen_count]
    return None


@dataclass(frozen=True)
class Presentation:
    gen_count: int
    relators: tuple[Word, ...]

    def __post_init__(self):
        if self.gen_count < 0:
            raise ValueError("negative generator count")
        rels = tuple(normalize(r) for r in self.relators)
        top = rank_of(*rels)
        if top > self.gen_count:
            raise ValueError(f"letter x{top} exceeds generator count {self.gen_count}")
        object.__setattr__(self, "relators", rels)

    @classmethod
    def standard(cls, n: int) -> "Presentation":
        return cls(n, tuple((k,) for k in range(1, n + 1)))

    @property
    def is_balanced(self) -> bool:
        return len(self.relators) == self.gen_count

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def replace(self, i: int, word: Sequence[int]) -> "Presentation":
        rels = list(self.relators)
        rels[i] = tuple(word)
        return Presentation(self.gen_count, tuple(rels))

    def __str__(self) -> str:
        return format_presentation(self)


# -- canonical keys --------------------------------------------------------

def canonical_relator(w: Sequence[int]) -> Word:
    """Least rotation of the cyclic core of ``w`` or of its inverse."""
    core = cyclic_reduce(w)[1]
    if not core:
        return core
    best = None
    best_key = None
    for cand in (core, invert(core)):
        for k in range(len(cand)):
            rot = cand[k:] + cand[:k]
            key = shortlex_key(rot)
            if best_key is None or key < best_key:
                best, best_key = rot, key
    return best


def canonical_key(p: Presentation) -> CanonicalKey:
    return tuple(sorted((canonical_relator(r) for r in p.relators), key=shortlex_key))


def key_total_length(key: CanonicalKey) -> int:
    return sum(len(c) for c in key)


def abelianization_matrix(p: Presentation) -> list[list[int]]:
    return [exponent_sums(r, p.gen_count) for r in p.relators]


# -- text formats ----------------------------------------------------------

_PRES_RE = re.compile(r"^\s*<(?P<gens>[^|>]*)\|(?P<rels>[^>]*)>\s*$")


def parse_presentation(text: str) -> Presentation:
    """Parse ``<x,y | xxYYY, xyxYXY>``."""
    m = _PRES_RE.match(text)
    if not m:
        pos = text.find("|")
        raise PresentationSyntaxError(
            "expected '<gens | relators>'", None if pos < 0 else pos)
    gens = [g.strip() for g in m.group("gens").split(",") if g.strip()]
    if not gens:
        raise PresentationSyntaxError("no generators declared", m.start("gens"))
    indexed = gens == [f"x{k}" for k in range(1, len(gens) + 1)]
    for g in gens:
        if not indexed and (len(g) != 1 or not g.islower()):
            raise PresentationSyntaxError(
                f"generator {g!r} is not a single lowercase letter",
                m.start("gens") + m.group("gens").find(g))
    if len(set(gens)) != len(gens):
        raise PresentationSyntaxError("repeated generator", m.start("gens"))
    rels = []
    offset = m.start("rels")
    for chunk in m.group("rels").split(","):
        start = offset
        offset += len(chunk) + 1
        if not chunk.strip():
            if m.group("rels").strip():
                raise PresentationSyntaxError("empty relator", start)
            continue
        try:
            rels.append(parse_word(chunk, None if indexed else gens))
        except ValueError as exc:
            raise PresentationSyntaxError(str(exc), start) from None
    return Presentation(len(gens), tuple(rels))


def format_presentation(p: Presentation, numeric: bool = False) -> str:
    names = default_names(p.gen_count)
    if names is None:
        gens = ",".join(f"x{k}" for k in range(1, p.gen_count + 1))
        numeric = True
    else:
        gens = ",".join(names)
    rels = ", ".join(format_word(r, names, numeric) for r in p.relators)
    return f"<{gens} | {rels}>"


def format_compact_line(p: Presentation) -> str:
    names = default_names(p.gen_count)
    return ";".join(format_word(r, names) for r in p.relators)


def read_corpus(path: str | Path) -> list[Presentation]:
    """Read a corpus file: a ``gens=n`` header, then ``w1;w2;...`` lines."""
    return parse_corpus(Path(path).read_text())


def parse_corpus(text: str) -> list[Presentation]:
    gen_count = None
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens="):
            gen_count = int(line[5:])
            continue
        if line.startswith("<"):
            out.append(parse_presentation(line))
            continue
        if gen_count is None:
            raise PresentationSyntaxError(f"line {lineno}: missing gens= header")
        names = default_names(gen_count)
        try:
            rels = tuple(parse_word(w, names) for w in line.split(";"))
        except ValueError as exc:
            raise PresentationSyntaxError(f"line {lineno}: {exc}") from None
        out.append(Presentation(gen_count, rels))
    return out


def format_corpus(presentations: Iterable[Presentation],
                  comments: Iterable[str] | None = None) -> str:
    presentations = list(presentations)
    lines = [f"# {c}" for c in (comments or [])]
    gen_count = None
    for p in presentations:
        if p.gen_count != gen_count:
            gen_count = p.gen_count
            lines.append(f"gens={gen_count}")
        lines.append(format_compact_line(p))
    return "\n".join(lines) + "\n"
