"""Balanced presentations of the trivial group from knot diagrams of the
unknot: Wirtinger presentation, Tietze elimination, and a final balancing
relator."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .presentation import Presentation, abelianization_matrix
from .triviality import determinant
from .words import Word, invert, multiply, normalize, occurrences, substitute


@dataclass(frozen=True)
class Crossing:
    out_under: int
    over: int
    in_under: int
    sign: int


@dataclass(frozen=True)
class CrossingTable:
    crossings: tuple[Crossing, ...]

    @property
    def arcs(self) -> int:
        return len(self.crossings)

    def validate(self) -> None:
        n = self.arcs
        outs = sorted(c.out_under for c in self.crossings)
        ins = sorted(c.in_under for c in self.crossings)
        if outs != list(range(1, n + 1)) or ins != list(range(1, n + 1)):
            raise ValueError("each arc must end exactly one under-strand and start one")
        for c in self.crossings:
            if not 1 <= c.over <= n:
                raise ValueError(f"over arc {c.over} out of range")
            if c.sign not in (1, -1):
                raise ValueError(f"bad crossing sign {c.sign}")


def parse_crossings(text: str) -> CrossingTable:
    """``arcs=n`` header, then one ``out over in +|-`` line per crossing."""
    arcs = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("arcs="):
            arcs = int(line[5:])
            continue
        toks = line.split()
        if len(toks) != 4 or toks[3] not in ("+", "-"):
            raise ValueError(f"line {lineno}: expected 'out over in +|-'")
        rows.append(Crossing(int(toks[0]), int(toks[1]), int(toks[2]),
                             1 if toks[3] == "+" else -1))
    table = CrossingTable(tuple(rows))
    if arcs is not None and arcs != table.arcs:
        raise ValueError(f"header says {arcs} arcs but {table.arcs} crossings given")
    table.validate()
    return table


def read_crossings(path: str | Path) -> CrossingTable:
    return parse_crossings(Path(path).read_text())


def format_crossings(table: CrossingTable) -> str:
    lines = [f"arcs={table.arcs}"]
    lines += [f"{c.out_under} {c.over} {c.in_under} {'+' if c.sign > 0 else '-'}"
              for c in table.crossings]
    return "\n".join(lines) + "\n"


def wirtinger(table: CrossingTable) -> Presentation:
    """One relator ``x_out^-1 x_over^s x_in x_over^-s`` per crossing."""
    table.validate()
    rels = []
    for c in table.crossings:
        o = (c.over,) if c.sign > 0 else (-c.over,)
        rels.append(normalize((-c.out_under,) + o + (c.in_under,) + invert(o)))
    return Presentation(table.arcs, tuple(rels))


@dataclass(frozen=True)
class EliminationScript:
    """Which relator to discard, then ``(relator, generator)`` pairs.

    Relators and generators are named by their 1-based indices in the
    presentation the script starts from; names survive renumbering.
    """
    discard_index: int
    steps: tuple[tuple[int, int], ...]


def parse_elimination(text: str) -> EliminationScript:
    """``discard k`` then ``eliminate g using r`` lines."""
    discard = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] == "discard" and len(toks) == 2:
            discard = int(toks[1])
        elif toks[0] == "eliminate" and len(toks) == 4 and toks[2] == "using":
            steps.append((int(toks[3]), int(toks[1])))
        else:
            raise ValueError(f"line {lineno}: expected 'discard k' or 'eliminate g using r'")
    if discard is None:
        raise ValueError("elimination script needs a 'discard' line")
    return EliminationScript(discard, tuple(steps))


def format_elimination(script: EliminationScript) -> str:
    lines = [f"discard {script.discard_index}"]
    lines += [f"eliminate {g} using {r}" for r, g in script.steps]
    return "\n".join(lines) + "\n"


def solve_for(relator: Sequence[int], gen: int) -> Word:
    """Express ``x_gen`` from a relator in which it occurs exactly once."""
    if occurrences(relator, gen) != 1:
        raise ValueError(f"x{gen} occurs {occurrences(relator, gen)} times, need exactly once")
    k = next(t for t, a in enumerate(relator) if abs(a) == gen)
    before, e, after = tuple(relator[:k]), relator[k], tuple(relator[k + 1:])
    # x^e * after * before = 1
    rest = multiply(after, before)
    return invert(rest) if e > 0 else rest


def eliminate_generator(p: Presentation, rel: int, gen: int) -> Presentation:
    """Tietze-eliminate ``x_gen`` via relator ``rel`` (both 0-based here:
    ``rel`` indexes relators, ``gen`` is 1-based)."""
    w = solve_for(p.relators[rel], gen)
    n = p.gen_count
    images = [(k,) for k in range(1, n + 1)]
    images[gen - 1] = w
    # renumber the generators above gen downward
    shift = [()] + [(k,) if k < gen else ((k - 1,) if k > gen else ()) for k in range(1, n + 1)]
    rels = []
    for t, r in enumerate(p.relators):
        if t == rel:
            continue
        r = substitute(r, images)
        rels.append(tuple(shift[abs(a)][0] * (1 if a > 0 else -1) for a in r))
    return Presentation(n - 1, tuple(rels))


@dataclass
class Elimination:
    presentation: Presentation
    generator_labels: list[int]
    relator_labels: list[int]


def eliminate_labeled(p: Presentation, script: EliminationScript) -> Elimination:
    gens = list(range(1, p.gen_count + 1))
    rels = list(range(1, len(p.relators) + 1))
    if script.discard_index not in rels:
        raise ValueError(f"discard index {script.discard_index} out of range")
    k = rels.index(script.discard_index)
    p = Presentation(p.gen_count, p.relators[:k] + p.relators[k + 1:])
    rels.pop(k)
    for rel_label, gen_label in script.steps:
        if rel_label not in rels:
            raise ValueError(f"relator {rel_label} no longer present")
        if gen_label not in gens:
            raise ValueError(f"generator {gen_label} no longer present")
        r, g = rels.index(rel_label), gens.index(gen_label) + 1
        try:
            p = eliminate_generator(p, r, g)
        except ValueError as exc:
            raise ValueError(f"eliminating x{gen_label} using relator {rel_label}: {exc}") from None
        rels.pop(r)
        gens.pop(g - 1)
    return Elimination(p, gens, rels)


def eliminate(p: Presentation, script: EliminationScript) -> Presentation:
    return eliminate_labeled(p, script).presentation


class InvalidBalance(ValueError):
    def __init__(self, det: int):
        self.determinant = det
        super().__init__(f"abelianization determinant is {det}, not +-1")


def balance(p: Presentation, w: Sequence[int]) -> Presentation:
    """Append ``w`` so the presentation becomes balanced and perfect."""
    if p.gen_count != len(p.relators) + 1:
        raise ValueError("need exactly one more generator than relators")
    out = Presentation(p.gen_count, p.relators + (normalize(w),))
    det = determinant(abelianization_matrix(out))
    if abs(det) != 1:
        raise InvalidBalance(det)
    return out
