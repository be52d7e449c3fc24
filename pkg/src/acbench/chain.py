"""Build certificates from hand-written chains of presentations.

A chain states, step by step, what a relator should become.  ``Chain``
works out the moves: a conjugation or inversion when the new relator is
conjugate to the old one or its inverse, otherwise a product with a
conjugate of another relator, found by trying every rotation.
"""

from __future__ import annotations

from typing import Sequence

from .moves import (
    AcMove,
    AddGenerator,
    Automorphism,
    Certificate,
    Conjugate,
    DropGenerator,
    PrimitiveFinish,
    RightMultiply,
    Substitute,
    Swap,
    WitnessTerm,
    replay,
)
from .presentation import Presentation, default_names
from .search import retarget
from .words import Word, cyclic_reduce, invert, multiply, normalize, parse_word, power


def conjugacy_witness(d: Sequence[int], w: Sequence[int]) -> Word | None:
    """``c`` with ``d = c w c^-1`` in the free group, if there is one."""
    d, w = normalize(d), normalize(w)
    dc, dcore = cyclic_reduce(d)
    wc, wcore = cyclic_reduce(w)
    if len(dcore) != len(wcore):
        return None
    n = len(wcore)
    for k in range(max(n, 1)):
        # rotation by k: wcore[k:] + wcore[:k] = u^-1 wcore u with u = wcore[:k]
        if wcore[k:] + wcore[:k] == dcore:
            c = multiply(dc, invert(wcore[:k]), invert(wc))
            if multiply(c, w, invert(c)) == d:
                return c
    return None


def single_witness(p: Presentation, i: int, new: Sequence[int]) -> WitnessTerm | None:
    """A term ``(j, s, c)`` with ``new = c r_j^s c^-1 r_i``."""
    d = multiply(new, invert(p.relators[i - 1]))
    for j in range(1, len(p.relators) + 1):
        if j == i:
            continue
        for s in (1, -1):
            c = conjugacy_witness(d, power(p.relators[j - 1], s))
            if c is not None:
                return (j, s, c)
    return None


class Chain:
    def __init__(self, start: Presentation, names: str | None = None):
        self.start = start
        self.p = start
        self.steps: list[AcMove] = []
        self.comments: list[str] = []
        self._names = names

    @property
    def names(self):
        return self._names or default_names(self.p.gen_count)

    def word(self, text: str | Sequence[int]) -> Word:
        return parse_word(text, self.names) if isinstance(text, str) else normalize(text)

    def move(self, *moves: AcMove) -> "Chain":
        for m in moves:
            self.p = m.apply(self.p)
            self.steps.append(m)
        return self

    def to(self, i: int, new: str | Sequence[int], substitution: bool = False) -> "Chain":
        """Make relator ``i`` equal to ``new`` exactly.

        Products are written with primitive moves unless ``substitution``
        asks for a single substitution macro.
        """
        new = self.word(new)
        old = self.p.relators[i - 1]
        if new == old:
            return self
        try:
            return self.move(*retarget(old, new, i))
        except AssertionError:
            pass
        term = single_witness(self.p, i, new)
        if term is None:
            raise ValueError(f"relator {i}: no single step reaches the requested word")
        j, s, c = term
        if substitution:
            return self.move(Substitute(i, new, (term,)))
        # c r c^-1 r_i = r_i e r e^-1 with e = r_i^-1 c
        e = multiply(invert(old), c)
        moves: list[AcMove] = []
        if e:
            moves.append(Conjugate(i, invert(e)))
        moves.append(RightMultiply(i, j, s))
        if e:
            moves.append(Conjugate(i, e))
        self.move(*moves)
        assert self.p.relators[i - 1] == new
        return self

    def substitute(self, i: int, new: str | Sequence[int],
                   witness: Sequence[WitnessTerm] | None = None) -> "Chain":
        new = self.word(new)
        if witness is None:
            term = single_witness(self.p, i, new)
            if term is None:
                raise ValueError(f"relator {i}: no single-term substitution found")
            witness = (term,)
        return self.move(Substitute(i, new, tuple(witness)))

    def reach(self, *relators: str | Sequence[int], substitution: bool = False) -> "Chain":
        for i, r in enumerate(relators, 1):
            self.to(i, r, substitution)
        return self

    def automorphism(self, images: Sequence[str], inverse_images: Sequence[str]) -> "Chain":
        return self.move(Automorphism(tuple(self.word(w) for w in images),
                                      tuple(self.word(w) for w in inverse_images)))

    def swap(self, i: int, j: int) -> "Chain":
        return self.move(Swap(i, j))

    def add(self) -> "Chain":
        return self.move(AddGenerator())

    def drop(self) -> "Chain":
        return self.move(DropGenerator())

    def primitive(self, i: int) -> "Chain":
        return self.move(PrimitiveFinish(i))

    def note(self, text: str) -> "Chain":
        self.comments.append(text)
        return self

    def certificate(self) -> Certificate:
        assert replay(self.start, self.steps) == self.p
        return Certificate(self.start, list(self.steps), self.p, list(self.comments))
