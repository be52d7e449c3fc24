"""Free-group words.

A word is a tuple of nonzero ints: ``k`` stands for the generator x_k and
``-k`` for its inverse.  Every function here returns freely reduced words and
never mutates its arguments.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def normalize(letters: Iterable[int]) -> Word:
    """Freely reduce a letter sequence."""
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def multiply(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        for a in w:
            if out and out[-1] == -a:
                out.pop()
            else:
                out.append(a)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    return multiply(*([w] * k))


def conjugate(w: Sequence[int], g: Sequence[int]) -> Word:
    """Return ``g w g^-1`` reduced."""
    return multiply(g, w, invert(g))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    """``[a, b] = a b a^-1 b^-1``."""
    return multiply(a, b, invert(a), invert(b))


def cyclic_reduce(w: Sequence[int]) -> tuple[Word, Word]:
    """Split a word as ``conjugator * core * conjugator^-1``.

    The core is cyclically reduced.  The input need not be freely reduced.
    """
    w = normalize(w)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[:i], w[i:j + 1]


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    return len(w) < 2 or w[0] != -w[-1]


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    if not w:
        return [w]
    return [w[k:] + w[:k] for k in range(len(w))]


def letter_rank(a: int) -> int:
    """Position of a letter in the order x1 < X1 < x2 < X2 < ..."""
    return 2 * abs(a) - 2 + (a < 0)


def shortlex_key(w: Sequence[int]) -> tuple:
    return (len(w), tuple(letter_rank(a) for a in w))


def rank_of(*words: Sequence[int]) -> int:
    """Largest generator index occurring in the words (0 if none)."""
    return max((abs(a) for w in words for a in w), default=0)


def substitute(w: Sequence[int], images: Sequence[Sequence[int]]) -> Word:
    """Image of ``w`` under the endomorphism ``x_j -> images[j-1]``."""
    n = len(images)
    inv = [invert(im) for im in images]
    out: list[int] = []
    for a in w:
        k = abs(a)
        if k > n:
            raise ValueError(f"letter x{k} outside rank {n}")
        for b in (images[k - 1] if a > 0 else inv[k - 1]):
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return tuple(out)


def exponent_sums(w: Sequence[int], rank: int) -> list[int]:
    sums = [0] * rank
    for a in w:
        k = abs(a)
        if k > rank:
            raise ValueError(f"letter x{k} outside rank {rank}")
        sums[k - 1] += 1 if a > 0 else -1
    return sums


def occurrences(w: Sequence[int], gen: int) -> int:
    """Number of letters of ``w`` equal to ``x_gen`` or its inverse."""
    return sum(1 for a in w if abs(a) == gen)


# Rank-2 Whitehead automorphisms that can change length: one generator is
# fixed, the other is multiplied on the right, the left, or conjugated.
def _whitehead_rank2() -> list[tuple[Word, Word]]:
    autos = []
    for moving, fixed in ((1, 2), (2, 1)):
        for m in (fixed, -fixed):
            for image in ((moving, m), (-m, moving), (-m, moving, m)):
                imgs = [None, None]
                imgs[moving - 1] = image
                imgs[fixed - 1] = (fixed,)
                autos.append((imgs[0], imgs[1]))
    return autos


WHITEHEAD_RANK2 = _whitehead_rank2()


def is_primitive_rank2(w: Sequence[int]) -> bool:
    """Decide whether ``w`` is a member of some free basis of F(x, y)."""
    if rank_of(w) > 2:
        raise ValueError("word is not in the free group of rank 2")
    sx, sy = exponent_sums(w, 2)
    if gcd(sx, sy) != 1:
        return False
    core = cyclic_reduce(w)[1]
    while len(core) > 1:
        best = core
        for images in WHITEHEAD_RANK2:
            cand = cyclic_reduce(substitute(core, images))[1]
            if len(cand) < len(best):
                best = cand
        if best is core:
            return False
        core = best
    return len(core) == 1


# -- text syntax -----------------------------------------------------------

def _names_for(names: str | Sequence[str] | None) -> Sequence[str]:
    return ALPHABET if names is None else names


def parse_word(text: str, names: str | Sequence[str] | None = None) -> Word:
    """Parse a word in compact (``xyX``) or numeric (``1 -3 2``) syntax.

    ``names`` lists the generator letters in index order; the default is
    ``a, b, c, ...``.  ``"1"`` is the empty word, so a lone x_1 in numeric
    syntax is written ``+1``.
    """
    text = text.strip()
    if text in ("", "1", "ε"):
        return EMPTY
    if any(c.isdigit() for c in text):
        try:
            letters = [int(tok) for tok in text.replace(",", " ").split()]
        except ValueError as exc:
            raise ValueError(f"bad numeric word {text!r}") from exc
        if names is not None:
            for a in letters:
                if abs(a) > len(names):
                    raise ValueError(f"letter {a} out of range in {text!r}")
        return normalize(letters)
    names = _names_for(names)
    index = {c: k + 1 for k, c in enumerate(names)}
    letters = []
    for pos, c in enumerate(text):
        if c.isspace():
            continue
        k = index.get(c.lower())
        if k is None:
            raise ValueError(f"letter {c!r} at position {pos} out of range in {text!r}")
        letters.append(-k if c.isupper() else k)
    return normalize(letters)


def format_word(w: Sequence[int], names: str | Sequence[str] | None = None,
                numeric: bool = False) -> str:
    if not w:
        return "1"
    if numeric:
        if len(w) == 1 and w[0] == 1:
            return "+1"
        return " ".join(str(a) for a in w)
    names = _names_for(names)
    if rank_of(w) > len(names):
        return format_word(w, numeric=True)
    return "".join(names[a - 1] if a > 0 else names[-a - 1].upper() for a in w)
