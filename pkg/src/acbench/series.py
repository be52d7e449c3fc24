"""Named families of balanced presentations of the trivial group.

An equation ``u = v`` becomes the relator ``u v^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation
from .words import Word, commutator, exponent_sums, invert, multiply, parse_word, power

X, Y = (1,), (2,)

_FIXED = {
    "example1": (2, ["XyyxYYY", "YxxyXXX"]),
    "example2": (3, ["YxyXX", "ZyzYY", "XzxZZ"]),
    "example3": (2, ["xxxxyyyXXYY", "xxxxxxyyyyXXXYYY"]),
    "prop11a": (2, ["xxYYY", "xyxYXY"]),
    "prop11b": (2, ["XyxYY", "XyxxyXX"]),
    "prop11c": (2, ["XyyxYYY", "xxyXY"]),
    "prop11d": (2, ["XyyxYYY", "xxYXY"]),
}

ARITY = {name: 0 for name in _FIXED} | {"ak": 1, "ak3": 0, "ms": 1, "gordon": 4}
FAMILIES = tuple(ARITY)


@dataclass(frozen=True)
class SeriesSpec:
    family: str
    parameters: tuple[int, ...] = ()
    extra_word: Word | None = field(default=None)

    def __post_init__(self):
        if self.family not in ARITY:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if len(self.parameters) != ARITY[self.family]:
            raise ValueError(f"{self.family} takes {ARITY[self.family]} parameter(s), "
                             f"got {len(self.parameters)}")
        if (self.family == "ms") != (self.extra_word is not None):
            raise ValueError("the ms family, and only it, takes a word w")


def ak(n: int) -> Presentation:
    """``x^n = y^(n+1), xyx = yxy``."""
    if n < 2:
        raise ValueError("ak needs n >= 2")
    return Presentation(2, (multiply(power(X, n), power(Y, -(n + 1))),
                            multiply(X, Y, X, invert((2, 1, 2)))))


def ms(n: int, w: Sequence[int]) -> Presentation:
    """``x^-1 y^n x = y^(n+1), x = w`` for ``w`` with exponent sum 0 on x."""
    if n < 1:
        raise ValueError("ms needs n >= 1")
    if any(abs(a) > 2 for a in w):
        raise ValueError("w must be a word in x and y")
    if exponent_sums(w, 2)[0] != 0:
        raise ValueError(f"w must have exponent sum 0 on x, got {exponent_sums(w, 2)[0]}")
    return Presentation(2, (multiply(invert(X), power(Y, n), X, power(Y, -(n + 1))),
                            multiply(X, invert(w))))


def gordon(m: int, n: int, p: int, q: int) -> Presentation:
    """``x = [x^m, y^n], y = [x^p, y^q]``, written as ``x^-1 [..]`` so that
    (1,1,1,1) gives ``yXY, YxyXY``."""
    return Presentation(2, (multiply(invert(X), commutator(power(X, m), power(Y, n))),
                            multiply(invert(Y), commutator(power(X, p), power(Y, q)))))


def gen_series(spec: SeriesSpec) -> Presentation:
    if spec.family in _FIXED:
        n, rels = _FIXED[spec.family]
        names = "xyz"[:n]
        return Presentation(n, tuple(parse_word(r, names) for r in rels))
    if spec.family == "ak":
        return ak(*spec.parameters)
    if spec.family == "ak3":
        return ak(3)
    if spec.family == "ms":
        return ms(spec.parameters[0], spec.extra_word)
    return gordon(*spec.parameters)


def parse_series_args(family: str, params: Sequence[str], word: str | None = None) -> SeriesSpec:
    return SeriesSpec(family, tuple(int(p) for p in params),
                      parse_word(word, "xy") if word is not None else None)
