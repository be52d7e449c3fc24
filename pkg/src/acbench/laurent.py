"""Integral Laurent polynomials and 2x2 matrices over them.

``ge2_reduce`` searches for a factorization of an invertible matrix into
elementary and diagonal matrices by row operations.  Success is certified
by multiplying the factors back; failure within the budget is only
evidence, never proof, that the matrix lies outside GE2.
"""

from __future__ import annotations

import heapq
import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


class LaurentPoly:
    """Finite sum of ``c * x1^e1 * ... * xk^ek`` with integer ``c`` and ``e``."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, int] | Iterable = ()):
        self.nvars = nvars
        clean: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong arity for {nvars} variables")
            clean[e] = clean.get(e, 0) + c
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, c: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, nvars: int, exps: Exponent, c: int = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): c})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "LaurentPoly":
        e = [0] * nvars
        e[k - 1] = 1
        return cls.monomial(nvars, tuple(e))

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exponent, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other) if isinstance(other, (int, LaurentPoly)) else NotImplemented
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    @property
    def size(self) -> int:
        """Number of terms."""
        return len(self.terms)

    def is_trivial_unit(self) -> bool:
        """``+-x^e``: the only units of the integral Laurent ring."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_trivial_unit():
            raise ValueError(f"{self} is not a unit")
        (e, c), = self.terms.items()
        return LaurentPoly(self.nvars, {tuple(-a for a in e): c})

    def spread(self) -> int:
        """Sum over variables of the exponent range."""
        if not self.terms:
            return 0
        exps = list(self.terms)
        return sum(max(e[k] for e in exps) - min(e[k] for e in exps) for k in range(self.nvars))

    def weight(self) -> int:
        return sum(abs(c) for c in self.terms.values())


def _graded_lex(e: Exponent):
    return (-sum(e), tuple(-a for a in e))


def format_poly(p: LaurentPoly) -> str:
    """Terms in graded-lex order, written ``c*x1^e1*x2^e2``."""
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=_graded_lex):
        c = p.terms[e]
        factors = []
        for k, a in enumerate(e, 1):
            if a == 1:
                factors.append(f"x{k}")
            elif a:
                factors.append(f"x{k}^{a}")
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*((?:x\d+(?:\^-?\d+)?\s*\*?\s*)*)")


def parse_poly(text: str, nvars: int) -> LaurentPoly:
    """Inverse of ``format_poly``; also accepts terms in any order."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentPoly(nvars)
    terms: dict[Exponent, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        sign, coeff, mono = m.groups()
        if not coeff and not mono:
            raise ValueError(f"empty term at {s[pos:]!r}")
        c = int(coeff) if coeff else 1
        if sign == "-":
            c = -c
        e = [0] * nvars
        for var, exp in re.findall(r"x(\d+)(?:\^(-?\d+))?", mono):
            k = int(var)
            if not 1 <= k <= nvars:
                raise ValueError(f"variable x{k} outside x1..x{nvars}")
            e[k - 1] += int(exp) if exp else 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"unexpected {s[pos]!r} in polynomial")
    return LaurentPoly(nvars, terms)


@dataclass(frozen=True)
class Mat2:
    a11: LaurentPoly
    a12: LaurentPoly
    a21: LaurentPoly
    a22: LaurentPoly

    @property
    def nvars(self) -> int:
        return self.a11.nvars

    @classmethod
    def identity(cls, nvars: int) -> "Mat2":
        one, zero = LaurentPoly.constant(nvars, 1), LaurentPoly(nvars)
        return cls(one, zero, zero, one)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a11 * o.a11 + self.a12 * o.a21, self.a11 * o.a12 + self.a12 * o.a22,
                    self.a21 * o.a11 + self.a22 * o.a21, self.a21 * o.a12 + self.a22 * o.a22)

    def entries(self) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]:
        return (self.a11, self.a12, self.a21, self.a22)

    def size(self) -> int:
        return sum(p.size for p in self.entries())

    def __str__(self):
        return "\n".join(format_poly(p) for p in self.entries())


def det2(m: Mat2) -> LaurentPoly:
    return m.a11 * m.a22 - m.a12 * m.a21


def is_trivial_unit(p: LaurentPoly) -> bool:
    return p.is_trivial_unit()


def parse_mat2(text: str, nvars: int | None = None) -> Mat2:
    """Four polynomials, one per line, row by row."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if len(lines) != 4:
        raise ValueError(f"expected 4 polynomial lines, got {len(lines)}")
    if nvars is None:
        nvars = max([int(k) for ln in lines for k in re.findall(r"x(\d+)", ln)] or [1])
    return Mat2(*(parse_poly(ln, nvars) for ln in lines))


def read_mat2(path: str | Path) -> Mat2:
    return parse_mat2(Path(path).read_text())


def format_mat2(m: Mat2) -> str:
    return str(m) + "\n"


@dataclass(frozen=True)
class Factor:
    """``E12(p)`` = [[1,p],[0,1]], ``E21(p)`` = [[1,0],[p,1]], or ``D(u,v)``."""
    kind: str
    p: LaurentPoly
    q: LaurentPoly | None = None

    def matrix(self) -> Mat2:
        n = self.p.nvars
        one, zero = LaurentPoly.constant(n, 1), LaurentPoly(n)
        if self.kind == "E12":
            return Mat2(one, self.p, zero, one)
        if self.kind == "E21":
            return Mat2(one, zero, self.p, one)
        return Mat2(self.p, zero, zero, self.q)

    def __str__(self):
        if self.kind == "D":
            return f"D({self.p}, {self.q})"
        return f"{self.kind}({self.p})"


def multiply_factors(factors: Iterable[Factor], nvars: int) -> Mat2:
    out = Mat2.identity(nvars)
    for f in factors:
        out = out @ f.matrix()
    return out


@dataclass
class Ge2Result:
    status: str  # "factored" or "gave_up"
    factors: list[Factor]
    expanded: int

    @property
    def factored(self) -> bool:
        return self.status == "factored"


def _row_op(m: Mat2, target: int, q: LaurentPoly) -> Mat2:
    """Add ``q`` times the other row to row ``target`` (0 or 1)."""
    if target == 0:
        return Mat2(m.a11 + q * m.a21, m.a12 + q * m.a22, m.a21, m.a22)
    return Mat2(m.a11, m.a12, m.a21 + q * m.a11, m.a22 + q * m.a12)


def _finish(m: Mat2) -> list[tuple[int, LaurentPoly]] | None:
    """Row operations taking a matrix with a unit entry to diagonal form."""
    ops: list[tuple[int, LaurentPoly]] = []

    def do(target, q):
        nonlocal m
        ops.append((target, q))
        m = _row_op(m, target, q)

    if not any(p.is_trivial_unit() for p in m.entries()):
        return None
    if m.a12.is_trivial_unit() and not (m.a11.is_trivial_unit() or m.a21.is_trivial_unit()):
        do(1, -(m.a22 * m.a12.unit_inverse()))
    elif m.a22.is_trivial_unit() and not (m.a11.is_trivial_unit() or m.a21.is_trivial_unit()):
        do(0, -(m.a12 * m.a22.unit_inverse()))
    if not m.a11.is_trivial_unit():
        if not m.a21.is_trivial_unit():
            return None
        do(0, (1 - m.a11) * m.a21.unit_inverse())
    do(1, -(m.a21 * m.a11.unit_inverse()))
    if not m.a22.is_trivial_unit():
        return None
    do(0, -(m.a12 * m.a22.unit_inverse()))
    return ops


def _score(m: Mat2) -> tuple[int, int, int]:
    entries = m.entries()
    return (sum(p.size for p in entries), sum(p.spread() for p in entries),
            sum(p.weight() for p in entries))


def _candidates(m: Mat2):
    """Monomial multipliers that cancel one term of the target row."""
    rows = ((m.a11, m.a12), (m.a21, m.a22))
    n = m.nvars
    for target in (0, 1):
        src = rows[1 - target]
        dst = rows[target]
        seen = set()
        for col in (0, 1):
            for e1, c1 in dst[col].terms.items():
                for e2, c2 in src[col].terms.items():
                    if c1 % c2:
                        continue
                    e = tuple(a - b for a, b in zip(e1, e2))
                    key = (e, -c1 // c2)
                    if key in seen:
                        continue
                    seen.add(key)
                    yield target, LaurentPoly.monomial(n, e, -c1 // c2)


def ge2_reduce(m: Mat2, budget: int = 5000) -> Ge2Result:
    """Best-first search for a product of elementary and diagonal factors.

    States are matrices reached by row operations ``row_a += q * row_b``
    with monomial ``q``; the score is total term count, then exponent
    spread.  Once any entry is a unit the remaining reduction is direct.
    """
    d = det2(m)
    if not d.is_trivial_unit():
        raise ValueError(f"determinant {d} is not a unit")
    tie = itertools.count()
    heap = [(_score(m), next(tie), m)]
    parent: dict[Mat2, tuple[Mat2, int, LaurentPoly] | None] = {m: None}
    expanded = 0
    while heap and expanded < budget:
        _, _, cur = heapq.heappop(heap)
        expanded += 1
        tail = _finish(cur)
        if tail is not None:
            ops = []
            node = cur
            while parent[node] is not None:
                prev, target, q = parent[node]
                ops.append((target, q))
                node = prev
            ops.reverse()
            ops += tail
            return Ge2Result("factored", _factors(m, ops), expanded)
        for target, q in _candidates(cur):
            nxt = _row_op(cur, target, q)
            if nxt in parent:
                continue
            parent[nxt] = (cur, target, q)
            heapq.heappush(heap, (_score(nxt), next(tie), nxt))
    return Ge2Result("gave_up", [], expanded)


def _factors(m: Mat2, ops: list[tuple[int, LaurentPoly]]) -> list[Factor]:
    """``E_k ... E_1 M = D`` gives ``M = E_1^-1 ... E_k^-1 D``.  Zero
    multipliers and an identity ``D`` are left out."""
    cur = m
    for target, q in ops:
        cur = _row_op(cur, target, q)
    out = [Factor("E12" if t == 0 else "E21", -q) for t, q in ops if q]
    if not (cur.a11 == 1 and cur.a22 == 1):
        out.append(Factor("D", cur.a11, cur.a22))
    if multiply_factors(out, m.nvars) != m:
        raise AssertionError("factorization does not multiply back")
    return out


def evans_matrix() -> Mat2:
    """A determinant-one matrix over Z[x1^+-1, x2^+-1] that resists reduction."""
    one = LaurentPoly.constant(2, 1)
    x1 = LaurentPoly.variable(2, 1)
    y_inv = LaurentPoly.monomial(2, (0, -1))
    t = (x1 - 1) * y_inv
    return Mat2(one - 2 * t, 4 * y_inv, -((x1 - 1) * (x1 - 1)) * y_inv, one + 2 * t)
