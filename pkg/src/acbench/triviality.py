"""Evidence for triviality: Smith normal form of the abelianization and
Todd-Coxeter enumeration of the cosets of the trivial subgroup."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .presentation import Presentation, abelianization_matrix

Matrix = list[list[int]]

DEFAULT_MAX_COSETS = 100_000


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass
class SnfResult:
    diagonal: list[int]
    left_transform: Matrix
    right_transform: Matrix

    def diagonal_matrix(self, rows: int, cols: int) -> Matrix:
        d = [[0] * cols for _ in range(rows)]
        for k, v in enumerate(self.diagonal):
            d[k][k] = v
        return d


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfResult:
    """Return ``d, L, R`` with ``L @ m @ R`` diagonal and ``d[k] | d[k+1]``.

    Pivots are chosen by least absolute value so entries stay small.
    """
    a = [list(map(int, row)) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = identity(rows)
    right = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst -= q * row src
        if q:
            a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
            left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):  # col dst -= q * col src
        if q:
            for row in a:
                row[dst] -= q * row[src]
            for row in right:
                row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            for i in range(t + 1, rows):
                add_row(i, t, a[i][t] // p)
            for j in range(t + 1, cols):
                add_col(j, t, a[t][j] // p)
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    diag = [a[k][k] for k in range(min(rows, cols))]
    return SnfResult(diag, left, right)


def is_perfect(p: Presentation) -> bool:
    """True iff the abelianization of the presented group is trivial."""
    if p.gen_count == 0:
        return True
    if len(p.relators) < p.gen_count:
        return False
    d = smith_normal_form(abelianization_matrix(p)).diagonal
    return len(d) == p.gen_count and all(v == 1 for v in d)


# -- Todd-Coxeter ----------------------------------------------------------

@dataclass
class CosetTable:
    """Outcome of a coset enumeration over the trivial subgroup.

    ``rows[c][2k]`` is the image of coset ``c`` under x_{k+1} and
    ``rows[c][2k+1]`` under its inverse; ``None`` marks undefined entries.
    """
    rows: list[list[int | None]]
    status: str
    cosets_defined: int = 0
    gen_count: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def order(self) -> int | None:
        return len(self.rows) if self.complete else None


def _column(a: int) -> int:
    return 2 * (abs(a) - 1) + (a < 0)


def todd_coxeter(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """HLT coset enumeration with in-place coincidence processing."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    ncols = 2 * p.gen_count
    rels = [[_column(a) for a in r] for r in p.relators if r]
    table: list[list[int]] = [[-1] * ncols]
    parent = [0]

    class Exhausted(Exception):
        pass

    def rep(c):
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def merge(k, l, queue):
        phi, psi = rep(k), rep(l)
        if phi != psi:
            lo, hi = min(phi, psi), max(phi, psi)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a, b):
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][x ^ 1] = -1
                mu, nu = rep(g), rep(d)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def define(c, x):
        if len(table) >= max_cosets:
            raise Exhausted
        d = len(table)
        table.append([-1] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def scan_and_fill(alpha, w):
        f, b = alpha, alpha
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != alpha:
                    coincidence(f, alpha)
                return
            while j >= i and table[b][w[j] ^ 1] >= 0:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                return
            define(f, w[i])

    alpha = 0
    try:
        while alpha < len(table):
            if parent[alpha] == alpha:
                for w in rels:
                    scan_and_fill(alpha, w)
                    if parent[alpha] != alpha:
                        break
                if parent[alpha] == alpha:
                    for x in range(ncols):
                        if table[alpha][x] < 0:
                            define(alpha, x)
            alpha += 1
    except Exhausted:
        return CosetTable([], "exhausted", len(table), p.gen_count)

    live = [c for c in range(len(table)) if parent[c] == c]
    index = {c: k for k, c in enumerate(live)}
    rows = [[index[rep(v)] if v >= 0 else None for v in table[c]] for c in live]
    return CosetTable(rows, "complete", len(table), p.gen_count)
