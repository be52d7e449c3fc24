"""Compiled inner loops for the presentation search.

A state is one row of an int8 array holding the canonical relators of a
presentation in sorted order, each padded to ``maxlen`` letters, plus a
row of relator lengths.  Rows are stored once; an open-addressing hash
table of row indices provides insert-if-absent.

Neighbour codes pack ``(i, j, a, b, s)`` into an int32: relator ``i`` of the
parent (sorted position) is replaced by the reduced cyclic word of
``rot_a(c_i) * rot_b(c_j^s)``.
"""

from __future__ import annotations

import numpy as np
from numba import njit

EMPTY = -1


@njit(cache=True, inline="always")
def _rank(a):
    if a > 0:
        return 2 * a - 2
    return -2 * a - 1


@njit(cache=True)
def _less(a, la, b, lb):
    """Shortlex comparison of two letter arrays."""
    if la != lb:
        return la < lb
    for t in range(la):
        ra = _rank(a[t])
        rb = _rank(b[t])
        if ra != rb:
            return ra < rb
    return False


@njit(cache=True)
def canonical_core(word, length, out):
    """Write the least rotation of the cyclic core of ``word`` or its inverse
    into ``out``; return the core length."""
    i = 0
    j = length - 1
    while i < j and word[i] == -word[j]:
        i += 1
        j -= 1
    n = j - i + 1 if length > 0 else 0
    if n <= 0:
        return 0
    best_start = 0
    best_inv = False
    for invi in range(2):
        inv = invi == 1
        for k in range(n):
            if k == 0 and not inv:
                continue
            better = False
            decided = False
            for t in range(n):
                if inv:
                    ca = -word[i + (n - 1 - ((k + t) % n))]
                else:
                    ca = word[i + (k + t) % n]
                if best_inv:
                    cb = -word[i + (n - 1 - ((best_start + t) % n))]
                else:
                    cb = word[i + (best_start + t) % n]
                if ca != cb:
                    better = _rank(ca) < _rank(cb)
                    decided = True
                    break
            if decided and better:
                best_start = k
                best_inv = inv
    for t in range(n):
        if best_inv:
            out[t] = -word[i + (n - 1 - ((best_start + t) % n))]
        else:
            out[t] = word[i + (best_start + t) % n]
    return n


@njit(cache=True)
def row_hash(row):
    h = np.uint64(14695981039346656037)
    for t in range(row.shape[0]):
        h ^= np.uint64(row[t] & 0xFF)
        h *= np.uint64(1099511628211)
    return h


@njit(cache=True)
def _rows_equal(a, b):
    for t in range(a.shape[0]):
        if a[t] != b[t]:
            return False
    return True


@njit(cache=True)
def lookup(table, states, row):
    mask = table.shape[0] - 1
    h = np.int64(row_hash(row) & np.uint64(mask))
    while True:
        s = table[h]
        if s == EMPTY:
            return -1
        if _rows_equal(states[s], row):
            return s
        h = (h + 1) & mask


@njit(cache=True)
def rehash(table, states, count):
    table[:] = EMPTY
    mask = table.shape[0] - 1
    for s in range(count):
        h = np.int64(row_hash(states[s]) & np.uint64(mask))
        while table[h] != EMPTY:
            h = (h + 1) & mask
        table[h] = s


@njit(cache=True, nogil=True)
def expand(states, lens, parents, nrel, maxlen, max_total,
           out_rows, out_lens, out_parent, out_code):
    """Write all neighbours of the given parent states; return their count."""
    m = 0
    u = np.empty(maxlen, np.int8)
    v = np.empty(maxlen, np.int8)
    w = np.empty(2 * maxlen, np.int8)
    core = np.empty(2 * maxlen, np.int8)
    for pidx in range(parents.shape[0]):
        p = parents[pidx]
        row = states[p]
        plen = lens[p]
        total = 0
        for r in range(nrel):
            total += plen[r]
        for i in range(nrel):
            li = plen[i]
            rest = total - li
            for j in range(nrel):
                if j == i:
                    continue
                lj = plen[j]
                if lj == 0:
                    continue
                for a in range(max(li, 1)):
                    for t in range(li):
                        u[t] = row[i * maxlen + (a + t) % li]
                    for si in range(2):
                        s = 1 - 2 * si
                        for b in range(lj):
                            for t in range(lj):
                                if s == 1:
                                    v[t] = row[j * maxlen + (b + t) % lj]
                                else:
                                    v[t] = -row[j * maxlen + (b + lj - 1 - t) % lj]
                            # free reduction happens only at the junction
                            k = 0
                            while k < li and k < lj and u[li - 1 - k] == -v[k]:
                                k += 1
                            wl = 0
                            for t in range(li - k):
                                w[wl] = u[t]
                                wl += 1
                            for t in range(k, lj):
                                w[wl] = v[t]
                                wl += 1
                            # cyclic core length, to filter before canonising
                            x = 0
                            y = wl - 1
                            while x < y and w[x] == -w[y]:
                                x += 1
                                y -= 1
                            cl = y - x + 1 if wl > 0 else 0
                            if cl > maxlen or rest + cl > max_total:
                                continue
                            cl = canonical_core(w, wl, core)
                            orow = out_rows[m]
                            olen = out_lens[m]
                            orow[:] = 0
                            # insert the new core among the other relators, sorted
                            placed = False
                            dst = 0
                            for r in range(nrel):
                                if r == i:
                                    continue
                                if not placed and _less(core, cl, row[r * maxlen:], plen[r]):
                                    for t in range(cl):
                                        orow[dst * maxlen + t] = core[t]
                                    olen[dst] = cl
                                    dst += 1
                                    placed = True
                                for t in range(plen[r]):
                                    orow[dst * maxlen + t] = row[r * maxlen + t]
                                olen[dst] = plen[r]
                                dst += 1
                            if not placed:
                                for t in range(cl):
                                    orow[dst * maxlen + t] = core[t]
                                olen[dst] = cl
                            out_parent[m] = p
                            out_code[m] = (i | (j << 4) | (a << 8) | (b << 16)
                                           | ((1 if s == -1 else 0) << 24))
                            m += 1
    return m


@njit(cache=True)
def insert(table, states, lens, parent, code, depth, count, capacity,
           rows, rlens, rparent, rcode, m, goal, has_goal):
    """Insert candidate rows not yet present.

    Returns ``(new_count, goal_index, stopped_at)``: ``goal_index`` is the
    index of a newly inserted row equal to ``goal`` (or -1); ``stopped_at``
    is the candidate position where capacity ran out (or -1).
    """
    mask = table.shape[0] - 1
    found = -1
    for c in range(m):
        if count >= capacity:
            return count, found, c
        row = rows[c]
        h = np.int64(row_hash(row) & np.uint64(mask))
        present = False
        while True:
            s = table[h]
            if s == EMPTY:
                break
            if _rows_equal(states[s], row):
                present = True
                break
            h = (h + 1) & mask
        if present:
            continue
        table[h] = count
        states[count] = row
        lens[count] = rlens[c]
        parent[count] = rparent[c]
        code[count] = rcode[c]
        depth[count] = depth[rparent[c]] + 1
        if has_goal and found < 0 and _rows_equal(row, goal):
            found = count
        count += 1
    return count, found, -1


@njit(cache=True)
def lookup_many(table, states, rows, m):
    out = np.empty(m, np.int64)
    for c in range(m):
        out[c] = lookup(table, states, rows[c])
    return out
