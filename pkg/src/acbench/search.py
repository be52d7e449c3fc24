"""Search for AC-trivialisations and AC-equivalences.

States are canonical keys.  From a key with cores ``c_1 .. c_n`` every
neighbour replaces one core ``c_i`` by the cyclic word of
``rot(c_i) * rot(c_j^{+-1})``; conjugation and inversion are free at key
level and are inserted back when a key path is turned into a certificate.
"""

from __future__ import annotations

import os
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field, replace
from itertools import product
from typing import Iterator, Sequence

import numpy as np

from . import _kernel
from .moves import (
    AcMove,
    Certificate,
    Conjugate,
    Invert,
    RightMultiply,
    Swap,
    inverse_move,
    replay,
)
from .presentation import (
    CanonicalKey,
    Presentation,
    canonical_key,
    canonical_relator,
    key_total_length,
)
from .triviality import determinant, is_perfect
from .words import Word, cyclic_reduce, invert, multiply, shortlex_key

STRATEGIES = ("breadth-first", "iterative-deepening", "greedy-by-total-length")

# Batch sizes per strategy: how many frontier states one kernel call expands.
_BATCH = {"breadth-first": 256, "greedy-by-total-length": 8}


@dataclass
class SearchLimits:
    max_relator_len: int = 20
    max_total_len: int = 34
    max_states: int = 10_000_000
    strategy: str = "greedy-by-total-length"
    parallelism: int = 1
    deterministic: bool = True

    def __post_init__(self):
        for name in ("max_relator_len", "max_total_len", "max_states", "parallelism"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.max_relator_len > 255:
            raise ValueError("max_relator_len must be at most 255")

    @classmethod
    def from_env(cls, **overrides) -> "SearchLimits":
        """Defaults, overridden by ``AC_MAX_*`` environment variables, then
        by keyword arguments that are not None."""
        env = {
            "max_relator_len": "AC_MAX_RELATOR_LEN",
            "max_total_len": "AC_MAX_TOTAL_LEN",
            "max_states": "AC_MAX_STATES",
            "strategy": "AC_STRATEGY",
            "parallelism": "AC_JOBS",
        }
        kwargs = {}
        for name, var in env.items():
            if var in os.environ:
                raw = os.environ[var]
                kwargs[name] = raw if name == "strategy" else int(raw)
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


@dataclass
class SearchResult:
    status: str  # found | exhausted | not_perfect
    certificate: Certificate | None = None
    states: int = 0
    exhaustion: str | None = None  # "state budget" | "length bound"
    depth: int | None = None
    seconds: float = 0.0
    best_total_length: int | None = None

    @property
    def found(self) -> bool:
        return self.status == "found"


# -- key <-> row conversion ------------------------------------------------

def _key_row(key: CanonicalKey, maxlen: int) -> tuple[np.ndarray, np.ndarray]:
    n = len(key)
    row = np.zeros(n * maxlen, np.int8)
    lens = np.zeros(n, np.int8)
    for r, core in enumerate(key):
        row[r * maxlen:r * maxlen + len(core)] = core
        lens[r] = len(core)
    return row, lens


def _row_key(row: np.ndarray, lens: np.ndarray, maxlen: int) -> CanonicalKey:
    return tuple(tuple(int(a) for a in row[r * maxlen:r * maxlen + int(lens[r])])
                 for r in range(len(lens)))


def _decode(code: int) -> tuple[int, int, int, int, int]:
    return (code & 15, (code >> 4) & 15, (code >> 8) & 255, (code >> 16) & 255,
            -1 if (code >> 24) & 1 else 1)


def neighbor_product(key: CanonicalKey, code: int) -> tuple[int, int, Word, Word]:
    """The concrete factors ``u = rot(c_i)``, ``v = rot(c_j^s)`` behind a code."""
    i, j, a, b, s = _decode(code)
    ci, cj = key[i], key[j]
    u = ci[a:] + ci[:a]
    lj = len(cj)
    if s == 1:
        v = cj[b:] + cj[:b]
    else:
        v = tuple(-cj[(b + lj - 1 - t) % lj] for t in range(lj))
    return i, j, u, v


def key_neighbors(key: CanonicalKey, limits: SearchLimits) -> list[tuple[int, CanonicalKey]]:
    """All ``(code, neighbour key)`` pairs of a key, via the kernel."""
    store = _Store(len(key), limits.max_relator_len, 4)
    store.add_root(key)
    rows, lens, _, codes = store.expand_batch(np.array([0], np.int64), limits)
    return [(int(codes[c]), _row_key(rows[c], lens[c], limits.max_relator_len))
            for c in range(len(codes))]


class _Store:
    """Row storage plus hash table for one search direction."""

    def __init__(self, nrel: int, maxlen: int, capacity: int):
        self.nrel = nrel
        self.maxlen = maxlen
        self.capacity = max(capacity, 16)
        size = max(16, 1 << (2 * self.capacity - 1).bit_length())
        self.table = np.full(size, _kernel.EMPTY, np.int64)
        self.states = np.zeros((self.capacity, nrel * maxlen), np.int8)
        self.lens = np.zeros((self.capacity, nrel), np.int8)
        self.parent = np.full(self.capacity, -1, np.int64)
        self.code = np.zeros(self.capacity, np.int32)
        self.depth = np.zeros(self.capacity, np.int32)
        self.count = 0
        self._buf_rows = None

    def _grow(self, need: int, limit: int) -> None:
        if need <= self.capacity:
            return
        cap = min(max(need, 2 * self.capacity), limit)
        extra = cap - self.capacity
        self.states = np.concatenate([self.states, np.zeros((extra, self.states.shape[1]), np.int8)])
        self.lens = np.concatenate([self.lens, np.zeros((extra, self.nrel), np.int8)])
        self.parent = np.concatenate([self.parent, np.full(extra, -1, np.int64)])
        self.code = np.concatenate([self.code, np.zeros(extra, np.int32)])
        self.depth = np.concatenate([self.depth, np.zeros(extra, np.int32)])
        self.capacity = cap
        if 2 * cap > self.table.shape[0]:
            size = 1 << (2 * cap - 1).bit_length()
            self.table = np.full(size, _kernel.EMPTY, np.int64)
            _kernel.rehash(self.table, self.states, self.count)

    def add_root(self, key: CanonicalKey) -> None:
        row, lens = _key_row(key, self.maxlen)
        rows = row[None, :]
        _, _, _ = _kernel.insert(
            self.table, self.states, self.lens, self.parent, self.code, self.depth,
            0, self.capacity, rows, lens[None, :], np.array([0], np.int64),
            np.array([-1], np.int32), 1, row, False)
        self.parent[0] = -1
        self.depth[0] = 0
        self.count = 1

    def buffers(self, nparents: int):
        per = self.nrel * (self.nrel - 1) * 2 * self.maxlen * self.maxlen
        need = max(per * nparents, 1)
        if self._buf_rows is None or self._buf_rows.shape[0] < need:
            self._buf_rows = np.zeros((need, self.nrel * self.maxlen), np.int8)
            self._buf_lens = np.zeros((need, self.nrel), np.int8)
            self._buf_parent = np.zeros(need, np.int64)
            self._buf_code = np.zeros(need, np.int32)
        return self._buf_rows, self._buf_lens, self._buf_parent, self._buf_code

    def expand_batch(self, parents: np.ndarray, limits: SearchLimits):
        rows, lens, par, codes = self.buffers(len(parents))
        m = _kernel.expand(self.states, self.lens, parents, self.nrel, self.maxlen,
                           limits.max_total_len, rows, lens, par, codes)
        return rows[:m], lens[:m], par[:m], codes[:m]

    def expand_parallel(self, parents: np.ndarray, limits: SearchLimits):
        """Expand slices of ``parents`` on worker threads (the kernel releases
        the GIL).  Deterministic mode concatenates results in slice order."""
        jobs = min(limits.parallelism, len(parents))
        if jobs <= 1:
            return [self.expand_batch(parents, limits)]
        slices = np.array_split(parents, jobs)
        per = self.nrel * (self.nrel - 1) * 2 * self.maxlen * self.maxlen

        def work(sl):
            need = max(per * len(sl), 1)
            rows = np.zeros((need, self.nrel * self.maxlen), np.int8)
            lens = np.zeros((need, self.nrel), np.int8)
            par = np.zeros(need, np.int64)
            codes = np.zeros(need, np.int32)
            m = _kernel.expand(self.states, self.lens, sl, self.nrel, self.maxlen,
                               limits.max_total_len, rows, lens, par, codes)
            return rows[:m], lens[:m], par[:m], codes[:m]

        with ThreadPoolExecutor(jobs) as pool:
            futures = [pool.submit(work, sl) for sl in slices]
            if limits.deterministic:
                return [f.result() for f in futures]
            return [f.result() for f in as_completed(futures)]

    def insert(self, rows, lens, par, codes, limit: int, goal_row):
        """Insert candidates; returns ``(goal_index, budget_hit)``."""
        m = len(codes)
        self._grow(min(self.count + m, limit), limit)
        has_goal = goal_row is not None
        goal = goal_row if has_goal else np.zeros(rows.shape[1], np.int8)
        count, found, stopped = _kernel.insert(
            self.table, self.states, self.lens, self.parent, self.code, self.depth,
            self.count, min(self.capacity, limit), rows, lens, par, codes, m, goal, has_goal)
        self.count = count
        return found, stopped >= 0

    def key(self, s: int) -> CanonicalKey:
        return _row_key(self.states[s], self.lens[s], self.maxlen)

    def total(self, lo: int, hi: int) -> np.ndarray:
        return self.lens[lo:hi].astype(np.int64).sum(axis=1)

    def path(self, s: int) -> list[tuple[CanonicalKey, int]]:
        """``(parent key, code)`` edges from the root to state ``s``."""
        edges = []
        while self.parent[s] >= 0:
            p = int(self.parent[s])
            edges.append((self.key(p), int(self.code[s])))
            s = p
        edges.reverse()
        return edges


# -- concrete reconciliation -----------------------------------------------

def _assign(p: Presentation, key: CanonicalKey) -> list[int]:
    """Map sorted key positions to distinct relator indices of ``p`` (0-based)."""
    cores = [canonical_relator(r) for r in p.relators]
    used = [False] * len(cores)
    out = []
    for c in key:
        for idx, d in enumerate(cores):
            if not used[idx] and d == c:
                used[idx] = True
                out.append(idx)
                break
        else:
            raise AssertionError("presentation does not match key")
    return out


def retarget(word: Word, target: Word, index: int) -> list[AcMove]:
    """Moves turning relator ``index`` (1-based) from ``word`` into exactly
    ``target``, which must be conjugate to ``word`` or its inverse."""
    moves: list[AcMove] = []
    pre, core = cyclic_reduce(word)
    tpre, tcore = cyclic_reduce(target)
    offset = _rotation_offset(core, tcore)
    if offset is None:
        core, pre = invert(core), pre
        offset = _rotation_offset(core, tcore)
        if offset is None:
            raise AssertionError("target is not conjugate to the relator or its inverse")
        moves.append(Invert(index))
    # core = alpha beta, tcore = beta alpha = alpha^-1 core alpha
    alpha = core[:offset]
    g = multiply(tpre, invert(alpha), invert(pre))
    if g:
        moves.append(Conjugate(index, g))
    return moves


def _rotation_offset(core: Word, target: Word) -> int | None:
    if len(core) != len(target):
        return None
    if not core:
        return 0
    for k in range(len(core)):
        if core[k:] + core[:k] == target:
            return k
    return None


def _permute_to(p: Presentation, order: Sequence[int]) -> list[AcMove]:
    """Swaps putting relator ``order[k]`` (0-based) at position ``k``."""
    cur = list(range(len(p.relators)))
    moves: list[AcMove] = []
    for k, want in enumerate(order):
        at = cur.index(want)
        if at != k:
            moves.append(Swap(k + 1, at + 1))
            cur[k], cur[at] = cur[at], cur[k]
    return moves


def bridge(a: Presentation, b: Presentation) -> list[AcMove]:
    """Moves turning ``a`` into exactly ``b``, given equal canonical keys."""
    key = canonical_key(a)
    if key != canonical_key(b):
        raise ValueError("presentations have different canonical keys")
    ia, ib = _assign(a, key), _assign(b, key)
    moves: list[AcMove] = []
    # relator ia[k] of a becomes relator ib[k] of b
    for k in range(len(key)):
        moves.extend(retarget(a.relators[ia[k]], b.relators[ib[k]], ia[k] + 1))
    dest = {ib[k]: ia[k] for k in range(len(key))}
    moves.extend(_permute_to(a, [dest[pos] for pos in range(len(key))]))
    return moves


def concretize(start: Presentation, edges: Sequence[tuple[CanonicalKey, int]]
               ) -> tuple[list[AcMove], Presentation]:
    """Turn a key-level path into elementary moves from ``start``."""
    p = start
    moves: list[AcMove] = []
    for key, code in edges:
        assign = _assign(p, key)
        i, j, u, v = neighbor_product(key, code)
        ci, cj = assign[i] + 1, assign[j] + 1
        step = retarget(p.relators[ci - 1], u, ci)
        step += retarget(p.relators[cj - 1], v, cj)
        step.append(RightMultiply(ci, cj, 1))
        for m in step:
            p = m.apply(p)
            moves.append(m)
    return moves, p


# -- searches --------------------------------------------------------------

def _standard_key(n: int) -> CanonicalKey:
    return canonical_key(Presentation.standard(n))


def _check_searchable(p: Presentation, limits: SearchLimits) -> None:
    if len(p.relators) > 15:
        raise ValueError("search supports at most 15 relators")
    if p.gen_count > 127:
        raise ValueError("search supports at most 127 generators")
    longest = max((len(canonical_relator(r)) for r in p.relators), default=0)
    if longest > limits.max_relator_len:
        raise ValueError(f"start relator of length {longest} exceeds max_relator_len")


class _Frontier:
    """Order in which stored states get expanded."""

    def __init__(self, strategy: str):
        self.strategy = strategy
        self.next = 0
        self.buckets: dict[int, deque] = {}

    def push(self, store: _Store, lo: int, hi: int) -> None:
        if self.strategy == "breadth-first" or hi <= lo:
            return
        totals = store.total(lo, hi)
        idx = np.arange(lo, hi)
        for t in np.unique(totals):
            self.buckets.setdefault(int(t), deque()).extend(idx[totals == t].tolist())

    def pop(self, store: _Store, k: int) -> np.ndarray:
        if self.strategy == "breadth-first":
            hi = min(self.next + k, store.count)
            out = np.arange(self.next, hi, dtype=np.int64)
            self.next = hi
            return out
        out = []
        for t in sorted(self.buckets):
            q = self.buckets[t]
            while q and len(out) < k:
                out.append(q.popleft())
            if not q:
                del self.buckets[t]
            if len(out) >= k:
                break
        return np.array(out, np.int64)


def _search_store(start_key: CanonicalKey, limits: SearchLimits, goal=None):
    """Run a one-directional search.  ``goal`` is a key or a predicate on
    total length (an int target).  Returns ``(store, hit, exhaustion, best)``."""
    maxlen = limits.max_relator_len
    store = _Store(len(start_key), maxlen, min(limits.max_states, 1 << 16))
    store.add_root(start_key)
    goal_row = None
    target_len = None
    if isinstance(goal, int):
        target_len = goal
    elif goal is not None:
        goal_row = _key_row(goal, maxlen)[0]
    best = (key_total_length(start_key), 0)
    if (goal is not None and goal_row is None and best[0] <= target_len) or goal == start_key:
        return store, 0, None, best
    frontier = _Frontier(limits.strategy)
    frontier.push(store, 0, 1)
    batch = _BATCH[limits.strategy] * max(1, limits.parallelism)
    while True:
        parents = frontier.pop(store, batch)
        if len(parents) == 0:
            return store, None, "length bound", best
        before = store.count
        for rows, lens, par, codes in store.expand_parallel(parents, limits):
            found, budget_hit = store.insert(rows, lens, par, codes, limits.max_states, goal_row)
            if found >= 0:
                return store, found, None, best
            if target_len is not None and store.count > before:
                totals = store.total(before, store.count)
                k = int(np.argmin(totals))
                if totals[k] < best[0]:
                    best = (int(totals[k]), before + k)
                if totals[k] <= target_len:
                    return store, before + k, None, best
            if budget_hit:
                return store, None, "state budget", best
            frontier.push(store, before, store.count)
            before = store.count


def _iddfs(start_key: CanonicalKey, limits: SearchLimits, goal: CanonicalKey):
    """Depth-limited DFS with a transposition table of shallowest depths."""
    seen: dict[CanonicalKey, int] = {}
    depth_limit = 0
    while True:
        seen.clear()
        grew = False
        stack = [(start_key, 0, [])]
        while stack:
            key, d, path = stack.pop()
            if key == goal:
                return path, len(seen), None
            if d == depth_limit:
                grew = True
                continue
            for code, nb in reversed(key_neighbors(key, limits)):
                if seen.get(nb, 1 << 30) <= d + 1:
                    continue
                if nb not in seen and len(seen) >= limits.max_states:
                    return None, len(seen), "state budget"
                seen[nb] = d + 1
                stack.append((nb, d + 1, path + [(key, code)]))
        if not grew:
            return None, len(seen), "length bound"
        depth_limit += 1


def _finish_standard(p: Presentation) -> list[AcMove]:
    return bridge(p, Presentation.standard(p.gen_count))


def trivialize(p: Presentation, limits: SearchLimits | None = None) -> SearchResult:
    """Search for an elementary certificate taking ``p`` to the standard
    presentation."""
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    if not p.is_balanced:
        raise ValueError("trivialize needs a balanced presentation")
    if not is_perfect(p):
        return SearchResult("not_perfect", seconds=time.perf_counter() - t0)
    _check_searchable(p, limits)
    start = canonical_key(p)
    goal = _standard_key(p.gen_count)
    if limits.strategy == "iterative-deepening":
        edges, nstates, why = _iddfs(start, limits, goal)
        if edges is None:
            return SearchResult("exhausted", states=nstates, exhaustion=why,
                                seconds=time.perf_counter() - t0)
    else:
        store, hit, why, _ = _search_store(start, limits, goal)
        nstates = store.count
        if hit is None:
            return SearchResult("exhausted", states=nstates, exhaustion=why,
                                seconds=time.perf_counter() - t0)
        edges = store.path(hit)
    moves, end = concretize(p, edges)
    moves += _finish_standard(end)
    cert = Certificate(p, moves, replay(p, moves),
                       [f"trivialization found by {limits.strategy} search",
                        f"key-level depth {len(edges)}, {nstates} states stored"])
    return SearchResult("found", cert, nstates, depth=len(edges),
                        seconds=time.perf_counter() - t0)


def shorten(p: Presentation, target_total_len: int,
            limits: SearchLimits | None = None) -> SearchResult:
    """Search for an AC-equivalent presentation of total length at most
    ``target_total_len``.  On exhaustion ``best_total_length`` reports the
    shortest length seen."""
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    _check_searchable(p, limits)
    start = canonical_key(p)
    store, hit, why, best = _search_store(start, limits, target_total_len)
    if hit is None:
        return SearchResult("exhausted", states=store.count, exhaustion=why,
                            seconds=time.perf_counter() - t0, best_total_length=best[0])
    edges = store.path(hit)
    moves, end = concretize(p, edges)
    moves += bridge(end, Presentation(p.gen_count, store.key(hit)))
    end = replay(p, moves)
    cert = Certificate(p, moves, end, [f"shortening to total length {end.total_length}"])
    return SearchResult("found", cert, store.count, depth=len(edges),
                        seconds=time.perf_counter() - t0,
                        best_total_length=end.total_length)


def ac_equivalent(p: Presentation, q: Presentation,
                  limits: SearchLimits | None = None) -> SearchResult:
    """Bidirectional search meeting on canonical keys; the certificate runs
    from ``p`` to exactly ``q``."""
    limits = limits or SearchLimits()
    t0 = time.perf_counter()
    if p.gen_count != q.gen_count or len(p.relators) != len(q.relators):
        raise ValueError("presentations must have the same shape")
    _check_searchable(p, limits)
    _check_searchable(q, limits)
    kp, kq = canonical_key(p), canonical_key(q)
    maxlen = limits.max_relator_len
    if kp == kq:
        moves = bridge(p, q)
        return SearchResult("found", Certificate(p, moves, replay(p, moves)), 1, depth=0,
                            seconds=time.perf_counter() - t0)
    sides = []
    for key in (kp, kq):
        st = _Store(len(key), maxlen, min(limits.max_states, 1 << 16))
        st.add_root(key)
        sides.append(st)
    fronts = [deque([0]), deque([0])]
    depth_done = [0, 0]
    meet = None
    batch = _BATCH["breadth-first"]
    while meet is None:
        if not fronts[0] and not fronts[1]:
            return SearchResult("exhausted", states=sides[0].count + sides[1].count,
                                exhaustion="length bound", seconds=time.perf_counter() - t0)
        # grow the side with the smaller frontier, one full BFS layer at a time
        side = 0 if (fronts[0] and (not fronts[1] or len(fronts[0]) <= len(fronts[1]))) else 1
        mine, other = sides[side], sides[1 - side]
        layer = list(fronts[side])
        fronts[side].clear()
        for lo in range(0, len(layer), batch):
            parents = np.array(layer[lo:lo + batch], np.int64)
            before = mine.count
            rows, lens, par, codes = mine.expand_batch(parents, limits)
            budget = limits.max_states - other.count
            _, budget_hit = mine.insert(rows, lens, par, codes, budget, None)
            if mine.count > before:
                hits = _kernel.lookup_many(other.table, other.states,
                                           mine.states[before:mine.count], mine.count - before)
                k = np.nonzero(hits >= 0)[0]
                if len(k):
                    meet = (side, before + int(k[0]), int(hits[k[0]]))
                    break
                fronts[side].extend(range(before, mine.count))
            if budget_hit:
                return SearchResult("exhausted", states=sides[0].count + sides[1].count,
                                    exhaustion="state budget", seconds=time.perf_counter() - t0)
        depth_done[side] += 1
    side, s_mine, s_other = meet
    sp, sq = (s_mine, s_other) if side == 0 else (s_other, s_mine)
    moves_p, end_p = concretize(p, sides[0].path(sp))
    moves_q, end_q = concretize(q, sides[1].path(sq))
    # walk back from end_q to q by inverting q's moves
    back = []
    cur = q
    befores = []
    for m in moves_q:
        befores.append(cur)
        cur = m.apply(cur)
    for m, before in zip(reversed(moves_q), reversed(befores)):
        back.append(inverse_move(m, before))
    moves = moves_p + bridge(end_p, end_q) + back
    depth = len(sides[0].path(sp)) + len(sides[1].path(sq))
    cert = Certificate(p, moves, replay(p, moves),
                       [f"bidirectional search, key-level depth {depth}"])
    return SearchResult("found", cert, sides[0].count + sides[1].count, depth=depth,
                        seconds=time.perf_counter() - t0)


# -- enumeration -----------------------------------------------------------

def canonical_cores(gen_count: int, max_len: int) -> Iterator[Word]:
    """Every cyclically reduced word that is its own canonical relator, by
    increasing length."""
    letters = [a for k in range(1, gen_count + 1) for a in (k, -k)]
    for length in range(1, max_len + 1):
        for w in _reduced_words(letters, length):
            if w[0] != -w[-1] or length == 1:
                if canonical_relator(w) == w:
                    yield w


def _reduced_words(letters: Sequence[int], length: int) -> Iterator[Word]:
    if length == 0:
        yield ()
        return
    stack = [(a,) for a in reversed(letters)]
    while stack:
        w = stack.pop()
        if len(w) == length:
            yield w
            continue
        for a in reversed(letters):
            if a != -w[-1]:
                stack.append(w + (a,))


def enumerate_perfect(gen_count: int, max_total_len: int) -> Iterator[Presentation]:
    """One representative per canonical key of balanced presentations with
    trivial abelianization and total length at most ``max_total_len``."""
    if gen_count < 1:
        raise ValueError("gen_count must be positive")
    cores = sorted(canonical_cores(gen_count, max_total_len), key=shortlex_key)
    sums = [_abelian_row(c, gen_count) for c in cores]

    def rec(first: int, chosen: list[int], budget: int):
        if len(chosen) == gen_count:
            if abs(determinant([sums[k] for k in chosen])) == 1:
                yield Presentation(gen_count, tuple(cores[k] for k in chosen))
            return
        for k in range(first, len(cores)):
            if len(cores[k]) > budget:
                break
            chosen.append(k)
            yield from rec(k, chosen, budget - len(cores[k]))
            chosen.pop()

    yield from rec(0, [], max_total_len)


def _abelian_row(w: Word, n: int) -> list[int]:
    row = [0] * n
    for a in w:
        row[abs(a) - 1] += 1 if a > 0 else -1
    return row
