"""Exact and heuristic computation of f, the largest s admitting s points and
s lines with no incidences.

For a fixed point set Y the best line set is all lines missing Y, so only
point sets are searched. Removing a point never loses an external line,
hence "some s-set leaves >= s lines free" is monotone in s and the exact
search proceeds by deciding it for s = incumbent + 1, incumbent + 2, ...
until it fails or hits the counting bound.
"""

from __future__ import annotations

import logging
import math
import random
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bounds import stinson_bound
from .certificate import NonincidenceCertificate, verify_certificate
from .errors import BudgetExhausted, TooLarge
from .plane import Plane, from_mask

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
ORACLE_LIMIT = 10**7

__all__ = [
    "SearchConfig",
    "SearchResult",
    "exact_f",
    "oracle_bruteforce",
    "oracle_f",
    "greedy_heuristic",
    "verify_certificate",
]


@dataclass(frozen=True)
class SearchConfig:
    budget: int = DEFAULT_BUDGET
    workers: int = 1
    deterministic: bool = True
    initial: NonincidenceCertificate | None = None
    # seed the incumbent with greedy_heuristic(seed=0) before branching
    warm_start: bool = True

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("node budget must be >= 1")
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")


@dataclass(frozen=True)
class SearchResult:
    value: int
    certificate: NonincidenceCertificate
    status: str
    nodes: int


def _certificate(pl: Plane, Y, provenance="search") -> NonincidenceCertificate:
    """Certificate for Y using its |Y| lowest-index external lines."""
    hit = 0
    for y in Y:
        hit |= pl.point_rows[y]
    M = from_mask(pl.all_lines & ~hit)[: len(Y)]
    return NonincidenceCertificate.make(pl, Y, M, provenance)


# -- branch and bound ----------------------------------------------------------

class _OutOfBudget(Exception):
    pass


class _Finder:
    """Depth-first search for a target-size point set leaving >= target lines free.

    Points are taken in increasing index order. A node with k chosen points
    and free-line set E is cut when fewer than target - k points remain,
    when |E| < target, or when even the cheapest completion must kill too
    many lines: the need = target - k cheapest remaining points kill at
    least sum(kills) - C(need, 2) lines of E, since two points share only
    one line.
    """

    def __init__(self, rows, n, target, budget):
        self.rows = rows
        self.n = n
        self.target = target
        self.budget = budget
        self.nodes = 0

    def run(self, chosen, free, start):
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        target, rows = self.target, self.rows
        k = len(chosen)
        if k == target:
            return list(chosen)
        need = target - k
        if self.n - start < need:
            return None
        fc = free.bit_count()
        if fc < target:
            return None
        kills = [(free & rows[j]).bit_count() for j in range(start, self.n)]
        if need > 1:
            cheapest = sorted(kills)[:need]
            if fc - (sum(cheapest) - math.comb(need, 2)) < target:
                return None
        for off, j in enumerate(range(start, self.n - need + 1)):
            if fc - kills[off] < target:
                continue
            chosen.append(j)
            found = self.run(chosen, free & ~rows[j], j + 1)
            chosen.pop()
            if found is not None:
                return found
        return None


def _branch(rows, n, full, target, first, budget):
    """Search the subtree whose least chosen point is ``first``."""
    f = _Finder(rows, n, target, budget)
    try:
        found = f.run([first], full & ~rows[first], first + 1)
    except _OutOfBudget:
        return first, None, f.nodes, True
    return first, found, f.nodes, False


def _find(pl: Plane, target: int, budget: int, cfg: SearchConfig):
    """Return (point set or None, nodes used, budget_exhausted)."""
    rows, n, full = pl.point_rows, pl.n, pl.all_lines
    if target > n:
        return None, 0, False
    firsts = range(0, n - target + 1)
    if cfg.workers == 1:
        f = _Finder(rows, n, target, budget)
        try:
            found = f.run([], full, 0)
        except _OutOfBudget:
            return None, f.nodes, True
        return found, f.nodes, False

    nodes = 0
    exhausted = False
    results = {}
    with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
        futures = {ex.submit(_branch, rows, n, full, target, p, budget): p for p in firsts}
        pending = set(futures)
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                first, found, used, out = fut.result()
                nodes += used
                exhausted |= out
                results[first] = (found, out)
            if exhausted or nodes > budget:
                exhausted = True
                break
            if cfg.deterministic:
                # settled once every branch below the least success has finished
                hits = [p for p, (found, _) in results.items() if found is not None]
                if hits and all(p in results for p in range(min(hits))):
                    break
            elif any(found is not None for found, _ in results.values()):
                break
        for fut in pending:
            fut.cancel()
    hits = sorted(p for p, (found, _) in results.items() if found is not None)
    if hits and not (cfg.deterministic and exhausted):
        return results[hits[0]][0], nodes, False
    return None, nodes, exhausted


def exact_f(pl: Plane, cfg: SearchConfig | None = None) -> SearchResult:
    """Compute f(pl) exactly by branch and bound.

    Raises BudgetExhausted (carrying the best incumbent) if the node budget
    runs out before optimality is proven.
    """
    cfg = cfg or SearchConfig()
    best: tuple[int, ...] = ()
    if cfg.initial is not None:
        if not verify_certificate(pl, cfg.initial):
            raise ValueError("initial certificate does not verify")
        best = cfg.initial.Y
    if cfg.warm_start:
        warm = greedy_heuristic(pl, 0)
        if warm.s > len(best):
            best = warm.Y

    cap = min(stinson_bound(pl.q), pl.n)
    used = 0
    target = len(best) + 1
    while target <= cap:
        found, nodes, exhausted = _find(pl, target, cfg.budget - used, cfg)
        used += nodes
        log.debug("target %d: %s after %d nodes", target, "found" if found else "none", nodes)
        if exhausted:
            res = SearchResult(len(best), _certificate(pl, best), "budget_exhausted", used)
            raise BudgetExhausted(res)
        if found is None:
            break
        best = tuple(found)
        target += 1
    return SearchResult(len(best), _certificate(pl, best), "proven", used)


# -- independent oracle ----------------------------------------------------------

def oracle_bruteforce(pl: Plane, s: int) -> bool:
    """Exhaustively decide whether some s points leave at least s lines free."""
    n = pl.n
    if s < 0:
        raise ValueError("s must be nonnegative")
    if math.comb(n, s) > ORACLE_LIMIT:
        raise TooLarge(f"C({n}, {s}) point sets exceed the oracle limit {ORACLE_LIMIT}")
    inc = np.asarray(pl.incidence, dtype=bool)
    for Y in combinations(range(n), s):
        free = n - int(inc[list(Y)].any(axis=0).sum())
        if free >= s:
            return True
    return False


def oracle_f(pl: Plane) -> int:
    s = 0
    while s + 1 <= pl.n and oracle_bruteforce(pl, s + 1):
        s += 1
    return s


# -- greedy + local search -------------------------------------------------------------

def greedy_heuristic(pl: Plane, seed: int, max_moves: int = 100) -> NonincidenceCertificate:
    """Randomised greedy lower bound for f, improved by single-point swaps.

    From a random start point, repeatedly add the point destroying the
    fewest free lines (least index on ties) while that pays off. Then try
    to grow the best set by one point, repairing with swaps that increase
    the number of free lines.
    """
    rng = random.Random(seed)
    rows, n, full = pl.point_rows, pl.n, pl.all_lines

    start = rng.randrange(n)
    Y = [start]
    free = full & ~rows[start]
    best = [start] if free.bit_count() >= 1 else []
    while len(Y) < free.bit_count():
        inside = set(Y)
        p = min((p for p in range(n) if p not in inside), key=lambda p: ((free & rows[p]).bit_count(), p))
        Y.append(p)
        free &= ~rows[p]
        if min(len(Y), free.bit_count()) > len(best):
            best = Y[: min(len(Y), free.bit_count())]

    moves = 0
    while moves < max_moves and len(best) < n:
        s = len(best)
        grown, used = _grow(pl, best, rng, max_moves - moves)
        moves += used
        if grown is None:
            break
        best = grown
        assert len(best) == s + 1
    return _certificate(pl, sorted(best))


def _grow(pl, Y, rng, max_moves):
    """Try to turn the s-set Y into an (s+1)-set leaving >= s+1 lines free."""
    rows, n, full = pl.point_rows, pl.n, pl.all_lines
    target = len(Y) + 1
    cnt = [0] * n
    Z = list(Y)
    free = full
    for y in Z:
        free &= ~rows[y]
    inside = set(Z)
    p = min((p for p in range(n) if p not in inside), key=lambda p: ((free & rows[p]).bit_count(), p))
    Z.append(p)
    for y in Z:
        for l in from_mask(rows[y]):
            cnt[l] += 1

    def masks():
        f = o = 0
        for l, c in enumerate(cnt):
            if c == 0:
                f |= 1 << l
            elif c == 1:
                o |= 1 << l
        return f, o

    free, ones = masks()
    moves = 0
    sideways = 0
    while free.bit_count() < target and moves < max_moves:
        value = free.bit_count()
        inside = set(Z)
        outside = [z for z in range(n) if z not in inside]
        pairs = [(i, z) for i in range(len(Z)) for z in outside]
        rng.shuffle(pairs)
        chosen = None
        plateau = None
        for i, z in pairs:
            y = Z[i]
            v = ((free | (rows[y] & ones)) & ~rows[z]).bit_count()
            if v > value:
                chosen = (i, z)
                break
            if v == value and plateau is None:
                plateau = (i, z)
        if chosen is None:
            if plateau is None or sideways >= max_moves // 4:
                return None, moves
            chosen = plateau
            sideways += 1
        i, z = chosen
        for l in from_mask(rows[Z[i]]):
            cnt[l] -= 1
        for l in from_mask(rows[z]):
            cnt[l] += 1
        Z[i] = z
        free, ones = masks()
        moves += 1
    if free.bit_count() >= target:
        return Z, moves
    return None, moves
