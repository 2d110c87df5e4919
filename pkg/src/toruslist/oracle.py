"""Brute-force ground truth for list colorability.

Lists are encoded as bitmasks.  The search always branches on an uncolored
vertex with the fewest remaining colors (ties by index), checks forward, and
propagates singleton domains before branching again.  The budget counts
search nodes, so results are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

YES, NO, BUDGET = "yes", "no", "budget_exceeded"


@dataclass
class SearchStats:
    nodes: int = 0
    max_depth: int = 0
    budget: int = 0


@dataclass
class OracleResult:
    status: str
    witness: list[int] | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness,
                "stats": {"nodes": self.stats.nodes, "max_depth": self.stats.max_depth,
                          "budget": self.stats.budget}}


class _Budget(Exception):
    pass


def _encode(lists):
    colors = sorted(set().union(*map(set, lists))) if lists else []
    index = {c: k for k, c in enumerate(colors)}
    masks = [sum(1 << index[c] for c in lst) for lst in lists]
    return colors, masks


def _clean_adj(adj):
    return [tuple(sorted(set(nb) - {v})) for v, nb in enumerate(adj)]


class _Search:
    def __init__(self, adj, budget):
        self.adj = adj
        self.budget = budget
        self.stats = SearchStats(budget=budget)

    def propagate(self, dom, assigned, queue):
        """Assign forced vertices; return False on a wipe-out."""
        adj = self.adj
        while queue:
            v = queue.pop()
            if assigned[v] >= 0:
                continue
            d = dom[v]
            if d == 0 or d & (d - 1):
                if d == 0:
                    return False
                continue
            assigned[v] = d.bit_length() - 1
            for u in adj[v]:
                if assigned[u] < 0 and dom[u] & d:
                    dom[u] &= ~d
                    if dom[u] == 0:
                        return False
                    if dom[u] & (dom[u] - 1) == 0:
                        queue.append(u)
                elif assigned[u] == assigned[v]:
                    return False
        return True

    def solve(self, dom, assigned, depth, count_all=False):
        best, best_size = -1, 1 << 30
        for v, a in enumerate(assigned):
            if a < 0:
                size = bin(dom[v]).count("1")
                if size < best_size:
                    best, best_size = v, size
                    if size <= 1:
                        break
        if best < 0:
            return 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        total = 0
        d = dom[best]
        while d:
            bit = d & -d
            d ^= bit
            self.stats.nodes += 1
            if self.budget and self.stats.nodes > self.budget:
                raise _Budget
            dom2 = list(dom)
            asg2 = list(assigned)
            dom2[best] = bit
            if self.propagate(dom2, asg2, [best]):
                got = self.solve(dom2, asg2, depth + 1, count_all)
                if got and not count_all:
                    dom[:], assigned[:] = dom2, asg2
                    return got
                total += got
        return total


def is_L_colorable(adj: Sequence[Iterable[int]], L, budget: int = 10**7) -> OracleResult:
    """Decide whether the graph has a proper coloring from ``L``."""
    adj = _clean_adj(adj)
    colors, dom = _encode([set(x) for x in L])
    n = len(adj)
    search = _Search(adj, budget)
    assigned = [-1] * n
    try:
        ok = search.propagate(dom, assigned, list(range(n)))
        found = ok and search.solve(dom, assigned, 0)
    except _Budget:
        return OracleResult(BUDGET, None, search.stats)
    if not found:
        return OracleResult(NO, None, search.stats)
    witness = [colors[a] for a in assigned]
    for v in range(n):
        assert witness[v] in L[v] and all(witness[u] != witness[v] for u in adj[v])
    return OracleResult(YES, witness, search.stats)


def count_extensions(adj: Sequence[Iterable[int]], L, fixed: Sequence[int | None],
                     frontier: Iterable[int], budget: int = 0) -> int:
    """Number of proper list colorings of ``frontier`` extending ``fixed``.

    Only the graph induced on the fixed vertices and the frontier matters.
    """
    adj = _clean_adj(adj)
    frontier = sorted(set(frontier))
    fixed_vs = [v for v, c in enumerate(fixed) if c is not None]
    for v in fixed_vs:
        if any(fixed[u] == fixed[v] for u in adj[v]):
            raise ValueError("fixed coloring is improper")
    if not frontier:
        return 1
    keep = sorted(set(frontier) | set(fixed_vs))
    pos = {v: k for k, v in enumerate(keep)}
    sub_adj = [tuple(pos[u] for u in adj[v] if u in pos) for v in keep]
    sub_lists = [{fixed[v]} if fixed[v] is not None else set(L[v]) for v in keep]
    colors, dom = _encode(sub_lists)
    if any(d == 0 for d in dom):
        return 0
    search = _Search(sub_adj, budget)
    assigned = [-1] * len(keep)
    queue = [k for k, v in enumerate(keep) if fixed[v] is not None]
    if not search.propagate(dom, assigned, queue):
        return 0
    return search.solve(dom, assigned, 0, count_all=True)


def is_k_choosable_small(adj: Sequence[Iterable[int]], k: int, universe: Iterable[int]):
    """Check every k-assignment drawn from ``universe``.

    Returns ``(True, None)`` or ``(False, witness_lists)``.  A True answer is
    relative to the universe only.
    """
    universe = sorted(set(universe))
    n = len(adj)
    if n > 10 or len(universe) > k + 2:
        raise ValueError("instance too large for exhaustive choosability check")
    subsets = [frozenset(c) for c in itertools.combinations(universe, k)]
    for lists in itertools.product(subsets, repeat=n):
        if is_L_colorable(adj, lists, budget=0).status == NO:
            return False, [sorted(x) for x in lists]
    return True, None
