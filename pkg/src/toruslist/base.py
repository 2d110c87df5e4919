"""Generic list-coloring subroutines.

Paths and cycles are colored by an exact transfer-set sweep, which is
linear in the length and succeeds exactly when a coloring exists.  The
:class:`Board` records a partial coloring on a host graph together with
per-vertex visit counters, and is what the torus solvers manipulate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .lists import InternalConsistencyError, PreconditionError
from .torus import CylinderTriangulation


class Uncolorable(Exception):
    """No proper coloring exists from the given lists."""


# -- paths and cycles --------------------------------------------------------

def _path_colors(lists: Sequence[Iterable[int]]) -> list[int] | None:
    """Color a path from its lists, or return None if impossible.

    A forward sweep records which colors of each vertex extend to a coloring
    of the prefix; the backward pass then picks the smallest admissible
    color at every step.
    """
    if not lists:
        return []
    reach = [frozenset(lists[0])]
    for lst in lists[1:]:
        prev = reach[-1]
        if len(prev) >= 2:
            cur = frozenset(lst)
        elif len(prev) == 1:
            cur = frozenset(lst) - prev
        else:
            return None
        reach.append(cur)
    if not reach[-1]:
        return None
    out = [min(reach[-1])]
    for k in range(len(lists) - 2, -1, -1):
        out.append(min(reach[k] - {out[-1]}))
    out.reverse()
    return out


def _cycle_colors(lists: Sequence[Iterable[int]]) -> list[int] | None:
    n = len(lists)
    if n < 3:
        return _path_colors(lists)
    lists = [frozenset(x) for x in lists]
    p = min(range(n), key=lambda k: len(lists[k]))
    order = [(p + k) % n for k in range(n)]
    for c in sorted(lists[p]):
        rest = [lists[v] for v in order[1:]]
        rest[0] = rest[0] - {c}
        rest[-1] = rest[-1] - {c}
        tail = _path_colors(rest)
        if tail is not None:
            out = [0] * n
            out[p] = c
            for v, col in zip(order[1:], tail):
                out[v] = col
            return out
    return None


def color_path(vertices: Sequence[int], L) -> dict[int, int]:
    """Properly color a path ``vertices[0] - vertices[1] - ...`` from ``L``."""
    cols = _path_colors([L[v] for v in vertices])
    if cols is None:
        raise Uncolorable("path has no proper coloring from these lists")
    return dict(zip(vertices, cols))


def color_cycle(vertices: Sequence[int], L) -> dict[int, int]:
    """Properly color a cycle (consecutive entries and last-first adjacent)."""
    cols = _cycle_colors([L[v] for v in vertices])
    if cols is None:
        raise Uncolorable("cycle has no proper coloring from these lists")
    return dict(zip(vertices, cols))


# -- board -------------------------------------------------------------------

class Board:
    """A partial coloring in progress on a host graph.

    ``lists[v]`` may be narrowed by :meth:`restrict`; the residual list of an
    uncolored vertex is its current list minus colors on colored neighbors.
    Every residual computation and every assignment counts as a touch.
    """

    def __init__(self, adj: Sequence[Sequence[int]], lists: Sequence[Iterable[int]]):
        self.adj = adj
        self.lists = [frozenset(x) for x in lists]
        self.color: list[int | None] = [None] * len(adj)
        self.touches = [0] * len(adj)

    def residual(self, v: int) -> frozenset[int]:
        self.touches[v] += 1
        col = self.color
        used = {col[u] for u in self.adj[v] if col[u] is not None}
        return self.lists[v] - used

    def size(self, v: int) -> int:
        return len(self.residual(v))

    def restrict(self, v: int, k: int) -> frozenset[int]:
        """Narrow v's list to the k smallest colors of its residual list."""
        res = self.residual(v)
        if len(res) < k:
            raise InternalConsistencyError(f"vertex {v} has residual {len(res)} < {k}")
        self.lists[v] = frozenset(sorted(res)[:k])
        return self.lists[v]

    def assign(self, v: int, c: int) -> None:
        self.touches[v] += 1
        if self.color[v] is not None:
            raise InternalConsistencyError(f"vertex {v} colored twice")
        if c not in self.lists[v]:
            raise InternalConsistencyError(f"color {c} not in list of {v}")
        for u in self.adj[v]:
            if self.color[u] == c:
                raise InternalConsistencyError(f"color {c} clashes at {v}-{u}")
        self.color[v] = c

    def assign_many(self, colors: Mapping[int, int]) -> None:
        for v, c in colors.items():
            self.assign(v, c)

    def greedy(self, v: int) -> int:
        res = self.residual(v)
        if not res:
            raise InternalConsistencyError(f"empty residual at {v}")
        c = min(res)
        self.assign(v, c)
        return c

    def color_path(self, vertices: Sequence[int]) -> None:
        cols = _path_colors([self.residual(v) for v in vertices])
        if cols is None:
            raise InternalConsistencyError(f"path {list(vertices)[:4]}... not colorable")
        for v, c in zip(vertices, cols):
            self.assign(v, c)

    def color_cycle(self, vertices: Sequence[int]) -> None:
        """Complete the coloring of a cycle, some of whose vertices may be colored.

        The uncolored vertices split into runs between colored ones; each run
        is a path whose end lists already account for the colored neighbors.
        """
        n = len(vertices)
        colored = [k for k in range(n) if self.color[vertices[k]] is not None]
        if not colored:
            cols = _cycle_colors([self.residual(v) for v in vertices])
            if cols is None:
                raise InternalConsistencyError("cycle not colorable from residual lists")
            for v, c in zip(vertices, cols):
                self.assign(v, c)
            return
        start = colored[0]
        run: list[int] = []
        for k in range(1, n + 1):
            v = vertices[(start + k) % n]
            if self.color[v] is None:
                run.append(v)
            elif run:
                self.color_path(run)
                run = []

    @property
    def complete(self) -> bool:
        return all(c is not None for c in self.color)

    def touch_stats(self) -> tuple[int, int]:
        return sum(self.touches), max(self.touches, default=0)


# -- cylinder ----------------------------------------------------------------

def _cylinder_profile(board: Board, columns: Sequence[Sequence[int]]):
    """Locate the pair of 4-lists on an exterior column.

    Returns (flipped, top_row) with rows 0-based, or None if the hypothesis
    fails.  ``top_row`` is the upper vertex of the pair in the unflipped
    column it was found on.
    """
    s = len(columns[0])
    last = len(columns) - 1
    sizes = {k: [board.size(v) for v in columns[k]] for k in (0, last)}
    for k in range(1, last):
        if any(board.size(v) < 5 for v in columns[k]):
            return None
    if min(sizes[0]) < 3 or min(sizes[last]) < 3:
        return None
    for side, k in ((False, 0), (True, last)):
        col = sizes[k]
        for j in range(s):
            if side:
                # in the flipped picture the upper vertex of a pair is row j-1
                if col[j] >= 4 and col[(j + 1) % s] >= 4:
                    return side, j
            elif col[j] >= 4 and col[j - 1] >= 4:
                return side, j
    return None


def color_cylinder_columns(board: Board, columns: Sequence[Sequence[int]]) -> None:
    """Color a cylinder given as columns of host vertex ids.

    Column k vertex j must be adjacent to column k+1 vertices j and j-1, and
    the residual lists must meet the cylinder hypothesis: two adjacent
    4-lists on one exterior column, 3-lists elsewhere on the exterior, and
    5-lists inside.
    """
    R = len(columns)
    s = len(columns[0])
    if R < 3 or s < 3:
        raise PreconditionError("cylinder needs at least 3 columns and 3 rows")
    found = _cylinder_profile(board, columns)
    if found is None:
        raise PreconditionError("residual lists do not have the cylinder shape")
    flipped, top = found
    cols = [list(c) for c in columns]
    if flipped:
        cols = [c[::-1] for c in cols[::-1]]
        top = s - 1 - top
    # rotate rows so the special pair sits at rows s-1, s-2
    shift = (top - (s - 1)) % s
    cols = [c[shift:] + c[:shift] for c in cols]

    # truncate to the exact profile
    for k, col in enumerate(cols):
        for j, v in enumerate(col):
            if 0 < k < R - 1:
                want = 5
            elif k == 0 and j >= s - 2:
                want = 4
            else:
                want = 3
            board.restrict(v, want)

    for k in range(R - 1, 2, -1):
        board.color_cycle(cols[k])
    c0, c1, c2 = cols[0], cols[1], cols[2]
    special = c1[s - 1]
    choice = board.residual(special) - board.lists[c0[s - 1]]
    if not choice:
        raise InternalConsistencyError("no color for the special vertex")
    board.assign(special, min(choice))
    board.color_cycle(c2)
    for j in range(s - 2):
        board.greedy(c0[j])
        board.greedy(c1[j])
    tri = [c1[s - 2], c0[s - 2], c0[s - 1]]
    board.color_cycle(tri)


def color_cylinder(C: CylinderTriangulation, L) -> list[int]:
    board = Board(C.adjacency, L)
    color_cylinder_columns(board, C.columns())
    return list(board.color)


# -- K4 minus ----------------------------------------------------------------

def reduce_k4_minus(La, Lb, Lx, Ly) -> tuple[int, int]:
    """Colors for the non-adjacent pair x, y of a K4 minus an edge.

    With |La| + |Lb| = |Lx| + |Ly|, the chosen colors remove at most one
    color from each of La and Lb.
    """
    La, Lb, Lx, Ly = map(frozenset, (La, Lb, Lx, Ly))
    if len(La) + len(Lb) != len(Lx) + len(Ly):
        raise PreconditionError("list sizes do not balance")
    if not Lx or not Ly:
        raise PreconditionError("empty list on x or y")
    common = Lx & Ly
    if common:
        c = min(common)
        return c, c
    outside = La | Lb
    if Lx - outside:
        return min(Lx - outside), min(Ly)
    if Ly - outside:
        return min(Lx), min(Ly - outside)
    # every color of x and y lies in exactly one of La, Lb, and neither of
    # La, Lb contains all of them, so a split choice exists
    for cx in sorted(Lx):
        for cy in sorted(Ly):
            pair = {cx, cy}
            if not pair <= La and not pair <= Lb:
                return cx, cy
    raise InternalConsistencyError("split choice not found")


# -- orientations, kernels, BBS ---------------------------------------------

@dataclass
class Orientation:
    n: int
    arcs: list[tuple[int, int]]
    succ: list[list[int]] = field(init=False, repr=False)

    def __post_init__(self):
        self.succ = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            self.succ[u].append(v)

    def outdegree(self, v: int) -> int:
        return len(self.succ[v])

    def underlying(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.arcs:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def to_json(self) -> dict:
        return {"edges": [[u, v] for u, v in self.arcs]}


def _kernel(succ: Sequence[Sequence[int]], members: list[int]) -> set[int]:
    inside = set(members)
    D = nx.DiGraph()
    D.add_nodes_from(members)
    D.add_edges_from((u, v) for u in members for v in succ[u] if v in inside)
    cond = nx.condensation(D)
    S: set[int] = set()
    for comp in reversed(list(nx.topological_sort(cond))):
        C = cond.nodes[comp]["members"]
        R = [v for v in C if not any(w in S for w in succ[v] if w in inside)]
        if not R:
            continue
        if len(R) < len(C):
            S |= _kernel(succ, sorted(R))
        elif len(C) == 1:
            S.add(R[0])
        else:
            S |= _even_class(succ, C)
    return S


def _even_class(succ, C) -> set[int]:
    """Vertices at even distance from a root of a strongly connected piece."""
    C = set(C)
    root = min(C)
    parity = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in succ[u]:
            if w not in C:
                continue
            if w not in parity:
                parity[w] = parity[u] ^ 1
                queue.append(w)
            elif parity[w] == parity[u]:
                raise PreconditionError("digraph has an odd directed cycle")
    return {v for v, p in parity.items() if p == 0}


def find_kernel(D: Orientation, vertices: Iterable[int] | None = None) -> set[int]:
    """A kernel of D (or of the subdigraph induced on ``vertices``).

    Strong components are processed sinks first; vertices already absorbed
    by the partial kernel drop out, and a strong component without odd
    directed cycles contributes its even parity class.
    """
    members = sorted(range(D.n) if vertices is None else set(vertices))
    return _kernel(D.succ, members)


def kernel_bruteforce(D: Orientation) -> set[int] | None:
    if D.n > 20:
        raise PreconditionError("exhaustive kernel search is limited to 20 vertices")
    adj = D.underlying()
    for mask in range(1 << D.n):
        S = {v for v in range(D.n) if mask >> v & 1}
        if is_kernel(D, S, adj):
            return S
    return None


def is_kernel(D: Orientation, S: set[int], adj=None, vertices=None) -> bool:
    adj = adj or D.underlying()
    inside = set(range(D.n)) if vertices is None else set(vertices)
    if any(adj[v] & S for v in S):
        return False
    for v in inside - S:
        if not any(w in S for w in D.succ[v] if w in inside):
            return False
    return True


def bbs_color(D: Orientation, L) -> list[int]:
    """Color from lists of size outdegree + 1 by peeling kernels color by color."""
    for v in range(D.n):
        if len(L[v]) < D.outdegree(v) + 1:
            raise PreconditionError(f"vertex {v}: list size {len(L[v])} < outdegree + 1")
    lists = [set(L[v]) for v in range(D.n)]
    color: list[int | None] = [None] * D.n
    remaining = set(range(D.n))
    while remaining:
        c = min(min(lists[v]) for v in remaining)
        U = [v for v in remaining if c in lists[v]]
        S = find_kernel(D, U)
        for v in S:
            color[v] = c
        remaining -= S
        for v in U:
            lists[v].discard(c)
    return color


# -- matchings ---------------------------------------------------------------

@dataclass(frozen=True)
class Matching:
    edges: frozenset[tuple[int, int]]

    def covers(self) -> set[int]:
        return {x for e in self.edges for x in e}

    def is_matching(self) -> bool:
        return len(self.covers()) == 2 * len(self.edges)

    def is_perfect(self, n: int) -> bool:
        return self.is_matching() and len(self.edges) * 2 == n


def bipartition(adj: Sequence[Iterable[int]]) -> tuple[list[int], list[int]]:
    side = [-1] * len(adj)
    for root in range(len(adj)):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = side[u] ^ 1
                    queue.append(w)
                elif side[w] == side[u]:
                    raise PreconditionError("graph is not bipartite")
    return [v for v in range(len(adj)) if side[v] == 0], [v for v in range(len(adj)) if side[v] == 1]


def perfect_matching_regular_bipartite(adj: Sequence[Sequence[int]], d: int) -> Matching:
    if d < 1 or any(len(nb) != d for nb in adj):
        raise PreconditionError(f"graph is not {d}-regular")
    A, _ = bipartition(adj)
    G = nx.Graph()
    G.add_nodes_from(range(len(adj)))
    G.add_edges_from((u, v) for u in range(len(adj)) for v in adj[u] if u < v)
    mate = nx.bipartite.hopcroft_karp_matching(G, top_nodes=A)
    M = Matching(frozenset((a, mate[a]) for a in A if a in mate))
    if not M.is_perfect(len(adj)):
        raise InternalConsistencyError("regular bipartite graph without a perfect matching")
    return M


def bipartite_orientation(adj: Sequence[Sequence[int]], side_a: Iterable[int]) -> tuple[Orientation, Matching]:
    """Orientation of a 3-regular bipartite graph with outdegree 2 on A, 1 on B.

    Matching edges point from A to B; the leftover 2-regular graph splits
    into even cycles, each traversed as a directed cycle.
    """
    A = set(side_a)
    M = perfect_matching_regular_bipartite(adj, 3)
    matched = {frozenset(e) for e in M.edges}
    rest = [[w for w in adj[v] if frozenset((v, w)) not in matched] for v in range(len(adj))]
    arcs = [(a, b) if a in A else (b, a) for a, b in M.edges]
    seen = [False] * len(adj)
    for start in range(len(adj)):
        if seen[start]:
            continue
        prev, v = None, start
        while not seen[v]:
            seen[v] = True
            nxt = rest[v][0] if rest[v][0] != prev else rest[v][1]
            arcs.append((v, nxt))
            prev, v = v, nxt
    return Orientation(len(adj), arcs), M


def color_bipartite_3regular(adj: Sequence[Sequence[int]], L, side_a: Iterable[int] | None = None) -> list[int]:
    """Color a 3-regular bipartite graph with 3-lists on A and 2-lists on B."""
    A, B = bipartition(adj)
    if side_a is not None:
        A = sorted(side_a)
        B = sorted(set(range(len(adj))) - set(A))
    elif any(len(L[v]) < 3 for v in A):
        A, B = B, A
    if any(len(L[v]) < 3 for v in A) or any(len(L[v]) < 2 for v in B):
        raise PreconditionError("needs 3-lists on one side and 2-lists on the other")
    D, _ = bipartite_orientation(adj, A)
    return bbs_color(D, L)
