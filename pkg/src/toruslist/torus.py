"""Toroidal 6-regular triangulations T(r, s, t) and cylinders C(r, s).

The torus graph is modelled as the quotient of the triangular lattice Z^2 by
the sublattice spanned by (0, s) and (r, t).  Vertex (i, j) sits at the lattice
point (i - 1, j - 1); the three edge directions are (0, 1) (vertical),
(1, 0) and (1, -1).  Working in lattice coordinates makes every wraparound
rule, every row/column rotation and every isomorphism between tuples a plain
integer computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, NamedTuple, Sequence

# The twelve linear maps of Z^2 that permute the three edge directions up to
# sign.  Generated by a rotation of order six and a reflection.
_ROT = ((0, -1), (1, 1))
_SWAP = ((0, 1), (1, 0))


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _lattice_symmetries():
    mats = []
    m = ((1, 0), (0, 1))
    for _ in range(6):
        mats.append(m)
        mats.append(_mat_mul(m, _SWAP))
        m = _mat_mul(_ROT, m)
    return tuple(mats)


LATTICE_SYMMETRIES = _lattice_symmetries()


class VertexId(NamedTuple):
    """Grid coordinates of a vertex, 1-based column ``i`` and row ``j``."""

    i: int
    j: int


def _hermite(w1: tuple[int, int], w2: tuple[int, int]) -> tuple[int, int, int]:
    """Reduce a rank-2 lattice basis to the (r, s, t) normal form.

    Returns the unique (r, s, t) with r, s > 0 and 0 <= t < s such that the
    lattice is spanned by (0, s) and (r, t).
    """
    (a1, b1), (a2, b2) = w1, w2
    det = abs(a1 * b2 - a2 * b1)
    if det == 0:
        raise ValueError("degenerate lattice")
    # extended gcd on the first coordinates
    g, p, q = _egcd(a1, a2)
    if g < 0:
        g, p, q = -g, -p, -q
    r = g
    s = det // r
    t = (p * b1 + q * b2) % s
    return r, s, t


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        x0, x1 = x1, x0 - k * x1
        y0, y1 = y1, y0 - k * y1
    return a, x0, y0


@dataclass(frozen=True, eq=False)
class TorusTriangulation:
    """The graph T(r, s, t).

    Vertices are stored by flat index ``(i - 1) * s + (j - 1)``.  Each vertex
    has exactly six neighbor entries, in the order: vertical up, vertical
    down, left pair ``(i-1, j), (i-1, j+1)``, right pair ``(i+1, j),
    (i+1, j-1)``.  For r = 1 the same lattice rule gives the circulant order
    ``j+1, j-1, j+t, j+t+1, j-t, j-t-1``.  Multigraphs keep repeated entries;
    a loop shows up twice.
    """

    r: int
    s: int
    t: int
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.r < 1 or self.s < 1:
            raise ValueError(f"r and s must be positive, got r={self.r}, s={self.s}")
        if not 0 <= self.t < self.s:
            raise ValueError(f"t must lie in [0, {self.s - 1}], got {self.t}")
        adj = []
        for v in range(self.n):
            x, y = divmod(v, self.s)
            adj.append(tuple(
                self.lattice_vertex(x + dx, y + dy)
                for dx, dy in ((0, 1), (0, -1), (-1, 0), (-1, 1), (1, 0), (1, -1))
            ))
        object.__setattr__(self, "adjacency", tuple(adj))

    def __eq__(self, other):
        return isinstance(other, TorusTriangulation) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.r, self.s, self.t)

    @property
    def n(self) -> int:
        return self.r * self.s

    def lattice_vertex(self, x: int, y: int) -> int:
        """Flat index of the vertex at lattice point (x, y)."""
        k, x = divmod(x, self.r)
        return x * self.s + (y - k * self.t) % self.s

    def at(self, i: int, j: int) -> int:
        """Flat index of (i, j), with wraparound applied to any integers."""
        return self.lattice_vertex(i - 1, j - 1)

    def flat(self, v: VertexId | tuple[int, int]) -> int:
        i, j = v
        if not (1 <= i <= self.r and 1 <= j <= self.s):
            raise ValueError(f"vertex {v} outside T{self.key}")
        return (i - 1) * self.s + (j - 1)

    def vertex(self, flat: int) -> VertexId:
        x, y = divmod(flat, self.s)
        return VertexId(x + 1, y + 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_ids(self, v: VertexId | tuple[int, int]) -> list[VertexId]:
        return [self.vertex(u) for u in self.adjacency[self.flat(v)]]

    def column(self, i: int) -> list[int]:
        if not 1 <= i <= self.r:
            raise ValueError(f"column {i} outside 1..{self.r}")
        return [(i - 1) * self.s + j for j in range(self.s)]

    @cached_property
    def has_loops(self) -> bool:
        return any(v in nb for v, nb in enumerate(self.adjacency))

    @cached_property
    def has_multi_edges(self) -> bool:
        for v, nb in enumerate(self.adjacency):
            others = [u for u in nb if u != v]
            if len(set(others)) != len(others):
                return True
        return False

    @property
    def is_simple(self) -> bool:
        return not (self.has_loops or self.has_multi_edges)

    @property
    def is_three_chromatic(self) -> bool:
        return self.s % 3 == 0 and (self.r - self.t) % 3 == 0

    def edges(self) -> list[tuple[int, int]]:
        """Edge multiset as sorted pairs; each loop appears once."""
        out = []
        for v, nb in enumerate(self.adjacency):
            for u in nb:
                if v < u:
                    out.append((v, u))
        loops = [(v, v) for v, nb in enumerate(self.adjacency) for u in nb if u == v]
        return out + loops[::2]

    def simple_adjacency(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(set(nb) - {v})) for v, nb in enumerate(self.adjacency)]

    def frame(self, dx: int = 0, dy: int = 0, flipped: bool = False) -> "Frame":
        return Frame(self, dx, dy, flipped)


@dataclass(frozen=True)
class Frame:
    """A relabelling of T(r, s, t) by one of its rotation/flip automorphisms.

    ``at(i, j)`` gives the flat index of the vertex that plays the role of
    (i, j) in the rotated picture.  Translations move the base column and
    base row; ``flipped`` applies (i, j) -> (r - i + 1, s - j + 1), which swaps
    left and right neighbor roles.  No data is copied.
    """

    graph: TorusTriangulation
    dx: int = 0
    dy: int = 0
    flipped: bool = False

    def at(self, i: int, j: int) -> int:
        x, y = i - 1, j - 1
        if self.flipped:
            x, y = -x, -y
        return self.graph.lattice_vertex(x + self.dx, y + self.dy)

    def coords(self, v: int) -> tuple[int, int]:
        """Inverse of ``at`` on the fundamental domain 1..r x 1..s."""
        g = self.graph
        x, y = divmod(v, g.s)
        # undo the translation, then reduce back into the domain
        x, y = x - self.dx, y - self.dy
        if self.flipped:
            x, y = -x, -y
        w = g.lattice_vertex(x, y)
        i, j = g.vertex(w)
        return i, j


def flip_frame(G: TorusTriangulation) -> Frame:
    return Frame(G, G.r - 1, G.s - 1, True)


def build_torus(r: int, s: int, t: int) -> TorusTriangulation:
    return TorusTriangulation(r, s, t)


def neighbors(G: TorusTriangulation, v: VertexId | tuple[int, int]) -> list[VertexId]:
    return G.neighbor_ids(v)


def column(G, i: int) -> list[VertexId]:
    return [VertexId(i, j) for j in range(1, G.s + 1)]


def flip_automorphism(G: TorusTriangulation, v: VertexId | tuple[int, int]) -> VertexId:
    i, j = v
    return VertexId(G.r - i + 1, G.s - j + 1)


def normal_circuit_lengths(G: TorusTriangulation) -> tuple[int, int, int]:
    n, s = G.n, G.s
    return s, n // math.gcd(s, G.t), n // math.gcd(s, G.r + G.t)


def walk_circuit(G: TorusTriangulation, start: int, direction: str) -> list[int]:
    """Follow one of the three straight directions until returning to start.

    ``direction`` is ``"vertical"``, ``"horizontal"`` or ``"diagonal"``; the
    neighbor slot used is 0, 4 and 5 respectively.
    """
    slot = {"vertical": 0, "horizontal": 4, "diagonal": 5}[direction]
    path = [start]
    v = G.adjacency[start][slot]
    while v != start:
        path.append(v)
        v = G.adjacency[v][slot]
    return path


def _transformed(r: int, s: int, t: int, A) -> tuple[int, int, int]:
    w1 = (A[0][1] * s, A[1][1] * s)
    w2 = (A[0][0] * r + A[0][1] * t, A[1][0] * r + A[1][1] * t)
    return _hermite(w1, w2)


def isomorphic_tuples(r: int, s: int, t: int) -> set[tuple[int, int, int]]:
    """All tuples reachable from (r, s, t) by direction-preserving lattice maps.

    This is the closure under t -> (-r - t) mod s and re-basing on the
    horizontal and diagonal normal circuits: each such move is one of the
    twelve lattice symmetries applied to the defining sublattice.
    """
    if not 0 <= t < s:
        raise ValueError(f"t must lie in [0, {s - 1}]")
    return {_transformed(r, s, t, A) for A in LATTICE_SYMMETRIES}


def isomorphism(G: TorusTriangulation, target: tuple[int, int, int]) -> list[int] | None:
    """An explicit vertex map from G onto T(target), or None.

    Returns ``phi`` with ``phi[v]`` the flat index in the target graph.
    """
    H = TorusTriangulation(*target)
    for A in LATTICE_SYMMETRIES:
        if _transformed(G.r, G.s, G.t, A) != target:
            continue
        phi = []
        for v in range(G.n):
            x, y = divmod(v, G.s)
            phi.append(H.lattice_vertex(A[0][0] * x + A[0][1] * y, A[1][0] * x + A[1][1] * y))
        return phi
    return None


def is_isomorphism(G, H, phi: Sequence[int]) -> bool:
    """Check that ``phi`` is a bijection carrying G's edge multiset onto H's."""
    if len(set(phi)) != G.n or G.n != H.n:
        return False
    for v in range(G.n):
        mapped = sorted(phi[u] for u in G.adjacency[v])
        if mapped != sorted(H.adjacency[phi[v]]):
            return False
    return True


@dataclass(frozen=True)
class GraphClass:
    has_loops: bool
    has_multi_edges: bool
    is_three_chromatic: bool
    solver_case: str
    unsupported_reason: str | None = None
    representation: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        return {
            "has_loops": self.has_loops,
            "has_multi_edges": self.has_multi_edges,
            "is_three_chromatic": self.is_three_chromatic,
            "solver_case": self.solver_case,
            "unsupported_reason": self.unsupported_reason,
            "representation": list(self.representation) if self.representation else None,
        }


def _is_case2(rep) -> bool:
    r, s, t = rep
    return r == 1 and t == 2 and s >= 9 and s != 11


def _is_case3(rep) -> bool:
    r, s, t = rep
    return r == 2 and s % 2 == 0 and t % 2 == 0 and t not in (0, s - 2)


def case_representation(G: TorusTriangulation) -> tuple[str, tuple[int, int, int] | None]:
    """Pick the solver case and the tuple it should run on.

    The given tuple is preferred when it already fits a case; otherwise the
    isomorphic tuples are searched in case order.
    """
    tests = (
        ("Case1", lambda rep: rep[0] >= 4),
        ("Case2", _is_case2),
        ("Case3", _is_case3),
    )
    for name, ok in tests:
        if ok(G.key):
            return name, G.key
    others = sorted(isomorphic_tuples(*G.key))
    for name, ok in tests:
        for rep in others:
            if ok(rep):
                return name, rep
    return "IdenticalOnly", None


def classify(G: TorusTriangulation) -> GraphClass:
    loops, multi = G.has_loops, G.has_multi_edges
    tri = G.is_three_chromatic

    def make(case, reason=None, rep=None):
        return GraphClass(loops, multi, tri, case, reason, rep)

    if loops or multi:
        kind = "loops" if loops else "multiple edges"
        return make("Unsupported", f"not simple ({kind})")
    if G.n == 7:
        return make("Unsupported", "K7: 7-chromatic and 7-choosable")
    if G.n == 11:
        return make("Unsupported", "graph J: the 6-chromatic 11-vertex triangulation")
    case, rep = case_representation(G)
    return make(case, None, rep)


@dataclass(frozen=True, eq=False)
class CylinderTriangulation:
    """C(r, s): T(r + 1, s, 0) with its last column deleted.

    Flat indices follow the torus convention.  Exterior columns 1 and r
    have degree 4, the rest degree 6.
    """

    r: int
    s: int
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.r < 3 or self.s < 3:
            raise ValueError(f"C(r, s) needs r, s >= 3, got ({self.r}, {self.s})")
        r, s = self.r, self.s
        adj = []
        for v in range(r * s):
            i, j = divmod(v, s)
            nb = [i * s + (j + 1) % s, i * s + (j - 1) % s]
            if i > 0:
                nb += [(i - 1) * s + j, (i - 1) * s + (j + 1) % s]
            if i < r - 1:
                nb += [(i + 1) * s + j, (i + 1) * s + (j - 1) % s]
            adj.append(tuple(nb))
        object.__setattr__(self, "adjacency", tuple(adj))

    @property
    def n(self) -> int:
        return self.r * self.s

    def at(self, i: int, j: int) -> int:
        if not 1 <= i <= self.r:
            raise ValueError(f"column {i} outside 1..{self.r}")
        return (i - 1) * self.s + (j - 1) % self.s

    def vertex(self, flat: int) -> VertexId:
        x, y = divmod(flat, self.s)
        return VertexId(x + 1, y + 1)

    def columns(self) -> list[list[int]]:
        return [[i * self.s + j for j in range(self.s)] for i in range(self.r)]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v, nb in enumerate(self.adjacency) for u in nb if v < u]


def build_cylinder(r: int, s: int) -> CylinderTriangulation:
    return CylinderTriangulation(r, s)


def iter_tuples(max_n: int) -> Iterator[tuple[int, int, int]]:
    for r in range(1, max_n + 1):
        for s in range(1, max_n // r + 1):
            for t in range(s):
                yield r, s, t
