"""List assignments, residual lists, list-classes and the local criteria.

Lists are frozensets of non-negative ints.  A partial coloring is a plain
list with ``None`` for uncolored vertices.  The criteria and configuration
predicates are written in terms of a :class:`~toruslist.torus.Frame`, so the
right-hand variants come for free by evaluating the left-hand ones in the
flipped frame.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .torus import Frame, TorusTriangulation, flip_frame

Coloring = list  # list[int | None], indexed by flat vertex


class PreconditionError(ValueError):
    """Input does not satisfy an operation's stated hypotheses."""


class InternalConsistencyError(RuntimeError):
    """A step that the underlying argument guarantees has failed."""


@dataclass(frozen=True)
class ListAssignment:
    lists: tuple[frozenset[int], ...]
    graph: tuple[int, int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "lists", tuple(frozenset(x) for x in self.lists))

    def __len__(self):
        return len(self.lists)

    def __getitem__(self, v):
        return self.lists[v]

    def __iter__(self):
        return iter(self.lists)

    def sizes(self) -> list[int]:
        return [len(x) for x in self.lists]

    def all_identical(self) -> bool:
        return len(set(self.lists)) <= 1

    def truncated(self, k: int) -> "ListAssignment":
        return ListAssignment(tuple(frozenset(sorted(x)[:k]) for x in self.lists), self.graph)

    def permuted(self, phi: Sequence[int]) -> "ListAssignment":
        """Lists carried along a vertex map: new[phi[v]] = old[v]."""
        out = [frozenset()] * len(self.lists)
        for v, w in enumerate(phi):
            out[w] = self.lists[v]
        return ListAssignment(tuple(out))

    def to_json(self) -> dict:
        d = {"lists": [sorted(x) for x in self.lists]}
        if self.graph is not None:
            d = {"graph": {"r": self.graph[0], "s": self.graph[1], "t": self.graph[2]}, **d}
        return d


def validate_k_assignment(L: Iterable[frozenset], k: int) -> bool:
    return all(len(x) >= k for x in L)


def random_assignment(n: int, k: int, universe: int, rng: random.Random, graph=None) -> ListAssignment:
    """Each vertex draws k distinct colors from range(universe)."""
    if k > universe:
        raise ValueError("k exceeds universe size")
    pool = range(universe)
    return ListAssignment(tuple(frozenset(rng.sample(pool, k)) for _ in range(n)), graph)


def stripe_assignment(G: TorusTriangulation, rng: random.Random, pool: Sequence[frozenset],
                      tries: int = 200) -> ListAssignment | None:
    """A periodic assignment whose list-classes are bent diagonal stripes.

    Column x reads a fixed color-block pattern of period p shifted by a
    running offset that advances by 0 or 1 per column; the offsets are chosen
    to close up around the torus.  Such assignments usually pass every local
    criterion, which random ones almost never do, so they drive the solver
    down its main path.  Returns None if no closing offset pattern was found.
    """
    r, s, t = G.key
    periods = [p for p in range(2, s + 1) if s % p == 0]
    if not periods or len(set(pool)) < 2:
        return None
    for _ in range(tries):
        p = rng.choice(periods)
        steps = [rng.randint(0, 1) for _ in range(r)]
        if (sum(steps) + t) % p:
            continue
        phi = [0]
        for x in range(1, r):
            phi.append(phi[-1] + steps[x - 1])
        pattern: list[frozenset] = []
        while len(pattern) < p:
            pattern += [rng.choice(pool)] * rng.choice((1, 1, 2, 2, 3))
        pattern = pattern[:p]
        if len(set(pattern)) < 2:
            continue
        return ListAssignment(tuple(pattern[(y + phi[x]) % p] for x in range(r) for y in range(s)),
                              G.key)
    return None


def residual(adj: Sequence[Sequence[int]], L, coloring: Sequence[int | None]) -> ListAssignment:
    out = []
    for v, lst in enumerate(L):
        c = coloring[v]
        if c is not None:
            out.append(frozenset((c,)))
        else:
            used = {coloring[u] for u in adj[v] if u != v and coloring[u] is not None}
            out.append(frozenset(lst) - used)
    return ListAssignment(tuple(out))


def verify_coloring(adj: Sequence[Sequence[int]], L, coloring: Sequence[int | None]) -> bool:
    if len(coloring) != len(adj):
        return False
    for v, c in enumerate(coloring):
        if c is None or c not in L[v]:
            return False
        for u in adj[v]:
            if coloring[u] == c:
                return False
    return True


@dataclass(frozen=True)
class ComponentInfo:
    list_value: frozenset[int]
    members: frozenset[int]

    @property
    def isolated(self) -> bool:
        return len(self.members) == 1


def list_class_components(adj: Sequence[Sequence[int]], L) -> list[ComponentInfo]:
    parent = list(range(len(adj)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v, nb in enumerate(adj):
        for u in nb:
            if L[u] == L[v]:
                a, b = find(u), find(v)
                if a != b:
                    parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(len(adj)):
        groups.setdefault(find(v), []).append(v)
    comps = [ComponentInfo(frozenset(L[m[0]]), frozenset(m)) for m in groups.values()]
    comps.sort(key=lambda c: min(c.members))
    return comps


def is_isolated(adj, L, v: int) -> bool:
    return all(L[u] != L[v] for u in adj[v] if u != v)


# -- criteria ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    criterion: str  # "i", "ii", "iii", "iv"
    side: str  # "left" or "right"
    witness: tuple[int, ...]


@dataclass
class CriteriaReport:
    all_identical: bool
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def first(self, criterion: str) -> Violation | None:
        for v in self.violations:
            if v.criterion == criterion:
                return v
        return None


class _View:
    """Lists read through a frame: ``view(i, j)`` is the list at frame (i, j)."""

    __slots__ = ("frame", "L")

    def __init__(self, frame: Frame, L):
        self.frame = frame
        self.L = L

    def __call__(self, i, j):
        return self.L[self.frame.at(i, j)]


def shape_ii(view: _View, i: int, j: int) -> str | None:
    """Which criterion-(ii) shape holds for the distinct pair (i, j), (i, j-1).

    Returns "A", "B", "C" or None when criterion (ii) fails there.
    """
    Lij, Lb = view(i, j), view(i, j - 1)
    p, q, u = view(i - 1, j + 1), view(i - 1, j), view(i - 1, j - 1)
    if Lij == p and Lb == u:
        return "A"
    if Lij == p == q and Lb != u:
        return "B"
    if Lb == q == u and Lij != p:
        return "C"
    return None


def find_violation(frame: Frame, L, criterion: str) -> tuple[int, int] | None:
    """First frame position (i, j) violating the left-hand form of a criterion.

    Columns are scanned in increasing order, rows in increasing order.  For
    (ii) the witness is the top vertex of the distinct vertical pair; for
    (iii) it is the right endpoint of the offending edge, with the edge
    direction encoded by returning ``(i, j)`` for the edge to (i-1, j) and
    ``(i, -j)`` for the edge to (i-1, j+1).
    """
    G = frame.graph
    v = _View(frame, L)
    for i in range(1, G.r + 1):
        for j in range(1, G.s + 1):
            Lij = v(i, j)
            if criterion == "i":
                if not Lij <= (v(i - 1, j) | v(i - 1, j + 1)):
                    return i, j
            elif criterion == "ii":
                if Lij != v(i, j - 1) and shape_ii(v, i, j) is None:
                    return i, j
            elif criterion == "iii":
                if Lij == v(i - 1, j) and Lij not in (v(i - 1, j + 1), v(i, j - 1)):
                    return i, j
                if Lij == v(i - 1, j + 1) and Lij not in (v(i - 1, j), v(i, j + 1)):
                    return i, -j
            elif criterion == "iv":
                if Lij == v(i - 1, j) == v(i - 1, j + 1) and Lij != v(i, j + 1) and Lij != v(i, j - 1):
                    return i, j
            else:
                raise ValueError(criterion)
    return None


def check_criteria(G: TorusTriangulation, L) -> CriteriaReport:
    if G.r < 4:
        raise PreconditionError("criteria are defined for r >= 4")
    report = CriteriaReport(all_identical=len(set(L)) <= 1)
    if report.all_identical:
        report.violations.append(Violation("i", "left", ()))
        return report
    frames = (("left", G.frame()), ("right", flip_frame(G)))
    for crit in ("i", "ii", "iii", "iv"):
        for side, fr in frames:
            if crit == "iii" and side == "right":
                continue  # symmetric: every cross edge is a left edge of one endpoint
            w = find_violation(fr, L, crit)
            if w is None:
                continue
            i, j = w
            if crit == "iii":
                other = fr.at(i - 1, -j + 1) if j < 0 else fr.at(i - 1, j)
                witness = (fr.at(i, abs(j)), other)
            elif crit == "ii":
                witness = (fr.at(i, j), fr.at(i, j - 1))
            else:
                witness = (fr.at(i, j),)
            report.violations.append(Violation(crit, side, witness))
    return report


# -- configurations ----------------------------------------------------------

@dataclass(frozen=True)
class PairConfiguration:
    tag: str
    anchor: int
    witness: dict = field(default_factory=dict)


# Cells are (column offset, row offset) relative to (i, j); the top vertex of
# the pair being classified is (i, j + 1).
def _rows(shape, ks):
    return [(dc, k + dk) for k in ks for dc, dk in shape]


_STRAIGHT = ((0, 0), (1, 0), (2, 0))
_BEND_LATE = ((0, 0), (1, 0), (2, -1))
_BEND_EARLY = ((0, 0), (1, -1), (2, -1))
_DIAG = ((0, 0), (1, -1), (2, -2))
_UP, _DOWN = (2, 1), (0, -1)

PAIR_PATTERNS = (
    ("I", _rows(_STRAIGHT, _UP), _rows(_STRAIGHT, _DOWN), None),
    ("II", _rows(_BEND_LATE, _UP), _rows(_BEND_LATE, _DOWN), None),
    ("III", _rows(_BEND_EARLY, _UP), _rows(_BEND_EARLY, _DOWN), None),
    ("IV", _rows(_DIAG, _UP), _rows(_DIAG, _DOWN), None),
    ("V", _rows(_STRAIGHT, _UP), _rows(_BEND_LATE, _DOWN), (2, 0)),
    ("VI", _rows(_BEND_EARLY, _UP), _rows(_DIAG, _DOWN), (2, -1)),
    ("VII", _rows(_BEND_LATE, _UP), _rows(_BEND_EARLY, _DOWN), (1, 0)),
)

# Relative to the isolated center (i, j): top (i, j+1), bottom (i, j-1).
_UP_T, _DOWN_T = (2, 1), (-1, -2)
TRIPLE_PATTERNS = (
    ("VIII", _rows(_BEND_EARLY, _UP_T), _rows(_STRAIGHT, _DOWN_T), None),
    ("IX", _rows(_DIAG, _UP_T), _rows(_BEND_LATE, _DOWN_T), None),
    ("X", _rows(_BEND_EARLY, _UP_T), _rows(_BEND_LATE, _DOWN_T), (2, -1)),
)


def _match(view, adj, L, i, j, L1, L2, cells1, cells2, iso):
    if any(view(i + dc, j + dk) != L1 for dc, dk in cells1):
        return None
    if any(view(i + dc, j + dk) != L2 for dc, dk in cells2):
        return None
    at = view.frame.at
    witness = {"L1": [at(i + dc, j + dk) for dc, dk in cells1],
               "L2": [at(i + dc, j + dk) for dc, dk in cells2]}
    if iso is not None:
        w = at(i + iso[0], j + iso[1])
        if L[w] in (L1, L2) or not is_isolated(adj, L, w):
            return None
        witness["iso"] = [w]
    return witness


def classify_pair(G: TorusTriangulation, L, top: int, frame: Frame | None = None) -> PairConfiguration:
    """Classify the vertical pair whose upper vertex is ``top``.

    ``top`` and its lower neighbor must carry distinct lists and neither may
    be isolated.  Raises :class:`InternalConsistencyError` if no pattern fits.
    """
    frame = frame or G.frame()
    i, j1 = frame.coords(top)
    j = j1 - 1
    view = _View(frame, L)
    adj = G.adjacency
    bottom = frame.at(i, j)
    if L[top] == L[bottom]:
        raise PreconditionError("pair lists are identical")
    if is_isolated(adj, L, top) or is_isolated(adj, L, bottom):
        raise PreconditionError("pair contains an isolated vertex")
    for tag, c1, c2, iso in PAIR_PATTERNS:
        w = _match(view, adj, L, i, j, L[top], L[bottom], c1, c2, iso)
        if w is not None:
            return PairConfiguration(tag, top, w)
    raise InternalConsistencyError(f"no configuration for pair at {G.vertex(top)}")


def classify_iso_triple(G: TorusTriangulation, L, center: int, frame: Frame | None = None) -> PairConfiguration:
    frame = frame or G.frame()
    i, j = frame.coords(center)
    view = _View(frame, L)
    adj = G.adjacency
    L1, L3, L2 = view(i, j + 1), view(i, j), view(i, j - 1)
    if len({L1, L2, L3}) != 3:
        raise PreconditionError("triple lists are not mutually distinct")
    if not is_isolated(adj, L, center):
        raise PreconditionError("center is not isolated")
    for tag, c1, c2, iso in TRIPLE_PATTERNS:
        w = _match(view, adj, L, i, j, L1, L2, c1, c2, iso)
        if w is not None:
            return PairConfiguration(tag, center, w)
    raise InternalConsistencyError(f"no configuration for isolated triple at {G.vertex(center)}")


def isolated_neighborhood(G: TorusTriangulation, L, center: int, frame: Frame | None = None):
    """The two lists surrounding an isolated vertex, or None if the pattern fails.

    Above and to the right sits one list, below and to the left another:
    (i-1, j+1), (i, j+1), (i+1, j+1), (i+1, j) share one list and
    (i-1, j), (i-1, j-1), (i, j-1), (i+1, j-1) share the other.
    """
    frame = frame or G.frame()
    i, j = frame.coords(center)
    v = _View(frame, L)
    upper = {v(i - 1, j + 1), v(i, j + 1), v(i + 1, j + 1), v(i + 1, j)}
    lower = {v(i - 1, j), v(i - 1, j - 1), v(i, j - 1), v(i + 1, j - 1)}
    if len(upper) == 1 and len(lower) == 1 and upper != lower:
        return next(iter(upper)), next(iter(lower))
    return None
