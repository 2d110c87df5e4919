"""5-list coloring of 6-regular toroidal triangulations.

Three constructive pipelines are implemented: grids with at least four
columns, T(1, s, 2), and T(2, s, t) with s, t even.  Each works on a
:class:`~toruslist.base.Board`, so every list lookup is counted and the
linear-time behaviour can be measured.  Inputs that are only isomorphic to a
supported tuple are relabelled through an explicit lattice isomorphism and
the coloring is mapped back.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from .base import Board, InternalConsistencyError, _cycle_colors, _path_colors, color_cylinder_columns, reduce_k4_minus
from .lists import (
    PreconditionError,
    classify_iso_triple,
    classify_pair,
    find_violation,
    is_isolated,
    _View,
    validate_k_assignment,
    verify_coloring,
)
from .oracle import YES, is_L_colorable
from .torus import Frame, TorusTriangulation, build_torus, classify, flip_frame, isomorphism

log = logging.getLogger(__name__)

COLORED, IDENTICAL, UNSUPPORTED = "Colored", "TrivialIdentical", "Unsupported"


@dataclass
class SolveOutcome:
    status: str
    coloring: list[int] | None = None
    exit_path: str | None = None
    touches: list[int] | None = None
    reason: str | None = None
    case: str | None = None
    trace: dict = field(default_factory=dict)

    @property
    def colored(self) -> bool:
        return self.coloring is not None

    def to_json(self) -> dict:
        stats = touch_counter(self)
        return {
            "status": self.status,
            "case": self.case,
            "exit_path": self.exit_path,
            "reason": self.reason,
            "coloring": self.coloring,
            "touches": {"total": stats.total, "max_per_vertex": stats.max_per_vertex,
                        "excluded": stats.excluded},
        }


@dataclass(frozen=True)
class TouchStats:
    total: int
    max_per_vertex: int
    excluded: bool


def touch_counter(outcome: SolveOutcome) -> TouchStats:
    """Visit statistics; fallback runs are flagged as outside the linear-time claim."""
    t = outcome.touches or []
    excluded = outcome.exit_path == "Fallback" or outcome.touches is None
    return TouchStats(sum(t), max(t, default=0), excluded)


def _truncate5(L) -> list[frozenset[int]]:
    return [frozenset(sorted(x)[:5]) for x in L]


# -- fallback ------------------------------------------------------------------

def _dsatur(adj: Sequence[Sequence[int]], palette: Sequence[int], budget: int = 10**6) -> list[int] | None:
    n = len(adj)
    color: list[int | None] = [None] * n
    sat = [set() for _ in range(n)]
    nodes = 0

    def pick():
        best, key = None, None
        for v in range(n):
            if color[v] is None:
                k = (len(sat[v]), len(adj[v]), -v)
                if key is None or k > key:
                    best, key = v, k
        return best

    def rec():
        nonlocal nodes
        v = pick()
        if v is None:
            return True
        for c in palette:
            if c in sat[v]:
                continue
            nodes += 1
            if nodes > budget:
                return False
            color[v] = c
            touched = [u for u in adj[v] if color[u] is None and c not in sat[u]]
            for u in touched:
                sat[u].add(c)
            if rec():
                return True
            for u in touched:
                sat[u].discard(c)
            color[v] = None
        return False

    return list(color) if rec() else None


def solve_identical(G: TorusTriangulation, L) -> SolveOutcome:
    """All lists equal: find a proper coloring with at most five of the colors."""
    if len(set(L)) != 1:
        raise PreconditionError("lists are not all identical")
    cls = classify(G)
    if cls.solver_case == "Unsupported":
        return SolveOutcome(UNSUPPORTED, reason=cls.unsupported_reason, exit_path="Fallback")
    palette = sorted(L[0])[:5]
    col = _dsatur(G.simple_adjacency(), palette)
    if col is None:
        return SolveOutcome(UNSUPPORTED, reason="no 5-coloring found by backtracking", exit_path="Fallback")
    return SolveOutcome(IDENTICAL, col, "Fallback", None)


def _solve_backtracking(G: TorusTriangulation, L, budget: int = 10**7) -> SolveOutcome:
    log.warning("T%s is not covered by the constructive cases; using backtracking", G.key)
    res = is_L_colorable(G.simple_adjacency(), L, budget)
    if res.status == YES:
        return SolveOutcome(COLORED, res.witness, "Fallback")
    return SolveOutcome(UNSUPPORTED, reason=f"backtracking: {res.status}", exit_path="Fallback")


# -- case 1: r >= 4 ------------------------------------------------------------

@dataclass
class CaseOnePlan:
    base_frame: Frame
    anchor: tuple[int, int]
    configuration: str
    J: list[int]
    A: list[tuple[int, int]]
    stage_log: list[tuple[str, int, int]] = field(default_factory=list)
    step1_profile: list[int] = field(default_factory=list)


class _CaseOne:
    def __init__(self, G: TorusTriangulation, L: Sequence[frozenset[int]]):
        self.G = G
        self.L = L
        self.board = Board(G.adjacency, L)
        self.plan: CaseOnePlan | None = None

    # helpers
    def column(self, fr: Frame, i: int) -> list[int]:
        return [fr.at(i, j) for j in range(1, self.G.s + 1)]

    def cylinder(self, fr: Frame, first: int) -> None:
        cols = [self.column(fr, first + k) for k in range(self.G.r - 1)]
        color_cylinder_columns(self.board, cols)

    def pick_two(self, x1: int, avoid1, x2: int, avoid2) -> None:
        """Color x1, x2 avoiding the given lists, keeping them distinct if adjacent."""
        b = self.board
        for c1 in sorted(b.residual(x1) - avoid1):
            b.assign(x1, c1)
            rest = b.residual(x2) - avoid2
            if rest:
                b.assign(x2, min(rest))
                return
            b.color[x1] = None
        raise InternalConsistencyError(f"no admissible colors for {x1}, {x2}")

    # exits
    def exit_union(self, fr: Frame, i: int, j: int) -> None:
        L, b = self.L, self.board
        v = fr.at(i, j)
        choice = L[v] - (L[fr.at(i - 1, j)] | L[fr.at(i - 1, j + 1)])
        b.assign(v, min(choice))
        b.color_cycle(self.column(fr, i))
        self.cylinder(fr, i + 1)

    def exit_pair(self, fr: Frame, i: int, j: int, shape: str) -> None:
        L = self.L
        top, bot = L[fr.at(i, j)], L[fr.at(i, j - 1)]
        if shape == "a":
            self.pick_two(fr.at(i - 1, j + 1), top, fr.at(i - 1, j - 1), bot)
        elif shape == "b":
            self.pick_two(fr.at(i - 1, j), bot, fr.at(i - 1, j + 1), top)
        else:
            self.pick_two(fr.at(i - 1, j), top, fr.at(i - 1, j - 1), bot)
        self.board.color_cycle(self.column(fr, i - 1))
        self.cylinder(fr, i)

    def exit_apex(self, fr: Frame, i: int, j: int) -> None:
        L = self.L
        self.pick_two(fr.at(i, j + 1), L[fr.at(i - 1, j + 1)], fr.at(i, j - 1), L[fr.at(i - 1, j)])
        self.board.color_cycle(self.column(fr, i))
        self.cylinder(fr, i + 1)

    def reductions(self) -> str | None:
        G, L = self.G, self.L
        frames = (G.frame(), flip_frame(G))
        for fr in frames:
            w = find_violation(fr, L, "i")
            if w:
                self.exit_union(fr, *w)
                return "Union1"
        for fr in frames:
            w = find_violation(fr, L, "ii")
            if w:
                i, j = w
                shape = _reduction_shape(_View(fr, L), i, j)
                self.exit_pair(fr, i, j, shape)
                return "L32" + shape
        fr = frames[0]
        w = find_violation(fr, L, "iii")
        if w:
            i, j = w
            if j > 0:
                self.exit_pair(fr, i, j, "b")
                return "L32b"
            self.exit_pair(fr, i, -j + 1, "c")
            return "L32c"
        for fr in frames:
            w = find_violation(fr, L, "iv")
            if w:
                self.exit_apex(fr, *w)
                return "L33"
        return None

    # main path
    def find_anchor(self) -> int:
        G, L = self.G, self.L
        adj = G.adjacency
        for i in range(1, G.r + 1):
            for j in range(G.s, 0, -1):
                top, bot = G.at(i, j), G.at(i, j - 1)
                if L[top] != L[bot] and not is_isolated(adj, L, top) and not is_isolated(adj, L, bot):
                    return top
        raise InternalConsistencyError("no anchor pair although the criteria hold")

    def is_x_triple(self, fr: Frame, center_row: int) -> bool:
        G, L = self.G, self.L
        c = fr.at(1, center_row)
        lists = {L[fr.at(1, center_row + 1)], L[c], L[fr.at(1, center_row - 1)]}
        if len(lists) != 3 or not is_isolated(G.adjacency, L, c):
            return False
        return classify_iso_triple(G, L, c, fr).tag == "X"

    def main_path(self) -> None:
        G, L, b = self.G, self.L, self.board
        s, r = G.s, G.r
        top = self.find_anchor()
        i0, j0 = G.vertex(top)
        fr = Frame(G, i0 - 1, j0 - s)
        tag = classify_pair(G, L, top, fr).tag
        if tag in ("IV", "VI"):
            rows = [s - 2 * k + 1 for k in range(1, s // 2 + 1)]
        else:
            rows = [s - 2 * k + 2 for k in range(1, s // 2 + 1)]
        J = [fr.at(3, m) for m in rows]
        plan = CaseOnePlan(fr, (s, s - 1), tag, J, [])
        self.plan = plan
        protected = {fr.at(1, 1), fr.at(1, s), fr.at(1, s - 1), fr.at(1, s - 2)}
        kinds = {}
        for m in rows:
            p, q = fr.at(1, m + 1), fr.at(3, m)
            if L[p] == L[q]:
                kinds[m] = "same"
            elif L[p] & L[q]:
                kinds[m] = "common"
            elif self.is_x_triple(fr, m + 1):
                kinds[m] = "x"
            else:
                kinds[m] = "disjoint"

        # stage 1
        for m in rows:
            if kinds[m] not in ("common", "x"):
                continue
            p, q = fr.at(1, m + 1), fr.at(3, m)
            plan.A.append((p, q))
            if p in protected:
                raise InternalConsistencyError("stage 1 reached a protected vertex")
            if kinds[m] == "common":
                c = min(b.residual(p) & b.residual(q))
                b.assign(p, c)
                b.assign(q, c)
                plan.stage_log += [("1", p, c), ("1", q, c)]
            else:
                cp = b.residual(p) - L[fr.at(2, m + 1)]
                cq = b.residual(q) - L[fr.at(2, m)]
                if not cp or not cq:
                    raise InternalConsistencyError(f"stage 1 disjoint choice empty at row {m}")
                b.assign(p, min(cp))
                b.assign(q, min(cq))
                plan.stage_log += [("1", p, min(cp)), ("1", q, min(cq))]

        # stage 2
        T, B = fr.at(1, s), fr.at(1, s - 1)
        L1, L2 = L[T], L[B]
        if tag == "V":
            first = (T, L1 & L[fr.at(3, s - 1)] - L2)
        elif tag == "VII":
            first = (T, L1 - L[fr.at(2, s - 1)])
        else:
            first = (T, L1 - L2)
        if tag == "VI":
            second = (B, (L2 & L[fr.at(3, s - 2)]) - L1)
        else:
            second = (B, L2 - L1)
        for v, cand in (first, second):
            cand = cand & b.residual(v)
            if not cand:
                raise InternalConsistencyError(f"stage 2 has no color for configuration {tag}")
            b.assign(v, min(cand))
            plan.stage_log.append(("2", v, min(cand)))

        # stage 3
        b.color_cycle(self.column(fr, 1))
        for m in rows:
            q = fr.at(3, m)
            if b.color[q] is not None:
                continue
            if kinds[m] == "same":
                c = b.color[fr.at(1, m + 1)]
            else:
                c = min(b.residual(q))
            b.assign(q, c)
            plan.stage_log.append(("3", q, c))

        c2 = self.column(fr, 2)
        plan.step1_profile = [b.size(v) for v in c2]
        for v, size in zip(c2, plan.step1_profile):
            want = 4 if v == fr.at(2, s - 1) else 3
            if size < want:
                raise InternalConsistencyError(
                    f"step 1 left {size} colors at {G.vertex(v)}, expected {want}")
            b.restrict(v, want)

        # step 2
        for i in range(r, 4, -1):
            b.color_cycle(self.column(fr, i))
        for i in (4, 3, 2):
            b.color_cycle(self.column(fr, i))


def _reduction_shape(view: _View, i: int, j: int) -> str:
    """Which reduction applies to a pair violating criterion (ii)."""
    a1 = view(i, j) == view(i - 1, j + 1)
    a2 = view(i, j - 1) == view(i - 1, j - 1)
    if not a1 and not a2:
        return "a"
    if a1:
        return "c"
    return "b"


def solve_case1(G: TorusTriangulation, L) -> SolveOutcome:
    if G.r < 4 or G.s < 3 or not G.is_simple:
        raise PreconditionError("case 1 needs a simple T(r, s, t) with r >= 4, s >= 3")
    L5 = _truncate5(L)
    if len(set(L5)) == 1:
        return solve_identical(G, L5)
    solver = _CaseOne(G, L5)
    path = solver.reductions()
    if path is None:
        solver.main_path()
        path = "Step12"
    out = SolveOutcome(COLORED, list(solver.board.color), path, solver.board.touches, case="Case1")
    if solver.plan is not None:
        out.trace["plan"] = solver.plan
    return out


# -- case 2: T(1, s, 2) --------------------------------------------------------

def solve_case2(G: TorusTriangulation, L) -> SolveOutcome:
    r, s, t = G.key
    if r != 1 or t != 2 or s < 9 or s == 11:
        raise PreconditionError("case 2 needs T(1, s, 2) with s >= 9, s != 11")
    L5 = _truncate5(L)
    if len(set(L5)) == 1:
        return solve_identical(G, L5)
    j = next(j for j in range(1, s + 1) if L5[G.at(1, j)] != L5[G.at(1, j - 1)])
    fr = Frame(G, 0, j - 1)
    v = {k: fr.at(1, k) for k in range(1, s + 1)}
    b = Board(G.adjacency, L5)
    b.assign(v[s], min(L5[v[s]] - L5[v[1]]))
    for k in range(s - 1, 6, -1):
        b.greedy(v[k])
    for k, size in ((6, 2), (1, 3), (2, 3), (5, 3), (3, 4), (4, 4)):
        b.restrict(v[k], size)
    VL = lambda k: b.lists[v[k]]

    def attempt(first: list[tuple[int, int]], finish: list[int], path=False) -> bool:
        for k, c in first:
            b.assign(v[k], c)
        lists = [b.residual(v[k]) for k in finish]
        cols = _path_colors(lists) if path else _cycle_colors(lists)
        if cols is None:
            for k, _ in first:
                b.color[v[k]] = None
            return False
        for k, c in zip(finish, cols):
            b.assign(v[k], c)
        return True

    def run(options, finish, path=False):
        for first in options:
            if attempt(first, finish, path):
                return True
        raise InternalConsistencyError("case 2 endgame failed")

    common = VL(2) & VL(6)
    if common:
        c = min(common)
        b.assign(v[2], c)
        b.assign(v[6], c)
        both = VL(3) & VL(4)
        cands = sorted(b.residual(v[1]), key=lambda a: (a in both, a))
        run([[(1, a)] for a in cands], [3, 4, 5])
        branch = "I"
    elif VL(1) & VL(5):
        c = min(VL(1) & VL(5))
        b.assign(v[1], c)
        b.assign(v[5], c)
        if c not in VL(2):
            run([[(6, d)] for d in sorted(b.residual(v[6]))], [2, 3, 4])
        else:
            l3 = b.residual(v[3])
            opts = [(u, d) for u in (2, 6) for d in sorted(b.residual(v[u]))]
            opts.sort(key=lambda o: o[1] in l3)
            for u, d in opts:
                rest = [3, 4, 6] if u == 2 else [2, 3, 4]
                if attempt([(u, d)], rest):
                    break
            else:
                raise InternalConsistencyError("case 2 endgame failed")
        branch = "II"
    else:
        d = min(b.residual(v[3]) - VL(6))
        b.assign(v[3], d)
        small = [k for k in (1, 5) if len(b.residual(v[k])) <= 2]
        low = set().union(*(b.residual(v[k]) for k in small)) if small else set()
        cands = sorted(b.residual(v[4]), key=lambda e: (e in low, e))
        run([[(4, e)] for e in cands], [1, 2, 5, 6], path=True)
        branch = "III"
    out = SolveOutcome(COLORED, list(b.color), "Case2", b.touches, case="Case2")
    out.trace["branch"] = branch
    return out


# -- case 3: T(2, s, t), s and t even ----------------------------------------------

def _predicted(b: Board, v: int) -> int:
    return 5 - sum(1 for u in set(b.adj[v]) if b.color[u] is not None)


def solve_case3(G: TorusTriangulation, L) -> SolveOutcome:
    r, s, t = G.key
    if r != 2 or s % 2 or t % 2 or t in (0, s - 2):
        raise PreconditionError("case 3 needs T(2, s, t) with s, t even and t not in {0, s-2}")
    if t > s // 2 - 1:
        return _via_isomorphism(G, L, (2, s, s - t - 2), solve_case3)
    L5 = _truncate5(L)
    if len(set(L5)) == 1:
        return solve_identical(G, L5)
    b = Board(G.adjacency, L5)
    trace = []
    for j in range(2, s + 1, 2):
        a, bb, x, y = G.at(1, j), G.at(1, j - 1), G.at(2, j - 1), G.at(2, j + t)
        sizes = [_predicted(b, w) for w in (a, bb, x, y)]
        if sizes[0] + sizes[1] != sizes[2] + sizes[3]:
            raise InternalConsistencyError(f"gadget at row {j} is unbalanced: {sizes}")
        La, Lb, Lx, Ly = (b.restrict(w, k) for w, k in zip((a, bb, x, y), sizes))
        cx, cy = reduce_k4_minus(La, Lb, Lx, Ly)
        b.assign(x, cx)
        b.assign(y, cy)
        trace.append((j, tuple(sizes)))
    col1 = G.column(1)
    if any(b.size(v) < 2 for v in col1):
        raise InternalConsistencyError("first column kept a list smaller than 2")
    b.color_cycle(col1)
    out = SolveOutcome(COLORED, list(b.color), "Case3", b.touches, case="Case3")
    out.trace["gadgets"] = trace
    return out


# -- dispatcher ----------------------------------------------------------------

def _via_isomorphism(G, L, target, solver) -> SolveOutcome:
    phi = isomorphism(G, target)
    if phi is None:
        raise InternalConsistencyError(f"T{G.key} is not isomorphic to T{target}")
    H = build_torus(*target)
    LH = [None] * G.n
    for v, w in enumerate(phi):
        LH[w] = L[v]
    out = solver(H, LH)
    if out.coloring is not None:
        out.coloring = [out.coloring[phi[v]] for v in range(G.n)]
    if out.touches is not None:
        out.touches = [out.touches[phi[v]] for v in range(G.n)]
    out.trace["representation"] = target
    return out


def solve(G: TorusTriangulation, L) -> SolveOutcome:
    """Dispatch a 5-assignment to the matching constructive case."""
    L = [frozenset(x) for x in L]
    if len(L) != G.n:
        raise PreconditionError(f"expected {G.n} lists, got {len(L)}")
    if not validate_k_assignment(L, 5):
        raise PreconditionError("every list needs at least 5 colors")
    cls = classify(G)
    if cls.solver_case == "Unsupported":
        return SolveOutcome(UNSUPPORTED, reason=cls.unsupported_reason, case="Unsupported")
    if len(set(L)) == 1:
        out = solve_identical(G, L)
    elif cls.solver_case == "IdenticalOnly":
        if not cls.is_three_chromatic:
            return SolveOutcome(UNSUPPORTED, reason="only identical lists are handled for this graph",
                                case="IdenticalOnly")
        out = _solve_backtracking(G, L)
    else:
        solver = {"Case1": solve_case1, "Case2": solve_case2, "Case3": solve_case3}[cls.solver_case]
        rep = cls.representation
        out = solver(G, L) if rep == G.key else _via_isomorphism(G, L, rep, solver)
    out.case = out.case or cls.solver_case
    if out.coloring is not None and not verify_coloring(G.adjacency, L, out.coloring):
        raise InternalConsistencyError(f"produced an improper coloring on T{G.key}")
    return out
