"""Explicit 3-list assignments showing 3-chromatic triangulations are not 3-choosable.

Each family works on one particular tuple (r, s, t).  A graph whose own
tuple falls outside every family is re-represented via an isomorphic tuple
that does fit, and the lists are carried back along the explicit vertex map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .lists import InternalConsistencyError, ListAssignment, PreconditionError
from .oracle import BUDGET, NO, YES, SearchStats, count_extensions, is_L_colorable
from .torus import TorusTriangulation, isomorphic_tuples, isomorphism

CONFIRMED = "ConfirmedUncolorable"
FOUND = "FoundColoring"
EXCEEDED = "BudgetExceeded"

TAGS = ("ColumnsR4", "RowsR2", "RowsR3", "Circulant_mid", "Circulant_upper",
        "Circulant_t4", "Circulant_quarter", "Circulant_third",
        "Special_T262", "Special_T393")

DEFAULT_L0 = frozenset({5, 6, 7})


def base_lists() -> tuple[frozenset, frozenset, frozenset]:
    return frozenset({1, 2, 3}), frozenset({2, 3, 4}), frozenset({1, 3, 4})


@dataclass(frozen=True)
class HardFamily:
    tag: str
    r: int
    s: int
    t: int
    ell: int | None = None
    variant: str | None = None
    # tuple the construction was laid out on; differs from (r, s, t) when the
    # graph had to be re-represented
    via: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        d = {"tag": self.tag, "r": self.r, "s": self.s, "t": self.t}
        if self.ell is not None:
            d["ell"] = self.ell
        if self.variant:
            d["variant"] = self.variant
        if self.via is not None:
            d["via"] = list(self.via)
        return d


def _circulant_kind(s: int, t: int) -> tuple[str, str | None] | None:
    if s % 3 or t % 3 != 1 or gcd(s, t) != 1 or gcd(s, t + 1) != 1:
        return None
    if not 4 <= t <= (s - 7) // 2 or 2 * t > s - 7:
        return None
    if t == 4:
        return ("Circulant_t4", None) if s >= 21 else None
    if 7 <= t and 4 * t < s + 1:
        return "Circulant_mid", None
    if 4 * t == s + 1:
        return "Circulant_quarter", None
    if 4 * t >= s + 6 and 3 * t < s - 3:
        return "Circulant_upper", "A"
    if 3 * t == s + 3:
        return ("Circulant_third", None) if s > 27 else None
    if 3 * t > s + 3:
        return "Circulant_upper", "B"
    return None


def direct_family(r: int, s: int, t: int) -> HardFamily | None:
    """The family laid out on exactly this tuple, with no re-representation."""
    if s % 3 or (r - t) % 3:
        return None
    if r >= 4:
        return HardFamily("ColumnsR4", r, s, t)
    if (r, s, t) == (2, 6, 2):
        return HardFamily("Special_T262", r, s, t)
    if (r, s, t) == (3, 9, 3):
        return HardFamily("Special_T393", r, s, t)
    if r == 2:
        ok = (s >= 12 and (t == s - 4 or 5 <= t <= s // 2 - 1)) or (s, t) == (9, 5)
        return HardFamily("RowsR2", r, s, t, ell=s // 3) if ok else None
    if r == 3:
        ok = (s >= 12 and 3 <= t <= (s - 3) // 2) or (t == 0 and s >= 6)
        return HardFamily("RowsR3", r, s, t, ell=s // 3) if ok else None
    kind = _circulant_kind(s, t)
    if kind is None:
        return None
    return HardFamily(kind[0], r, s, t, variant=kind[1])


def select_family(G: TorusTriangulation) -> tuple[HardFamily | None, str]:
    """Pick a family for G, trying its own tuple first. Returns (family, reason)."""
    if not G.is_simple:
        raise PreconditionError(f"T{G.key} is not simple")
    if not G.is_three_chromatic:
        raise PreconditionError(f"T{G.key} is not 3-chromatic")
    fam = direct_family(*G.key)
    if fam is not None:
        return fam, "direct"
    for rep in sorted(isomorphic_tuples(*G.key) - {G.key}):
        fam = direct_family(*rep)
        if fam is not None:
            return HardFamily(fam.tag, *G.key, ell=fam.ell, variant=fam.variant, via=rep), \
                f"re-represented as T{rep}"
    if G.key == (3, 3, 0):
        return None, "T(3,3,0) is K(3,3,3); no explicit assignment is constructed"
    return None, f"no family covers T{G.key} or any isomorphic tuple"


def _desc(a: int, b: int) -> list[int]:
    # "a, ..., b" read downwards; empty when a < b
    return list(range(a, b - 1, -1))


def circulant_blocks(tag: str, s: int, t: int, variant: str | None = None):
    """Vertex labels 1..s receiving L1, L2, L3 in the circulant families."""
    K = range
    if tag == "Circulant_t4":
        b1 = [x - k * t for k in K(5) for x in (s, s - 1)]
        b2 = [s - 2 - k * t for k in K(4)]
        b3 = [s - 3 - k * t for k in K(4)]
    elif tag == "Circulant_mid":
        b1 = [x - k * t for k in K(5) for x in (s, s - 1)]
        b2 = [x - k * t for k in K(4) for x in (s - 2, s - 3)]
        b3 = [x - k * t for k in K(4) for x in _desc(s - 4, s - t + 1)]
    elif tag == "Circulant_quarter":
        b1 = [x - k * t for k in K(4) for x in (s, s - 1)]
        b2 = [x - k * t for k in K(4) for x in (s - 2, s - 3)]
        b3 = [x - k * t for k in K(4) for x in (s - 4, s - 5)]
        b3 += [x - k * t for k in K(3) for x in _desc(s - 6, s - t + 1)]
    elif tag == "Circulant_upper" and variant == "A":
        b1 = [x - k * t for k in K(5) for x in (s, s - 1)]
        b2 = [x - k * t for k in K(5) for x in (s - 2, s - 3)]
        b3 = [x - k * t for k in K(5) for x in (s - 4, s - 5)]
        b3 += [x - k * t for k in K(3) for x in _desc(s - 6, 2 * s - 4 * t + 1)]
        b3 += [x - k * t for k in (1, 2) for x in _desc(2 * s - 4 * t, 2 * s - 4 * t - 5)]
        b3 += [x - k * t for k in K(3) for x in _desc(2 * s - 4 * t - 6, s - t + 1)]
    elif tag == "Circulant_upper" and variant == "B":
        b1 = [x - k * t for k in K(5) for x in (s, s - 1)]
        b2 = [x - k * t for k in K(5) for x in (s - 2, s - 3)]
        b3 = [x - k * t for k in K(5) for x in (s - 4, s - 5)]
        fill = [x - k * t for k in K(2) for x in _desc(s - 6, 2 * s - 3 * t + 1)]
        fill += [x - k * t for k in K(2) for x in _desc(2 * s - 3 * t - 2, s - t + 1)]
        # read literally, the last range runs into the k = 3, 4 pairs of L2;
        # the pairs take precedence (the literal reading is colorable)
        taken = {(x - 1) % s for x in b1 + b2}
        b3 += [x for x in fill if (x - 1) % s not in taken]
    elif tag == "Circulant_third":
        b1 = [x - k * t for k in K(5) for x in (s, s - 1)]
        b2 = [s - 2 - k * t for k in (1, 2, 3, 4)]
        b2 += [s - 3 - k * t for k in (2, 3, 4)]
        b2 += [x - k * t for k in (2, 3) for x in _desc(s - 4, s - 6)]
        b3 = [1, s - 2]
        b3 += [x - k * t for k in (1, 2, 3) for x in _desc(s - 7, s - 9)]
        b3 += [x - k * t for k in (1, 2) for x in _desc(s - 10, s - 12)]
        b3 += [x - k * t for k in K(2) for x in _desc(s - 13, s - t + 1)]
    else:
        raise ValueError(f"not a circulant family: {tag} {variant}")
    return [sorted({(x - 1) % s + 1 for x in b}) for b in (b1, b2, b3)]


# The T(2,6,2) table as printed is properly colorable (e.g. 3,2,3,2,3,2 down
# the first column and 1,4,1,4,1,4 down the second).  Moving (1,2) and (1,3)
# into the L3 block is the only change of at most two cells, drawing on the
# three base lists, that leaves no coloring; that corrected table is used.
PRINTED_T262 = ([(1, 1), (1, 3), (1, 5), (2, 1)],
                 [(1, 2), (1, 4), (1, 6), (2, 6)],
                 [(2, 2), (2, 3), (2, 4), (2, 5)])
_T262 = ([(1, 1), (1, 5), (2, 1)],
         [(1, 4), (1, 6), (2, 6)],
         [(1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (2, 5)])
_T393 = ([(1, 1), (1, 2), (1, 7), (1, 8), (2, 1), (2, 2), (3, 1), (3, 2)],
         [(1, 3), (1, 4), (1, 9), (2, 3), (2, 4), (3, 3), (3, 4)],
         [(1, 5), (1, 6), (2, 5), (2, 6), (2, 7), (2, 8), (2, 9),
          (3, 5), (3, 6), (3, 7), (3, 8), (3, 9)])


def _cells(H: TorusTriangulation, fam: HardFamily) -> list[list[int]]:
    """Flat vertices of H receiving L1, L2, L3."""
    r, s = H.r, H.s
    if fam.tag == "ColumnsR4":
        cols = ([1, 2], [3], list(range(4, r + 1)))
        return [[v for i in c for v in H.column(i)] for c in cols]
    if fam.tag in ("RowsR2", "RowsR3"):
        ell = s // 3
        rows = (range(1, ell + 1), range(ell + 1, 2 * ell + 1), range(2 * ell + 1, s + 1))
        return [[H.at(i, j) for j in rr for i in range(1, r + 1)] for rr in rows]
    if fam.tag == "Special_T262":
        return [[H.at(*c) for c in block] for block in _T262]
    if fam.tag == "Special_T393":
        return [[H.at(*c) for c in block] for block in _T393]
    return [[H.at(1, j) for j in block]
            for block in circulant_blocks(fam.tag, s, H.t, fam.variant)]


def family_assignment(H: TorusTriangulation, fam: HardFamily,
                      L0: frozenset = DEFAULT_L0) -> ListAssignment:
    """Lay the family out on H itself (H must be the family's own tuple)."""
    lists: list[frozenset | None] = [None] * H.n
    for cells, lst in zip(_cells(H, fam), base_lists()):
        for v in cells:
            if lists[v] is not None:
                raise InternalConsistencyError(
                    f"{fam.tag}: vertex {H.vertex(v)} falls in two blocks")
            lists[v] = lst
    L0 = frozenset(L0)
    if len(L0) != 3:
        raise PreconditionError("L0 must be a 3-list")
    return ListAssignment(tuple(x if x is not None else L0 for x in lists), H.key)


def hard_assignment(G: TorusTriangulation, L0: frozenset = DEFAULT_L0) -> ListAssignment | None:
    """A 3-assignment from which G has no proper coloring, or None if no family applies."""
    fam, _ = select_family(G)
    if fam is None:
        return None
    if fam.via is None:
        return family_assignment(G, fam, L0)
    H = TorusTriangulation(*fam.via)
    LH = family_assignment(H, direct_family(*fam.via), L0)
    phi = isomorphism(G, fam.via)
    if phi is None:
        raise InternalConsistencyError(f"no explicit map T{G.key} -> T{fam.via}")
    return ListAssignment(tuple(LH[phi[v]] for v in range(G.n)), G.key)


@dataclass
class HardnessVerdict:
    status: str
    witness: list[int] | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        return {"status": self.status, "witness": self.witness,
                "stats": {"nodes": self.stats.nodes, "max_depth": self.stats.max_depth,
                          "budget": self.stats.budget}}


def verify_hardness(G: TorusTriangulation, L, budget: int = 10**9) -> HardnessVerdict:
    """Run the exact oracle on a 3-assignment."""
    if len(L) != G.n or any(len(x) != 3 for x in L):
        raise PreconditionError("expected a 3-assignment covering every vertex")
    res = is_L_colorable(G.adjacency, list(L), budget=budget)
    status = {YES: FOUND, NO: CONFIRMED, BUDGET: EXCEEDED}[res.status]
    return HardnessVerdict(status, res.witness, res.stats)


def column_extension_counts(G: TorusTriangulation, L) -> dict[tuple[int, int], int]:
    """For each proper coloring of (1,1),(1,2), how many ways C1 and C2 complete it."""
    a, b = G.at(1, 1), G.at(1, 2)
    frontier = G.column(1) + G.column(2)
    out = {}
    for ca in sorted(L[a]):
        for cb in sorted(L[b]):
            if ca == cb:
                continue
            fixed: list[int | None] = [None] * G.n
            fixed[a], fixed[b] = ca, cb
            out[(ca, cb)] = count_extensions(G.adjacency, L, fixed, frontier)
    return out
