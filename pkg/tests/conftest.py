import random

import pytest

from toruslist.lists import check_criteria, stripe_assignment
from toruslist.torus import CylinderTriangulation, TorusTriangulation


def cylinder_shaped(C: CylinderTriangulation, rng: random.Random, universe: int = 8):
    """Random lists with the cylinder profile: a 4-list pair on one exterior column."""
    r, s = C.r, C.s
    side = rng.choice((1, r))
    j = rng.randint(1, s)
    special = {C.at(side, j), C.at(side, j - 1)}
    L = []
    for v in range(C.n):
        i = v // s + 1
        k = 5 if 1 < i < r else (4 if v in special else 3)
        L.append(frozenset(rng.sample(range(universe), k)))
    return L


def criteria_passing(G: TorusTriangulation, rng: random.Random, mutations: int = 0, tries: int = 50):
    """A stripe assignment that meets every local criterion, optionally perturbed.

    Each mutation replaces one list by a 5-subset of the union of its two left
    neighbors' lists and is kept only if the criteria still hold.
    """
    pool = [frozenset(rng.sample(range(9), 5)) for _ in range(6)]
    for _ in range(tries):
        got = stripe_assignment(G, rng, pool)
        if got is not None and check_criteria(G, got).ok:
            L = list(got)
            break
    else:
        return None
    for _ in range(mutations):
        v = rng.randrange(G.n)
        nb = G.adjacency[v]
        union = sorted(set(L[nb[2]]) | set(L[nb[3]]))
        new = frozenset(rng.sample(union, 5))
        old, L[v] = L[v], new
        if not check_criteria(G, L).ok:
            L[v] = old
    return L


def random_cubic_bipartite(half: int, rng: random.Random):
    """Union of three edge-disjoint random perfect matchings between two halves."""
    while True:
        edges = set()
        ok = True
        for _ in range(3):
            perm = list(range(half))
            rng.shuffle(perm)
            for a, b in enumerate(perm):
                e = (a, half + b)
                if e in edges:
                    ok = False
                    break
                edges.add(e)
            if not ok:
                break
        if ok:
            adj = [[] for _ in range(2 * half)]
            for a, b in sorted(edges):
                adj[a].append(b)
                adj[b].append(a)
            return adj


@pytest.fixture
def rng():
    return random.Random(20240601)


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    def record(number: int, ok: bool, detail: str):
        _ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
