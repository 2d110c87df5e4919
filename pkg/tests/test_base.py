import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from toruslist.base import (
    Board,
    Orientation,
    Uncolorable,
    bbs_color,
    bipartite_orientation,
    bipartition,
    color_bipartite_3regular,
    color_cycle,
    color_cylinder,
    color_cylinder_columns,
    color_path,
    find_kernel,
    is_kernel,
    kernel_bruteforce,
    perfect_matching_regular_bipartite,
    reduce_k4_minus,
)
from toruslist.lists import PreconditionError, verify_coloring
from toruslist.oracle import YES, is_L_colorable
from toruslist.torus import build_cylinder, build_torus

from conftest import cylinder_shaped, random_cubic_bipartite


def cycle_adj(n):
    return [[(v - 1) % n, (v + 1) % n] for v in range(n)]


def path_adj(n):
    return [[u for u in (v - 1, v + 1) if 0 <= u < n] for v in range(n)]


def proper(adj, L, col):
    return verify_coloring(adj, L, col)


def regular_bipartite(half, d, rng):
    """d-regular simple bipartite graph: shifted copies of a random matching."""
    sigma = list(range(half))
    pi = list(range(half))
    rng.shuffle(sigma)
    rng.shuffle(pi)
    adj = [[] for _ in range(2 * half)]
    for a in range(half):
        for k in range(d):
            b = half + pi[(sigma[a] + k) % half]
            adj[a].append(b)
            adj[b].append(a)
    return adj


# ---- paths and cycles ----------------------------------------------------------

def test_cycle_identical_odd_fails():
    with pytest.raises(Uncolorable):
        color_cycle([0, 1, 2], [{1, 2}] * 3)


def test_cycle_triangle_with_one_different_list():
    L = [{1, 2}, {1, 2}, {2, 3}]
    col = color_cycle([0, 1, 2], L)
    assert proper(cycle_adj(3), L, [col[v] for v in range(3)])


def test_cycle_one_and_three_lists():
    L = [{4}, {1, 2, 4}, {1, 2}, {1, 2}, {1, 2}]
    col = color_cycle(range(5), L)
    assert proper(cycle_adj(5), L, [col[v] for v in range(5)])


def test_even_cycle_identical():
    L = [{1, 2}] * 6
    col = color_cycle(range(6), L)
    assert proper(cycle_adj(6), L, [col[v] for v in range(6)])


@pytest.mark.parametrize("lists,expected", [
    ([{3}, {1, 3}, {1, 2}], [3, 1, 2]),
    ([{5}], [5]),
    ([{1}, {1, 2}, {2, 3}, {3, 4}], [1, 2, 3, 4]),
])
def test_path_examples(lists, expected):
    col = color_path(range(len(lists)), lists)
    assert [col[v] for v in range(len(lists))] == expected


def test_path_impossible():
    with pytest.raises(Uncolorable):
        color_path([0, 1, 2], [{3}, {1, 3}, {1}])


def test_path_respects_vertex_ids():
    L = {10: {1}, 20: {1, 2}}
    assert color_path([10, 20], L) == {10: 1, 20: 2}


def _sweep_cycles():
    lists2 = [frozenset(c) for c in itertools.combinations(range(3), 2)]
    for n in (3, 4, 5):
        for L in itertools.product(lists2, repeat=n):
            yield cycle_adj(n), L, lambda L=L, n=n: color_cycle(range(n), L)


def _sweep_paths():
    lists1 = [frozenset({c}) for c in range(3)]
    lists2 = [frozenset(c) for c in itertools.combinations(range(3), 2)]
    for n in range(2, 6):
        for pos in range(n):
            for one in lists1:
                for rest in itertools.product(lists2, repeat=n - 1):
                    L = list(rest)
                    L.insert(pos, one)
                    yield path_adj(n), L, lambda L=L, n=n: color_path(range(n), L)


def _check_sweep(cases):
    bad = 0
    count = 0
    for adj, L, run in cases:
        count += 1
        want = is_L_colorable(adj, L).status == YES
        try:
            col = run()
            got = proper(adj, L, [col[v] for v in range(len(adj))])
        except Uncolorable:
            got = False
        bad += got != want
    return count, bad


def test_cycles_agree_with_oracle():
    count, bad = _check_sweep(_sweep_cycles())
    assert count == 27 + 81 + 243 and bad == 0


def test_paths_agree_with_oracle():
    count, bad = _check_sweep(_sweep_paths())
    assert count > 0 and bad == 0


@settings(max_examples=300, deadline=None)
@given(st.integers(3, 12), st.data())
def test_cycle_with_a_big_list(n, data):
    L = [frozenset(data.draw(st.sets(st.integers(0, 4), min_size=2, max_size=2))) for _ in range(n)]
    k = data.draw(st.integers(0, n - 1))
    L[k] = frozenset(data.draw(st.sets(st.integers(0, 4), min_size=3, max_size=3)))
    col = color_cycle(range(n), L)
    assert proper(cycle_adj(n), L, [col[v] for v in range(n)])


# ---- cylinder ------------------------------------------------------------------

@pytest.mark.parametrize("rs", [(3, 3), (3, 5), (4, 6), (6, 8), (5, 4)])
def test_cylinder_shapes(rs):
    rng = random.Random(hash(rs) & 0xFFFF)
    C = build_cylinder(*rs)
    for _ in range(200):
        L = cylinder_shaped(C, rng)
        assert proper(C.adjacency, L, color_cylinder(C, L))


def test_cylinder_small_matches_oracle():
    rng = random.Random(4)
    C = build_cylinder(3, 3)
    for _ in range(50):
        L = cylinder_shaped(C, rng, universe=6)
        assert is_L_colorable(C.adjacency, L).status == YES
        assert proper(C.adjacency, L, color_cylinder(C, L))


def test_cylinder_rejects_wrong_profile():
    C = build_cylinder(3, 4)
    L = [frozenset(range(3))] * C.n
    with pytest.raises(PreconditionError):
        color_cylinder(C, L)


def test_cylinder_touches_linear():
    rng = random.Random(9)
    worst = 0
    for r, s in [(3, 3), (5, 4), (8, 16), (16, 32), (32, 64), (64, 64)]:
        C = build_cylinder(r, s)
        L = cylinder_shaped(C, rng, universe=12)
        board = Board(C.adjacency, L)
        color_cylinder_columns(board, C.columns())
        assert proper(C.adjacency, L, board.color)
        total, peak = board.touch_stats()
        worst = max(worst, total / C.n)
        assert peak <= 8
    assert worst <= 8


# ---- K4 minus ------------------------------------------------------------------

def _k4_ok(La, Lb, Lx, Ly, cx, cy):
    return (cx in Lx and cy in Ly and len(set(La) & {cx, cy}) <= 1
            and len(set(Lb) & {cx, cy}) <= 1)


def test_k4_common_color():
    La, Lb = {2, 4}, {2, 5}
    assert reduce_k4_minus(La, Lb, {1, 2}, {2, 3}) == (2, 2)


def test_k4_split():
    La, Lb, Lx, Ly = {1, 3}, {2, 4}, {1, 2}, {3, 4}
    got = reduce_k4_minus(La, Lb, Lx, Ly)
    assert got in {(1, 4), (2, 3)}


def test_k4_escape():
    La, Lb, Lx, Ly = {1, 3}, {2, 4}, {5, 6}, {1, 2}
    cx, cy = reduce_k4_minus(La, Lb, Lx, Ly)
    assert cx == 5 and cy in {1, 2}
    assert _k4_ok(La, Lb, Lx, Ly, cx, cy)


def test_k4_rejects_unbalanced():
    with pytest.raises(PreconditionError):
        reduce_k4_minus({1}, {2}, {1, 2}, {3})


def _balanced_quadruple(draw_size, draw_set):
    while True:
        sa, sb, sx = draw_size(), draw_size(), draw_size()
        sy = sa + sb - sx
        if 2 <= sy <= 5:
            return draw_set(sa), draw_set(sb), draw_set(sx), draw_set(sy)


@settings(max_examples=500, deadline=None)
@given(st.data())
def test_k4_property(data):
    def draw_set(k):
        return data.draw(st.sets(st.integers(0, 7), min_size=k, max_size=k))
    La, Lb, Lx, Ly = _balanced_quadruple(lambda: data.draw(st.integers(2, 5)), draw_set)
    cx, cy = reduce_k4_minus(La, Lb, Lx, Ly)
    assert _k4_ok(La, Lb, Lx, Ly, cx, cy)


# ---- kernels and orientations ----------------------------------------------------

def test_kernel_even_dicycle():
    D = Orientation(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert find_kernel(D) in ({0, 2}, {1, 3})


def test_kernel_single_vertex():
    assert find_kernel(Orientation(1, [])) == {0}


def test_kernel_dipath():
    D = Orientation(3, [(0, 1), (1, 2)])
    assert find_kernel(D) == {0, 2}
    assert kernel_bruteforce(D) == {0, 2}


def test_kernel_odd_dicycle_rejected():
    with pytest.raises(PreconditionError):
        find_kernel(Orientation(3, [(0, 1), (1, 2), (2, 0)]))


def test_kernels_on_random_bipartite_orientations():
    # bipartite digraphs have no odd directed cycles, so kernels always exist
    rng = random.Random(2)
    for _ in range(300):
        na, nb = rng.randint(1, 6), rng.randint(1, 6)
        arcs = []
        for a in range(na):
            for b in range(na, na + nb):
                if rng.random() < 0.4:
                    arcs.append((a, b) if rng.random() < 0.5 else (b, a))
        D = Orientation(na + nb, arcs)
        S = find_kernel(D)
        assert is_kernel(D, S)
        assert kernel_bruteforce(D) is not None
        sub = rng.sample(range(D.n), rng.randint(1, D.n))
        assert is_kernel(D, find_kernel(D, sub), vertices=sub)


def test_bbs_even_dicycle():
    rng = random.Random(6)
    D = Orientation(6, [(v, (v + 1) % 6) for v in range(6)])
    for _ in range(100):
        L = [frozenset(rng.sample(range(4), 2)) for _ in range(6)]
        assert proper(cycle_adj(6), L, bbs_color(D, L))


def test_bbs_single_vertex():
    assert bbs_color(Orientation(1, []), [{7}]) == [7]


def test_bbs_four_cycle():
    D = Orientation(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    L = [{1, 2}, {2, 3}, {3, 4}, {4, 1}]
    assert proper(cycle_adj(4), L, bbs_color(D, L))


def test_bbs_rejects_short_list():
    D = Orientation(2, [(0, 1)])
    with pytest.raises(PreconditionError, match="vertex 0"):
        bbs_color(D, [{1}, {1, 2}])


# ---- matchings -----------------------------------------------------------------

def k33():
    return [[3, 4, 5]] * 3 + [[0, 1, 2]] * 3


def test_matching_k33():
    M = perfect_matching_regular_bipartite(k33(), 3)
    assert M.is_perfect(6) and len(M.edges) == 3


def test_matching_six_cycle():
    M = perfect_matching_regular_bipartite(cycle_adj(6), 2)
    assert M.is_perfect(6)
    assert M.edges in ({(0, 1), (2, 3), (4, 5)}, {(0, 5), (2, 1), (4, 3)})


def test_matching_on_color_class_pair():
    G = build_torus(3, 9, 0)
    color = [(i - j) % 3 for i, j in (G.vertex(v) for v in range(G.n))]
    assert all(color[u] != color[v] for v in range(G.n) for u in G.adjacency[v])
    keep = [v for v in range(G.n) if color[v] != 2]
    pos = {v: k for k, v in enumerate(keep)}
    adj = [[pos[u] for u in G.adjacency[v] if u in pos] for v in keep]
    assert len(adj) == 18 and all(len(nb) == 3 for nb in adj)
    M = perfect_matching_regular_bipartite(adj, 3)
    assert M.is_perfect(18)
    assert all(b in adj[a] for a, b in M.edges)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_matching_random_regular(d):
    rng = random.Random(d)
    for half in (5, 50, 500, 5000):
        adj = regular_bipartite(half, d, rng)
        M = perfect_matching_regular_bipartite(adj, d)
        assert M.is_perfect(2 * half)
        assert all(b in adj[a] for a, b in M.edges)


def test_matching_rejects_irregular():
    with pytest.raises(PreconditionError):
        perfect_matching_regular_bipartite(path_adj(4), 2)
    with pytest.raises(PreconditionError):
        perfect_matching_regular_bipartite(cycle_adj(5), 2)


# ---- cubic bipartite coloring ------------------------------------------------------

def test_orientation_outdegrees():
    rng = random.Random(12)
    for half in (3, 10, 50):
        adj = random_cubic_bipartite(half, rng)
        A, _ = bipartition(adj)
        D, M = bipartite_orientation(adj, A)
        assert M.is_perfect(2 * half)
        assert all(D.outdegree(v) == (2 if v in set(A) else 1) for v in range(D.n))
        assert sorted(map(sorted, D.arcs)) == sorted(sorted((u, v)) for u in range(D.n) for v in adj[u] if u < v)


def test_cubic_k33_random_lists():
    rng = random.Random(13)
    adj = k33()
    for _ in range(100):
        L = [frozenset(rng.sample(range(6), 3)) for _ in range(3)] + \
            [frozenset(rng.sample(range(6), 2)) for _ in range(3)]
        assert is_L_colorable(adj, L).status == YES
        assert proper(adj, L, color_bipartite_3regular(adj, L))


def test_cubic_fixed_lists():
    # a 6-cycle plus the perfect matching of antipodal pairs
    adj = [sorted({(v - 1) % 6, (v + 1) % 6, (v + 3) % 6}) for v in range(6)]
    A = [0, 2, 4]
    L = [{1, 2, 3} if v in A else {1, 2} for v in range(6)]
    assert proper(adj, L, color_bipartite_3regular(adj, L, side_a=A))


def test_cubic_rejects_short_lists():
    with pytest.raises(PreconditionError):
        color_bipartite_3regular(k33(), [{1, 2}] * 6)
