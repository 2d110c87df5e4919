import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from toruslist.torus import (
    TorusTriangulation,
    VertexId,
    build_cylinder,
    build_torus,
    case_representation,
    classify,
    column,
    flip_automorphism,
    is_isomorphism,
    isomorphic_tuples,
    isomorphism,
    iter_tuples,
    neighbors,
    normal_circuit_lengths,
    walk_circuit,
)


def ids(*pairs):
    return [VertexId(*p) for p in pairs]


def multigraph(G):
    M = nx.MultiGraph()
    M.add_nodes_from(range(G.n))
    M.add_edges_from(G.edges())
    return M


# ---- construction ----------------------------------------------------------

def test_neighbors_of_corner_in_5_6_2():
    G = build_torus(5, 6, 2)
    assert set(neighbors(G, (1, 1))) == set(ids((1, 2), (1, 6), (2, 1), (2, 6), (5, 4), (5, 3)))


def test_k7_circulant():
    G = build_torus(1, 7, 2)
    assert set(neighbors(G, (1, 1))) == set(ids((1, 2), (1, 7), (1, 3), (1, 6), (1, 4), (1, 5)))
    assert G.is_simple
    assert nx.is_isomorphic(multigraph(G), nx.complete_graph(7))


def test_zero_shift_circulant_has_loop():
    G = build_torus(1, 5, 0)
    assert VertexId(1, 1) in neighbors(G, (1, 1))
    assert G.has_loops and not G.is_simple


def test_neighbor_order_interior():
    G = build_torus(5, 6, 2)
    assert neighbors(G, (3, 3)) == ids((3, 4), (3, 2), (2, 3), (2, 4), (4, 3), (4, 2))


def test_neighbor_order_circulant():
    G = build_torus(1, 9, 2)
    assert set(neighbors(G, (1, 9))) == set(ids((1, 1), (1, 8), (1, 2), (1, 7), (1, 3), (1, 6)))


def test_multigraph_still_has_six_slots():
    G = build_torus(2, 6, 2)
    assert all(len(neighbors(G, G.vertex(v))) == 6 for v in range(G.n))


def test_rejects_bad_shift():
    with pytest.raises(ValueError):
        build_torus(3, 4, 4)
    with pytest.raises(ValueError):
        build_torus(3, 4, -1)


def test_flat_index_bijection():
    G = build_torus(4, 7, 3)
    for v in range(G.n):
        i, j = G.vertex(v)
        assert G.flat((i, j)) == v == (i - 1) * G.s + (j - 1)


def test_regular_and_symmetric():
    for key in iter_tuples(200):
        adj = TorusTriangulation(*key).adjacency
        for v, nb in enumerate(adj):
            assert len(nb) == 6
            for u in set(nb):
                assert nb.count(u) == adj[u].count(v), key


def test_edge_count_of_simple_graphs():
    for key in iter_tuples(120):
        G = TorusTriangulation(*key)
        if G.is_simple:
            assert len(G.edges()) == 3 * G.n


# ---- normal circuits -------------------------------------------------------

@pytest.mark.parametrize("key,expected", [((5, 6, 2), (6, 15, 30)), ((4, 5, 0), (5, 4, 20)),
                                          ((1, 7, 2), (7, 7, 7))])
def test_normal_circuit_lengths(key, expected):
    assert normal_circuit_lengths(build_torus(*key)) == expected


def test_circuit_lengths_match_traversal():
    for key in iter_tuples(80):
        G = TorusTriangulation(*key)
        walked = tuple(len(walk_circuit(G, 0, d)) for d in ("vertical", "horizontal", "diagonal"))
        assert walked == normal_circuit_lengths(G), key


# ---- flip automorphism ------------------------------------------------------

@pytest.mark.parametrize("key,v,image", [((5, 6, 2), (1, 1), (5, 6)), ((3, 3, 0), (2, 2), (2, 2)),
                                         ((4, 6, 1), (2, 5), (3, 2))])
def test_flip_examples(key, v, image):
    assert flip_automorphism(build_torus(*key), v) == VertexId(*image)


def test_flip_is_involutive_automorphism():
    for key in iter_tuples(100):
        G = TorusTriangulation(*key)
        phi = [G.flat(flip_automorphism(G, G.vertex(v))) for v in range(G.n)]
        assert all(phi[phi[v]] == v for v in range(G.n))
        assert is_isomorphism(G, G, phi), key


# ---- isomorphic tuples -------------------------------------------------------

@pytest.mark.parametrize("key,member", [((2, 9, 2), (2, 9, 5)), ((2, 9, 5), (2, 9, 2)),
                                        ((3, 6, 0), (3, 6, 3)), ((3, 6, 3), (3, 6, 0))])
def test_isomorphic_tuple_examples(key, member):
    assert member in isomorphic_tuples(*key)


@pytest.mark.parametrize("s,t", [(8, 2), (10, 4), (12, 3), (14, 5), (9, 1)])
def test_two_column_reflection(s, t):
    assert (2, s, s - t - 2) in isomorphic_tuples(2, s, t)


def test_every_tuple_maps_explicitly():
    for key in iter_tuples(60):
        G = TorusTriangulation(*key)
        for target in isomorphic_tuples(*key):
            phi = isomorphism(G, target)
            assert phi is not None and is_isomorphism(G, TorusTriangulation(*target), phi), (key, target)


def test_tuples_capture_isomorphism_exactly_small_n():
    # independent check with a general isomorphism search: distinct tuple
    # classes on the same vertex count give non-isomorphic simple graphs
    # (tiny multigraphs can coincide without sharing an embedding)
    for n in range(7, 25):
        reps = {}
        for k in iter_tuples(n):
            if k[0] * k[1] == n and TorusTriangulation(*k).is_simple:
                reps.setdefault(min(isomorphic_tuples(*k)), k)
        keys = list(reps.values())
        graphs = [nx.Graph(TorusTriangulation(*k).edges()) for k in keys]
        for a, b in itertools.combinations(range(len(keys)), 2):
            assert not nx.is_isomorphic(graphs[a], graphs[b]), (keys[a], keys[b])


def test_at_most_six_tuples():
    for key in iter_tuples(200):
        assert 1 <= len(isomorphic_tuples(*key)) <= 6


# ---- classification ----------------------------------------------------------

def test_classify_case1_example():
    c = classify(build_torus(4, 6, 1))
    assert c.solver_case == "Case1" and c.is_three_chromatic
    assert not c.has_loops and not c.has_multi_edges


def test_classify_k7():
    c = classify(build_torus(1, 7, 2))
    assert c.solver_case == "Unsupported" and "K7" in c.unsupported_reason


@pytest.mark.parametrize("key", [(2, 8, 4), (2, 8, 2), (2, 10, 4), (2, 12, 4)])
def test_classify_case3(key):
    assert classify(build_torus(*key)).solver_case == "Case3"


@pytest.mark.parametrize("s", [9, 10, 12, 13])
def test_classify_case2(s):
    assert classify(build_torus(1, s, 2)).solver_case == "Case2"


@pytest.mark.parametrize("t", [2, 3, 4])
def test_classify_eleven_vertices(t):
    assert classify(build_torus(1, 11, t)).solver_case == "Unsupported"


def test_classify_non_simple():
    c = classify(build_torus(2, 4, 2))
    assert c.solver_case == "Unsupported" and c.has_multi_edges


def test_three_chromatic_flag_matches_mod3_rule():
    for key in iter_tuples(60):
        r, s, t = key
        assert classify(TorusTriangulation(*key)).is_three_chromatic == (s % 3 == 0 and (r - t) % 3 == 0)


def test_case1_invariant():
    for key in iter_tuples(80):
        G = TorusTriangulation(*key)
        c = classify(G)
        if c.solver_case == "Case1":
            assert G.is_simple and c.representation[0] >= 4
            assert c.representation in isomorphic_tuples(*key)


def test_case1_via_rerepresentation():
    # a single-row circulant that is a four-column graph in disguise
    G = build_torus(1, 24, 5)
    rep = case_representation(G)
    assert rep[0] == "Case1" and rep[1][0] >= 4


# ---- cylinder ----------------------------------------------------------------

def test_cylinder_degrees():
    C = build_cylinder(3, 5)
    assert C.degree(C.at(2, 1)) == 6
    assert C.degree(C.at(1, 1)) == 4
    assert C.degree(C.at(3, 4)) == 4


def test_cylinder_counts():
    C = build_cylinder(3, 3)
    assert C.n == 9 and len(C.edges()) == 21


def test_cylinder_is_torus_minus_column():
    C = build_cylinder(4, 3)
    T = build_torus(5, 3, 0)
    keep = set(range(4 * 3))
    torus_edges = {frozenset(e) for e in T.edges() if set(e) <= keep}
    assert {frozenset(e) for e in C.edges()} == torus_edges


def test_cylinder_rejects_small():
    with pytest.raises(ValueError):
        build_cylinder(2, 5)
    with pytest.raises(ValueError):
        build_cylinder(3, 2)


# ---- columns -------------------------------------------------------------------

def test_column_is_cycle():
    G = build_torus(4, 6, 1)
    col = column(G, 2)
    assert col == ids(*[(2, j) for j in range(1, 7)])
    flat = [G.flat(v) for v in col]
    for a, b in zip(flat, flat[1:] + flat[:1]):
        assert b in G.adjacency[a]


def test_short_column():
    assert len(column(build_torus(2, 4, 2), 1)) == 4


def test_cylinder_column_cycle():
    C = build_cylinder(3, 5)
    col = C.columns()[2]
    for a, b in zip(col, col[1:] + col[:1]):
        assert b in C.adjacency[a]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 9), st.integers(1, 12), st.data())
def test_lattice_vertex_wraps(r, s, data):
    t = data.draw(st.integers(0, s - 1))
    G = TorusTriangulation(r, s, t)
    x, y = data.draw(st.integers(-30, 30)), data.draw(st.integers(-30, 30))
    v = G.lattice_vertex(x, y)
    assert v == G.lattice_vertex(x, y + s) == G.lattice_vertex(x + r, y + t)
