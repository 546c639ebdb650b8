from collections import Counter

import networkx as nx
import pytest
from conftest import all_params, simple_bipartite_params
from hypothesis import given

from toroham import oracle
from toroham.torus_quad import (
    Color,
    DiagonalSpec,
    EdgeKind,
    Face,
    TorusParams,
    add_diagonals,
    build,
    chord_length,
    diagonal_endpoints,
    face_corners,
    faces,
    is_simple,
    vertex_color,
)


def reference_multigraph(m, n, q):
    """Edge multiset written straight from the construction: a path of m
    vertices times a cycle of n, then the shifted wrap edges."""
    g = nx.MultiGraph()
    g.add_nodes_from((i, j) for i in range(m) for j in range(n))
    for i in range(m):
        for j in range(n):
            g.add_edge((i, j), (i, (j + 1) % n))
    for i in range(m - 1):
        for j in range(n):
            g.add_edge((i, j), (i + 1, j))
    for j in range(n):
        g.add_edge((m - 1, j), (0, (j + q) % n))
    return g


def test_params_reduce_shift():
    assert TorusParams(10, 8, -2).q == 6
    assert TorusParams(10, 8, 10).q == 2


@pytest.mark.parametrize("bad", [(0, 8, 2), (3, 0, 1), (-1, 4, 0)])
def test_params_reject_nonpositive(bad):
    with pytest.raises(ValueError):
        TorusParams(*bad)


def test_build_q1082_counts(q1083):
    g = build(q1083)
    assert len(g.vertices) == 80
    assert all(g.degree(v) == 4 for v in g.vertices)
    assert len(g.edges) == 160
    assert len(faces(q1083)) == 80


def test_build_circulant_has_all_three_chords(q183):
    g = build(q183)
    assert len(g.edges) == 16
    chords = sorted(chord_length(8, u[1], v[1]) for u, v, kind in g.edges if kind is EdgeKind.HORIZONTAL_WRAP)
    assert chords == [3] * 8


def test_build_is_deterministic(q1083):
    a, b = build(q1083), build(TorusParams(10, 8, 2))
    assert a.edges == b.edges
    assert list(a.edges) == sorted(a.edges, key=lambda e: (e.key, e.kind.value))


@pytest.mark.parametrize(
    "params, expected",
    [((1, 8, 3), True), ((1, 8, 4), False), ((10, 8, 2), True), ((1, 4, 2), False), ((2, 4, 0), False)],
)
def test_is_simple_examples(params, expected):
    assert is_simple(TorusParams(*params)) is expected


def test_is_simple_matches_reference_multigraph():
    for p in all_params(60):
        ref = reference_multigraph(p.m, p.n, p.q)
        keys = Counter(frozenset((u, v)) for u, v in ref.edges())
        ref_simple = nx.number_of_selfloops(ref) == 0 and max(keys.values()) == 1
        assert is_simple(p) is ref_simple, p


def test_build_matches_reference_multigraph():
    for p in all_params(40):
        ref = Counter(frozenset((u, v)) for u, v in reference_multigraph(p.m, p.n, p.q).edges())
        ours = Counter(frozenset((e.u, e.v)) for e in build(p).edges)
        assert ours == ref, p


def test_circulant_simplicity_rule():
    # one column: simple exactly when q avoids 0, 1, -1 and n/2
    for n in range(4, 40):
        for q in range(n):
            expected = q not in (0, 1, n - 1) and 2 * q != n
            assert is_simple(TorusParams(1, n, q)) is expected


def test_vertex_color_examples(q1083):
    assert vertex_color(q1083, (0, 0)) is Color.BLACK
    assert vertex_color(q1083, (1, 1)) is Color.BLACK
    assert vertex_color(q1083, (0, 1)) is Color.WHITE


def test_vertex_color_rejects_non_bipartite():
    with pytest.raises(ValueError):
        vertex_color(TorusParams(3, 4, 0), (0, 0))


def test_bipartite_rule_matches_coloring_oracle():
    for p in all_params(200):
        assert p.bipartite is oracle.two_coloring(build(p)).bipartite, p


@pytest.mark.parametrize(
    "params, face, corners",
    [
        ((10, 8, 2), Face(1, 1), ((0, 0), (1, 0), (1, 1), (0, 1))),
        ((10, 8, 2), Face(0, 0), ((9, 0), (0, 2), (0, 3), (9, 1))),
        ((1, 8, 3), Face(0, 0), ((0, 0), (0, 3), (0, 4), (0, 1))),
    ],
)
def test_face_corners_examples(params, face, corners):
    assert face_corners(TorusParams(*params), face) == corners


def test_face_corners_out_of_range(q1083):
    with pytest.raises(ValueError):
        face_corners(q1083, Face(10, 0))


@pytest.mark.parametrize(
    "params, face, color, ends",
    [
        ((10, 8, 2), Face(1, 1), Color.BLACK, ((0, 0), (1, 1))),
        ((10, 8, 2), Face(1, 1), Color.WHITE, ((0, 1), (1, 0))),
        ((1, 8, 3), Face(0, 0), Color.BLACK, ((0, 0), (0, 4))),
    ],
)
def test_diagonal_endpoints_examples(params, face, color, ends):
    assert diagonal_endpoints(TorusParams(*params), DiagonalSpec(face, color)) == ends


def test_circulant_diagonals_are_q_plus_minus_one_chords(q183):
    for f in faces(q183):
        for color in Color:
            u, v = diagonal_endpoints(q183, DiagonalSpec(f, color))
            assert chord_length(8, u[1], v[1]) in (2, 4)


@given(simple_bipartite_params(200))
def test_quadrangulation_invariants(p):
    g = build(p)
    assert all(g.degree(v) == 4 for v in g.vertices)
    assert len(g.edges) == 2 * p.m * p.n
    assert len(g.vertices) - len(g.edges) + len(faces(p)) == 0
    for f in faces(p):
        a, b, c, d = face_corners(p, f)
        assert all(g.has_edge(x, y) for x, y in ((a, b), (b, c), (c, d), (d, a)))
        assert len({a, b, c, d}) == 4
        colors = [vertex_color(p, v) for v in (a, b, c, d)]
        # opposite corners agree, adjacent ones differ: one black pair, one white pair
        assert colors[0] is colors[2] and colors[1] is colors[3] and colors[0] is not colors[1]


def test_diagonals_never_duplicate_base_edges():
    for p in all_params(120, min_n=4):
        if not (p.simple and p.bipartite):
            continue
        g = build(p)
        for f in faces(p):
            for color in Color:
                assert not g.has_edge(*diagonal_endpoints(p, DiagonalSpec(f, color))), (p, f, color)


def test_add_one_diagonal(q1083):
    g = add_diagonals(build(q1083), [DiagonalSpec(Face(1, 1), Color.BLACK)])
    assert len(g.edges) == 161
    degrees = Counter(g.degree(v) for v in g.vertices)
    assert degrees == {4: 78, 5: 2}
    assert g.diagonal_edges == (((0, 0), (1, 1)),)


def test_diagonal_in_every_face_alternating_by_column():
    # black in even columns, white in odd ones: every vertex meets exactly two diagonals
    p = TorusParams(4, 4, 0)
    ds = [DiagonalSpec(f, Color.BLACK if f.column % 2 == 0 else Color.WHITE) for f in faces(p)]
    g = add_diagonals(build(p), ds)
    assert {g.degree(v) for v in g.vertices} == {6}


def test_black_diagonal_in_every_face():
    p = TorusParams(4, 4, 0)
    g = add_diagonals(build(p), [DiagonalSpec(f, Color.BLACK) for f in faces(p)])
    for v in g.vertices:
        assert g.degree(v) == (8 if vertex_color(p, v) is Color.BLACK else 4)


def test_two_diagonal_input_shape(q1083):
    e1, e2 = DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(3, 3), Color.WHITE)
    g = add_diagonals(build(q1083), [e1, e2])
    assert g.diagonals == (e1, e2)
    assert len(g.edges) == 162


def test_add_diagonals_rejects_reused_face(q1083):
    g = add_diagonals(build(q1083), [DiagonalSpec(Face(1, 1), Color.BLACK)])
    with pytest.raises(ValueError, match="already carries"):
        add_diagonals(g, [DiagonalSpec(Face(1, 1), Color.WHITE)])


def test_add_diagonals_rejects_existing_edge():
    # with two columns, faces (1,0) and (0,8) of Q(2,10;2) share their black diagonal
    p = TorusParams(2, 10, 2)
    ds = [DiagonalSpec(Face(1, 0), Color.BLACK), DiagonalSpec(Face(0, 8), Color.BLACK)]
    assert diagonal_endpoints(p, ds[0]) == diagonal_endpoints(p, ds[1])
    with pytest.raises(ValueError, match="duplicates"):
        add_diagonals(build(p), ds)


def test_incremental_lookups_match_full_rebuild(q1083):
    from toroham.torus_quad import Graph

    g = add_diagonals(build(q1083), [DiagonalSpec(Face(1, 1), Color.BLACK), DiagonalSpec(Face(5, 2), Color.WHITE)])
    fresh = Graph(g.params, g.edges, g.diagonals)
    assert g.edge_set == fresh.edge_set
    assert g.neighbor_sets == fresh.neighbor_sets
    assert g == fresh
