from __future__ import annotations

import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from conftest import box, edge_set, edge_set_of_boxes, open_meet
from hypothesis import given, reject, settings
from hypothesis import strategies as st

from boxrep.boxmodel import Box, BoxRepresentation, Interval, find_empty_inner_corner, is_strict, verify
from boxrep.families import cycle_embedding, octahedron, planar_embedding, star, tetrahedron
from boxrep.graph import Graph, induced_subgraph, is_interval_graph
from boxrep.oracle import (
    OracleFailure,
    axis_end_at,
    contained_in,
    exact_boxicity,
    exact_rep,
    exact_strict_rep,
    fixed_box,
    grid_boxicity,
    is_triangulation,
    rep_in_dimension,
    require_corner,
    require_strict,
    simple_faces,
    strict2_exists,
    strict_two_box,
    triangulation_completion,
)
from boxrep.search import Budget, BudgetExhausted
from boxrep.surface import euler_genus, facial_triangles, triangles

K6_PM = Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3])


@st.composite
def small_graphs(draw, max_n: int = 6) -> Graph:
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def normalise(rep: BoxRepresentation) -> BoxRepresentation:
    """Replace every coordinate by its rank among the endpoints on its axis."""
    ranks = []
    for i in range(rep.d):
        values = sorted({x for b in rep.boxes.values() for x in (b[i].lo, b[i].hi)})
        ranks.append({x: k for k, x in enumerate(values)})
    return BoxRepresentation(
        rep.d,
        {v: Box([Interval(ranks[i][b[i].lo], ranks[i][b[i].hi]) for i in range(rep.d)]) for v, b in rep.boxes.items()},
    )


# ---------------------------------------------------------------------------
# exact boxicity
# ---------------------------------------------------------------------------


def test_boxicity_examples():
    assert exact_boxicity(Graph.complete(5)).value == 0
    res = exact_boxicity(Graph.cycle(4))
    assert res.value == 2 and verify(res.witness, Graph.cycle(4)).ok
    res = exact_boxicity(K6_PM, 4)
    assert res.value == 3 and verify(res.witness, K6_PM).ok
    assert rep_in_dimension(K6_PM, 2) is None
    assert exact_boxicity(Graph.path(4)).value == 1


def test_boxicity_exceeding_the_cap():
    res = exact_boxicity(K6_PM, 2)
    assert res.value is None


def test_budget_exhaustion_is_reported():
    k8pm = Graph.from_edges(8, [(i, j) for i in range(8) for j in range(i + 1, 8) if j != i + 4])
    with pytest.raises(BudgetExhausted):
        exact_boxicity(k8pm, 4, budget=3)


def test_grid_engine_size_limit():
    with pytest.raises(ValueError):
        grid_boxicity(Graph.cycle(8), 2)


@given(small_graphs())
def test_engines_agree(g):
    a, b = exact_boxicity(g, 3), grid_boxicity(g, 3)
    assert a.value == b.value
    if a.value is not None:
        assert verify(a.witness, g).ok and verify(b.witness, g).ok


@given(small_graphs(max_n=7), st.data())
def test_boxicity_is_induced_hereditary(g, data):
    s = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
    sub, _ = induced_subgraph(g, s)
    whole = exact_boxicity(g, 4).value
    part = exact_boxicity(sub, 4).value
    assert whole is not None and part is not None and part <= whole


@given(small_graphs(max_n=7))
def test_boxicity_one_iff_interval(g):
    value = exact_boxicity(g, 4).value
    if g.is_complete():
        assert value == 0
    else:
        assert (value == 1) == is_interval_graph(g)[0]


@given(small_graphs(max_n=6), st.integers(1, 3))
def test_rep_in_dimension_witnesses(g, d):
    rep = rep_in_dimension(g, d)
    value = exact_boxicity(g, 3).value
    if rep is None:
        assert value is not None and value > d or value is None
    else:
        assert rep.d == d and verify(rep, g).ok and (value is not None and value <= d)


# ---------------------------------------------------------------------------
# constrained exact search
# ---------------------------------------------------------------------------


def test_strict_search_examples():
    rep = exact_strict_rep(Graph.cycle(4), 2, [require_strict()])
    assert rep is not None and verify(rep, Graph.cycle(4)).ok and is_strict(rep).ok
    assert exact_strict_rep(Graph.complete(4), 2, [require_strict()]) is None


def test_spanning_proper_subgraph_of_octahedron_has_strict_2_box():
    # the "proper subgraph" reading that allows spanning subgraphs
    edges = octahedron().graph.sorted_edges()
    g = Graph.from_edges(6, edges[1:])
    rep = exact_strict_rep(g, 2, [require_strict()])
    assert rep is not None and is_strict(rep).ok
    rel = strict_two_box(planar_embedding(g))
    assert verify(rel, g).ok and is_strict(rel).ok


def test_octahedron_corners_in_three_dimensions():
    o = octahedron()
    faces = [o.face_vertices(i) for i in range(len(o.faces))]
    rep = exact_strict_rep(o.graph, 3, [require_strict()] + [require_corner(f) for f in faces[1:]])
    assert rep is not None and verify(rep, o.graph).ok and is_strict(rep).ok
    for f in faces[1:]:
        assert find_empty_inner_corner(rep, f) is not None


def test_fixed_and_contained_constraints():
    g = Graph.path(3)
    anchor = box((0, 2), (0, 2))
    room = box((2, 6), (0, 2))
    rep = exact_strict_rep(g, 2, [fixed_box(0, anchor), contained_in([1, 2], room), require_strict()])
    assert rep is not None and rep.boxes[0] == anchor
    for v in (1, 2):
        assert all(room[i].lo <= rep.boxes[v][i].lo and rep.boxes[v][i].hi <= room[i].hi for i in range(2))
    assert verify(rep, g).ok and is_strict(rep).ok


def test_axis_end_constraint():
    g = Graph.cycle(4)
    rep = exact_rep(g, 2, [axis_end_at(0, 1, 7)])
    assert rep is not None and rep.boxes[0][1].hi == 7 and verify(rep, g).ok


def test_unsatisfiable_constraints_report_none():
    g = Graph.from_edges(2, [(0, 1)])
    cons = [fixed_box(0, box((0, 1), (0, 1))), contained_in([1], box((5, 6), (5, 6)))]
    assert exact_rep(g, 2, cons) is None


def test_bad_constraints_rejected():
    with pytest.raises(ValueError):
        exact_rep(Graph.path(2), 2, [fixed_box(5, box((0, 1), (0, 1)))])
    with pytest.raises(ValueError):
        exact_rep(Graph.path(2), 0)


def test_grid_cap_raises_budget_exhausted():
    with pytest.raises(BudgetExhausted):
        exact_strict_rep(Graph.complete(4), 2, [require_strict()], grid=1)


@settings(max_examples=25)
@given(small_graphs(max_n=5))
def test_search_witnesses_survive_normalisation(g):
    try:
        rep = exact_strict_rep(g, 2, [require_strict()], budget=Budget(200_000))
    except BudgetExhausted:
        reject()  # no witness to normalise; exhaustion implies nothing
    if rep is not None:
        norm = normalise(rep)
        assert verify(norm, g).ok and is_strict(norm).ok


# ---------------------------------------------------------------------------
# strict 2-boxes of plane graphs
# ---------------------------------------------------------------------------


def test_triangulation_completion_examples():
    for k in (4, 5):
        h, rings = triangulation_completion(cycle_embedding(k))
        assert h.n == 3 * k and euler_genus(h) == 0
        assert is_triangulation(h)
        assert len(triangles(h.graph)) == len(facial_triangles(h))  # no separating triangle
        assert [len(r) for r in rings] == [k, k]
        sub, _ = induced_subgraph(h.graph, range(k))
        assert sub == Graph.cycle(k)
    with pytest.raises(ValueError):
        triangulation_completion(octahedron())


def test_strict2_exists_examples():
    assert strict2_exists(cycle_embedding(4))
    assert not strict2_exists(octahedron())
    assert strict2_exists(planar_embedding(star(3)))
    assert not strict2_exists(tetrahedron())


def test_strict_two_box_rejects_triangulations():
    for e in (octahedron(), tetrahedron()):
        with pytest.raises(OracleFailure, match="triangulation"):
            strict_two_box(e)
    # three vertices are too few for the exclusion: a triangle is representable
    k3 = strict_two_box(planar_embedding(Graph.complete(3)))
    assert is_strict(k3).ok and verify(k3, Graph.complete(3)).ok


def test_simple_faces_keeps_the_graph():
    e = planar_embedding(star(3))
    s = simple_faces(e)
    assert s.n >= e.n and euler_genus(s) == 0
    sub, _ = induced_subgraph(s.graph, range(e.n))
    assert sub == e.graph


def random_plane_graph(rng: random.Random) -> Graph:
    while True:
        n = rng.randint(2, 12)
        edges = {(rng.randrange(i), i) for i in range(1, n)}
        for _ in range(rng.randint(0, 2 * n)):
            u, v = rng.sample(range(n), 2)
            edges.add((min(u, v), max(u, v)))
        h = nx.Graph(list(edges))
        if nx.check_planarity(h)[0]:
            return Graph.from_edges(n, edges)


@given(st.integers(0, 2**32))
def test_strict_two_box_on_random_plane_graphs(seed):
    g = random_plane_graph(random.Random(seed))
    e = planar_embedding(g)
    if is_triangulation(e) and g.n >= 4:
        with pytest.raises(OracleFailure):
            strict_two_box(e)
        return
    if len(triangles(g)) != len(facial_triangles(e)):
        # another embedding may still make every triangle facial, so small
        # components can succeed through the exact fallback
        try:
            rep = strict_two_box(e, budget=Budget(300_000))
        except (OracleFailure, ValueError, BudgetExhausted):
            return
    else:
        rep = strict_two_box(e)
    assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(g)
    assert is_strict(rep).ok
    for u, v in itertools.combinations(range(g.n), 2):
        assert not open_meet(rep.boxes[u], rep.boxes[v])


def test_strict_two_box_agrees_with_exact_search_on_small_graphs():
    rng = random.Random(7)
    checked = 0
    while checked < 25:
        g = random_plane_graph(rng)
        if g.n > 6:
            continue
        e = planar_embedding(g)
        if len(triangles(g)) != len(facial_triangles(e)) or is_triangulation(e):
            continue
        assert exact_strict_rep(g, 2, [require_strict()], budget=Budget(2_000_000)) is not None
        assert is_strict(strict_two_box(e)).ok
        checked += 1


def test_constraint_values_are_exact_rationals():
    rep = exact_rep(Graph.path(2), 1, [axis_end_at(0, 0, Fraction(1, 3))])
    assert rep.boxes[0][0].hi == Fraction(1, 3)
