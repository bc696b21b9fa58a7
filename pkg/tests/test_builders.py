from __future__ import annotations

import itertools
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from conftest import closed_meet, edge_set, edge_set_of_boxes, random_tree
from hypothesis import given, settings
from hypothesis import strategies as st

from boxrep.boxmodel import Box, BoxRepresentation, Interval, is_strict, segment_graph, segments_from_json, segments_to_json
from boxrep.builders import (
    BuildError,
    DeletionPartition,
    LocallyPlanarInput,
    Oracles,
    audit_deletion_partition,
    five_box_locally_planar,
    genus_deletion_5box,
    lemma_tech_graph,
    lemma_tech_rep,
    plafixed_rep,
    segment_rep_5pd,
    seven_box_locally_planar,
    torus_six_box,
    triangle_face_audit,
)
from boxrep.families import k7_torus, octahedron, stacked_k4, torus_deletion_instance, torus_grid
from boxrep.graph import Graph
from boxrep.oracle import exact_boxicity
from boxrep.surface import EmbeddedGraph, PlanarizingCollection, euler_genus

# ---------------------------------------------------------------------------
# clique plus path
# ---------------------------------------------------------------------------


@st.composite
def tech_tables(draw):
    path_len = draw(st.integers(1, 9))
    k_size = draw(st.integers(0, 5))
    nbrs = {}
    for j in range(k_size):
        a = draw(st.integers(0, path_len - 1))
        window = [x for x in (a, a + 1, a + 2) if x < path_len]
        nbrs[j] = draw(st.lists(st.sampled_from(window), unique=True)) if draw(st.booleans()) else []
    return k_size, path_len, nbrs


@given(tech_tables(), st.fractions(-5, 5))
def test_clique_plus_path_contract(table, t):
    k_size, path_len, nbrs = table
    rep = lemma_tech_rep(k_size, path_len, nbrs, t)
    g = lemma_tech_graph(k_size, path_len, nbrs)
    assert rep.d == 3
    assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(g)
    for v, b in rep.boxes.items():
        if v < path_len:
            assert b[2].hi < t
        else:
            assert b[2].hi == t


def test_clique_plus_path_window_errors():
    with pytest.raises(ValueError, match="window"):
        lemma_tech_rep(1, 5, {0: [0, 3]})
    with pytest.raises(ValueError, match="outside the path"):
        lemma_tech_rep(1, 3, {0: [3]})
    with pytest.raises(ValueError, match="unknown clique"):
        lemma_tech_rep(1, 3, {2: [0]})
    with pytest.raises(ValueError):
        lemma_tech_rep(1, 0, {})


def test_clique_plus_path_within_exact_boxicity():
    rng = random.Random(3)
    for _ in range(15):
        path_len, k_size = rng.randint(2, 5), rng.randint(1, 3)
        nbrs = {}
        for j in range(k_size):
            a = rng.randrange(path_len)
            nbrs[j] = [x for x in (a, a + 1, a + 2) if x < path_len and rng.random() < 0.6]
        g = lemma_tech_graph(k_size, path_len, nbrs)
        value = exact_boxicity(g, 3).value
        assert value is not None and value <= lemma_tech_rep(k_size, path_len, nbrs).d


# ---------------------------------------------------------------------------
# segments
# ---------------------------------------------------------------------------


@settings(max_examples=30)
@given(st.integers(0, 2**32), st.integers(1, 25))
def test_segment_reps_of_trees(seed, n):
    g = random_tree(random.Random(seed), n)
    rep = segment_rep_5pd(g)
    assert segment_graph(rep) == g
    again = segments_from_json(segments_to_json(rep))
    assert segment_graph(again) == g


def test_segment_reps_of_long_cycles_and_forests():
    for n in (6, 11, 20):
        assert segment_graph(segment_rep_5pd(Graph.cycle(n))) == Graph.cycle(n)
    forest = Graph.from_edges(7, [(0, 1), (1, 2), (4, 5)])
    assert segment_graph(segment_rep_5pd(forest)) == forest


def test_segment_rep_rejects_non_degenerate_graphs():
    for g in (Graph.complete(4), Graph.cycle(5), octahedron().graph):
        with pytest.raises(ValueError, match="5-path-degenerate"):
            segment_rep_5pd(g)


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------


def test_triangle_audit_examples():
    k7 = triangle_face_audit(k7_torus())
    assert (len(k7.facial), len(k7.nonfacial), len(k7.noncontractible)) == (14, 21, 21)
    assert not k7.all_contractible
    octa = triangle_face_audit(octahedron())
    assert (len(octa.facial), len(octa.nonfacial)) == (8, 0)
    stacked = triangle_face_audit(stacked_k4([(0, 1, 2)]))
    assert len(stacked.nonfacial) == 1 and stacked.all_contractible
    grid = triangle_face_audit(torus_grid(4, 4))
    assert len(grid.facial) == 32 and grid.all_contractible
    assert triangle_face_audit(torus_grid(3, 3)).noncontractible


# ---------------------------------------------------------------------------
# locally planar composers
# ---------------------------------------------------------------------------


def test_composers_reject_bad_inputs():
    e = torus_grid(9, 9)
    row = tuple(range(9))
    near = LocallyPlanarInput(e, PlanarizingCollection((row,), 3))
    with pytest.raises(ValueError, match="distance"):
        seven_box_locally_planar(near)
    with pytest.raises(ValueError, match="distance"):
        five_box_locally_planar(near)
    # two adjacent rows are at distance 1, far below the promised 4
    two = LocallyPlanarInput(e, PlanarizingCollection((row, tuple(range(9, 18))), 4))
    with pytest.raises(ValueError):
        seven_box_locally_planar(two)
    with pytest.raises(ValueError):
        five_box_locally_planar(LocallyPlanarInput(k7_torus(), PlanarizingCollection(((0, 1, 2),), 4)))


def test_five_box_metadata_partition():
    e = torus_grid(9, 9)
    inp = LocallyPlanarInput(e, PlanarizingCollection((tuple(range(9)),), 4))
    rep = five_box_locally_planar(inp)
    meta = rep.metadata
    parts = [set(meta[k]) for k in ("C", "N", "R", "T1", "T2")]
    assert sum(map(len, parts)) == e.n and set().union(*parts) == set(range(e.n))
    assert parts[0] == set(range(9))
    assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(e.graph)


def test_broken_oracle_is_caught_by_the_audit():
    def lying_planar3(e, budget=None):
        return BoxRepresentation(3, {v: Box([Interval(0, 1)] * 3) for v in range(e.n)})

    e = torus_grid(9, 9)
    inp = LocallyPlanarInput(e, PlanarizingCollection((tuple(range(9)),), 4))
    with pytest.raises(BuildError):
        seven_box_locally_planar(inp, Oracles(planar3=lying_planar3))


# ---------------------------------------------------------------------------
# torus
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    ("make", "width", "dim"),
    [(k7_torus, 3, 6), (lambda: torus_grid(3, 4), 3, 6), (lambda: torus_grid(4, 6), 4, 5), (lambda: torus_grid(5, 6), 5, 5), (lambda: torus_grid(6, 6), 6, 5)],
)
def test_torus_branches(make, width, dim):
    e = make()
    rep = torus_six_box(e)
    assert rep.metadata["edge_width"] == width
    assert rep.d <= dim <= 6
    assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(e.graph)


def test_torus_rejects_other_inputs():
    with pytest.raises(ValueError, match="torus"):
        torus_six_box(octahedron())
    g = torus_grid(4, 4)
    # dropping the diagonal 0-5 merges two triangles into a quadrangle
    rot = [[w for w in r if {v, w} != {0, 5}] for v, r in enumerate(g.rotation)]
    quad = EmbeddedGraph.from_rotation(rot)
    assert euler_genus(quad) == 2
    with pytest.raises(ValueError, match="triangulation"):
        torus_six_box(quad)


# ---------------------------------------------------------------------------
# deleting few vertices
# ---------------------------------------------------------------------------


def test_deletion_instance_audit_is_clean():
    e, part = torus_deletion_instance()
    assert audit_deletion_partition(e, part) == []
    rep = genus_deletion_5box(e, part)
    keep = sorted(part.A | part.P)
    assert rep.d == 5 and rep.metadata["cross_edges"] == 0
    for u, v in itertools.combinations(keep, 2):
        assert closed_meet(rep.boxes[u], rep.boxes[v]) == e.graph.has_edge(u, v)


@pytest.mark.parametrize(
    ("mutate", "needle"),
    [
        (lambda p: replace(p, X=p.X - {0}), "cover"),
        (lambda p: replace(p, X=p.X | {9}), "disjoint"),
        (lambda p: DeletionPartition.make(p.A, [(1, 3)], p.X | {2, 5, 6}, p.outer), "not an edge"),
        (lambda p: DeletionPartition.make(p.A, [(1, 2), (3, 4)], (p.X | {5, 6}) - {3, 4}, p.outer), "distance"),
        (lambda p: replace(p, outer=p.outer - {9}), "outer face"),
    ],
)
def test_deletion_audit_rejections(mutate, needle):
    e, part = torus_deletion_instance()
    bad = mutate(part)
    problems = audit_deletion_partition(e, bad)
    assert any(needle in line for line in problems), problems
    with pytest.raises(ValueError, match="partition audit"):
        genus_deletion_5box(e, bad)


def test_fixed_vertex_representation_contract():
    e = octahedron()
    for w in range(e.n):
        t = Fraction(w, 3)
        rep = plafixed_rep(e, w, t)
        assert is_strict(rep).ok
        assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(e.graph)
        assert rep.boxes[w][2].hi == t
        for v, b in rep.boxes.items():
            if v == w:
                continue
            assert b[2].lo >= t
            assert (b[2].lo == t) == e.graph.has_edge(v, w)
    with pytest.raises(Exception):
        plafixed_rep(stacked_k4([(0, 1, 2), (0, 1, 3)]), 4)
