"""The eight acceptance criteria, each at its stated tolerance.

Every test records a PASS/FAIL line in ``conftest.ACCEPTANCE``; the lines
are printed in the terminal summary.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from fractions import Fraction

import networkx as nx
from conftest import (
    ACCEPTANCE,
    closed_meet,
    edge_set,
    edge_set_of_boxes,
    random_tree,
    witness_audit,
)

from boxrep.boxmodel import Box, BoxRepresentation, Interval, find_empty_inner_corner, is_strict
from boxrep.builders import (
    LocallyPlanarInput,
    five_box_locally_planar,
    genus_deletion_5box,
    lemma_tech_rep,
    segment_rep_5pd,
    seven_box_locally_planar,
    torus_six_box,
)
from boxrep.families import (
    cycle_embedding,
    k7_torus,
    octahedron,
    tetrahedron,
    torus_deletion_instance,
    torus_grid,
)
from boxrep.graph import Graph, is_p_path_degenerate
from boxrep.oracle import exact_boxicity, grid_boxicity, strict_two_box
from boxrep.surface import (
    EmbeddedGraph,
    edge_width,
    euler_genus,
    face_width,
    find_planarizing_collection,
    frame,
    triangles,
    verify_planarizing_collection,
)


def record(k: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------
# 1. clique + path coordinates
# ---------------------------------------------------------------------------

_SHAPES = ((0,), (0, 1), (0, 2), (0, 1, 2))


def window_shapes(path_len: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for a in range(path_len):
        out += [tuple(a + x for x in s) for s in _SHAPES if a + s[-1] < path_len]
    return out


def expected_tech_edges(k: int, path_len: int, nbrs: dict[int, tuple[int, ...]]) -> set[tuple[int, int]]:
    e = {(j, j + 1) for j in range(path_len - 1)}
    e |= {(path_len + a, path_len + b) for a in range(k) for b in range(a + 1, k)}
    e |= {(j, path_len + c) for c, s in nbrs.items() for j in s}
    return e


def check_tech(k: int, path_len: int, nbrs: dict[int, tuple[int, ...]], t: Fraction) -> None:
    rep = lemma_tech_rep(k, path_len, nbrs, t)
    assert edge_set_of_boxes(dict(rep.boxes)) == expected_tech_edges(k, path_len, nbrs)
    for v, b in rep.boxes.items():
        if v < path_len:
            assert b[2].hi < t
        else:
            assert b[2].hi == t


def test_criterion_1_clique_path_coordinates():
    start = time.perf_counter()
    rng = random.Random(1)
    cases = 0
    for path_len in range(1, 11):
        shapes = window_shapes(path_len)
        for k in range(0, 5):
            if k <= 2:
                combos = itertools.combinations_with_replacement(shapes, k)
            else:
                combos = [tuple(rng.choice(shapes) for _ in range(k)) for _ in range(60)]
            for combo in combos:
                t = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                check_tech(k, path_len, dict(enumerate(combo)), t)
                cases += 1
    # the published path-box formula, read back from one instance
    rep = lemma_tech_rep(1, 10, {0: (3,)}, 10 + 1)
    for i in range(5):
        b = rep.boxes[2 * i]
        assert (b[0].lo, b[0].hi, b[1].lo, b[1].hi, b[2].lo, b[2].hi) == (i, i + 1, -1, i, 2 * i, 2 * i + 1)
    elapsed = time.perf_counter() - start
    ok = elapsed < 10
    record(1, ok, f"{cases} neighbour tables verified, z-contract holds, {elapsed:.1f}s (< 10s)")
    assert ok


# ---------------------------------------------------------------------------
# 2. 3-segment representations
# ---------------------------------------------------------------------------


def segment_audit(rep, g: Graph) -> list[str]:
    """Independent check of the three segment clauses and graph equality."""
    problems = []
    boxes = {v: s.to_box() for v, s in rep.segments.items()}
    axis = {}
    for v, b in boxes.items():
        long = [i for i in range(3) if b[i].hi > b[i].lo]
        if len(long) != 1:
            problems.append(f"{v} is not a segment")
        else:
            axis[v] = long[0]
    if problems:
        return problems
    if edge_set_of_boxes(boxes) != edge_set(g):
        problems.append("intersection graph differs")
    for u, v in itertools.combinations(sorted(boxes), 2):
        a, b = boxes[u], boxes[v]
        if axis[u] == axis[v] and all(a[i].lo == b[i].lo for i in range(3) if i != axis[u]):
            problems.append(f"{u},{v} on one line")
            continue
        if not closed_meet(a, b):
            continue
        pt = [max(a[i].lo, b[i].lo) for i in range(3)]
        inner_a = a[axis[u]].lo < pt[axis[u]] < a[axis[u]].hi
        inner_b = b[axis[v]].lo < pt[axis[v]] < b[axis[v]].hi
        if inner_a and inner_b:
            problems.append(f"{u},{v} cross in their interiors")
    return problems


def chorded_cycle(rng: random.Random) -> Graph:
    n = rng.randint(14, 30)
    k = rng.randint(6, n - 6)
    edges = [(i, (i + 1) % n) for i in range(n)] + [(0, k)]
    return Graph.from_edges(n, edges)


def test_criterion_2_segment_representations():
    rng = random.Random(2)
    graphs = [random_tree(rng, rng.randint(1, 15)) for _ in range(80)]
    graphs += [Graph.cycle(rng.randint(7, 40)) for _ in range(40)]
    graphs += [chorded_cycle(rng) for _ in range(80)]
    start = time.perf_counter()
    bad = 0
    for g in graphs:
        assert is_p_path_degenerate(g, 5)[0]
        rep = segment_rep_5pd(g)
        if segment_audit(rep, g):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60
    record(2, ok, f"{len(graphs) - bad}/{len(graphs)} graphs pass all segment clauses, {elapsed:.1f}s (< 60s)")
    assert ok


# ---------------------------------------------------------------------------
# 3. torus six boxes
# ---------------------------------------------------------------------------


def test_criterion_3_torus():
    start = time.perf_counter()
    dims = {}
    for name, e in (("C4xC4", torus_grid(4, 4)), ("C5xC5", torus_grid(5, 5)), ("K7", k7_torus())):
        rep = torus_six_box(e)
        assert edge_set_of_boxes(dict(rep.boxes)) == edge_set(e.graph), name
        dims[name] = rep.d
    elapsed = time.perf_counter() - start
    ok = dims["C4xC4"] == 5 and dims["C5xC5"] == 5 and dims["K7"] <= 6 and elapsed < 600
    record(3, ok, f"dimensions {dims}, {elapsed:.1f}s (< 600s)")
    assert ok


# ---------------------------------------------------------------------------
# 4. seven- and five-box composers
# ---------------------------------------------------------------------------


def test_criterion_4_locally_planar_composers():
    e = torus_grid(9, 9)
    fr = frame(e)
    assert fr.embedding.n == e.n  # no separating triangles
    pc = find_planarizing_collection(fr.embedding, 4)
    assert pc is not None and len(pc.cycles) == 1
    assert verify_planarizing_collection(fr.embedding, pc) == []
    back = {i: v for v, i in fr.idmap.items()}
    cycles = tuple(tuple(back[v] for v in c) for c in pc.cycles)
    inp = LocallyPlanarInput(e, type(pc)(cycles, pc.min_distance))

    seven = seven_box_locally_planar(inp)
    five = five_box_locally_planar(inp)
    assert edge_set_of_boxes(dict(seven.boxes)) == edge_set(e.graph)
    assert edge_set_of_boxes(dict(five.boxes)) == edge_set(e.graph)

    meta = five.metadata
    low_side = set(meta["C"]) | set(meta["T2"])
    high_side = set(meta["R"]) | set(meta["T1"])
    low = max(five.boxes[v][4].hi for v in low_side)
    high = min(five.boxes[v][4].lo for v in high_side)
    assert isinstance(low, Fraction) and isinstance(high, Fraction)
    ok = seven.d == 7 and five.d == 5 and low <= Fraction(5, 2) and high >= Fraction(11, 4)
    record(4, ok, f"d=7 and d=5 verified; C+T2 end <= {low} (<= 5/2), R+T1 start >= {high} (>= 11/4)")
    assert ok


# ---------------------------------------------------------------------------
# 5. exact boxicity engines
# ---------------------------------------------------------------------------


def test_criterion_5_engine_agreement():
    start = time.perf_counter()
    atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() <= 6]
    disagreements = 0
    for h in atlas:
        g = Graph.from_edges(h.number_of_nodes(), h.edges())
        if exact_boxicity(g, 3).value != grid_boxicity(g, 3).value:
            disagreements += 1
    k6pm = Graph.from_edges(6, [(i, j) for i in range(6) for j in range(i + 1, 6) if j != i + 3])
    value = exact_boxicity(k6pm, 4).value
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and value == 3 and elapsed < 1800
    record(5, ok, f"{len(atlas)} iso-classes, {disagreements} disagreements; box(K6-PM)={value}; {elapsed:.1f}s")
    assert ok


# ---------------------------------------------------------------------------
# 6. empty inner corners
# ---------------------------------------------------------------------------


def random_plane_patch(rng: random.Random) -> EmbeddedGraph:
    """Grid patch with random diagonals and random deleted edges, kept 2-connected."""
    a, b = rng.randint(2, 5), rng.randint(2, 5)
    vid = lambda r, c: r * b + c  # noqa: E731
    h = nx.Graph()
    h.add_nodes_from(range(a * b))
    for r in range(a):
        for c in range(b):
            if c + 1 < b:
                h.add_edge(vid(r, c), vid(r, c + 1))
            if r + 1 < a:
                h.add_edge(vid(r, c), vid(r + 1, c))
            if r + 1 < a and c + 1 < b:
                if rng.random() < 0.5:
                    h.add_edge(vid(r, c), vid(r + 1, c + 1))
                else:
                    h.add_edge(vid(r, c + 1), vid(r + 1, c))
    edges = list(h.edges())
    rng.shuffle(edges)
    for u, v in edges[: rng.randint(0, len(edges) // 3)]:
        h.remove_edge(u, v)
        if not nx.is_biconnected(h):
            h.add_edge(u, v)
    # straight-line drawing of the patch: sort neighbours by angle
    ang = lambda v, w: math.atan2(w // b - v // b, w % b - v % b)  # noqa: E731
    return EmbeddedGraph.from_rotation([sorted(h[v], key=lambda w: ang(v, w)) for v in range(a * b)])


def test_criterion_6_empty_inner_corners():
    rng = random.Random(6)
    reps = misses = 0
    bad: list[str] = []
    while reps < 100:
        e = random_plane_patch(rng)
        tris = triangles(e.graph)
        if not tris:
            continue
        flat = strict_two_box(e)
        starts = rng.sample(range(1, 4 * e.n + 1), e.n)
        boxes = {
            v: Box([*flat.boxes[v].intervals, Interval(Fraction(s, 2 * e.n), Fraction(s, 2 * e.n) + 3)])
            for v, s in zip(sorted(flat.boxes), starts)
        }
        rep = BoxRepresentation(3, boxes)
        assert is_strict(rep).ok
        reps += 1
        for t in rng.sample(tris, min(4, len(tris))):
            zs = [rep.boxes[v][2] for v in t]
            assert max(z.lo for z in zs) < min(z.hi for z in zs)  # strictly overlapping
            wit = find_empty_inner_corner(rep, t)
            if wit is None:
                misses += 1
                continue
            bad += witness_audit(rep, t, wit)
    ok = misses == 0 and not bad
    record(6, ok, f"{reps} strict 3-box reps: {misses} missing corners, {len(bad)} audit failures")
    assert ok, bad[:5]


# ---------------------------------------------------------------------------
# 7. deletion composer
# ---------------------------------------------------------------------------


def test_criterion_7_deletion_composer():
    e, part = torus_deletion_instance()
    rep = genus_deletion_5box(e, part)
    keep = sorted(set(range(e.graph.n)) - set(part.X))
    boxes = dict(rep.boxes)
    assert sorted(boxes) == keep
    want = {(u, v) for u, v in edge_set(e.graph) if u in boxes and v in boxes}
    assert edge_set_of_boxes(boxes) == want
    inner = set(part.A) - set(part.outer)
    cross = sum(1 for u in inner for v in part.P if closed_meet(boxes[u], boxes[v]))
    p = rep.metadata["p_plus"]
    concat_ok = (
        all(boxes[v][2].lo <= p < boxes[v][2].hi for v in part.outer)
        and all(boxes[v][2].hi < p for v in part.P)
        and all(boxes[v][2].lo > p for v in inner)
        and "concatenation preconditions at p+ hold" in rep.metadata["audit"]
    )
    ok = rep.d == 5 and cross == 0 and concat_ok
    record(7, ok, f"d={rep.d} on {len(keep)} vertices, {cross} A-O/P intersections, concat at p+={p}: {concat_ok}")
    assert ok


# ---------------------------------------------------------------------------
# 8. topology layer
# ---------------------------------------------------------------------------


def face_count(e: EmbeddedGraph) -> int:
    """Orbits of the face permutation, traced from the rotation directly."""
    nxt = {}
    for v, rot in enumerate(e.rotation):
        for i, w in enumerate(rot):
            nxt[(w, v)] = (v, rot[(i - 1) % len(rot)])
    seen, count = set(), 0
    for d in nxt:
        if d in seen:
            continue
        count += 1
        while d not in seen:
            seen.add(d)
            d = nxt[d]
    return count


def test_criterion_8_topology():
    rng = random.Random(8)
    fixtures = {
        "tetrahedron": tetrahedron(),
        "octahedron": octahedron(),
        "cycle": cycle_embedding(6),
        "K7": k7_torus(),
        **{f"C{r}xC{c}": torus_grid(r, c) for r, c in ((3, 3), (4, 4), (4, 6), (5, 5), (6, 6))},
    }
    for i in range(10):
        perm = [tuple(rng.sample(r, len(r))) for r in k7_torus().rotation]
        fixtures[f"K7-shuffled-{i}"] = EmbeddedGraph.from_rotation(perm)
    euler_ok = all(
        e.n - e.graph.m + face_count(e) == 2 - euler_genus(e) for e in fixtures.values()
    )
    ew_k7, ew_55 = edge_width(k7_torus()), edge_width(torus_grid(5, 5))
    tri = [(k, e) for k, e in fixtures.items() if euler_genus(e) > 0 and all(len(f) == 3 for f in e.faces)]
    fw_ok = all(face_width(e) == edge_width(e) for _, e in tri)
    ok = euler_ok and ew_k7 == 3 and ew_55 == 5 and fw_ok and len(tri) >= 5
    record(8, ok, f"Euler formula on {len(fixtures)} embeddings; ew(K7)={ew_k7}, ew(C5xC5)={ew_55}; fw=ew on {len(tri)} triangulations")
    assert ok
