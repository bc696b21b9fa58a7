"""Standard graphs and embeddings used as fixtures and CLI demos."""

from __future__ import annotations

import networkx as nx

from .graph import Graph
from .surface import EmbeddedGraph

__all__ = [
    "petersen",
    "star",
    "torus_grid",
    "k7_torus",
    "planar_embedding",
    "octahedron",
    "tetrahedron",
    "stacked_k4",
    "cycle_embedding",
    "insert_in_face",
    "torus_deletion_instance",
]


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def star(k: int) -> Graph:
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def torus_grid(rows: int, cols: int) -> EmbeddedGraph:
    """Triangulated ``rows x cols`` torus grid; vertex ``(r, c)`` is ``r*cols + c``.

    Each square gets the diagonal from ``(r, c)`` to ``(r+1, c+1)``.  Rows
    are the cycles of constant ``r``.
    """
    if rows < 3 or cols < 3:
        raise ValueError("torus grid needs at least 3 rows and 3 columns")

    def vid(r: int, c: int) -> int:
        return (r % rows) * cols + c % cols

    rot = []
    for r in range(rows):
        for c in range(cols):
            # counter-clockwise by angle with x = column, y = row
            rot.append((
                vid(r, c + 1),
                vid(r + 1, c + 1),
                vid(r + 1, c),
                vid(r, c - 1),
                vid(r - 1, c - 1),
                vid(r - 1, c),
            ))
    return EmbeddedGraph.from_rotation(rot)


def k7_torus() -> EmbeddedGraph:
    """The triangular embedding of K7 in the torus."""
    return EmbeddedGraph.from_rotation(
        [tuple((i + d) % 7 for d in (1, 3, 2, 6, 4, 5)) for i in range(7)]
    )


def planar_embedding(g: Graph) -> EmbeddedGraph:
    """A planar rotation system for a connected planar graph."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(h)
    if not ok:
        raise ValueError("graph is not planar")
    rot = [tuple(reversed(list(emb.neighbors_cw_order(v)))) for v in range(g.n)]
    return EmbeddedGraph(g, tuple(rot))


def tetrahedron() -> EmbeddedGraph:
    return planar_embedding(Graph.complete(4))


def octahedron() -> EmbeddedGraph:
    # vertices 0/5, 1/3, 2/4 are the antipodal pairs
    return EmbeddedGraph.from_rotation([
        (1, 2, 3, 4),
        (0, 4, 5, 2),
        (0, 1, 5, 3),
        (0, 2, 5, 4),
        (0, 3, 5, 1),
        (1, 4, 3, 2),
    ])


def stacked_k4(extra_faces: list[tuple[int, int, int]], base: EmbeddedGraph | None = None) -> EmbeddedGraph:
    """Insert a new vertex into each listed triangular face of ``base``."""
    e = base if base is not None else tetrahedron()
    edges = set(e.graph.edges)
    n = e.n
    for t in extra_faces:
        for u in t:
            edges.add((u, n))
        n += 1
    return planar_embedding(Graph.from_edges(n, edges))


def cycle_embedding(k: int) -> EmbeddedGraph:
    return EmbeddedGraph.from_rotation([((i - 1) % k, (i + 1) % k) for i in range(k)])


def insert_in_face(e: EmbeddedGraph, face: int) -> EmbeddedGraph:
    """Add a vertex inside face ``face`` joined to each of its vertices.

    The face walk must be a simple cycle; the new vertex gets the next id.
    """
    walk = e.face_vertices(face)
    if len(set(walk)) != len(walk):
        raise ValueError("face walk repeats a vertex")
    x = e.n
    rot = [list(r) for r in e.rotation]
    k = len(walk)
    for i in range(k):
        b, c = walk[(i + 1) % k], walk[(i + 2) % k]
        # the face turns from walk[i] through b to c, so c precedes walk[i] at b
        rot[b].insert(rot[b].index(c) + 1, x)
    rot.append(list(walk))
    out = EmbeddedGraph.from_rotation(rot)
    if len(out.faces) != len(e.faces) + k - 1:
        raise AssertionError("face insertion changed the surface")
    return out


def torus_deletion_instance(size: int = 8):
    """A torus grid with a hand-made deletion partition.

    ``P`` is two short pieces of row 0, ``A`` the patch of rows 1-4 and
    columns 1-6, ``X`` everything else.  Returns ``(embedding, partition)``.
    """
    from .builders import DeletionPartition

    if size < 8:
        raise ValueError("the instance needs at least an 8 x 8 grid")
    e = torus_grid(size, size)
    paths = [(1, 2), (5, 6)]
    rows, cols = range(1, 5), range(1, 7)
    a = {r * size + c for r in rows for c in cols}
    outer = {r * size + c for r in rows for c in cols if r in (1, 4) or c in (1, 6)}
    p = {v for path in paths for v in path}
    x = set(range(e.n)) - a - p
    return e, DeletionPartition.make(a, paths, x, outer)
