"""Explicit constructions of box and segment representations.

Every builder returns a representation that has already passed
:func:`boxrep.boxmodel.verify` against the graph it is meant to represent;
a failed audit raises :class:`BuildError` naming the step that broke.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .boxmodel import (
    Box,
    BoxRepresentation,
    Interval,
    Layout,
    Segment,
    SegmentRepresentation,
    concat_audit,
    concat_layouts,
    find_empty_inner_corner,
    is_strict,
    pair_split_gadget,
    perturb_layout,
    verify,
    verify_segment_rep,
    vertex_split_gadget,
)
from .graph import Graph, induced_subgraph, is_p_path_degenerate
from .search import Budget
from .surface import (
    EmbeddedGraph,
    PlanarizingCollection,
    euler_genus,
    facial_triangles,
    frame,
    is_contractible,
    triangles,
    verify_planarizing_collection,
)

__all__ = [
    "BuildError",
    "TriangleAudit",
    "triangle_face_audit",
    "lemma_tech_graph",
    "lemma_tech_rep",
    "segment_rep_5pd",
    "Oracles",
    "default_planar3",
    "default_strict2",
    "corner_extender",
    "LocallyPlanarInput",
    "seven_box_locally_planar",
    "five_box_locally_planar",
    "torus_six_box",
    "DeletionPartition",
    "audit_deletion_partition",
    "plafixed_rep",
    "genus_deletion_5box",
]


class BuildError(RuntimeError):
    """A construction step failed its audit."""


def _require(rep: BoxRepresentation, g: Graph, step: str) -> BoxRepresentation:
    report = verify(rep, g)
    if not report.ok:
        raise BuildError(f"{step}: " + "; ".join(report.lines()[:5]))
    return rep


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TriangleAudit:
    facial: tuple[tuple[int, int, int], ...]
    nonfacial: tuple[tuple[int, int, int], ...]
    noncontractible: tuple[tuple[int, int, int], ...]

    @property
    def all_contractible(self) -> bool:
        return not self.noncontractible

    def lines(self) -> list[str]:
        return [
            f"facial: {len(self.facial)}",
            f"non-facial: {len(self.nonfacial)}",
            f"non-contractible: {len(self.noncontractible)}",
        ]


def triangle_face_audit(e: EmbeddedGraph) -> TriangleAudit:
    """Sort the triangles of ``e`` into facial / non-facial / non-contractible.

    Non-contractible triangles are a subset of the non-facial ones.
    """
    faces = facial_triangles(e)
    facial, nonfacial, bad = [], [], []
    for t in triangles(e.graph):
        if t in faces:
            facial.append(t)
            continue
        nonfacial.append(t)
        if not is_contractible(e, t):
            bad.append(t)
    return TriangleAudit(tuple(facial), tuple(nonfacial), tuple(bad))


# ---------------------------------------------------------------------------
# clique plus path
# ---------------------------------------------------------------------------


def _window_ok(s: Sequence[int]) -> bool:
    return not s or s[-1] - s[0] <= 2


def lemma_tech_graph(k_size: int, path_len: int, nbrs: Mapping[int, Iterable[int]]) -> Graph:
    """Path ``0..path_len-1`` plus clique ``path_len..path_len+k_size-1``.

    ``nbrs[j]`` lists the path neighbours of the ``j``-th clique vertex.
    """
    edges = [(i, i + 1) for i in range(path_len - 1)]
    ks = range(path_len, path_len + k_size)
    edges += list(itertools.combinations(ks, 2))
    for j, ns in nbrs.items():
        edges += [(path_len + j, i) for i in ns]
    return Graph.from_edges(path_len + k_size, edges)


def _tech_corner(s: Sequence[int], p: int) -> tuple[int, int, int]:
    """Upper-left-bottom corner ``c_u`` of a clique box, by window shape."""
    if not s:
        return (-1, -1, p + 2)
    a = s[0]
    i, odd = divmod(a, 2)
    shape = tuple(x - a for x in s)
    if not odd:
        table = {
            (0,): (i, -1, 2 * i + 1),
            (0, 1): (i, i, 2 * i + 1),
            (0, 2): (i + 1, -1, 2 * i + 1),
            (0, 1, 2): (i + 1, i, 2 * i + 1),
        }
    else:
        table = {
            (0,): (-1, i, 2 * i + 2),
            (0, 1): (i + 1, i, 2 * i + 2),
            (0, 2): (-1, i + 1, 2 * i + 2),
            (0, 1, 2): (i + 1, i + 1, 2 * i + 2),
        }
    return table[shape]


def lemma_tech_rep(
    k_size: int, path_len: int, nbrs: Mapping[int, Iterable[int]], t: Fraction | int = 0
) -> BoxRepresentation:
    """3-box representation of a clique attached to a path.

    Path vertex ``v_j`` is vertex ``j`` and the ``j``-th clique vertex is
    ``path_len + j`` (see :func:`lemma_tech_graph`).  Each clique vertex may
    see at most a window of three consecutive path vertices.  On the third
    axis every clique interval ends exactly at ``t`` and every path interval
    ends strictly before ``t``.
    """
    if path_len < 1 or k_size < 0:
        raise ValueError("need a non-empty path and a non-negative clique size")
    p = path_len - 1
    windows: dict[int, list[int]] = {}
    for j in range(k_size):
        s = sorted(set(nbrs.get(j, ())))
        if any(not 0 <= x <= p for x in s):
            raise ValueError(f"clique vertex {j} names a vertex outside the path")
        if not _window_ok(s):
            raise ValueError(f"neighbor-window violation: clique vertex {j} sees {s}")
        windows[j] = s
    extra = set(nbrs) - set(range(k_size))
    if extra:
        raise ValueError(f"neighbour table names unknown clique vertices {sorted(extra)}")
    t = Fraction(t)
    dz = t - (p + 2)
    boxes: dict[int, Box] = {}
    corners: dict[int, tuple[int, int, int]] = {}
    for j in range(path_len):
        i, odd = divmod(j, 2)
        if odd:
            iv = [(-1, i + 1), (i, i + 1), (2 * i + 1, 2 * i + 2)]
        else:
            iv = [(i, i + 1), (-1, i), (2 * i, 2 * i + 1)]
        boxes[j] = Box([Interval(a, b) for a, b in iv[:2]] + [Interval(iv[2][0] + dz, iv[2][1] + dz)])
    for j, s in windows.items():
        cx, cy, cz = _tech_corner(s, p)
        corners[path_len + j] = (cx, cy, cz)
        boxes[path_len + j] = Box([Interval(-1, cx), Interval(-1, cy), Interval(cz + dz, t)])
    rep = BoxRepresentation(3, boxes, {"construction": "clique+path", "t": t, "corners": corners})
    return _require(rep, lemma_tech_graph(k_size, path_len, nbrs), "clique+path coordinates")


# ---------------------------------------------------------------------------
# 3-segment representations
# ---------------------------------------------------------------------------


def _linf_to_box(p: Sequence[Fraction], b: Box) -> Fraction:
    d = Fraction(0)
    for x, iv in zip(p, b.intervals):
        if x < iv.lo:
            d = max(d, iv.lo - x)
        elif x > iv.hi:
            d = max(d, x - iv.hi)
    return d


def _contact_params(segs: Mapping[int, Segment], v: int) -> list[Fraction]:
    """Positions along ``segs[v]`` of its endpoints and of every contact."""
    sv = segs[v]
    out = {sv.span.lo, sv.span.hi}
    bv = sv.to_box()
    for w, sw in segs.items():
        if w == v:
            continue
        m = bv.meet(sw.to_box())
        if m is not None:
            out.add(m[sv.axis].lo)
            out.add(m[sv.axis].hi)
    return sorted(out)


_FRACTIONS = (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3), Fraction(2, 5), Fraction(3, 5), Fraction(3, 7))


def _anchor_points(segs: Mapping[int, Segment], v: int) -> list[tuple[tuple[Fraction, ...], Fraction]]:
    """Candidate interior points on ``segs[v]`` with a free radius each.

    Points sit inside gaps between consecutive contacts, largest gap first;
    the radius is a half of the L∞ distance to everything but ``segs[v]``.
    """
    sv = segs[v]
    params = _contact_params(segs, v)
    gaps = sorted(zip(params, params[1:]), key=lambda ab: (-(ab[1] - ab[0]), ab[0]))
    out = []
    for a, b in gaps:
        for f in _FRACTIONS:
            t = a + (b - a) * f
            pt = sv.point_at(t)
            r = min(t - a, b - t)
            for w, sw in segs.items():
                if w != v:
                    r = min(r, _linf_to_box(pt, sw.to_box()))
            out.append((pt, r / 2))
    return out


def _fresh_line(segs: Mapping[int, Segment]) -> Segment:
    top = max((x for s in segs.values() for x in (s.span.hi, *s.fixed)), default=Fraction(0))
    c = top + 2
    return Segment(0, (c, c), Interval(c, c + 1))


def _local_ok(segs: Mapping[int, Segment], new: Mapping[int, Segment], g: Graph) -> bool:
    """Check the new segments against everything placed so far."""
    placed = dict(segs)
    for v, s in new.items():
        if s.span.degenerate:
            return False
        for w, t in placed.items():
            if s.line_key() == t.line_key():
                return False
            m = s.to_box().meet(t.to_box())
            if (m is not None) != g.has_edge(v, w):
                return False
            if m is not None:
                pt = tuple(i.lo for i in m.intervals)
                if pt[s.axis] not in (s.span.lo, s.span.hi) and pt[t.axis] not in (t.span.lo, t.span.hi):
                    return False
        placed[v] = s
    return True


def _pendant(segs: dict[int, Segment], v: int, u: int, g: Graph) -> Segment:
    su = segs[u]
    for pt, r in _anchor_points(segs, u):
        for axis in (a for a in range(3) if a != su.axis):
            for sign in (1, -1):
                q = tuple(x + sign * r if i == axis else x for i, x in enumerate(pt))
                s = Segment.between(pt, q)
                if _local_ok(segs, {v: s}, g):
                    return s
    raise BuildError(f"no free orthogonal spot on the segment of {u}")


def _third(a: int, b: int) -> int:
    return 3 - a - b


def _five_path_candidates(segs: Mapping[int, Segment], v0: int, v6: int):
    a0, a6 = segs[v0].axis, segs[v6].axis
    if a0 != a6:
        axes = [(_third(a0, a6), a0)]
    else:
        o1, o2 = [a for a in range(3) if a != a0]
        axes = [(o1, o2), (o2, o1)]
    pts0 = _anchor_points(segs, v0)
    pts6 = pts0 if v6 == v0 else _anchor_points(segs, v6)
    for (p0, r0), (p6, r6) in itertools.product(pts0, pts6):
        if p0 == p6:
            continue
        eps0 = min(r0, r6)
        for scale in (1, Fraction(1, 2), Fraction(1, 3)):
            eps = eps0 * scale
            for c1, c5 in axes:
                for s1, s5 in itertools.product((1, -1), repeat=2):
                    yield p0, p6, eps, c1, c5, s1, s5


def _five_path(segs: dict[int, Segment], inner: Sequence[int], v0: int, v6: int, g: Graph) -> tuple[dict[int, Segment], str]:
    """Insert ``inner`` along the edges of a small box between the anchors."""
    a0, a6 = segs[v0].axis, segs[v6].axis
    case = "parallel" if a0 == a6 else "perpendicular"
    for p0, p6, eps, c1, c5, s1, s5 in _five_path_candidates(segs, v0, v6):
        if eps <= 0:
            continue
        p1 = tuple(x + s1 * eps if i == c1 else x for i, x in enumerate(p0))
        p5 = tuple(x + s5 * eps if i == c5 else x for i, x in enumerate(p6))
        if any(x == y for x, y in zip(p1, p5)):
            continue  # the box C would be degenerate
        x2 = _third(a0, c1)
        x4 = _third(c5, a6)
        if x2 == x4:
            continue
        q2 = tuple(p5[i] if i == x2 else p1[i] for i in range(3))
        q4 = tuple(p1[i] if i == x4 else p5[i] for i in range(3))
        chain = [(p0, p1), (p1, q2), (q2, q4), (q4, p5), (p5, p6)]
        new = {v: Segment.between(a, b) for v, (a, b) in zip(inner, chain)}
        if _local_ok(segs, new, g):
            return new, case
    raise BuildError(f"no admissible placement for the path between {v0} and {v6}")


def segment_rep_5pd(g: Graph) -> SegmentRepresentation:
    """3-segment representation of a 5-path-degenerate graph.

    The reduction sequence (paths of five degree-2 vertices, preferred, and
    pendant vertices) is replayed backwards.  A pendant vertex gets a short segment
    orthogonal to its neighbour's segment at a free interior point; a
    removed path is laid along three edges of a small box whose opposite
    corners sit next to the two anchor segments.
    """
    ok, steps = is_p_path_degenerate(g, 5, paths_first=True)
    if not ok:
        raise ValueError("graph is not 5-path-degenerate")
    segs: dict[int, Segment] = {}
    log: list[str] = []
    for step in reversed(steps):
        if step.kind == "pendant":
            (v,) = step.vertices
            placed = [w for w in g.neighbors(v) if w in segs]
            if not placed:
                segs[v] = _fresh_line(segs)
                log.append(f"isolated {v}")
            else:
                (u,) = placed
                segs[v] = _pendant(segs, v, u, g)
                log.append(f"pendant {v} on {u}")
        else:
            v0, v6 = step.anchors
            new, case = _five_path(segs, step.vertices, v0, v6, g)
            segs.update(new)
            log.append(f"path {step.vertices} between {v0} and {v6} ({case})")
    denoms = sorted({x.denominator for s in segs.values() for x in (*s.fixed, s.span.lo, s.span.hi)})
    rep = SegmentRepresentation(segs, {"construction": "segments", "steps": log, "max_denominator": max(denoms, default=1)})
    report = verify_segment_rep(rep, g)
    if not report.ok:
        raise BuildError("segment audit: " + "; ".join(report.lines()[:5]))
    return rep


# ---------------------------------------------------------------------------
# oracle handles
# ---------------------------------------------------------------------------


Extender = Callable[..., dict[int, Box]]


def _pad(rep: BoxRepresentation, d: int, iv: Interval = Interval(0, 1)) -> BoxRepresentation:
    boxes = {v: Box(list(b.intervals) + [iv] * (d - rep.d)) for v, b in rep.boxes.items()}
    return BoxRepresentation(d, boxes, rep.metadata)


def _planar_embedding_of(g: Graph) -> EmbeddedGraph:
    from .families import planar_embedding

    return planar_embedding(g)


def default_planar3(e: EmbeddedGraph, budget: Budget | int | None = None) -> BoxRepresentation:
    """3-box representation of a plane graph.

    A strict 2-box representation padded by a constant third interval when
    every triangle is facial; otherwise exact search on small graphs.
    """
    from .oracle import OracleFailure, exact_rep, strict_two_box

    try:
        return _pad(strict_two_box(e, budget), 3)
    except (OracleFailure, ValueError):
        if e.n > 10:
            raise
    rep = exact_rep(e.graph, 3, budget=budget)
    if rep is None:
        raise BuildError("planar graph without a 3-box representation")
    return rep


def default_strict2(e: EmbeddedGraph, budget: Budget | int | None = None) -> BoxRepresentation:
    from .oracle import strict_two_box

    return strict_two_box(e, budget)


def corner_extender(
    host: BoxRepresentation,
    tri: Sequence[int],
    g: Graph,
    new: Sequence[int],
    corner_box: Box,
    budget: Budget | int | None = None,
    grid: int | None = None,
) -> dict[int, Box]:
    """Place the vertices ``new`` inside ``corner_box`` by exact search.

    ``host`` is a strict 3-box representation of part of ``g`` containing
    the triangle ``tri``.  Host boxes meeting ``corner_box`` stay fixed; the
    result extends ``host`` to a strict representation of the graph induced
    on the host vertices near the corner plus ``new``.  ``grid`` caps the
    search grid as in :func:`~boxrep.oracle.exact_strict_rep`.
    """
    from .oracle import contained_in, exact_strict_rep, fixed_box, require_strict

    near = sorted(set(tri) | {v for v, b in host.boxes.items() if b.intersects(corner_box)})
    local = near + sorted(new)
    sub, idmap = induced_subgraph(g, local)
    cons = [fixed_box(idmap[v], host.boxes[v]) for v in near]
    cons.append(contained_in([idmap[v] for v in new], corner_box))
    cons.append(require_strict())
    rep = exact_strict_rep(sub, 3, cons, budget, grid)
    if rep is None:
        raise BuildError(f"no strict extension of {len(new)} vertices inside the corner of {tuple(tri)}")
    return {v: rep.boxes[idmap[v]] for v in new}


@dataclass(frozen=True)
class Oracles:
    """Replaceable sub-constructions used by the composers."""

    strict2: Callable[..., BoxRepresentation] = default_strict2
    planar3: Callable[..., BoxRepresentation] = default_planar3
    extender: Extender = corner_extender
    budget: int | None = None


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _plane_piece(e: EmbeddedGraph, keep: Iterable[int]) -> tuple[EmbeddedGraph, dict[int, int]]:
    """Induced sub-embedding on ``keep``, re-embedded if it is not plane."""
    sub, idmap = e.restrict(sorted(set(keep)))
    for comp in sub.graph.components():
        part, _ = sub.restrict(comp)
        if euler_genus(part) != 0:
            return _planar_embedding_of(sub.graph), idmap
    return sub, idmap


def _pull_back(rep: BoxRepresentation, idmap: Mapping[int, int]) -> dict[int, Box]:
    back = {i: v for v, i in idmap.items()}
    return {back[i]: b for i, b in rep.boxes.items()}


def _epsilons(vs: Iterable[int], n: int) -> dict[int, Fraction]:
    """Distinct perturbations in ``(0, 1/4)`` with denominator ``4(n+1)``."""
    return {v: Fraction(i + 1, 4 * (n + 1)) for i, v in enumerate(sorted(vs))}


def _big(boxes: Mapping[int, Box], d: int) -> Box:
    if not boxes:
        return Box([Interval(0, 1)] * d)
    return Box(
        [
            Interval(min(b[i].lo for b in boxes.values()) - 1, max(b[i].hi for b in boxes.values()) + 1)
            for i in range(d)
        ]
    )


def _with_big(boxes: Mapping[int, Box], d: int, others: Iterable[int]) -> dict[int, Box]:
    big = _big(boxes, d)
    out = dict(boxes)
    out.update({v: big for v in others})
    return out


def _axes(boxes: Mapping[int, Box], axes: Sequence[int]) -> dict[int, Box]:
    return {v: Box([b[i] for i in axes]) for v, b in boxes.items()}


def _stack(*parts: Mapping[int, Box]) -> dict[int, Box]:
    """Concatenate per-vertex boxes of several partial representations."""
    keys = set(parts[0])
    for p in parts[1:]:
        if set(p) != keys:
            missing = sorted(keys ^ set(p))[:5]
            raise BuildError(f"partial representations disagree on vertices {missing}")
    return {v: Box([iv for p in parts for iv in p[v].intervals]) for v in keys}


def _strict_audit(boxes: Mapping[int, Box], g: Graph, vs: Iterable[int], step: str) -> None:
    sub, idmap = induced_subgraph(g, vs)
    rep = BoxRepresentation(next(iter(boxes.values())).d, {idmap[v]: boxes[v] for v in idmap})
    problems = verify(rep, sub).lines() + is_strict(rep).lines()
    if problems:
        raise BuildError(f"{step}: " + "; ".join(problems[:5]))


def _extend_in_corners(
    host: dict[int, Box],
    g: Graph,
    groups: Mapping[tuple[int, int, int], list[int]],
    oracles: Oracles,
    prefer: tuple[int, str] | None,
) -> tuple[dict[int, Box], dict[int, tuple[Fraction, ...]]]:
    """Fill each triangle's interior vertices into an empty inner corner."""
    rep = BoxRepresentation(3, host)
    out: dict[int, Box] = {}
    where: dict[int, tuple[Fraction, ...]] = {}
    for tri in sorted(groups):
        wit = find_empty_inner_corner(rep, tri, prefer=prefer)
        if wit is None:
            raise BuildError(f"triangle {tri} has no empty inner corner")
        placed = oracles.extender(rep, tri, g, groups[tri], wit.box, oracles.budget)
        for v, b in placed.items():
            out[v] = b
            where[v] = wit.corner
    return out, where


def _linf_from(corner: Sequence[Fraction], b: Box) -> Fraction:
    return max(max(abs(iv.lo - c), abs(iv.hi - c)) for c, iv in zip(corner, b.intervals))


# ---------------------------------------------------------------------------
# locally planar triangulations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocallyPlanarInput:
    """A triangulated surface with a planarizing collection of its frame.

    No edge-width lower bound is checked here; the composers
    audit the properties they consume instead.
    """

    e: EmbeddedGraph
    collection: PlanarizingCollection
    note: str = field(default="", compare=False)


def _partition(e: EmbeddedGraph, cycles: Iterable[Sequence[int]], among: Iterable[int]) -> tuple[set[int], set[int], set[int]]:
    on = set(among)
    c = set().union(*map(set, cycles))
    n = {w for v in c for w in e.graph.neighbors(v) if w in on} - c
    r = on - c - n
    return c, n, r


def seven_box_locally_planar(inp: LocallyPlanarInput, oracles: Oracles = Oracles()) -> BoxRepresentation:
    """Seven interval layouts from two planar pieces and a three-level axis.

    With ``C`` the collection's vertices, ``N`` their neighbours and ``R``
    the rest, axes 1-3 represent ``G - C`` (with ``C`` on one big box), axes
    4-6 represent ``G[C ∪ N]`` (``R`` on a big box) and axis 7 maps ``C``,
    ``N``, ``R`` to ``{0}``, ``[0, 1]`` and ``{1}``.
    """
    e, pc = inp.e, inp.collection
    if pc.min_distance < 4:
        raise ValueError(f"collection distance {pc.min_distance} < 4")
    problems = verify_planarizing_collection(e, pc)
    if problems:
        raise ValueError("invalid planarizing collection: " + "; ".join(problems))
    g = e.graph
    c, n, r = _partition(e, pc.cycles, g.vertices())
    audit = [f"partition: |C|={len(c)} |N|={len(n)} |R|={len(r)}"]
    first, idmap1 = _plane_piece(e, n | r)
    a = _pull_back(oracles.planar3(first, oracles.budget), idmap1)
    a = _with_big(a, 3, c)
    second, idmap2 = _plane_piece(e, c | n)
    b = _with_big(_pull_back(oracles.planar3(second, oracles.budget), idmap2), 3, r)
    layout7 = {v: Interval(0, 0) for v in c}
    layout7.update({v: Interval(0, 1) for v in n})
    layout7.update({v: Interval(1, 1) for v in r})
    boxes = _stack(a, b, {v: Box([iv]) for v, iv in layout7.items()})
    audit.append("axis 7: C={0}, N=[0,1], R={1}")
    rep = BoxRepresentation(7, boxes, {"construction": "seven-box", "C": sorted(c), "N": sorted(n), "R": sorted(r), "audit": audit})
    return _require(rep, g, "seven-box assembly")


def _has_long_face(emb: EmbeddedGraph) -> bool:
    """Every component of ``emb`` has a face of length at least 4."""
    for comp in emb.graph.components():
        part, _ = emb.restrict(comp)
        if part.n >= 3 and all(len(f) == 3 for f in part.faces):
            return False
    return True


def _frame_parts(e: EmbeddedGraph, cycles: Sequence[Sequence[int]], min_distance: int):
    """Frame, the collection in frame ids and the interior map, audited."""
    ta = triangle_face_audit(e)
    if not ta.all_contractible:
        raise ValueError(f"non-contractible triangles: {list(ta.noncontractible)[:3]}")
    fr = frame(e)
    try:
        fcycles = tuple(tuple(fr.idmap[v] for v in c) for c in cycles)
    except KeyError as exc:
        raise ValueError(f"collection vertex {exc.args[0]} lies inside a separating triangle") from None
    problems = verify_planarizing_collection(fr.embedding, PlanarizingCollection(fcycles, min_distance))
    if problems:
        raise ValueError("collection does not planarize the frame: " + "; ".join(problems))
    return fr


def five_box_locally_planar(inp: LocallyPlanarInput, oracles: Oracles = Oracles()) -> BoxRepresentation:
    """Five interval layouts for a triangulation with a distance-4 collection.

    ``C`` is the collection, ``N`` its neighbours in the frame, ``R`` the rest
    of the frame; ``T1``/``T2`` are the vertices inside separating triangles
    that miss/meet ``C``.  Axes 1-2 hold a strict rectangle representation
    of ``G[N ∪ R]``, axes 3-4 one of ``G[C ∪ N]``, axis 5 separates ``C``
    from ``R``, and ``T1``/``T2`` go into empty inner corners.
    """
    e, pc = inp.e, inp.collection
    if pc.min_distance < 4:
        raise ValueError(f"collection distance {pc.min_distance} < 4")
    if not all(len(f) == 3 for f in e.faces):
        raise ValueError("input is not a triangulation")
    g = e.graph
    fr = _frame_parts(e, pc.cycles, pc.min_distance)
    c, n, r = _partition(e, pc.cycles, fr.idmap)
    t1 = {v for v, t in fr.interior.items() if not set(t) & c}
    t2 = set(fr.interior) - t1
    audit = [
        f"partition: |C|={len(c)} |N|={len(n)} |R|={len(r)} |T1|={len(t1)} |T2|={len(t2)}",
        "triangles contractible; collection planarizes the frame at distance >= 4",
    ]

    h1, id1 = _plane_piece(e, n | r)
    h2, id2 = _plane_piece(e, c | n)
    for name, h in (("H1", h1), ("H2", h2)):
        if not _has_long_face(h):
            raise BuildError(f"{name} is a triangulation; it has no strict 2-box representation")
    audit.append("H1, H2 each have a face of length >= 4")
    a = _pull_back(oracles.strict2(h1, oracles.budget), id1)
    b = _pull_back(oracles.strict2(h2, oracles.budget), id2)
    audit.append("strict 2-box representations of H1 and H2")

    eps = _epsilons(c | n | r, g.n)
    i5: dict[int, Interval] = {}
    for v in c:
        i5[v] = Interval(eps[v], 2 + eps[v])
    for v in n:
        i5[v] = Interval(1 + eps[v], 4 + eps[v])
    for v in r:
        i5[v] = Interval(3 + eps[v], 5 + eps[v])

    host1 = {v: Box([*a[v].intervals, i5[v]]) for v in n | r}
    host2 = {v: Box([*b[v].intervals, i5[v]]) for v in c | n}
    _strict_audit(host1, g, n | r, "(I1,I2,I5) on H1 is strict")
    _strict_audit(host2, g, c | n, "(I3,I4,I5) on H2 is strict")
    groups1: dict[tuple[int, int, int], list[int]] = {}
    groups2: dict[tuple[int, int, int], list[int]] = {}
    for v, t in fr.interior.items():
        (groups1 if v in t1 else groups2).setdefault(t, []).append(v)
    ext1, at1 = _extend_in_corners(host1, g, groups1, oracles, prefer=(2, "max"))
    ext2, at2 = _extend_in_corners(host2, g, groups2, oracles, prefer=(2, "min"))
    far = [v for v, bx in {**ext1, **ext2}.items() if _linf_from({**at1, **at2}[v], bx) > Fraction(1, 4)]
    if far:
        raise BuildError(f"corner boxes farther than 1/4 from their corner: {far[:5]}")
    audit.append("T1/T2 boxes within L-infinity 1/4 of their corners")

    for v, bx in ext1.items():
        i5[v] = bx[2]
    for v, bx in ext2.items():
        i5[v] = bx[2]
    low = max((i5[v].hi for v in c | t2), default=Fraction(0))
    high = min((i5[v].lo for v in r | t1), default=Fraction(3))
    if low > Fraction(5, 2) or high < Fraction(11, 4):
        raise BuildError(f"separation on axis 5 fails: C∪T2 ends at {low}, R∪T1 starts at {high}")
    audit.append(f"axis 5 separation: C∪T2 ends at {low} <= 5/2, R∪T1 starts at {high} >= 11/4")

    first = dict(a)
    first.update(_axes(ext1, (0, 1)))
    first = _with_big(first, 2, c | t2)
    second = dict(b)
    second.update(_axes(ext2, (0, 1)))
    second = _with_big(second, 2, r | t1)
    boxes = _stack(first, second, {v: Box([iv]) for v, iv in i5.items()})
    meta = {
        "construction": "five-box",
        "C": sorted(c),
        "N": sorted(n),
        "R": sorted(r),
        "T1": sorted(t1),
        "T2": sorted(t2),
        "epsilon_denominator": 4 * (g.n + 1),
        "separation": (low, high),
        "audit": audit,
    }
    return _require(BoxRepresentation(5, boxes, meta), g, "five-box assembly")


# ---------------------------------------------------------------------------
# torus
# ---------------------------------------------------------------------------


def _split_gadget(universe: set[int], s: Sequence[int], g: Graph) -> Layout:
    nbrs = [set(g.neighbors(x)) & (universe - {x}) for x in s]
    if len(s) == 1:
        return vertex_split_gadget(universe, s[0], nbrs[0])
    x, y = s
    return pair_split_gadget(universe, x, y, nbrs[0], nbrs[1])


def _torus_small_width(e: EmbeddedGraph, cyc: Sequence[int], oracles: Oracles, audit: list[str]) -> BoxRepresentation:
    """Delete a short non-contractible cycle, then one split axis per deleted vertex."""
    from .surface import is_planar

    g = e.graph
    s = sorted(set(cyc))
    rest = [v for v in g.vertices() if v not in set(s)]
    if not is_planar(induced_subgraph(g, rest)[0]):
        raise BuildError("G - S is not planar")
    audit.append(f"S = {s} (|S| = {len(s)}); G - S planar")
    sub, idmap = _plane_piece(e, rest)
    base = _with_big(_pull_back(oracles.planar3(sub, oracles.budget), idmap), 3, s)
    audit.append("3-box representation of G - S, S on a big box")
    everyone = set(g.vertices())
    axes = [{v: Box([iv]) for v, iv in vertex_split_gadget(everyone, x, set(g.neighbors(x))).items()} for x in s]
    boxes = _stack(base, *axes)
    audit.append(f"{len(s)} vertex-split axes")
    rep = BoxRepresentation(3 + len(s), boxes, {"construction": "torus-deletion", "S": s, "audit": audit})
    return _require(rep, g, "torus deletion-branch assembly")


def _torus_mid_width(e: EmbeddedGraph, cyc: Sequence[int], oracles: Oracles, audit: list[str]) -> BoxRepresentation:
    """Edge-width 4 or 5: strict rectangles for the frame of ``G - C`` plus gadget axes."""
    g = e.graph
    c = list(cyc)
    cs = set(c)
    if len(c) not in (4, 5):
        raise ValueError("the gadget branch needs a cycle of length 4 or 5")
    from .surface import is_induced_cycle

    if not is_induced_cycle(g, c):
        raise BuildError(f"shortest non-contractible cycle {c} has a chord")
    s3, s4, s5 = [c[0]], c[1::2], c[2::2]
    audit.append(f"S3={s3} S4={s4} S5={s5}")

    sub, idmap = _plane_piece(e, [v for v in g.vertices() if v not in cs])
    back = {i: v for v, i in idmap.items()}
    outer = max(range(len(sub.faces)), key=lambda i: (len(sub.faces[i]), -i))
    fr = frame(sub, sub.face_vertices(outer))
    fback = {i: back[v] for v, i in fr.idmap.items()}
    r = set(fback.values())
    interior = {back[v]: tuple(sorted(back[u] for u in t)) for v, t in fr.interior.items()}
    t = set(interior)
    audit.append(f"|C|={len(c)} |R|={len(r)} |T|={len(t)}")
    if not _has_long_face(fr.embedding):
        raise BuildError("the frame of G - C is a triangulation")
    rect = {fback[i]: b for i, b in oracles.strict2(fr.embedding, oracles.budget).boxes.items()}
    audit.append("strict 2-box representation of the frame H")

    eps = _epsilons(r, g.n)
    i3 = perturb_layout(_split_gadget(cs | r, s3, g), eps)
    host = {v: Box([*rect[v].intervals, i3[v]]) for v in r}
    _strict_audit(host, g, r, "(I1,I2,I3) on H is strict")
    groups: dict[tuple[int, int, int], list[int]] = {}
    for v, tri in interior.items():
        groups.setdefault(tri, []).append(v)
    ext, _ = _extend_in_corners(host, g, groups, oracles, prefer=None)
    audit.append("T placed in empty inner corners")

    first = dict(rect)
    first.update(_axes(ext, (0, 1)))
    first = _with_big(first, 2, cs)
    i3 = dict(i3)
    i3.update({v: b[2] for v, b in ext.items()})
    everyone = set(g.vertices())
    i4 = _split_gadget(everyone, s4, g)
    i5 = _split_gadget(everyone, s5, g)
    lay = {v: Box([i3[v], i4[v], i5[v]]) for v in everyone}
    boxes = _stack(first, lay)
    cyc_rep = BoxRepresentation(3, {i: lay[v] for v, i in induced_subgraph(g, c)[1].items()})
    _require(cyc_rep, induced_subgraph(g, c)[0], "C induces a cycle in (I3,I4,I5)")
    r_sub, r_map = induced_subgraph(g, r)
    clique = BoxRepresentation(3, {i: lay[v] for v, i in r_map.items()})
    _require(clique, Graph.complete(r_sub.n), "R induces a clique in (I3,I4,I5)")
    audit.append("C induces a cycle and R a clique in (I3,I4,I5)")
    meta = {"construction": "torus-gadgets", "C": c, "T": sorted(t), "epsilon_denominator": 4 * (g.n + 1), "audit": audit}
    return _require(BoxRepresentation(5, boxes, meta), g, "torus gadget-branch assembly")


def torus_six_box(e: EmbeddedGraph, oracles: Oracles = Oracles()) -> BoxRepresentation:
    """Box representation of a torus triangulation in dimension at most 6.

    The branch depends on the edge-width: at least 6 uses the locally planar
    five-box composer on a chordless cycle taken from four disjoint homotopic
    ones; 4 or 5 uses gadget axes around a shortest non-contractible cycle;
    at most 3 deletes that cycle and adds one split axis per vertex.
    """
    from .surface import is_induced_cycle, shortest_noncontractible_cycle, torus_disjoint_homotopic_cycles

    if euler_genus(e) != 2:
        raise ValueError("expected a torus embedding (Euler genus 2)")
    if not all(len(f) == 3 for f in e.faces):
        raise ValueError("expected a triangulation; see oracle.triangulation_completion")
    cyc = shortest_noncontractible_cycle(e)
    ew = len(cyc)
    audit = [f"edge-width {ew}"]
    if ew <= 3:
        return _torus_small_width(e, cyc, oracles, audit).with_metadata(edge_width=ew)
    if ew <= 5:
        return _torus_mid_width(e, cyc, oracles, audit).with_metadata(edge_width=ew)
    cycles = torus_disjoint_homotopic_cycles(e, 4, oracles.budget)
    if cycles is None:
        raise BuildError("no four disjoint homotopic non-contractible cycles")
    chordless = [cy for cy in cycles if is_induced_cycle(e.graph, cy)]
    if not chordless:
        raise BuildError("none of the four homotopic cycles is chordless")
    pick = chordless[len(chordless) // 2]
    audit.append(f"four disjoint homotopic cycles; using {tuple(pick)}")
    inp = LocallyPlanarInput(e, PlanarizingCollection((tuple(pick),), 4))
    try:
        rep = five_box_locally_planar(inp, oracles)
    except ValueError as exc:
        raise BuildError(f"locally planar route refused the cycle: {exc}") from exc
    meta = dict(rep.metadata)
    meta["audit"] = audit + list(meta.get("audit", []))
    meta["edge_width"] = ew
    return BoxRepresentation(5, rep.boxes, meta)


# ---------------------------------------------------------------------------
# deleting few vertices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DeletionPartition:
    """Vertex partition ``A, P, X`` with ``P`` split into paths.

    ``outer`` is the vertex set of the outer face of the plane graph
    ``G[A]``; only its vertices may have neighbours in ``P``.
    """

    A: frozenset[int]
    P: frozenset[int]
    X: frozenset[int]
    paths: tuple[tuple[int, ...], ...]
    outer: frozenset[int]

    @classmethod
    def make(cls, A: Iterable[int], paths: Iterable[Sequence[int]], X: Iterable[int], outer: Iterable[int]) -> DeletionPartition:
        ps = tuple(tuple(p) for p in paths)
        return cls(frozenset(A), frozenset(v for p in ps for v in p), frozenset(X), ps, frozenset(outer))

    def oriented_paths(self) -> list[tuple[int, ...]]:
        """Paths with their lower-id endpoint on the left, ordered by it."""
        out = [p if p[0] <= p[-1] else p[::-1] for p in self.paths]
        return sorted(out)


def _outer_face_index(emb: EmbeddedGraph, outer: set[int]) -> int | None:
    for i in range(len(emb.faces)):
        if set(emb.face_vertices(i)) == outer:
            return i
    return None


def audit_deletion_partition(e: EmbeddedGraph, part: DeletionPartition) -> list[str]:
    """Itemized violations of the partition promises (empty when all hold)."""
    g = e.graph
    out: list[str] = []
    a, p, x = set(part.A), set(part.P), set(part.X)
    if a & p or a & x or p & x:
        out.append("A, P, X are not disjoint")
    if a | p | x != set(g.vertices()):
        out.append("A, P, X do not cover the vertex set")
    genus = euler_genus(e)
    if len(x) > 30 * max(genus, 1):
        out.append(f"|X| = {len(x)} exceeds 30 * {genus}")
    seen: set[int] = set()
    pos: dict[int, tuple[int, int]] = {}
    for k, path in enumerate(part.paths):
        if not path or len(set(path)) != len(path) or seen & set(path):
            out.append(f"path {k} repeats vertices")
        seen |= set(path)
        for i, v in enumerate(path):
            pos[v] = (k, i)
        for u, v in zip(path, path[1:]):
            if not g.has_edge(u, v):
                out.append(f"path {k}: {u}-{v} is not an edge")
    if seen != p:
        out.append("paths do not cover P exactly")
    for u, v in g.edges:
        if u in pos and v in pos:
            (ku, iu), (kv, iv) = pos[u], pos[v]
            if ku != kv or abs(iu - iv) != 1:
                out.append(f"edge {u}-{v} inside P is not a path edge")
    for k, path in enumerate(part.paths):
        dist = {v: g.bfs_distances([v]) for v in path}
        for (i, u), (j, w) in itertools.combinations(enumerate(path), 2):
            dg = dist[u][w]
            if j - i <= 2 and dg != j - i:
                out.append(f"path {k}: subpath {u}..{w} is not shortest")
            if j - i >= 3 and dg < 3:
                out.append(f"path {k}: {u} and {w} are closer than 3 in G")
    for k, l in itertools.combinations(range(len(part.paths)), 2):
        d = min(g.bfs_distances(part.paths[k])[v] for v in part.paths[l])
        if d < 3:
            out.append(f"paths {k} and {l} are at distance {d} < 3")
    for v in sorted(a):
        ns = [pos[w] for w in g.neighbors(v) if w in pos]
        if not ns:
            continue
        if v not in part.outer:
            out.append(f"{v} has neighbours in P but is not on the outer face")
        if len({k for k, _ in ns}) > 1 or max(i for _, i in ns) - min(i for _, i in ns) > 2:
            out.append(f"{v} sees P outside a window of three consecutive vertices")
    if not part.outer <= a:
        out.append("outer face is not inside A")
    else:
        from .surface import is_planar

        if not is_planar(induced_subgraph(g, a)[0]):
            out.append("G[A] is not planar")
        else:
            emb, idmap = _plane_piece(e, a)
            if _outer_face_index(emb, {idmap[v] for v in part.outer}) is None:
                out.append("outer vertex set is not a face of G[A]")
    return out


def plafixed_rep(e: EmbeddedGraph, w: int, t: Fraction | int = 0, oracles: Oracles = Oracles()) -> BoxRepresentation:
    """Strict 3-box representation of a plane graph with ``w`` pushed below ``t``.

    On the third axis the interval of ``w`` ends at ``t`` and every other
    interval lies in ``[t, +inf)``; neighbours of ``w`` start exactly at
    ``t``.  ``w`` gets a rectangle containing all the others, so ``e - w``
    needs a strict 2-box representation.
    """
    t = Fraction(t)
    g = e.graph
    rest = [v for v in g.vertices() if v != w]
    sub, idmap = _plane_piece(e, rest)
    rect = _pull_back(oracles.strict2(sub, oracles.budget), idmap)
    eps = _epsilons(rest, g.n)
    nw = set(g.neighbors(w))
    boxes = {}
    for v in rest:
        lo = t if v in nw else t + eps[v]
        boxes[v] = Box([*rect[v].intervals, Interval(lo, t + 2 + eps[v])])
    big = _big(rect, 2)
    boxes[w] = Box([*big.intervals, Interval(t - 1, t)])
    rep = BoxRepresentation(3, boxes, {"construction": "plafixed", "w": w, "t": t})
    _require(rep, g, "fixed-vertex 3-box representation")
    problems = is_strict(rep).lines()
    if problems:
        raise BuildError("fixed-vertex representation is not strict: " + "; ".join(problems[:3]))
    return rep


def _verify_on(boxes: Mapping[int, Box], g: Graph, vs: Iterable[int], step: str) -> None:
    sub, idmap = induced_subgraph(g, vs)
    d = next(iter(boxes.values())).d
    _require(BoxRepresentation(d, {idmap[v]: boxes[v] for v in idmap}), sub, step)


def genus_deletion_5box(e: EmbeddedGraph, part: DeletionPartition, oracles: Oracles = Oracles(), p_plus: Fraction | int = 0) -> BoxRepresentation:
    """Five interval layouts for ``G - X`` given an audited partition.

    Axes 1-3 come from a fixed-vertex representation of ``G[A]`` plus an
    apex over the outer face, axes 4-5 and the left half of axis 3 from the
    clique-plus-path construction on ``P`` and the outer face; the two
    third axes are glued at ``p_plus``.  The result keeps original ids.
    """
    problems = audit_deletion_partition(e, part)
    if problems:
        raise ValueError("partition audit failed: " + "; ".join(problems))
    from .families import insert_in_face

    g = e.graph
    p_plus = Fraction(p_plus)
    a, o = set(part.A), set(part.outer)
    audit = [f"partition: |A|={len(a)} |P|={len(part.P)} |X|={len(part.X)} |O|={len(o)}"]

    emb, idmap = _plane_piece(e, a)
    back = {i: v for v, i in idmap.items()}
    face = _outer_face_index(emb, {idmap[v] for v in o})
    hplus = insert_in_face(emb, face)
    apex = emb.n
    plus = plafixed_rep(hplus, apex, p_plus, oracles)
    plus_boxes = {back[i]: b for i, b in plus.boxes.items() if i != apex}
    starts = [(v, plus_boxes[v][2].lo) for v in a]
    if any(lo != p_plus for v, lo in starts if v in o) or any(lo <= p_plus for v, lo in starts if v not in o):
        raise BuildError("apex representation does not start O exactly at p+")
    audit.append("H+ = G[A] + apex over O: strict 3-box, O starts at p+, A-O after")

    seq: list[int | None] = []
    for k, path in enumerate(part.oriented_paths()):
        if k:
            seq.append(None)  # connector between consecutive paths
        seq.extend(path)
    at = {v: i for i, v in enumerate(seq) if v is not None}
    outer = sorted(o)
    nbrs = {j: {at[w] for w in g.neighbors(u) if w in at} for j, u in enumerate(outer)}
    tech = lemma_tech_rep(len(outer), len(seq), nbrs, p_plus)
    connectors = [i for i, v in enumerate(seq) if v is None]
    audit.append(f"tilde-H: {len(connectors)} connector vertices on the path, dropped afterwards")
    low: dict[int, Box] = {v: tech.boxes[i] for i, v in enumerate(seq) if v is not None}
    low.update({u: tech.boxes[len(seq) + j] for j, u in enumerate(outer)})

    left = {v: b[2] for v, b in low.items()}
    right = {v: b[2] for v, b in plus_boxes.items()}
    report = concat_audit(left, right, o, p_plus)
    if not report.ok:
        raise BuildError("concatenation at p+: " + "; ".join(report.lines()[:5]))
    i3 = concat_layouts(left, right, o, p_plus)
    audit.append("concatenation preconditions at p+ hold")

    first = _with_big(_axes(plus_boxes, (0, 1)), 2, part.P)
    second = _with_big(_axes(low, (0, 1)), 2, a - o)
    keep = a | set(part.P)
    boxes = _stack(_axes(first, (0,)), _axes(first, (1,)), {v: Box([i3[v]]) for v in keep}, second)
    cross = sum(
        1
        for u in a - o
        for v in part.P
        if boxes[u].intersects(boxes[v])
    )
    if cross:
        raise BuildError(f"{cross} intersections between A-O and P")
    audit.append("no A-O / P intersections")
    _verify_on(boxes, g, keep, "five-box representation of G - X")
    meta = {"construction": "deletion", "X": sorted(part.X), "p_plus": p_plus, "cross_edges": cross, "audit": audit}
    return BoxRepresentation(5, boxes, meta)
