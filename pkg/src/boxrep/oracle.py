"""Exact search engines for small graphs.

Two independent boxicity engines live here.  The assignment engine picks,
for every non-edge, the non-empty set of axes on which its two boxes are
disjoint and tests each axis graph for being interval.  The grid engine
enumerates every interval layout on the ``2n``-point grid and looks for
``d`` layouts whose intersection graph is the input.  The strict-search
engine places boxes on a normalized integer grid one vertex at a time.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from ._accel import kernels
from .boxmodel import (
    Box,
    BoxRepresentation,
    Interval,
    find_empty_inner_corner,
    is_strict,
    verify,
)
from .families import planar_embedding
from .graph import Graph, is_interval_graph
from .search import Budget, BudgetExhausted, as_budget
from .surface import EmbeddedGraph, euler_genus, facial_triangles, triangles

__all__ = [
    "BoxicityResult",
    "exact_boxicity",
    "rep_in_dimension",
    "grid_boxicity",
    "RepConstraint",
    "fixed_box",
    "axis_end_at",
    "axis_start_at_or_after",
    "contained_in",
    "require_strict",
    "require_corner",
    "exact_strict_rep",
    "exact_rep",
    "OracleFailure",
    "is_triangulation",
    "triangulation_completion",
    "strict2_exists",
    "simple_faces",
    "strict_two_box",
]


@dataclass(frozen=True)
class BoxicityResult:
    """Outcome of an exact boxicity computation.

    ``value`` is ``None`` when the boxicity exceeds ``d_max``; the witness
    is a verified representation of dimension ``max(value, 1)``.
    """

    value: int | None
    d_max: int
    witness: BoxRepresentation | None = None
    nodes: int = 0

    @property
    def exceeds(self) -> bool:
        return self.value is None


def _layout_from_model(model: Sequence[tuple[int, int]]) -> dict[int, Interval]:
    return {v: Interval(lo, hi) for v, (lo, hi) in enumerate(model)}


def _complete_witness(n: int) -> BoxRepresentation:
    return BoxRepresentation.from_layouts([{v: Interval(0, 1) for v in range(n)}], convention="complete")


def _witness_from_axes(g: Graph, axis_nonedges: Sequence[set[tuple[int, int]]]) -> BoxRepresentation:
    layouts = []
    for removed in axis_nonedges:
        h = Graph(g.n, frozenset(p for p in itertools.combinations(range(g.n), 2) if p not in removed))
        ok, model = is_interval_graph(h)
        assert ok and model is not None
        layouts.append(_layout_from_model(model))
    rep = BoxRepresentation.from_layouts(layouts)
    report = verify(rep, g)
    if not report.ok:  # pragma: no cover - the axis graphs intersect to g by construction
        raise AssertionError("; ".join(report.lines()))
    return rep


# ---------------------------------------------------------------------------
# assignment engine
# ---------------------------------------------------------------------------


def _assign_search(g: Graph, d: int, bud: Budget) -> list[set[tuple[int, int]]] | None:
    n = g.n
    non = sorted(g.non_edges(), key=lambda p: (p[1], p[0]))
    # non-edges whose larger endpoint is v complete the prefix 0..v
    closes_at: dict[int, int] = {}
    for i, (_, v) in enumerate(non):
        closes_at[i] = v if (i + 1 == len(non) or non[i + 1][1] != v) else -1
    full = [((1 << n) - 1) & ~(1 << v) for v in range(n)]
    masks = [list(full) for _ in range(d)]
    chosen: list[int] = []
    subsets = sorted(range(1, 1 << d), key=lambda s: (bin(s).count("1"), s))

    def prefix_ok(v: int) -> bool:
        keep = (1 << (v + 1)) - 1
        for ax in range(d):
            if not kernels.is_interval_mask([masks[ax][u] & keep for u in range(v + 1)]):
                return False
        return True

    def rec(i: int, used: int) -> bool:
        bud.tick()
        if i == len(non):
            return True
        a, b = non[i]
        for s in subsets:
            # axes are labelled in order of first use
            fresh = s >> used
            if fresh and (fresh & (fresh + 1)):
                continue
            for ax in range(d):
                if s >> ax & 1:
                    masks[ax][a] &= ~(1 << b)
                    masks[ax][b] &= ~(1 << a)
            chosen.append(s)
            new_used = max(used, s.bit_length())
            if closes_at[i] < 0 or prefix_ok(closes_at[i]):
                if rec(i + 1, new_used):
                    return True
            chosen.pop()
            for ax in range(d):
                if s >> ax & 1:
                    masks[ax][a] |= 1 << b
                    masks[ax][b] |= 1 << a
        return False

    if not rec(0, 0):
        return None
    out: list[set[tuple[int, int]]] = [set() for _ in range(d)]
    for (a, b), s in zip(non, chosen):
        for ax in range(d):
            if s >> ax & 1:
                out[ax].add((a, b))
    return out


def rep_in_dimension(g: Graph, d: int, budget: Budget | int | None = None) -> BoxRepresentation | None:
    """A verified ``d``-box representation of ``g`` (``d >= 1``), or ``None``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    bud = as_budget(budget)
    if g.is_complete():
        return BoxRepresentation.from_layouts([_complete_witness(g.n).layout(0)] * d)
    ok, model = is_interval_graph(g)
    if ok:
        return BoxRepresentation.from_layouts([_layout_from_model(model)] * d)
    if d == 1:
        return None
    found = _assign_search(g, d, bud)
    return None if found is None else _witness_from_axes(g, found)


def exact_boxicity(g: Graph, d_max: int = 3, budget: Budget | int | None = None) -> BoxicityResult:
    """Smallest ``d <= d_max`` with a ``d``-box representation of ``g``.

    Complete graphs have boxicity 0.  Raises :class:`BudgetExhausted` when
    the node budget runs out before a conclusion.
    """
    bud = as_budget(budget)
    if g.is_complete():
        return BoxicityResult(0, d_max, _complete_witness(g.n), bud.used)
    for d in range(1, d_max + 1):
        if d == 1:
            ok, model = is_interval_graph(g)
            if ok:
                rep = BoxRepresentation.from_layouts([_layout_from_model(model)])
                return BoxicityResult(1, d_max, rep, bud.used)
            continue
        found = _assign_search(g, d, bud)
        if found is not None:
            return BoxicityResult(d, d_max, _witness_from_axes(g, found), bud.used)
    return BoxicityResult(None, d_max, None, bud.used)


# ---------------------------------------------------------------------------
# grid engine
# ---------------------------------------------------------------------------


def _pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(itertools.combinations(range(n), 2))}


@lru_cache(maxsize=None)
def _grid_layout_graphs(n: int) -> tuple[int, ...]:
    """Edge masks of every layout with distinct endpoints on the grid ``0..2n-1``.

    The sweep places endpoints left to right; opening an interval joins it
    to every interval still open.  Distinct endpoints lose no graphs.
    """
    idx = _pair_index(n)

    @lru_cache(maxsize=None)
    def sweep(opened: int, closed: int) -> frozenset[int]:
        if closed == (1 << n) - 1:
            return frozenset([0])
        out: set[int] = set()
        live = opened & ~closed
        for v in range(n):
            bit = 1 << v
            if not opened & bit:
                add = 0
                for u in range(n):
                    if live >> u & 1:
                        add |= 1 << idx[(min(u, v), max(u, v))]
                for rest in sweep(opened | bit, closed):
                    out.add(rest | add)
            elif live & bit:
                out.update(sweep(opened, closed | bit))
        return frozenset(out)

    return tuple(sorted(sweep(0, 0)))


def _graph_mask(g: Graph) -> int:
    idx = _pair_index(g.n)
    m = 0
    for e in g.edges:
        m |= 1 << idx[e]
    return m


def grid_boxicity(g: Graph, d_max: int = 3, budget: Budget | int | None = None) -> BoxicityResult:
    """Boxicity by choosing ``d`` grid layouts whose edge sets intersect to ``g``.

    Independent of interval recognition; practical for ``n <= 7``.
    """
    bud = as_budget(budget)
    n = g.n
    if g.is_complete():
        return BoxicityResult(0, d_max, _complete_witness(n), bud.used)
    if n > 7:
        raise ValueError("grid engine is limited to 7 vertices")
    full = (1 << (n * (n - 1) // 2)) - 1
    gm = _graph_mask(g)
    missing = full & ~gm
    # layouts containing g, kept by the non-edges of g they realise
    covers = sorted({full & ~h for h in _grid_layout_graphs(n) if h & gm == gm}, key=lambda c: -bin(c).count("1"))
    maximal: list[int] = []
    for c in covers:
        # a superset of c, if any, is dominated by a maximal one seen earlier
        if not any(o & c == c for o in maximal):
            maximal.append(c)

    def rec(uncovered: int, left: int, picked: list[int]) -> list[int] | None:
        bud.tick()
        if not uncovered:
            return list(picked)
        if not left:
            return None
        low = uncovered & -uncovered
        for c in maximal:
            if c & low:
                picked.append(c)
                got = rec(uncovered & ~c, left - 1, picked)
                picked.pop()
                if got is not None:
                    return got
        return None

    pairs = list(itertools.combinations(range(n), 2))
    for d in range(1, d_max + 1):
        got = rec(missing, d, [])
        if got is not None:
            axes = [{pairs[i] for i in range(len(pairs)) if c >> i & 1} for c in got]
            return BoxicityResult(d, d_max, _witness_from_axes(g, axes), bud.used)
    return BoxicityResult(None, d_max, None, bud.used)


# ---------------------------------------------------------------------------
# constrained grid search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RepConstraint:
    """One requirement on a searched representation.

    Build instances with the helper functions below rather than directly.
    """

    kind: str
    vertices: tuple[int, ...] = ()
    axis: int | None = None
    value: Fraction | None = None
    box: Box | None = None


def fixed_box(v: int, box: Box) -> RepConstraint:
    return RepConstraint("fixed_box", (v,), box=box)


def axis_end_at(v: int, axis: int, value: Fraction | int) -> RepConstraint:
    return RepConstraint("axis_end_at", (v,), axis, Fraction(value))


def axis_start_at_or_after(vs: Iterable[int], axis: int, value: Fraction | int) -> RepConstraint:
    return RepConstraint("axis_start_at_or_after", tuple(sorted(vs)), axis, Fraction(value))


def contained_in(vs: Iterable[int], box: Box) -> RepConstraint:
    return RepConstraint("contained_in", tuple(sorted(vs)), box=box)


def require_strict() -> RepConstraint:
    return RepConstraint("require_strict")


def require_corner(t: Sequence[int]) -> RepConstraint:
    if len(t) != 3:
        raise ValueError("a corner constraint names a triangle")
    return RepConstraint("require_corner", tuple(t))


def _check_constraints(g: Graph, d: int, cons: Sequence[RepConstraint]) -> None:
    kinds = {"fixed_box", "axis_end_at", "axis_start_at_or_after", "contained_in", "require_strict", "require_corner"}
    for c in cons:
        if c.kind not in kinds:
            raise ValueError(f"unknown constraint kind {c.kind!r}")
        for v in c.vertices:
            if not 0 <= v < g.n:
                raise ValueError(f"constraint {c.kind} names unknown vertex {v}")
        if c.axis is not None and not 0 <= c.axis < d:
            raise ValueError(f"constraint {c.kind} names axis {c.axis} outside 0..{d - 1}")
        if c.box is not None and c.box.d != d:
            raise ValueError(f"constraint {c.kind} box has dimension {c.box.d}")
        if c.kind == "require_corner":
            if d != 3:
                raise ValueError("corner constraints need d = 3")
            a, b, w = c.vertices
            if not (g.has_edge(a, b) and g.has_edge(b, w) and g.has_edge(a, w)):
                raise ValueError(f"{c.vertices} is not a triangle")
    fixed = [c.vertices[0] for c in cons if c.kind == "fixed_box"]
    if len(fixed) != len(set(fixed)):
        raise ValueError("a vertex has two fixed boxes")


def _axis_grid(anchors: list[Fraction], k: int) -> list[Fraction]:
    """Anchor values with ``k`` fresh values in every gap and beyond both ends.

    Without anchors the grid is ``0..k+1``.
    """
    if not anchors:
        return [Fraction(i) for i in range(k + 2)]
    out: list[Fraction] = []
    first, last = anchors[0], anchors[-1]
    out.extend(first - (k + 1 - j) for j in range(1, k + 1))
    for a, b in zip(anchors, anchors[1:]):
        out.append(a)
        out.extend(a + (b - a) * j / (k + 1) for j in range(1, k + 1))
    out.append(last)
    out.extend(last + j for j in range(1, k + 1))
    return out


@dataclass
class _Plan:
    order: list[int]
    cands: dict[int, tuple[list[tuple[int, ...]], list[tuple[int, ...]]]]
    grids: list[list[Fraction]]
    free_axes: list[int]


def _build_plan(g: Graph, d: int, cons: Sequence[RepConstraint], k: int, strict: bool) -> _Plan:
    anchors: list[set[Fraction]] = [set() for _ in range(d)]
    for c in cons:
        if c.box is not None:
            for ax in range(d):
                anchors[ax].update((c.box[ax].lo, c.box[ax].hi))
        if c.value is not None:
            anchors[c.axis].add(c.value)
    grids = [_axis_grid(sorted(a), k) for a in anchors]
    pos = [{x: i for i, x in enumerate(gr)} for gr in grids]
    free_axes = [ax for ax in range(d) if not anchors[ax]]

    # per vertex, per axis: allowed (lo, hi) index pairs
    allowed: dict[int, list[list[tuple[int, int]]]] = {}
    fixed: dict[int, Box] = {c.vertices[0]: c.box for c in cons if c.kind == "fixed_box"}
    for v in range(g.n):
        per_axis = []
        for ax in range(d):
            size = len(grids[ax])
            if v in fixed:
                iv = fixed[v][ax]
                per_axis.append([(pos[ax][iv.lo], pos[ax][iv.hi])])
                continue
            lo_min, hi_max, hi_eq = 0, size - 1, None
            for c in cons:
                if v not in c.vertices:
                    continue
                if c.kind == "axis_end_at" and c.axis == ax:
                    hi_eq = pos[ax][c.value]
                elif c.kind == "axis_start_at_or_after" and c.axis == ax:
                    lo_min = max(lo_min, pos[ax][c.value])
                elif c.kind == "contained_in":
                    lo_min = max(lo_min, pos[ax][c.box[ax].lo])
                    hi_max = min(hi_max, pos[ax][c.box[ax].hi])
            pairs = []
            for lo in range(lo_min, hi_max + 1):
                for hi in range(lo + (1 if strict else 0), hi_max + 1):
                    if hi_eq is None or hi == hi_eq:
                        pairs.append((lo, hi))
            per_axis.append(pairs)
        allowed[v] = per_axis

    # fixed boxes first, then greedily the vertex with most placed neighbours
    order = sorted(fixed)
    rest = [v for v in range(g.n) if v not in fixed]
    placed = set(order)
    while rest:
        v = max(rest, key=lambda u: (len(g.neighbors(u) & placed), -math.prod(_allowed_size(allowed[u])), -u))
        rest.remove(v)
        order.append(v)
        placed.add(v)
    cands = {}
    for v in range(g.n):
        los, his = [], []
        for combo in itertools.product(*allowed[v]):
            if v == order[0] and not _canonical_first(combo, free_axes, grids):
                continue
            los.append(tuple(p[0] for p in combo))
            his.append(tuple(p[1] for p in combo))
        cands[v] = (los, his)
    return _Plan(order, cands, grids, free_axes)


def _allowed_size(per_axis: list[list[tuple[int, int]]]) -> list[int]:
    return [len(p) for p in per_axis]


def _canonical_first(combo: Sequence[tuple[int, int]], free_axes: list[int], grids: list[list[Fraction]]) -> bool:
    """Break reflection and permutation symmetry of unanchored axes.

    Any representation can be reflected on each free axis so that the first
    box sits in the lower half, and the free axes can then be sorted by the
    first box's interval.
    """
    for ax in free_axes:
        lo, hi = combo[ax]
        if lo + hi > len(grids[ax]) - 1:
            return False
    for a, b in zip(free_axes, free_axes[1:]):
        if combo[a] > combo[b]:
            return False
    return True


def _search(
    g: Graph,
    d: int,
    plan: _Plan,
    strict: bool,
    corners: list[tuple[int, ...]],
    bud: Budget,
    normal_form: bool,
) -> BoxRepresentation | None:
    order = plan.order
    n = g.n
    placed_lo: list[tuple[int, ...]] = []
    placed_hi: list[tuple[int, ...]] = []
    sizes = [len(gr) for gr in plan.grids]

    def to_rep() -> BoxRepresentation:
        boxes = {}
        for v, lo, hi in zip(order, placed_lo, placed_hi):
            boxes[v] = Box([Interval(plan.grids[ax][lo[ax]], plan.grids[ax][hi[ax]]) for ax in range(d)])
        return BoxRepresentation(d, boxes)

    def unused_ok(depth: int) -> bool:
        left = 2 * (n - depth)
        for ax in plan.free_axes:
            seen = set()
            for lo, hi in zip(placed_lo, placed_hi):
                seen.add(lo[ax])
                seen.add(hi[ax])
            if sizes[ax] - len(seen) > left:
                return False
        return True

    def rec(depth: int) -> BoxRepresentation | None:
        bud.tick()
        if normal_form and not unused_ok(depth):
            return None
        if depth == n:
            rep = to_rep()
            for t in corners:
                if find_empty_inner_corner(rep, t) is None:
                    return None
            return rep
        v = order[depth]
        wanted = [g.has_edge(v, u) for u in order[:depth]]
        los, his = plan.cands[v]
        for i in kernels.filter_boxes(los, his, placed_lo, placed_hi, wanted, strict):
            placed_lo.append(los[i])
            placed_hi.append(his[i])
            got = rec(depth + 1)
            placed_lo.pop()
            placed_hi.pop()
            if got is not None:
                return got
        return None

    return rec(0)


def exact_strict_rep(
    g: Graph,
    d: int,
    constraints: Sequence[RepConstraint] = (),
    budget: Budget | int | None = None,
    grid: int | None = None,
) -> BoxRepresentation | None:
    """Search for a ``d``-box representation meeting every constraint.

    Strictness is requested by a ``require_strict`` constraint.  Grids grow
    from two values per axis up to the size at which every representation
    has an equivalent on the grid; ``None`` is returned only after the last
    grid is exhausted.  ``grid`` caps the number of fresh values per gap, in
    which case running out of grid raises :class:`BudgetExhausted`.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    cons = list(constraints)
    _check_constraints(g, d, cons)
    bud = as_budget(budget)
    strict = any(c.kind == "require_strict" for c in cons)
    corners = [c.vertices for c in cons if c.kind == "require_corner"]
    n_free = g.n - sum(1 for c in cons if c.kind == "fixed_box")
    anchored = any(c.box is not None or c.value is not None for c in cons)
    # enough fresh values per gap to realise every endpoint order
    k_full = 2 * n_free if anchored else max(0, 2 * n_free - 2)
    k_cap = k_full if grid is None else min(grid, k_full)
    for k in range(0, k_cap + 1):
        plan = _build_plan(g, d, cons, k, strict)
        rep = _search(g, d, plan, strict, corners, bud, normal_form=k > 0)
        if rep is not None:
            _audit(rep, g, cons, strict)
            return rep.with_metadata(grid=k, nodes=bud.used)
    if k_cap < k_full:
        raise BudgetExhausted(f"grid capped at {k_cap} fresh values; {k_full} needed to conclude")
    return None


def exact_rep(
    g: Graph, d: int, constraints: Sequence[RepConstraint] = (), budget: Budget | int | None = None
) -> BoxRepresentation | None:
    """Plain (non-strict) variant of :func:`exact_strict_rep`."""
    return exact_strict_rep(g, d, [c for c in constraints if c.kind != "require_strict"], budget)


def _audit(rep: BoxRepresentation, g: Graph, cons: Sequence[RepConstraint], strict: bool) -> None:
    problems = list(verify(rep, g).lines())
    if strict:
        problems += is_strict(rep).lines()
    for c in cons:
        if c.kind == "fixed_box" and rep.boxes[c.vertices[0]] != c.box:
            problems.append(f"box of {c.vertices[0]} moved")
        elif c.kind == "axis_end_at" and rep.boxes[c.vertices[0]][c.axis].hi != c.value:
            problems.append(f"{c.vertices[0]} does not end at {c.value}")
        elif c.kind == "axis_start_at_or_after":
            problems += [f"{v} starts too early" for v in c.vertices if rep.boxes[v][c.axis].lo < c.value]
        elif c.kind == "contained_in":
            for v in c.vertices:
                if not all(c.box[i].contains(rep.boxes[v][i]) for i in range(rep.d)):
                    problems.append(f"{v} leaves its container")
        elif c.kind == "require_corner" and find_empty_inner_corner(rep, c.vertices) is None:
            problems.append(f"{c.vertices} has no empty inner corner")
    if problems:  # pragma: no cover - the search only returns checked witnesses
        raise AssertionError("; ".join(problems))


# ---------------------------------------------------------------------------
# strict 2-box representations of plane graphs
# ---------------------------------------------------------------------------


class OracleFailure(RuntimeError):
    """A constructive oracle cannot handle this input."""


def _plane_checks(e: EmbeddedGraph) -> None:
    if e.n == 0 or len(e.graph.components()) != 1:
        raise ValueError("expected a connected plane graph")
    if euler_genus(e) != 0:
        raise ValueError("expected a plane embedding (Euler genus 0)")
    faces = facial_triangles(e)
    bad = [t for t in triangles(e.graph) if t not in faces]
    if bad:
        raise ValueError(f"non-facial triangles: {bad[:3]}")


def is_triangulation(e: EmbeddedGraph) -> bool:
    return all(len(f) == 3 for f in e.faces)


def triangulation_completion(e: EmbeddedGraph) -> tuple[EmbeddedGraph, list[tuple[int, ...]]]:
    """Triangulate every non-triangular face by an inserted cycle.

    Each face with boundary walk ``w_0..w_{k-1}`` receives a new cycle
    ``c_0..c_{k-1}``; ``c_0`` is joined to every other ``c_j`` and ``c_i``
    to ``w_i`` and ``w_{i+1}``.  Returns the completed embedding (original
    vertices keep their ids) and, per processed face, the ids of its new
    cycle.  The result is audited: simple, a triangulation, and free of
    separating triangles.
    """
    _plane_checks(e)
    if is_triangulation(e):
        raise ValueError("input is already a triangulation")
    edges = set(e.graph.edges)
    n = e.n
    added: list[tuple[int, ...]] = []
    for f in e.faces:
        if len(f) == 3:
            continue
        walk = [a for a, _ in f]
        k = len(walk)
        if len(set(walk)) != k:
            raise OracleFailure(f"face {walk} is not bounded by a cycle")
        cyc = tuple(range(n, n + k))
        n += k
        for i in range(k):
            edges.add((cyc[i], cyc[(i + 1) % k]) if i + 1 < k else (cyc[0], cyc[k - 1]))
            edges.add((walk[i], cyc[i]))
            edges.add((walk[(i + 1) % k], cyc[i]))
        for j in range(2, k - 1):
            edges.add((cyc[0], cyc[j]))
        added.append(cyc)
    h = planar_embedding(Graph.from_edges(n, edges))
    problems = []
    if h.graph.m != 3 * n - 6 or not is_triangulation(h):
        problems.append("not a triangulation")
    if len(triangles(h.graph)) != len(h.faces):
        problems.append("separating triangle")
    if n < 5:
        problems.append("fewer than 5 vertices")
    if problems:
        raise OracleFailure("completion audit failed: " + ", ".join(problems))
    return h, added


def strict2_exists(e: EmbeddedGraph) -> bool:
    """Whether the completion argument yields a strict 2-box representation.

    Requires every triangle to be facial; ``False`` means the input is a
    triangulation and the argument does not apply (it is not a proof that
    no strict representation exists).
    """
    _plane_checks(e)
    return not is_triangulation(e)


def _outer_walk(rot: dict[int, list[int]], dart: tuple[int, int]) -> list[int]:
    pos = {v: {w: i for i, w in enumerate(r)} for v, r in rot.items()}
    out = []
    a, b = dart
    start = dart
    while True:
        out.append(a)
        r = rot[b]
        a, b = b, r[(pos[b][a] - 1) % len(r)]
        if (a, b) == start:
            return out


def _check_rel(rot: dict[int, list[int]], inner: set[int], t1: list[tuple[int, int]], t2: list[tuple[int, int]]) -> None:
    """Local rule of a regular edge labeling around every inner vertex.

    Counter-clockwise the edges form four non-empty blocks: from the left,
    from below, to the right, to above.
    """
    lab = {}
    for u, v in t2:
        lab[(v, u)] = 0  # seen from v: u is on the left
        lab[(u, v)] = 2
    for u, v in t1:
        lab[(v, u)] = 1
        lab[(u, v)] = 3
    for v in inner:
        seq = [lab[(v, w)] for w in rot[v]]
        changes = sum(1 for i in range(len(seq)) if seq[i] != seq[i - 1])
        ok = changes == 4 and all((seq[i] - seq[i - 1]) % 4 in (0, 1) for i in range(len(seq)))
        if not ok:
            raise OracleFailure(f"labeling is not regular at {v}: {seq}")


def _rel_coordinates(rot: dict[int, list[int]], poles: dict[str, int]) -> dict[int, tuple[Fraction, Fraction, Fraction, Fraction]]:
    """Rectangular dual of a triangulated quadrangle via a regular edge labeling."""
    W, S, E, N = poles["W"], poles["S"], poles["E"], poles["N"]
    verts = set(rot)
    inner = verts - {W, S, E, N}
    # the face on the far side of W-S from the interior
    pos_w = rot[W].index(S)
    dart_out = (S, W) if rot[W][(pos_w + 1) % len(rot[W])] in inner else (W, S)

    # canonical ordering by peeling from N
    removed = [N, E]
    gone = {N, E}
    while len(removed) < len(verts) - 2:
        live = {v: [w for w in rot[v] if w not in gone] for v in verts if v not in gone}
        walk = _outer_walk(live, dart_out)
        i = walk.index(W)
        walk = walk[i:] + walk[:i]
        if walk[1] == S:
            walk = [walk[0]] + walk[1:][::-1]
        contour = walk  # W ... S
        on = {v: j for j, v in enumerate(contour)}
        pick = None
        for j in range(1, len(contour) - 1):
            v = contour[j]
            nb = set(live[v])
            if any(w in on and abs(on[w] - j) > 1 for w in nb):
                continue
            if sum(1 for w in rot[v] if w in gone) < 2:
                continue
            pick = v
            break
        if pick is None:
            raise OracleFailure("no canonical ordering: input is not 4-connected")
        removed.append(pick)
        gone.add(pick)
    order = [W, S] + removed[::-1]
    idx = {v: i for i, v in enumerate(order)}

    t1: list[tuple[int, int]] = []  # u below v
    t2: list[tuple[int, int]] = []  # u left of v
    has_t1 = {v: False for v in verts}
    has_t2 = {v: False for v in verts}
    contour = [W, S]
    for v in order[2:]:
        lower = [u for u in rot[v] if idx[u] < idx[v]]
        pos = sorted(contour.index(u) for u in lower)
        p, q = pos[0], pos[-1]
        if pos != list(range(p, q + 1)) or p == q:
            raise OracleFailure("lower neighbours are not a contour interval")
        seg = contour[p:q + 1]
        if v == N:
            split = 0
        elif v == E:
            split = len(seg) - 2
        else:
            must2 = [i for i in range(1, len(seg) - 1) if not has_t2[seg[i]]]
            must1 = [i for i in range(1, len(seg) - 1) if not has_t1[seg[i]]]
            split = max(must2, default=0)
            if must1 and min(must1) <= split:
                raise OracleFailure("regular edge labeling does not exist")
        for i, u in enumerate(seg):
            if {u, v} in ({W, N}, {E, S}, {E, N}):
                continue
            if v == N or (i > split and v != E):
                t1.append((u, v))
                has_t1[u] = True
            else:
                t2.append((u, v))
                has_t2[u] = True
        contour = contour[:p + 1] + [v] + contour[q:]

    _check_rel(rot, inner, t1, t2)

    def solve(glue: list[tuple[int, int]], across: list[tuple[int, int]]) -> dict[int, tuple[int, int]]:
        """Coordinates along one axis.

        ``glue`` edges share a line (high side of u = low side of v);
        ``across`` edges need a contact of positive length.
        """
        parent: dict[tuple[str, int], tuple[str, int]] = {}

        def find(x: tuple[str, int]) -> tuple[str, int]:
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, w in glue:
            a, b = find(("hi", u)), find(("lo", w))
            if a != b:
                parent[a] = b
        succ: dict[object, set[object]] = {}
        indeg: dict[object, int] = {}

        def less(a: tuple[str, int], b: tuple[str, int]) -> None:
            a, b = find(a), find(b)
            indeg.setdefault(a, 0)
            if b not in succ.setdefault(a, set()):
                succ[a].add(b)
                indeg[b] = indeg.get(b, 0) + 1

        for v in inner:
            less(("lo", v), ("hi", v))
        for u, w in across:
            if u in inner and w in inner:
                less(("lo", u), ("hi", w))
                less(("lo", w), ("hi", u))
        level = {x: 0 for x in indeg}
        queue = [x for x, dgr in indeg.items() if dgr == 0]
        seen = 0
        while queue:
            x = queue.pop()
            seen += 1
            for y in succ.get(x, ()):
                level[y] = max(level[y], level[x] + 1)
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
        if seen != len(level):
            raise OracleFailure("labeling produced a cyclic coordinate system")
        return {v: (level[find(("lo", v))], level[find(("hi", v))]) for v in inner}

    xs = solve(t2, t1)
    ys = solve(t1, t2)
    return {v: (Fraction(xs[v][0]), Fraction(xs[v][1]), Fraction(ys[v][0]), Fraction(ys[v][1])) for v in inner}


def simple_faces(e: EmbeddedGraph) -> EmbeddedGraph:
    """Add a ring of new vertices inside every face whose walk repeats a vertex.

    Walk position ``i`` gets a new vertex ``y_i`` joined to ``w_i`` and to
    ``y_{i-1}, y_{i+1}``.  The new faces are the quadrilaterals
    ``w_i w_{i+1} y_{i+1} y_i`` and the ring itself, so every face becomes a
    cycle, no triangle is created and no edge joins two old vertices.
    """
    rot = [list(r) for r in e.rotation]
    grew = 0
    for f in e.faces:
        walk = [a for a, _ in f]
        k = len(walk)
        if len(set(walk)) == k:
            continue
        ring = list(range(len(rot), len(rot) + k))
        for i in range(k):
            b, c = walk[i], walk[(i + 1) % k]
            # the face corner at b lies just after c in b's rotation
            rot[b].insert(rot[b].index(c) + 1, ring[i])
        for i in range(k):
            rot.append([ring[i - 1], walk[i], ring[(i + 1) % k]])
        grew += 1
    if not grew:
        return e
    out = EmbeddedGraph.from_rotation(rot)
    if _genus_of(out) != _genus_of(e):
        raise OracleFailure("face ring insertion changed the surface")  # pragma: no cover
    return out


def _genus_of(e: EmbeddedGraph) -> int:
    return 2 - e.n + e.graph.m - len(e.faces)


def _strict_two_box_connected(e: EmbeddedGraph) -> dict[int, Box]:
    h, added = triangulation_completion(simple_faces(e))
    x = added[0][0]
    link = list(h.rotation[x])
    k = len(link)
    # four non-empty arcs around the link, as even as possible
    cuts = [round(i * k / 4) for i in range(5)]
    arcs = [link[cuts[i]:cuts[i + 1]] for i in range(4)]
    nh = h.n
    poles = list(range(nh, nh + 4))
    top = nh + 4
    edges = {p for p in h.graph.edges if x not in p}
    for j in range(4):
        for v in arcs[j] + [arcs[(j + 1) % 4][0]]:
            edges.add((v, poles[j]))
        edges.add((poles[j], poles[(j + 1) % 4]))
        edges.add((poles[j], top))
    full = planar_embedding(Graph.from_edges(nh + 5, edges))
    rot = {v: [w for w in full.rotation[v] if w != top] for v in range(nh + 4) if v != x}
    W = poles[0]
    a, b = [p for p in rot[W] if p in poles]
    r = rot[W]
    S = a if r[(r.index(a) + 1) % len(r)] not in poles else b
    N = b if S == a else a
    E = next(p for p in poles if p not in (W, S, N))
    rects = _rel_coordinates(rot, {"W": W, "S": S, "E": E, "N": N})
    return {v: Box([Interval(x0, x1), Interval(y0, y1)]) for v, (x0, x1, y0, y1) in rects.items() if v < e.n}


def strict_two_box(e: EmbeddedGraph, budget: Budget | int | None = None) -> BoxRepresentation:
    """Strict 2-box representation of a plane graph whose triangles are facial.

    Connected components are handled separately and placed side by side.
    Components that are not triangulations and whose faces are bounded by
    cycles go through completion and a rectangular dual; single vertices
    and edges are placed directly; anything else falls back to exact search
    (components of at most six vertices).
    """
    g = e.graph
    boxes: dict[int, Box] = {}
    offset = Fraction(0)
    for comp in g.components():
        sub, idmap = e.restrict(comp)
        back = {i: v for v, i in idmap.items()}
        if sub.n == 1:
            local = {0: Box([Interval(0, 1), Interval(0, 1)])}
        elif sub.n == 2:
            local = {0: Box([Interval(0, 1), Interval(0, 1)]), 1: Box([Interval(1, 2), Interval(0, 1)])}
        elif sub.n >= 4 and is_triangulation(sub) and euler_genus(sub) == 0:
            # a triangulation on >= 4 vertices is never a proper induced
            # subgraph of a 4-connected triangulation
            raise OracleFailure(f"component of {sub.n} vertices is a plane triangulation")
        else:
            try:
                local = _strict_two_box_connected(sub)
            except (OracleFailure, ValueError) as exc:
                if sub.n > 6:
                    raise OracleFailure(f"no strict 2-box route for a component of {sub.n} vertices: {exc}") from exc
                rep = exact_strict_rep(sub.graph, 2, [require_strict()], budget)
                if rep is None:
                    raise OracleFailure("component has no strict 2-box representation") from exc
                local = dict(rep.boxes)
        lo = min(b[0].lo for b in local.values())
        for i, b in local.items():
            boxes[back[i]] = Box([b[0].shift(offset - lo), b[1]])
        offset += max(b[0].hi for b in local.values()) - lo + 1
    rep = BoxRepresentation(2, boxes)
    problems = verify(rep, g).lines() + is_strict(rep).lines()
    if problems:
        raise OracleFailure("strict 2-box audit failed: " + "; ".join(problems[:5]))
    return rep
