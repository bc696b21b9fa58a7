"""Box representations, interval layouts and their verification.

All coordinates are :class:`fractions.Fraction`; boxes are closed, so two
boxes that merely touch intersect.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .graph import Graph

__all__ = [
    "Interval",
    "Box",
    "BoxRepresentation",
    "Layout",
    "Segment",
    "SegmentRepresentation",
    "Violation",
    "VerificationReport",
    "CornerWitness",
    "LayoutError",
    "intersection_graph",
    "verify",
    "is_strict",
    "strictly_overlapping",
    "find_empty_inner_corner",
    "big_box_extension",
    "bounding_box",
    "perturb_layout",
    "concat_audit",
    "concat_layouts",
    "vertex_split_gadget",
    "pair_split_gadget",
    "segment_graph",
    "verify_segment_rep",
    "rep_to_json",
    "rep_from_json",
    "segments_to_json",
    "segments_from_json",
]

Number = int | Fraction | str


def _q(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo: Number, hi: Number) -> None:
        lo, hi = _q(lo), _q(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def intersects(self, other: Interval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def meet(self, other: Interval) -> Interval | None:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def contains(self, other: Interval) -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def shift(self, t: Number) -> Interval:
        t = _q(t)
        return Interval(self.lo + t, self.hi + t)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


Layout = dict[int, Interval]


@dataclass(frozen=True)
class Box:
    intervals: tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Interval | tuple[Number, Number]]) -> None:
        ivs = tuple(i if isinstance(i, Interval) else Interval(*i) for i in intervals)
        if not ivs:
            raise ValueError("a box needs at least one axis")
        object.__setattr__(self, "intervals", ivs)

    @property
    def d(self) -> int:
        return len(self.intervals)

    @property
    def nondegenerate(self) -> bool:
        return all(not i.degenerate for i in self.intervals)

    def intersects(self, other: Box) -> bool:
        return all(a.intersects(b) for a, b in zip(self.intervals, other.intervals))

    def meet(self, other: Box) -> Box | None:
        parts = []
        for a, b in zip(self.intervals, other.intervals):
            m = a.meet(b)
            if m is None:
                return None
            parts.append(m)
        return Box(parts)

    def contains_point(self, p: Sequence[Fraction]) -> bool:
        return all(i.lo <= x <= i.hi for i, x in zip(self.intervals, p))

    def __getitem__(self, axis: int) -> Interval:
        return self.intervals[axis]

    def __repr__(self) -> str:
        return "x".join(repr(i) for i in self.intervals)


@dataclass(frozen=True)
class BoxRepresentation:
    """One ``d``-box per vertex; axis ``i`` read alone is an interval layout."""

    d: int
    boxes: Mapping[int, Box]
    metadata: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        for v, b in self.boxes.items():
            if b.d != self.d:
                raise ValueError(f"box of vertex {v} has dimension {b.d}, expected {self.d}")
        object.__setattr__(self, "boxes", dict(sorted(self.boxes.items())))

    @classmethod
    def from_layouts(cls, layouts: Sequence[Mapping[int, Interval]], **meta: object) -> BoxRepresentation:
        if not layouts:
            raise ValueError("need at least one layout")
        keys = set(layouts[0])
        for lay in layouts[1:]:
            if set(lay) != keys:
                raise ValueError("layouts disagree on the vertex set")
        boxes = {v: Box([lay[v] for lay in layouts]) for v in keys}
        return cls(len(layouts), boxes, dict(meta))

    def layout(self, axis: int) -> Layout:
        return {v: b[axis] for v, b in self.boxes.items()}

    def layouts(self) -> list[Layout]:
        return [self.layout(i) for i in range(self.d)]

    def vertices(self) -> list[int]:
        return list(self.boxes)

    def restrict(self, vs: Iterable[int]) -> BoxRepresentation:
        keep = set(vs)
        return BoxRepresentation(self.d, {v: b for v, b in self.boxes.items() if v in keep})

    def with_metadata(self, **meta: object) -> BoxRepresentation:
        merged = dict(self.metadata)
        merged.update(meta)
        return BoxRepresentation(self.d, self.boxes, merged)


@dataclass(frozen=True)
class Violation:
    kind: str
    vertices: tuple[int, ...]
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def lines(self) -> list[str]:
        return [
            f"{v.kind}\t{' '.join(map(str, v.vertices))}\t{v.detail}" for v in self.violations
        ]


class LayoutError(ValueError):
    """A layout operation was called outside its preconditions."""

    def __init__(self, report: VerificationReport) -> None:
        self.report = report
        super().__init__("; ".join(report.lines()) or "layout precondition failed")


# ---------------------------------------------------------------------------
# graphs of representations
# ---------------------------------------------------------------------------


def _check_keys(keys: Iterable[int]) -> int:
    ks = sorted(keys)
    if ks != list(range(len(ks))):
        raise ValueError("representation vertices must be 0..n-1")
    return len(ks)


def intersection_graph(r: BoxRepresentation) -> Graph:
    n = _check_keys(r.boxes)
    bx = r.boxes
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if bx[u].intersects(bx[v])]
    return Graph.from_edges(n, edges)


def verify(r: BoxRepresentation, g: Graph) -> VerificationReport:
    """Compare the intersection graph of ``r`` with ``g`` pair by pair."""
    if sorted(r.boxes) != list(range(g.n)):
        raise ValueError("vertex sets of representation and graph differ")
    out = []
    bx = r.boxes
    for u in range(g.n):
        for v in range(u + 1, g.n):
            meet = bx[u].intersects(bx[v])
            want = g.has_edge(u, v)
            if meet and not want:
                out.append(Violation("spurious_edge", (u, v), "boxes intersect on every axis"))
            elif want and not meet:
                axes = [
                    i for i in range(r.d) if not bx[u][i].intersects(bx[v][i])
                ]
                out.append(Violation("missing_edge", (u, v), f"disjoint on axes {axes}"))
    return VerificationReport(tuple(out))


def is_strict(r: BoxRepresentation) -> VerificationReport:
    """Strictness: non-degenerate boxes, disjoint interiors, facet contacts."""
    out = []
    items = list(r.boxes.items())
    for v, b in items:
        if not b.nondegenerate:
            out.append(Violation("degenerate_box", (v,), repr(b)))
    for (u, bu), (v, bv) in itertools.combinations(items, 2):
        m = bu.meet(bv)
        if m is None:
            continue
        flat = sum(1 for i in m.intervals if i.degenerate)
        if flat == 0:
            out.append(Violation("interior_overlap", (u, v), repr(m)))
        elif flat > 1:
            out.append(Violation("low_dimensional_contact", (u, v), repr(m)))
    return VerificationReport(tuple(out))


def strictly_overlapping(i1: Interval, i2: Interval, i3: Interval) -> bool:
    trio = (i1, i2, i3)
    for a, b in itertools.permutations(trio, 2):
        if a.contains(b):
            return False
    lo = max(i.lo for i in trio)
    hi = min(i.hi for i in trio)
    return lo < hi


def bounding_box(boxes: Iterable[Box]) -> Box:
    bs = list(boxes)
    if not bs:
        raise ValueError("no boxes")
    d = bs[0].d
    return Box(
        [Interval(min(b[i].lo for b in bs), max(b[i].hi for b in bs)) for i in range(d)]
    )


# ---------------------------------------------------------------------------
# empty inner corners
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CornerWitness:
    """A corner point of a triangle plus a small box ``C`` exposing it.

    ``faces`` maps each triangle vertex to the axis normal to the face of
    ``C`` it touches; ``clean`` says that no other box meets ``C`` at all.
    """

    corner: tuple[Fraction, ...]
    box: Box
    faces: Mapping[int, int]
    clean: bool


def _corner_scale(r: BoxRepresentation, corner: Sequence[Fraction], cap: Fraction) -> Fraction:
    gap = cap
    for b in r.boxes.values():
        for i, x in enumerate(corner):
            for e in (b[i].lo, b[i].hi):
                diff = abs(e - x)
                if diff and diff < gap:
                    gap = diff
    return gap / 3


def _corner_check(
    r: BoxRepresentation, t: Sequence[int], c: Sequence[Fraction], sign: Sequence[int], size: Fraction
) -> CornerWitness | None:
    wb = Box(
        [Interval(x, x + s * size) if s > 0 else Interval(x + s * size, x) for x, s in zip(c, sign)]
    )
    faces: dict[int, int] = {}
    for v in t:
        m = r.boxes[v].meet(wb)
        if m is None:
            return None
        flat = [i for i in range(3) if m[i].degenerate]
        if len(flat) != 1:
            return None
        k = flat[0]
        if m[k].lo != c[k]:
            return None
        if any(m[i] != wb[i] for i in range(3) if i != k):
            return None
        faces[v] = k
    if len(set(faces.values())) != 3:
        return None
    clean = True
    for v, b in r.boxes.items():
        if v in t:
            continue
        m = b.meet(wb)
        if m is None:
            continue
        if all(not i.degenerate for i in m.intervals):
            return None  # interior overlap
        clean = False
    return CornerWitness(tuple(c), wb, faces, clean)


def find_empty_inner_corner(
    r: BoxRepresentation,
    t: Sequence[int],
    prefer: tuple[int, str] | None = None,
    cap: Number = Fraction(1, 4),
    require_clean: bool = False,
) -> CornerWitness | None:
    """Scan the corners of ``B_u ∩ B_v ∩ B_w`` for an empty inner corner.

    ``prefer=(axis, "max"|"min")`` orders the candidate corners by one
    coordinate; otherwise candidates are tried in lexicographic order.  The
    witness box has side at most ``cap`` and at most a third of the smallest
    non-zero distance from the corner to any box endpoint, so witnesses of
    different corners never meet.
    """
    if r.d != 3:
        raise ValueError("empty inner corners are defined for 3-box representations")
    u, v, w = t
    for a, b in ((u, v), (v, w), (u, w)):
        if not r.boxes[a].intersects(r.boxes[b]):
            raise ValueError(f"{t} is not a triangle of the representation")
    common = r.boxes[u].meet(r.boxes[v])
    common = common.meet(r.boxes[w]) if common is not None else None
    if common is None:
        raise ValueError(f"{t} has no common point")
    corners = sorted({tuple(p) for p in itertools.product(*[(i.lo, i.hi) for i in common.intervals])})
    if prefer is not None:
        axis, how = prefer
        corners.sort(key=lambda p: p[axis], reverse=(how == "max"))
    cap = _q(cap)
    fallback = None
    for c in corners:
        size = _corner_scale(r, c, cap)
        for sign in itertools.product((1, -1), repeat=3):
            wit = _corner_check(r, (u, v, w), c, sign, size)
            if wit is None:
                continue
            if wit.clean:
                return wit
            if fallback is None:
                fallback = wit
    return None if require_clean else fallback


# ---------------------------------------------------------------------------
# layout surgery
# ---------------------------------------------------------------------------


def big_box_extension(r: BoxRepresentation, s: Iterable[int], margin: Number = 1) -> BoxRepresentation:
    """Give every vertex of ``s`` one box strictly containing all of ``r``."""
    new = sorted(set(s))
    clash = set(new) & set(r.boxes)
    if clash:
        raise ValueError(f"vertices {sorted(clash)} already represented")
    if not new:
        return r
    mg = _q(margin)
    if r.boxes:
        bb = bounding_box(r.boxes.values())
        big = Box([Interval(i.lo - mg, i.hi + mg) for i in bb.intervals])
    else:
        big = Box([Interval(0, 1)] * r.d)
    boxes = dict(r.boxes)
    boxes.update({v: big for v in new})
    return BoxRepresentation(r.d, boxes, r.metadata)


def perturb_layout(layout: Mapping[int, Interval], eps: Mapping[int, Number]) -> Layout:
    """Shift the interval of each ``v`` in ``eps`` by ``eps[v]``."""
    vals = [_q(e) for e in eps.values()]
    if len(set(vals)) != len(vals):
        raise ValueError("perturbation values must be distinct")
    return {
        v: (iv.shift(eps[v]) if v in eps else iv) for v, iv in layout.items()
    }


def concat_audit(
    a: Mapping[int, Interval],
    b: Mapping[int, Interval],
    shared: Iterable[int],
    p: Number,
) -> VerificationReport:
    """Itemise the preconditions of :func:`concat_layouts`."""
    p = _q(p)
    sh = set(shared)
    out = []
    for v in sorted(sh):
        if v not in a or v not in b:
            out.append(Violation("shared_missing", (v,), "shared vertex absent from a layout"))
            continue
        if a[v].hi != p:
            out.append(Violation("shared_end", (v,), f"ends at {a[v].hi}, not {p}"))
        if b[v].lo != p:
            out.append(Violation("shared_start", (v,), f"starts at {b[v].lo}, not {p}"))
    for v in sorted(set(a) - sh):
        if v in b:
            out.append(Violation("both_sides", (v,), "non-shared vertex in both layouts"))
        elif a[v].hi >= p:
            out.append(Violation("left_overhang", (v,), f"ends at {a[v].hi} >= {p}"))
    for v in sorted(set(b) - sh - set(a)):
        if b[v].lo <= p:
            out.append(Violation("right_overhang", (v,), f"starts at {b[v].lo} <= {p}"))
    return VerificationReport(tuple(out))


def concat_layouts(
    a: Mapping[int, Interval],
    b: Mapping[int, Interval],
    shared: Iterable[int],
    p: Number,
) -> Layout:
    """Glue two layouts at ``p``; shared vertices get the union interval.

    Left-only intervals must end strictly before ``p`` and right-only ones
    start strictly after it, so the two sides never meet.
    """
    sh = set(shared)
    rep = concat_audit(a, b, sh, p)
    if not rep.ok:
        raise LayoutError(rep)
    out: Layout = {}
    for v, iv in a.items():
        out[v] = Interval(iv.lo, b[v].hi) if v in sh else iv
    for v, iv in b.items():
        if v not in sh:
            out[v] = iv
    return out


def vertex_split_gadget(universe: Iterable[int], x: int, nx: Iterable[int]) -> Layout:
    """Layout whose graph is complete except that ``x`` sees only ``nx``.

    Every interval other than ``x``'s keeps a gap of at least 3/4 to the
    interval of ``x`` when it is not supposed to meet it, and meets it with
    room to spare otherwise, so shifting the other intervals by less than 1/4
    keeps the graph and leaves no endpoint within 3/4 of ``x``.
    """
    uni = set(universe)
    nbr = set(nx)
    if x not in uni:
        raise ValueError("x must belong to the universe")
    if x in nbr or not nbr <= uni:
        raise ValueError("nx must be a subset of universe - {x}")
    out: Layout = {x: Interval(0, 1)}
    for v in uni - {x}:
        out[v] = Interval(-1, 4) if v in nbr else Interval(3, 5)
    return out


def pair_split_gadget(
    universe: Iterable[int], x: int, y: int, nx: Iterable[int], ny: Iterable[int]
) -> Layout:
    """Like :func:`vertex_split_gadget` for two non-adjacent vertices ``x, y``."""
    uni = set(universe)
    a, b = set(nx), set(ny)
    if x == y or x not in uni or y not in uni:
        raise ValueError("x, y must be distinct members of the universe")
    if x in a or y in b or y in a or x in b:
        raise ValueError("x and y must be non-adjacent and outside their own neighbourhoods")
    out: Layout = {x: Interval(0, 1), y: Interval(10, 11)}
    for v in uni - {x, y}:
        if v in a and v in b:
            out[v] = Interval(-1, 12)
        elif v in a:
            out[v] = Interval(-1, 6)
        elif v in b:
            out[v] = Interval(5, 12)
        else:
            out[v] = Interval(3, 8)
    return out


# ---------------------------------------------------------------------------
# segments
# ---------------------------------------------------------------------------

AXES = "xyz"


@dataclass(frozen=True)
class Segment:
    """Axis-parallel segment: ``span`` along ``axis``, fixed elsewhere.

    ``fixed`` lists the two other coordinates in increasing axis order.
    """

    axis: int
    fixed: tuple[Fraction, Fraction]
    span: Interval

    def __init__(self, axis: int, fixed: Sequence[Number], span: Interval) -> None:
        if axis not in (0, 1, 2):
            raise ValueError("axis must be 0, 1 or 2")
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "fixed", (_q(fixed[0]), _q(fixed[1])))
        object.__setattr__(self, "span", span)

    @classmethod
    def between(cls, p: Sequence[Fraction], q: Sequence[Fraction]) -> Segment:
        diff = [i for i in range(3) if p[i] != q[i]]
        if len(diff) != 1:
            raise ValueError(f"{p} and {q} do not span an axis-parallel segment")
        a = diff[0]
        others = [p[i] for i in range(3) if i != a]
        return cls(a, others, Interval(min(p[a], q[a]), max(p[a], q[a])))

    def coord(self, i: int) -> Interval:
        if i == self.axis:
            return self.span
        j = [k for k in range(3) if k != self.axis].index(i)
        return Interval(self.fixed[j], self.fixed[j])

    def to_box(self) -> Box:
        return Box([self.coord(i) for i in range(3)])

    def endpoints(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        lo = tuple(self.span.lo if i == self.axis else self.coord(i).lo for i in range(3))
        hi = tuple(self.span.hi if i == self.axis else self.coord(i).lo for i in range(3))
        return lo, hi

    def point_at(self, t: Fraction) -> tuple[Fraction, ...]:
        return tuple(t if i == self.axis else self.coord(i).lo for i in range(3))

    def line_key(self) -> tuple[int, Fraction, Fraction]:
        return (self.axis, *self.fixed)


@dataclass(frozen=True)
class SegmentRepresentation:
    segments: Mapping[int, Segment]
    metadata: Mapping[str, object] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", dict(sorted(self.segments.items())))

    def as_boxes(self) -> BoxRepresentation:
        return BoxRepresentation(3, {v: s.to_box() for v, s in self.segments.items()})


def segment_graph(s: SegmentRepresentation) -> Graph:
    return intersection_graph(s.as_boxes())


def verify_segment_rep(s: SegmentRepresentation, g: Graph) -> VerificationReport:
    """Graph equality plus the three 3-segment clauses."""
    if sorted(s.segments) != list(range(g.n)):
        raise ValueError("vertex sets of segment representation and graph differ")
    out = list(verify(s.as_boxes(), g).violations)
    items = list(s.segments.items())
    for v, seg in items:
        if seg.span.degenerate:
            out.append(Violation("degenerate_segment", (v,), repr(seg.span)))
    for (u, a), (v, b) in itertools.combinations(items, 2):
        if a.line_key() == b.line_key():
            out.append(Violation("collinear", (u, v), f"both on line {AXES[a.axis]}{a.fixed}"))
            continue
        m = a.to_box().meet(b.to_box())
        if m is None:
            continue
        if a.axis == b.axis:
            continue  # parallel, different lines: cannot meet
        pt = tuple(i.lo for i in m.intervals)
        end_a = pt[a.axis] in (a.span.lo, a.span.hi)
        end_b = pt[b.axis] in (b.span.lo, b.span.hi)
        if not (end_a or end_b):
            out.append(Violation("interior_crossing", (u, v), f"cross at {tuple(map(str, pt))}"))
    return VerificationReport(tuple(out))


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _iv_json(iv: Interval) -> list[int]:
    return [iv.lo.numerator, iv.lo.denominator, iv.hi.numerator, iv.hi.denominator]


def _iv_parse(row: Sequence[int]) -> Interval:
    if len(row) != 4 or not all(isinstance(x, int) for x in row):
        raise ValueError(f"bad interval record {row!r}")
    if row[1] <= 0 or row[3] <= 0:
        raise ValueError(f"non-positive denominator in {row!r}")
    return Interval(Fraction(row[0], row[1]), Fraction(row[2], row[3]))


def rep_to_json(r: BoxRepresentation) -> str:
    doc = {
        "d": r.d,
        "boxes": {str(v): [_iv_json(i) for i in b.intervals] for v, b in r.boxes.items()},
    }
    if r.metadata:
        doc["meta"] = {k: _jsonable(v) for k, v in sorted(r.metadata.items())}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _jsonable(x: object) -> object:
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    return x


def rep_from_json(text: str) -> BoxRepresentation:
    doc = json.loads(text)
    d = doc["d"]
    boxes = {}
    for k, rows in doc["boxes"].items():
        if len(rows) != d:
            raise ValueError(f"box {k} has {len(rows)} intervals, expected {d}")
        boxes[int(k)] = Box([_iv_parse(r) for r in rows])
    return BoxRepresentation(d, boxes, doc.get("meta", {}))


def segments_to_json(s: SegmentRepresentation) -> str:
    doc = {
        "segments": {
            str(v): {
                "axis": AXES[seg.axis],
                "fixed": [[f.numerator, f.denominator] for f in seg.fixed],
                "span": _iv_json(seg.span),
            }
            for v, seg in s.segments.items()
        }
    }
    if s.metadata:
        doc["meta"] = {k: _jsonable(v) for k, v in sorted(s.metadata.items())}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def segments_from_json(text: str) -> SegmentRepresentation:
    doc = json.loads(text)
    segs = {}
    for k, rec in doc["segments"].items():
        fixed = [Fraction(a, b) for a, b in rec["fixed"]]
        segs[int(k)] = Segment(AXES.index(rec["axis"]), fixed, _iv_parse(rec["span"]))
    return SegmentRepresentation(segs, doc.get("meta", {}))
