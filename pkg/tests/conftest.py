from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from boxrep.boxmodel import Box, BoxRepresentation, Interval
from boxrep.graph import Graph

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# acceptance criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):  # noqa: ARG001
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


# ---------------------------------------------------------------------------
# independent helpers (deliberately not using boxrep's own predicates)
# ---------------------------------------------------------------------------


def closed_meet(a: Box, b: Box) -> bool:
    return all(max(x.lo, y.lo) <= min(x.hi, y.hi) for x, y in zip(a.intervals, b.intervals))


def open_meet(a: Box, b: Box) -> bool:
    return all(max(x.lo, y.lo) < min(x.hi, y.hi) for x, y in zip(a.intervals, b.intervals))


def edge_set_of_boxes(boxes: dict[int, Box]) -> set[tuple[int, int]]:
    vs = sorted(boxes)
    return {(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :] if closed_meet(boxes[u], boxes[v])}


def edge_set(g: Graph) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u, v in g.sorted_edges()}


def point_in_box(p, b: Box) -> bool:
    return all(iv.lo <= x <= iv.hi for x, iv in zip(p, b.intervals))


def point_in_open_box(p, b: Box) -> bool:
    return all(iv.lo < x < iv.hi for x, iv in zip(p, b.intervals))


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def box(*pairs) -> Box:
    return Box([Interval(Fraction(a), Fraction(b)) for a, b in pairs])


def witness_audit(rep: BoxRepresentation, t, wit) -> list[str]:
    """Point-in-box audit of an empty inner corner witness."""
    problems = []
    c, cbox = wit.corner, wit.box
    if any(x not in (iv.lo, iv.hi) for x, iv in zip(c, cbox.intervals)):
        problems.append("corner is not a vertex of C")
    if any(iv.hi <= iv.lo for iv in cbox.intervals):
        problems.append("C is degenerate")
    for v in t:
        if not point_in_box(c, rep.boxes[v]):
            problems.append(f"corner outside B_{v}")
    for v, b in rep.boxes.items():
        if open_meet(cbox, b):
            problems.append(f"C meets the interior of B_{v}")
    axes = sorted(wit.faces[v] for v in t)
    if axes != [0, 1, 2]:
        problems.append("faces are not pairwise transversal")
    fracs = (Fraction(0), Fraction(1, 2), Fraction(1))
    for f in itertools.product(fracs, repeat=3):
        p = tuple(iv.lo + x * (iv.hi - iv.lo) for x, iv in zip(f, cbox.intervals))
        for v in t:
            on_face = p[wit.faces[v]] == c[wit.faces[v]]
            if point_in_box(p, rep.boxes[v]) != on_face:
                problems.append(f"C and B_{v} meet outside f_{v} or miss part of it at {p}")
    return problems


@pytest.fixture
def rng() -> random.Random:
    return random.Random(12345)
