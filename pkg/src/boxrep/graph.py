"""Simple undirected graphs and the combinatorial primitives built on them."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ._accel import kernels

__all__ = [
    "Graph",
    "ReductionStep",
    "induced_subgraph",
    "girth",
    "is_interval_graph",
    "interval_model_from_cliques",
    "find_reduction",
    "is_p_path_degenerate",
    "parse_graph",
    "format_graph",
    "read_graph",
    "write_graph",
]


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[tuple[int, int]]
    _adj: tuple[frozenset[int], ...] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        adj: list[set[int]] = [set() for _ in range(self.n)]
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} references a vertex outside 0..{self.n - 1}")
            clean.add(_norm(u, v))
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(clean))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> Graph:
        return cls(n, frozenset(_norm(*e) for e in edges))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_edges(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if v not in self._adj[u]
        ]

    def adjacency_masks(self) -> list[int]:
        return [sum(1 << w for w in self._adj[v]) for v in range(self.n)]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                v = stack.pop()
                for w in self._adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def bfs_distances(self, sources: Iterable[int], avoid: Iterable[int] = ()) -> list[float]:
        """Multi-source BFS; ``avoid`` vertices are never entered."""
        banned = set(avoid)
        dist = [math.inf] * self.n
        q: deque[int] = deque()
        for s in sources:
            if s not in banned and dist[s] != 0:
                dist[s] = 0
                q.append(s)
        while q:
            v = q.popleft()
            for w in self._adj[v]:
                if w not in banned and dist[w] == math.inf:
                    dist[w] = dist[v] + 1
                    q.append(w)
        return dist


@dataclass(frozen=True)
class ReductionStep:
    """One step of a path-degeneracy reduction.

    ``kind`` is ``"pendant"`` (``vertices`` holds the removed vertex, whose
    degree was at most one) or ``"five_path"`` (``vertices`` holds the removed
    internal vertices in path order and ``anchors`` the two end vertices,
    which may coincide).
    """

    kind: str
    vertices: tuple[int, ...]
    anchors: tuple[int, ...] = ()


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s``, re-indexed in increasing id order.

    Returns the graph and the map from old ids to new ids.
    """
    keep = sorted(set(s))
    for v in keep:
        if not 0 <= v < g.n:
            raise ValueError(f"unknown vertex {v}")
    idmap = {v: i for i, v in enumerate(keep)}
    edges = [
        (idmap[u], idmap[v]) for (u, v) in g.edges if u in idmap and v in idmap
    ]
    return Graph.from_edges(len(keep), edges), idmap


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        q = deque([root])
        while q:
            v = q.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for w in g.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    q.append(w)
                elif parent[v] != w:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


# ---------------------------------------------------------------------------
# interval graphs
# ---------------------------------------------------------------------------


def _mcs_order(g: Graph) -> list[int]:
    weight = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in range(g.n) if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.neighbors(v):
            if not done[w]:
                weight[w] += 1
    return order


def _maximal_cliques_chordal(g: Graph) -> list[frozenset[int]]:
    order = _mcs_order(g)
    peo = order[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    cands = [
        frozenset({v} | {w for w in g.neighbors(v) if pos[w] > pos[v]}) for v in peo
    ]
    cands = sorted(set(cands), key=lambda c: (-len(c), sorted(c)))
    out: list[frozenset[int]] = []
    for c in cands:
        if not any(c <= d for d in out):
            out.append(c)
    return out


def _clique_path(cliques: list[frozenset[int]]) -> list[int] | None:
    """Order the cliques so every vertex occupies a consecutive run."""
    k = len(cliques)
    if k == 0:
        return []
    failed: set[tuple[int, int]] = set()

    def extend(used: int, last: int, seq: list[int], covered: frozenset[int]) -> bool:
        if used == (1 << k) - 1:
            return True
        if (used, last) in failed:
            return False
        closed = covered - cliques[last]
        for j in range(k):
            if used >> j & 1 or cliques[j] & closed:
                continue
            seq.append(j)
            if extend(used | 1 << j, j, seq, covered | cliques[j]):
                return True
            seq.pop()
        failed.add((used, last))
        return False

    for start in range(k):
        seq = [start]
        if extend(1 << start, start, seq, cliques[start]):
            return seq
    return None


def interval_model_from_cliques(
    n: int, cliques: list[frozenset[int]]
) -> list[tuple[int, int]]:
    """Distinct integer endpoints in ``[0, 2n)`` from a consecutive clique order."""
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    for i, c in enumerate(cliques):
        for v in c:
            first.setdefault(v, i)
            last[v] = i
    events: list[tuple[int, int, int]] = []
    for v in range(n):
        events.append((first[v], 0, v))
        events.append((last[v], 1, v))
    events.sort()
    lo = [0] * n
    hi = [0] * n
    for t, (_, kind, v) in enumerate(events):
        if kind == 0:
            lo[v] = t
        else:
            hi[v] = t
    return list(zip(lo, hi))


def is_interval_graph(g: Graph) -> tuple[bool, list[tuple[int, int]] | None]:
    """Recognise interval graphs and return a model when there is one.

    The decision is the chordal + asteroidal-triple-free test; the model is
    read off a consecutive ordering of the maximal cliques.
    """
    if g.n == 0:
        return True, []
    if g.n <= 64:
        ok = kernels.is_interval_mask(g.adjacency_masks())
    else:
        from ._kernels_py import has_asteroidal_triple_mask, is_chordal_mask

        masks = g.adjacency_masks()
        ok = is_chordal_mask(masks) and not has_asteroidal_triple_mask(masks)
    if not ok:
        return False, None
    cliques = _maximal_cliques_chordal(g)
    seq = _clique_path(cliques)
    if seq is None:  # pragma: no cover - would contradict Lekkerkerker-Boland
        raise AssertionError("AT-free chordal graph without a clique path")
    return True, interval_model_from_cliques(g.n, [cliques[i] for i in seq])


# ---------------------------------------------------------------------------
# path degeneracy
# ---------------------------------------------------------------------------


def _find_reduction_adj(adj: Mapping[int, set[int]], p: int, paths_first: bool = False) -> ReductionStep | None:
    if not paths_first:
        for v in sorted(adj):
            if len(adj[v]) <= 1:
                return ReductionStep("pendant", (v,))
    deg2 = {v for v in adj if len(adj[v]) == 2}
    best: tuple[int, ...] | None = None
    for v1 in sorted(deg2):
        for v0 in sorted(adj[v1]):
            walk = [v0, v1]
            ok = True
            while len(walk) < p + 1:
                cur, prev = walk[-1], walk[-2]
                if cur not in deg2:
                    ok = False
                    break
                (nxt,) = adj[cur] - {prev}
                walk.append(nxt)
            if not ok:
                continue
            inner = walk[1:p + 1]
            if any(x not in deg2 for x in inner) or len(set(inner)) != p:
                continue
            (end,) = adj[walk[p]] - {walk[p - 1]}
            walk.append(end)
            if walk[0] in inner or end in inner:
                continue
            cand = tuple(walk)
            if best is None or cand < best:
                best = cand
    if best is None:
        if paths_first:
            return _find_reduction_adj(adj, p)
        return None
    kind = "five_path" if p == 5 else f"{p}_path"
    return ReductionStep(kind, best[1:-1], (best[0], best[-1]))


def find_reduction(g: Graph, p: int) -> ReductionStep | None:
    """A pendant step, else the lexicographically least degree-2 path step."""
    if p < 1:
        raise ValueError("p must be at least 1")
    return _find_reduction_adj({v: set(g.neighbors(v)) for v in g.vertices()}, p)


def is_p_path_degenerate(g: Graph, p: int, paths_first: bool = False) -> tuple[bool, list[ReductionStep]]:
    """Greedily apply :func:`find_reduction` until the graph is empty.

    With ``paths_first`` a path step is preferred whenever one exists.

    Greedy removal is complete: every reduction deletes vertices, and a
    subgraph of a p-path-degenerate graph is p-path-degenerate, so a stuck
    state certifies a bad subgraph.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    steps: list[ReductionStep] = []
    while adj:
        step = _find_reduction_adj(adj, p, paths_first)
        if step is None:
            return False, steps
        for v in step.vertices:
            for w in adj.pop(v):
                if w in adj:
                    adj[w].discard(v)
        steps.append(step)
    return True, steps


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    rows = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    numbered = [(i + 1, r) for i, r in enumerate(rows) if r]
    if not numbered:
        raise ValueError("line 1: empty graph file")
    lineno, head = numbered[0]
    try:
        n, m = (int(x) for x in head.split())
    except ValueError:
        raise ValueError(f"line {lineno}: expected 'n m'") from None
    body = numbered[1:]
    if len(body) != m:
        raise ValueError(f"line {lineno}: header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, row in body:
        parts = row.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer vertex id") from None
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise ValueError(f"line {lineno}: bad edge {u} {v}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def read_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


def write_graph(g: Graph, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_graph(g))
