"""Pure-Python implementations of the hot search kernels.

These mirror ``_kernels.pyx`` one for one.  Graphs are passed as lists of
adjacency bitmasks (bit ``j`` of ``adj[i]`` set iff ``ij`` is an edge), which
limits the kernels to 64 vertices; every caller works far below that.
"""

from __future__ import annotations

from typing import Sequence


def is_chordal_mask(adj: Sequence[int]) -> bool:
    """Maximum cardinality search followed by a perfect-elimination check."""
    n = len(adj)
    if n <= 3:
        return True
    weight = [0] * n
    numbered = 0
    order = []
    for _ in range(n):
        best = -1
        bw = -1
        for v in range(n):
            if not numbered >> v & 1 and weight[v] > bw:
                best, bw = v, weight[v]
        order.append(best)
        numbered |= 1 << best
        nb = adj[best] & ~numbered
        while nb:
            low = nb & -nb
            weight[low.bit_length() - 1] += 1
            nb ^= low
    # MCS visits vertices in reverse elimination order: the earlier-visited
    # neighbours of each vertex must form a clique.
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    seen = 0
    for v in order:
        earlier = adj[v] & seen
        if earlier:
            # parent = latest visited earlier neighbour
            parent = -1
            pp = -1
            rest = earlier
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if pos[u] > pp:
                    parent, pp = u, pos[u]
                rest ^= low
            others = earlier & ~(1 << parent)
            if others & ~adj[parent]:
                return False
        seen |= 1 << v
    return True


def _component_labels(adj: Sequence[int], alive: int) -> list[int]:
    n = len(adj)
    label = [-1] * n
    comp = 0
    rest = alive
    while rest:
        low = rest & -rest
        frontier = low
        reached = low
        while frontier:
            nxt = 0
            f = frontier
            while f:
                lb = f & -f
                nxt |= adj[lb.bit_length() - 1]
                f ^= lb
            nxt &= alive & ~reached
            reached |= nxt
            frontier = nxt
        r = reached
        while r:
            lb = r & -r
            label[lb.bit_length() - 1] = comp
            r ^= lb
        comp += 1
        rest &= ~reached
    return label


def has_asteroidal_triple_mask(adj: Sequence[int]) -> bool:
    n = len(adj)
    if n < 6:
        # the smallest graphs with an asteroidal triple have six vertices
        return False
    full = (1 << n) - 1
    labels = [
        _component_labels(adj, full & ~(adj[x] | (1 << x))) for x in range(n)
    ]
    for a in range(n):
        na = adj[a]
        for b in range(a + 1, n):
            if na >> b & 1:
                continue
            nab = na | adj[b]
            for c in range(b + 1, n):
                if nab >> c & 1:
                    continue
                la, lb, lc = labels[a], labels[b], labels[c]
                if (
                    la[b] == la[c] != -1
                    and lb[a] == lb[c] != -1
                    and lc[a] == lc[b] != -1
                ):
                    return True
    return False


def is_interval_mask(adj: Sequence[int]) -> bool:
    """Lekkerkerker-Boland: interval iff chordal and asteroidal-triple free."""
    return is_chordal_mask(adj) and not has_asteroidal_triple_mask(adj)


def strict_pair_ok(
    lo_a: Sequence[int],
    hi_a: Sequence[int],
    lo_b: Sequence[int],
    hi_b: Sequence[int],
    adjacent: bool,
    strict: bool,
) -> bool:
    """Check one pair of integer boxes against the wanted relation.

    Non-strict mode only asks for (non-)intersection.  Strict mode also
    forbids interior overlap and requires intersecting boxes to meet in a
    face of full codimension one.
    """
    d = len(lo_a)
    touching = 0
    for i in range(d):
        lo = lo_a[i] if lo_a[i] > lo_b[i] else lo_b[i]
        hi = hi_a[i] if hi_a[i] < hi_b[i] else hi_b[i]
        if lo > hi:
            return not adjacent
        if lo == hi:
            touching += 1
    if not adjacent:
        return False
    if strict:
        return touching == 1
    return True


def filter_boxes(
    cand_lo: Sequence[Sequence[int]],
    cand_hi: Sequence[Sequence[int]],
    placed_lo: Sequence[Sequence[int]],
    placed_hi: Sequence[Sequence[int]],
    wanted: Sequence[bool],
    strict: bool,
) -> list[int]:
    """Indices of candidate boxes compatible with every placed box."""
    out = []
    m = len(placed_lo)
    for k in range(len(cand_lo)):
        clo, chi = cand_lo[k], cand_hi[k]
        ok = True
        for j in range(m):
            if not strict_pair_ok(clo, chi, placed_lo[j], placed_hi[j], wanted[j], strict):
                ok = False
                break
        if ok:
            out.append(k)
    return out
