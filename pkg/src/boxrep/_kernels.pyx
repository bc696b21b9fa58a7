# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the search kernels; see ``_kernels_py`` for the reference."""

from libc.stdint cimport uint64_t


cdef inline int _popcount(uint64_t x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


cdef inline int _low_index(uint64_t x):
    cdef int i = 0
    while not (x >> i) & 1:
        i += 1
    return i


def is_chordal_mask(adj):
    cdef int n = len(adj)
    if n <= 3:
        return True
    cdef uint64_t a[64]
    cdef int weight[64]
    cdef int order[64]
    cdef int pos[64]
    cdef int i, v, best, bw, u, parent, pp
    cdef uint64_t numbered = 0, nb, earlier, others, seen = 0, rest
    for i in range(n):
        a[i] = adj[i]
        weight[i] = 0
    for i in range(n):
        best = -1
        bw = -1
        for v in range(n):
            if not (numbered >> v) & 1 and weight[v] > bw:
                best = v
                bw = weight[v]
        order[i] = best
        pos[best] = i
        numbered |= (<uint64_t>1) << best
        nb = a[best] & ~numbered
        while nb:
            weight[_low_index(nb)] += 1
            nb &= nb - 1
    for i in range(n):
        v = order[i]
        earlier = a[v] & seen
        if earlier:
            parent = -1
            pp = -1
            rest = earlier
            while rest:
                u = _low_index(rest)
                if pos[u] > pp:
                    parent = u
                    pp = pos[u]
                rest &= rest - 1
            others = earlier & ~((<uint64_t>1) << parent)
            if others & ~a[parent]:
                return False
        seen |= (<uint64_t>1) << v
    return True


cdef void _labels(uint64_t* a, int n, uint64_t alive, int* label):
    cdef int comp = 0, i
    cdef uint64_t rest = alive, frontier, reached, nxt, f
    for i in range(n):
        label[i] = -1
    while rest:
        frontier = rest & (~rest + 1)
        reached = frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                nxt |= a[_low_index(f)]
                f &= f - 1
            nxt &= alive & ~reached
            reached |= nxt
            frontier = nxt
        f = reached
        while f:
            label[_low_index(f)] = comp
            f &= f - 1
        comp += 1
        rest &= ~reached


def has_asteroidal_triple_mask(adj):
    cdef int n = len(adj)
    if n < 6:
        return False
    cdef uint64_t a[64]
    cdef int labels[64][64]
    cdef int i, x, b, c
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    cdef uint64_t nab
    for i in range(n):
        a[i] = adj[i]
    for x in range(n):
        _labels(a, n, full & ~(a[x] | ((<uint64_t>1) << x)), labels[x])
    for x in range(n):
        for b in range(x + 1, n):
            if (a[x] >> b) & 1:
                continue
            nab = a[x] | a[b]
            for c in range(b + 1, n):
                if (nab >> c) & 1:
                    continue
                if (labels[x][b] == labels[x][c] and labels[x][b] != -1
                        and labels[b][x] == labels[b][c] and labels[b][x] != -1
                        and labels[c][x] == labels[c][b] and labels[c][x] != -1):
                    return True
    return False


def is_interval_mask(adj):
    return is_chordal_mask(adj) and not has_asteroidal_triple_mask(adj)


cdef inline bint _pair_ok(long* la, long* ha, long* lb, long* hb, int d, bint adjacent, bint strict):
    cdef int i, touching = 0
    cdef long lo, hi
    for i in range(d):
        lo = la[i] if la[i] > lb[i] else lb[i]
        hi = ha[i] if ha[i] < hb[i] else hb[i]
        if lo > hi:
            return not adjacent
        if lo == hi:
            touching += 1
    if not adjacent:
        return False
    if strict:
        return touching == 1
    return True


def strict_pair_ok(lo_a, hi_a, lo_b, hi_b, adjacent, strict):
    cdef long la[16]
    cdef long ha[16]
    cdef long lb[16]
    cdef long hb[16]
    cdef int d = len(lo_a), i
    for i in range(d):
        la[i] = lo_a[i]
        ha[i] = hi_a[i]
        lb[i] = lo_b[i]
        hb[i] = hi_b[i]
    return _pair_ok(la, ha, lb, hb, d, adjacent, strict)


def filter_boxes(cand_lo, cand_hi, placed_lo, placed_hi, wanted, bint strict):
    cdef int m = len(placed_lo), k = len(cand_lo)
    if k == 0:
        return []
    cdef int d = len(cand_lo[0])
    cdef int i, j, c
    cdef long[:] plo = _flatten(placed_lo, m, d)
    cdef long[:] phi = _flatten(placed_hi, m, d)
    cdef long[:] want = _flatten_bool(wanted, m)
    cdef long clo[16]
    cdef long chi[16]
    cdef bint ok
    out = []
    for c in range(k):
        row_lo = cand_lo[c]
        row_hi = cand_hi[c]
        for i in range(d):
            clo[i] = row_lo[i]
            chi[i] = row_hi[i]
        ok = True
        for j in range(m):
            if not _pair_ok(clo, chi, &plo[j * d] if m else NULL, &phi[j * d] if m else NULL, d, want[j], strict):
                ok = False
                break
        if ok:
            out.append(c)
    return out


cdef long[:] _flatten(rows, int m, int d):
    import array
    arr = array.array("l", [0]) * (m * d if m * d else 1)
    cdef long[:] view = arr
    cdef int j, i
    for j in range(m):
        r = rows[j]
        for i in range(d):
            view[j * d + i] = r[i]
    return view


cdef long[:] _flatten_bool(vals, int m):
    import array
    arr = array.array("l", [0]) * (m if m else 1)
    cdef long[:] view = arr
    cdef int j
    for j in range(m):
        view[j] = 1 if vals[j] else 0
    return view
