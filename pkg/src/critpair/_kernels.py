"""Compiled kernels: unit-capacity max flow on split graphs, matchings, Hall deficiency.

Residual graphs are rows of uint64 words.  Every original edge has capacity
one and no two original edges are antiparallel, so an edge ``(a, b)`` carries
flow exactly when the reverse residual bit ``(b, a)`` is set.
"""

import numpy as np
from numba import njit

_U1 = np.uint64(1)
_DEBRUIJN = np.uint64(0x03F79D71B4CB0A89)


def _debruijn_table():
    table = np.zeros(64, dtype=np.int64)
    for i in range(64):
        table[((1 << i) * 0x03F79D71B4CB0A89 & (2**64 - 1)) >> 58] = i
    return table


_DB_TABLE = _debruijn_table()
MAX_VERTICES = 62


@njit(cache=True)
def popcount(x):
    x = np.uint64(x)
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _ctz(low):
    return _DB_TABLE[(low * _DEBRUIJN) >> np.uint64(58)]


@njit(cache=True)
def _set(res, a, b):
    res[a, b >> 6] |= _U1 << np.uint64(b & 63)


@njit(cache=True)
def _clear(res, a, b):
    res[a, b >> 6] &= ~(_U1 << np.uint64(b & 63))


@njit(cache=True)
def _test(res, a, b):
    return (res[a, b >> 6] >> np.uint64(b & 63)) & _U1


@njit(cache=True)
def max_flow(res, m, s, t, limit, parent, queue, visited):
    """Shortest augmenting paths, scanning neighbours by increasing node index."""
    words = (m + 63) >> 6
    flow = 0
    while flow < limit:
        for w in range(words):
            visited[w] = 0
        visited[s >> 6] |= _U1 << np.uint64(s & 63)
        parent[s] = s
        queue[0] = s
        head = 0
        tail = 1
        found = False
        while head < tail and not found:
            u = queue[head]
            head += 1
            for w in range(words):
                nb = res[u, w] & ~visited[w]
                while nb:
                    low = nb & (~nb + _U1)
                    nb ^= low
                    v = (w << 6) + _ctz(low)
                    visited[w] |= low
                    parent[v] = u
                    queue[tail] = v
                    tail += 1
                    if v == t:
                        found = True
                        break
                if found:
                    break
        if not found:
            break
        v = t
        while v != s:
            u = parent[v]
            _clear(res, u, v)
            _set(res, v, u)
            v = u
        flow += 1
    return flow


@njit(cache=True)
def _build_aux(images, xbits, dup_vertex, dup_count, item_vertex, res):
    """Auxiliary source/sink graph over copies of X and the boundary of X.

    Node 0 is the source, node 1 the sink, item ``i`` has in-node ``2+2i``
    and out-node ``3+2i``.  Returns (item count, X-item count, node count).
    """
    n = images.shape[0]
    ni = 0
    gx = np.int64(0)
    for v in range(n):
        if (xbits >> v) & 1:
            gx |= images[v]
            item_vertex[ni] = v
            ni += 1
            if v == dup_vertex:
                for _ in range(dup_count):
                    item_vertex[ni] = v
                    ni += 1
    nx = ni
    bnd = gx & ~xbits
    for v in range(n):
        if (bnd >> v) & 1:
            item_vertex[ni] = v
            ni += 1
    m = 2 + 2 * ni
    words = (m + 63) >> 6
    for a in range(m):
        for w in range(words):
            res[a, w] = 0
    for i in range(ni):
        _set(res, 2 + 2 * i, 3 + 2 * i)
    for i in range(nx):
        _set(res, 0, 2 + 2 * i)
        u = item_vertex[i]
        img = images[u]
        for j in range(ni):
            v = item_vertex[j]
            if v != u and (img >> v) & 1:
                _set(res, 3 + 2 * i, 2 + 2 * j)
    for j in range(nx, ni):
        _set(res, 3 + 2 * j, 1)
    return ni, nx, m


@njit(cache=True)
def _extract_pairs(res, ni, nx, item_vertex, pairs):
    count = 0
    for i in range(nx):
        if not _test(res, 2 + 2 * i, 0):
            continue
        last = i
        node = 3 + 2 * i
        while True:
            nxt = -1
            for j in range(ni):
                if _test(res, 2 + 2 * j, node):
                    nxt = j
                    break
            if nxt < 0:
                break
            if nxt < nx:
                last = nxt
                node = 3 + 2 * nxt
            else:
                pairs[count, 0] = item_vertex[last]
                pairs[count, 1] = item_vertex[nxt]
                count += 1
                break
    return count


@njit(cache=True)
def boundary_matching(images, xbits, dup_vertex, dup_count, limit, pairs):
    """Pairs ``(c, f(c))`` from disjoint source-to-sink paths; returns the pair count."""
    n = images.shape[0]
    cap = 2 * n + dup_count + 2
    m_max = 2 + 2 * cap
    res = np.zeros((m_max, (m_max + 63) >> 6), dtype=np.uint64)
    item_vertex = np.zeros(cap, dtype=np.int64)
    parent = np.zeros(m_max, dtype=np.int64)
    queue = np.zeros(m_max, dtype=np.int64)
    visited = np.zeros((m_max + 63) >> 6, dtype=np.uint64)
    ni, nx, m = _build_aux(images, xbits, dup_vertex, dup_count, item_vertex, res)
    max_flow(res, m, 0, 1, limit, parent, queue, visited)
    return _extract_pairs(res, ni, nx, item_vertex, pairs)


@njit(cache=True)
def split_graph_paths(images, x, y, limit, paths):
    """Openly disjoint x-y paths via vertex splitting; loops are ignored.

    Vertex ``v`` has in-node ``2v`` and out-node ``2v+1``.  Paths are written
    as vertex rows of ``paths`` terminated by -1.  Returns the path count.
    """
    n = images.shape[0]
    m = 2 * n
    words = (m + 63) >> 6
    res = np.zeros((m, words), dtype=np.uint64)
    for v in range(n):
        if v != x and v != y:
            _set(res, 2 * v, 2 * v + 1)
        img = images[v]
        for u in range(n):
            if u != v and (img >> u) & 1:
                _set(res, 2 * v + 1, 2 * u)
    parent = np.zeros(m, dtype=np.int64)
    queue = np.zeros(m, dtype=np.int64)
    visited = np.zeros(words, dtype=np.uint64)
    s = 2 * x + 1
    t = 2 * y
    flow = max_flow(res, m, s, t, limit, parent, queue, visited)
    for p in range(flow):
        for j in range(paths.shape[1]):
            paths[p, j] = -1
    count = 0
    for first in range(n):
        if first == x:
            continue
        # an x-path leaves x along the edge out(x) -> in(first)
        if not _test(res, 2 * first, s):
            continue
        paths[count, 0] = x
        pos = 1
        v = first
        while True:
            paths[count, pos] = v
            pos += 1
            if v == y:
                break
            nxt = -1
            for u in range(n):
                if u != v and _test(res, 2 * u, 2 * v + 1):
                    nxt = u
                    break
            if nxt < 0:
                break
            v = nxt
        count += 1
    return count


@njit(cache=True)
def hall_deficiency(images, xbits, bbits, heavy, extra):
    """max over Y in X of ``w(Y) - |N(Y) & B|``; ``heavy`` carries ``extra`` additional weight."""
    n = images.shape[0]
    xs = np.zeros(n, dtype=np.int64)
    r = 0
    for v in range(n):
        if (xbits >> v) & 1:
            xs[r] = v
            r += 1
    hb = -1
    for c in range(r):
        if xs[c] == heavy:
            hb = c
    nb = np.zeros(1 << r, dtype=np.int64)
    best = 0
    for j in range(1, 1 << r):
        low = j & -j
        b = 0
        while (low >> b) != 1:
            b += 1
        nb[j] = nb[j ^ low] | (images[xs[b]] & bbits)
        w = popcount(j)
        if hb >= 0 and (j >> hb) & 1:
            w += extra
        d = w - popcount(nb[j])
        if d > best:
            best = d
    return best


@njit(cache=True)
def _valid_pairs(images, xbits, bnd, pairs, count, k, sip2_vertex, size):
    if count != k:
        return False
    used_y = np.int64(0)
    used_c = np.int64(0)
    heavy = 0
    for p in range(count):
        c = pairs[p, 0]
        y = pairs[p, 1]
        if not (xbits >> c) & 1 or not (bnd >> y) & 1 or not (images[c] >> y) & 1:
            return False
        if (used_y >> y) & 1:
            return False
        used_y |= np.int64(1) << y
        if sip2_vertex >= 0 and c == sip2_vertex:
            heavy += 1
            used_c |= np.int64(1) << c
            continue
        if (used_c >> c) & 1:
            return False
        used_c |= np.int64(1) << c
    if sip2_vertex >= 0:
        return used_c == xbits and heavy == k - size + 1
    return True


@njit(cache=True)
def matching_sweep(images, k, second_form, failures):
    """Run every hypothesis-satisfying input of the chosen form on one graph.

    Returns (inputs, validated, hall_consistent, failure_count).  Failures
    are recorded as ``xbits * 64 + x`` (``x`` is 63 for the first form).
    """
    n = images.shape[0]
    pairs = np.zeros((2 * n + 2, 2), dtype=np.int64)
    inputs = 0
    ok = 0
    hall_ok = 0
    nfail = 0
    for xbits in range(1, 1 << n):
        size = popcount(xbits)
        if size + k > n:
            continue
        if (second_form and size > k) or (not second_form and size < k):
            continue
        gx = np.int64(0)
        for v in range(n):
            if (xbits >> v) & 1:
                gx |= images[v]
        bnd = gx & ~np.int64(xbits)
        if second_form:
            for x in range(n):
                if not (xbits >> x) & 1:
                    continue
                inputs += 1
                dup = k - size
                cnt = boundary_matching(images, xbits, x, dup, k, pairs)
                valid = _valid_pairs(images, xbits, bnd, pairs, cnt, k, x, size)
                hall = hall_deficiency(images, xbits, bnd, x, dup) == 0
                ok += valid
                hall_ok += hall
                if not (valid and hall):
                    if nfail < failures.shape[0]:
                        failures[nfail] = xbits * 64 + x
                    nfail += 1
        else:
            inputs += 1
            cnt = boundary_matching(images, xbits, -1, 0, k, pairs)
            valid = _valid_pairs(images, xbits, bnd, pairs, cnt, k, -1, size)
            hall = size - hall_deficiency(images, xbits, bnd, -1, 0) >= k
            ok += valid
            hall_ok += hall
            if not (valid and hall):
                if nfail < failures.shape[0]:
                    failures[nfail] = xbits * 64 + 63
                nfail += 1
    return inputs, ok, hall_ok, nfail
