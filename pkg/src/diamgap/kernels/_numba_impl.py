"""Numba-compiled shortest-path kernels.

Every function here has a twin with the same name and signature in
``_numpy_impl``; ``diamgap.kernels`` picks one of the two at import time.
Graphs arrive as CSR triples ``(indptr, indices, weights)``.  Unreachable
distances are ``inf`` (floats) or ``-1`` (BFS levels).
"""
import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _push(hk, hv, size, key, val):
    i = size
    hk[i] = key
    hv[i] = val
    while i > 0:
        p = (i - 1) >> 1
        if hk[p] < hk[i] or (hk[p] == hk[i] and hv[p] <= hv[i]):
            break
        hk[p], hk[i] = hk[i], hk[p]
        hv[p], hv[i] = hv[i], hv[p]
        i = p
    return size + 1


@njit(cache=True)
def _pop(hk, hv, size):
    key = hk[0]
    val = hv[0]
    size -= 1
    hk[0] = hk[size]
    hv[0] = hv[size]
    i = 0
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        r = c + 1
        if r < size and (hk[r] < hk[c] or (hk[r] == hk[c] and hv[r] < hv[c])):
            c = r
        if hk[i] < hk[c] or (hk[i] == hk[c] and hv[i] <= hv[c]):
            break
        hk[c], hk[i] = hk[i], hk[c]
        hv[c], hv[i] = hv[i], hv[c]
        i = c
    return key, val, size


@njit(cache=True)
def dijkstra(indptr, indices, weights, sources):
    n = indptr.size - 1
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.bool_)
    cap = indices.size + sources.size + 1
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    size = 0
    for s in sources:
        if dist[s] > 0.0:
            dist[s] = 0.0
            size = _push(hk, hv, size, 0.0, s)
    while size > 0:
        d, u, size = _pop(hk, hv, size)
        if done[u]:
            continue
        done[u] = True
        for e in range(indptr[u], indptr[u + 1]):
            v = indices[e]
            nd = d + weights[e]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = u
                size = _push(hk, hv, size, nd, v)
    return dist, parent


@njit(cache=True)
def bfs(indptr, indices, sources):
    # Level-synchronous with each frontier sorted, so parents match the numpy
    # fallback: the first discoverer in (frontier id, CSR) order wins.
    n = indptr.size - 1
    level = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    frontier = np.empty(n, dtype=np.int64)
    size = 0
    for s in sources:
        if level[s] < 0:
            level[s] = 0
            frontier[size] = s
            size += 1
    nxt = np.empty(n, dtype=np.int64)
    depth = 0
    while size > 0:
        depth += 1
        cur = np.sort(frontier[:size])
        size = 0
        for u in cur:
            for e in range(indptr[u], indptr[u + 1]):
                v = indices[e]
                if level[v] < 0:
                    level[v] = depth
                    parent[v] = u
                    nxt[size] = v
                    size += 1
        frontier, nxt = nxt, frontier
    return level, parent


@njit(cache=True)
def truncated_dijkstra(indptr, indices, weights, source, max_scans):
    n = indptr.size - 1
    dist = np.full(n, np.inf)
    done = np.zeros(n, dtype=np.bool_)
    order = np.empty(n, dtype=np.int64)
    cap = indices.size + 2
    hk = np.empty(cap, dtype=np.float64)
    hv = np.empty(cap, dtype=np.int64)
    dist[source] = 0.0
    size = _push(hk, hv, 0, 0.0, source)
    settled = 0
    scans = 0
    while size > 0 and scans < max_scans:
        d, u, size = _pop(hk, hv, size)
        if done[u]:
            continue
        done[u] = True
        order[settled] = u
        settled += 1
        for e in range(indptr[u], indptr[u + 1]):
            scans += 1
            v = indices[e]
            nd = d + weights[e]
            if nd < dist[v]:
                dist[v] = nd
                size = _push(hk, hv, size, nd, v)
    out = order[:settled].copy()
    return out, dist[out]


@njit(cache=True)
def apsp_matrix(indptr, indices, weights):
    n = indptr.size - 1
    out = np.empty((n, n), dtype=np.float64)
    src = np.empty(1, dtype=np.int64)
    for s in range(n):
        src[0] = s
        d, _ = dijkstra(indptr, indices, weights, src)
        out[s, :] = d
    return out


@njit(cache=True)
def weighted_diameter(indptr, indices, weights):
    n = indptr.size - 1
    best = 0.0
    src = np.empty(1, dtype=np.int64)
    for s in range(n):
        src[0] = s
        d, _ = dijkstra(indptr, indices, weights, src)
        for v in range(n):
            if d[v] > best:
                best = d[v]
        if best == np.inf:
            return best
    return best


@njit(cache=True)
def unit_diameter(in_indptr, in_indices):
    """Hop diameter by bit-parallel BFS from all sources at once; -1 if disconnected."""
    n = in_indptr.size - 1
    words = (n + 63) >> 6
    reach = np.zeros((n, words), dtype=np.uint64)
    delta = np.zeros((n, words), dtype=np.uint64)
    nxt = np.zeros((n, words), dtype=np.uint64)
    active = np.ones(n, dtype=np.bool_)
    one = np.uint64(1)
    for v in range(n):
        bit = one << np.uint64(v & 63)
        reach[v, v >> 6] = bit
        delta[v, v >> 6] = bit
    levels = 0
    while True:
        any_change = False
        new_active = np.zeros(n, dtype=np.bool_)
        for v in range(n):
            for w in range(words):
                nxt[v, w] = 0
            for e in range(in_indptr[v], in_indptr[v + 1]):
                u = in_indices[e]
                if not active[u]:
                    continue
                for w in range(words):
                    nxt[v, w] |= delta[u, w]
            for w in range(words):
                fresh = nxt[v, w] & ~reach[v, w]
                nxt[v, w] = fresh
                if fresh != 0:
                    new_active[v] = True
            if new_active[v]:
                any_change = True
        if not any_change:
            break
        levels += 1
        for v in range(n):
            for w in range(words):
                reach[v, w] |= nxt[v, w]
                delta[v, w] = nxt[v, w]
        active = new_active
    full_tail = np.uint64(0xFFFFFFFFFFFFFFFF)
    rem = n & 63
    last = full_tail if rem == 0 else (one << np.uint64(rem)) - one
    for v in range(n):
        for w in range(words - 1):
            if reach[v, w] != full_tail:
                return -1
        if words > 0 and reach[v, words - 1] != last:
            return -1
    return levels


@njit(cache=True)
def hop_limited(src, dst, w, n, source, beta):
    prev = np.full(n, np.inf)
    prev[source] = 0.0
    cur = prev.copy()
    for _ in range(beta):
        changed = False
        for e in range(src.size):
            cand = prev[src[e]] + w[e]
            if cand < cur[dst[e]]:
                cur[dst[e]] = cand
                changed = True
        if not changed:
            break
        prev[:] = cur
    return cur


@njit(cache=True)
def hop_limited_table(src, dst, w, n, source, beta):
    dist = np.full((beta + 1, n), np.inf)
    parent = np.full((beta + 1, n), -1, dtype=np.int64)
    dist[0, source] = 0.0
    for h in range(1, beta + 1):
        dist[h, :] = dist[h - 1, :]
        parent[h, :] = -1
        for e in range(src.size):
            cand = dist[h - 1, src[e]] + w[e]
            if cand < dist[h, dst[e]]:
                dist[h, dst[e]] = cand
                parent[h, dst[e]] = src[e]
    return dist, parent
