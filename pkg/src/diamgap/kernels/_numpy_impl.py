"""Pure numpy / stdlib fallbacks for the compiled kernels.

Same names, signatures and return conventions as ``_numba_impl``.  Dijkstra
variants are plain ``heapq`` loops; everything that vectorizes does.
"""
import heapq

import numpy as np

NAME = "numpy"

# Edge chunk for the bit-parallel all-pairs sweep; bounds temporary memory.
_CHUNK = 1 << 16


def dijkstra(indptr, indices, weights, sources):
    n = indptr.size - 1
    dist = np.full(n, np.inf)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=bool)
    ip = indptr.tolist()
    ix = indices.tolist()
    wt = weights.tolist()
    dl = dist.tolist()
    heap = []
    for s in sources.tolist():
        if dl[s] > 0.0:
            dl[s] = 0.0
            heap.append((0.0, s))
    heapq.heapify(heap)
    par = parent.tolist()
    fin = done.tolist()
    while heap:
        d, u = heapq.heappop(heap)
        if fin[u]:
            continue
        fin[u] = True
        for e in range(ip[u], ip[u + 1]):
            v = ix[e]
            nd = d + wt[e]
            if nd < dl[v]:
                dl[v] = nd
                par[v] = u
                heapq.heappush(heap, (nd, v))
    return np.asarray(dl, dtype=np.float64), np.asarray(par, dtype=np.int64)


def bfs(indptr, indices, sources):
    n = indptr.size - 1
    level = np.full(n, -1, dtype=np.int64)
    parent = np.full(n, -1, dtype=np.int64)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    level[frontier] = 0
    depth = 0
    while frontier.size:
        depth += 1
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        owner = np.repeat(frontier, counts)
        offs = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        nbr = indices[np.repeat(starts, counts) + offs]
        fresh = level[nbr] < 0
        nbr = nbr[fresh]
        owner = owner[fresh]
        nbr, first = np.unique(nbr, return_index=True)
        level[nbr] = depth
        parent[nbr] = owner[first]
        frontier = nbr
    return level, parent


def truncated_dijkstra(indptr, indices, weights, source, max_scans):
    n = indptr.size - 1
    ip = indptr.tolist()
    ix = indices.tolist()
    wt = weights.tolist()
    dist = [float("inf")] * n
    done = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    order = []
    scans = 0
    while heap and scans < max_scans:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        order.append(u)
        for e in range(ip[u], ip[u + 1]):
            scans += 1
            v = ix[e]
            nd = d + wt[e]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    out = np.asarray(order, dtype=np.int64)
    return out, np.asarray([dist[u] for u in order], dtype=np.float64)


def apsp_matrix(indptr, indices, weights):
    n = indptr.size - 1
    out = np.empty((n, n))
    for s in range(n):
        out[s] = dijkstra(indptr, indices, weights, np.array([s]))[0]
    return out


def weighted_diameter(indptr, indices, weights):
    best = 0.0
    for s in range(indptr.size - 1):
        d = dijkstra(indptr, indices, weights, np.array([s]))[0]
        best = max(best, float(d.max()))
        if best == np.inf:
            break
    return best


def unit_diameter(in_indptr, in_indices):
    n = in_indptr.size - 1
    words = (n + 63) >> 6
    ids = np.arange(n)
    reach = np.zeros((n, words), dtype=np.uint64)
    reach[ids, ids >> 6] = np.left_shift(np.uint64(1), (ids & 63).astype(np.uint64))
    delta = reach.copy()
    dst = np.repeat(ids, np.diff(in_indptr))
    src = in_indices
    levels = 0
    while True:
        nxt = np.zeros_like(reach)
        for lo in range(0, src.size, _CHUNK):
            s = src[lo:lo + _CHUNK]
            np.bitwise_or.at(nxt, dst[lo:lo + _CHUNK], delta[s])
        nxt &= ~reach
        if not nxt.any():
            break
        levels += 1
        reach |= nxt
        delta = nxt
    full = np.full(words, np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    if n & 63:
        full[-1] = np.uint64((1 << (n & 63)) - 1)
    if not (reach == full).all():
        return -1
    return levels


def hop_limited(src, dst, w, n, source, beta):
    prev = np.full(n, np.inf)
    prev[source] = 0.0
    for _ in range(beta):
        cur = prev.copy()
        np.minimum.at(cur, dst, prev[src] + w)
        if np.array_equal(cur, prev):
            break
        prev = cur
    return prev


def hop_limited_table(src, dst, w, n, source, beta):
    dist = np.full((beta + 1, n), np.inf)
    parent = np.full((beta + 1, n), -1, dtype=np.int64)
    dist[0, source] = 0.0
    for h in range(1, beta + 1):
        cand = dist[h - 1, src] + w
        order = np.lexsort((cand, dst))
        d_sorted = dst[order]
        first = np.ones(order.size, dtype=bool)
        first[1:] = d_sorted[1:] != d_sorted[:-1]
        best_e = order[first]
        row = dist[h - 1].copy()
        heads = dst[best_e]
        better = cand[best_e] < row[heads]
        row[heads[better]] = cand[best_e][better]
        parent[h, heads[better]] = src[best_e][better]
        dist[h] = row
    return dist, parent
