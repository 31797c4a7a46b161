"""Pure-Python kernels.  Same signatures and results as the compiled module."""

from __future__ import annotations

import heapq

import numpy as np

from .monge import colmin_monge

INF = 1 << 62


def dijkstra(indptr, heads, lengths, price, source):
    """Dijkstra over CSR arcs with reduced costs ``l + p[u] - p[v]``.

    Returns ``(dist, parent_arc, bad_arc)``.  ``dist`` is in original units,
    ``INF`` when unreachable.  ``bad_arc`` is the first arc seen with negative
    reduced cost (the run stops there), or -1.
    """
    indptr = indptr.tolist()
    heads = heads.tolist()
    lengths = lengths.tolist()
    price = price.tolist()
    n = len(indptr) - 1
    red = [INF] * n
    parent = [-1] * n
    done = [False] * n
    red[source] = 0
    heap = [(0, source)]
    bad = -1
    while heap:
        du, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        pu = price[u]
        for a in range(indptr[u], indptr[u + 1]):
            v = heads[a]
            w = lengths[a] + pu - price[v]
            if w < 0:
                bad = a
                heap = []
                break
            nd = du + w
            if nd < red[v]:
                red[v] = nd
                parent[v] = a
                heapq.heappush(heap, (nd, v))
    ps = price[source]
    dist = np.full(n, INF, dtype=np.int64)
    for v in range(n):
        if red[v] < INF:
            dist[v] = red[v] - ps + price[v]
    return dist, np.array(parent, dtype=np.int64), bad


def bellman_ford(n, tails, heads, lengths, source):
    """Round-based Bellman-Ford with early exit.

    Returns ``(dist, parent_arc, witness)`` where ``witness`` is a vertex on a
    negative cycle reachable from ``source`` or -1.
    """
    tails = tails.tolist()
    heads = heads.tolist()
    lengths = lengths.tolist()
    m = len(tails)
    dist = [INF] * n
    parent = [-1] * n
    dist[source] = 0
    last = -1
    for _ in range(n):
        last = -1
        for a in range(m):
            du = dist[tails[a]]
            if du >= INF:
                continue
            nd = du + lengths[a]
            v = heads[a]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = a
                last = v
        if last < 0:
            break
    witness = -1
    if last >= 0:
        v = last
        for _ in range(n):
            v = tails[parent[v]]
        witness = v
    return np.array(dist, dtype=np.int64), np.array(parent, dtype=np.int64), witness


def _rect(off, D, rows, cols, best_v, best_r, counter):
    rows = [i for i in rows if off[i] < INF]
    if not rows or not cols:
        return
    cache = {}

    def value(i, j):
        v = cache.get((i, j))
        if v is None:
            v = off[i] + D[i][j]
            cache[(i, j)] = v
        return v

    res = colmin_monge(rows, cols, value)
    counter[0] += 1
    counter[1] += len(cache)
    for j, i in res.items():
        v = cache[(i, j)]
        if v < best_v[j] or (v == best_v[j] and i < best_r[j]):
            best_v[j] = v
            best_r[j] = i


def _finish(best_v, best_r, evals):
    val = np.array(best_v, dtype=np.int64)
    arg = np.array(best_r, dtype=np.int64)
    miss = val >= INF
    val[miss] = INF
    arg[miss] = -1
    return val, arg, evals


def colmin_rect(off, D):
    """Column minima of ``off[i] + D[i, j]`` for a convex Monge ``D``.

    Rows with ``off >= INF`` are skipped.  Returns ``(val, arg, calls)`` where
    ``calls = (smawk_calls, evaluations)``.
    """
    off = off.tolist()
    D = D.tolist()
    R = len(off)
    C = len(D[0]) if R else 0
    best_v = [INF] * C
    best_r = [R] * C
    counter = [0, 0]
    _rect(off, D, range(R), list(range(C)), best_v, best_r, counter)
    return _finish(best_v, best_r, tuple(counter))


def _cyclic_blocks(lo, hi, emit):
    while hi - lo > 1:
        mid = (lo + hi) // 2
        emit(lo, mid, mid, hi)
        emit(mid, hi, lo, mid)
        _cyclic_blocks(lo, mid, emit)
        lo = mid


def colmin_cyclic(off, D):
    """Column minima over a square matrix whose rows and columns follow one
    cyclic order, where every block with all rows before all columns (or all
    after) is convex Monge.  The square is covered by such blocks recursively
    plus the diagonal.
    """
    off = off.tolist()
    D = D.tolist()
    K = len(off)
    best_v = [INF] * K
    best_r = [K] * K
    counter = [0, 0]
    for i in range(K):
        if off[i] < INF:
            best_v[i] = off[i] + D[i][i]
            best_r[i] = i
    counter[1] += K

    def emit(r0, r1, c0, c1):
        _rect(off, D, range(r0, r1), list(range(c0, c1)), best_v, best_r, counter)

    _cyclic_blocks(0, K, emit)
    return _finish(best_v, best_r, tuple(counter))
