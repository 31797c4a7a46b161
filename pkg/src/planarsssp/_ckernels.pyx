# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: indexed-heap Dijkstra, Bellman-Ford, SMAWK column minima."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef int64_t INF = (<int64_t>1) << 62


cdef inline void _sift_up(int64_t* key, Py_ssize_t* heap, Py_ssize_t* pos, Py_ssize_t i) noexcept nogil:
    cdef Py_ssize_t v = heap[i]
    cdef Py_ssize_t p
    while i > 0:
        p = (i - 1) >> 1
        if key[heap[p]] <= key[v]:
            break
        heap[i] = heap[p]
        pos[heap[i]] = i
        i = p
    heap[i] = v
    pos[v] = i


cdef inline void _sift_down(int64_t* key, Py_ssize_t* heap, Py_ssize_t* pos, Py_ssize_t size) noexcept nogil:
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t v = heap[0]
    cdef Py_ssize_t c
    while True:
        c = 2 * i + 1
        if c >= size:
            break
        if c + 1 < size and key[heap[c + 1]] < key[heap[c]]:
            c += 1
        if key[v] <= key[heap[c]]:
            break
        heap[i] = heap[c]
        pos[heap[i]] = i
        i = c
    heap[i] = v
    pos[v] = i


def dijkstra(const int64_t[::1] indptr, const int64_t[::1] heads, const int64_t[::1] lengths,
             const int64_t[::1] price, Py_ssize_t source):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, INF, dtype=np.int64)
    par_arr = np.full(n, -1, dtype=np.int64)
    red_arr = np.full(n, INF, dtype=np.int64)
    cdef int64_t[::1] dist = dist_arr
    cdef int64_t[::1] parent = par_arr
    cdef int64_t[::1] red = red_arr
    cdef Py_ssize_t* heap = <Py_ssize_t*>malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* pos = <Py_ssize_t*>malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t size = 0, u, v, a, i
    cdef int64_t du, w, nd, pu
    cdef Py_ssize_t bad = -1
    with nogil:
        for i in range(n):
            pos[i] = -1
        red[source] = 0
        heap[0] = source
        pos[source] = 0
        size = 1
        while size > 0:
            u = heap[0]
            size -= 1
            pos[u] = -2
            if size > 0:
                heap[0] = heap[size]
                pos[heap[0]] = 0
                _sift_down(&red[0], heap, pos, size)
            du = red[u]
            pu = price[u]
            for a in range(indptr[u], indptr[u + 1]):
                v = heads[a]
                w = lengths[a] + pu - price[v]
                if w < 0:
                    bad = a
                    size = 0
                    break
                if pos[v] == -2:
                    continue
                nd = du + w
                if nd < red[v]:
                    red[v] = nd
                    parent[v] = a
                    if pos[v] == -1:
                        heap[size] = v
                        pos[v] = size
                        size += 1
                    _sift_up(&red[0], heap, pos, pos[v])
        for v in range(n):
            if red[v] < INF:
                dist[v] = red[v] - price[source] + price[v]
    free(heap)
    free(pos)
    return dist_arr, par_arr, bad


def bellman_ford(Py_ssize_t n, const int64_t[::1] tails, const int64_t[::1] heads,
                 const int64_t[::1] lengths, Py_ssize_t source):
    dist_arr = np.full(n, INF, dtype=np.int64)
    par_arr = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] dist = dist_arr
    cdef int64_t[::1] parent = par_arr
    cdef Py_ssize_t m = tails.shape[0]
    cdef Py_ssize_t it, a, v, last = -1
    cdef int64_t du, nd
    with nogil:
        dist[source] = 0
        for it in range(n):
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
        if last >= 0:
            v = last
            for it in range(n):
                v = tails[parent[v]]
            last = v
    return dist_arr, par_arr, last


cdef struct Mat:
    const int64_t* off
    const int64_t* D
    Py_ssize_t ld
    long long evals


cdef inline bint _less(Mat* M, Py_ssize_t c, Py_ssize_t r1, Py_ssize_t r2) noexcept nogil:
    # is (value(r1, c), r1) < (value(r2, c), r2)
    cdef int64_t v1 = M.off[r1] + M.D[r1 * M.ld + c]
    cdef int64_t v2 = M.off[r2] + M.D[r2 * M.ld + c]
    M.evals += 2
    return v1 < v2 or (v1 == v2 and r1 < r2)


cdef void _smawk(Mat* M, Py_ssize_t* xrows, Py_ssize_t nr, Py_ssize_t* xcols, Py_ssize_t nc,
                 Py_ssize_t* out) noexcept nogil:
    # rows of the transposed problem are matrix columns; out[column] = row
    cdef Py_ssize_t* st = NULL
    cdef Py_ssize_t* odd
    cdef Py_ssize_t top = 0, i, j, k, stop, c, r, best, no
    if nr == 0:
        return
    if nc > nr:
        st = <Py_ssize_t*>malloc(nr * sizeof(Py_ssize_t))
        for j in range(nc):
            c = xcols[j]
            while top > 0:
                r = xrows[top - 1]
                if not _less(M, r, c, st[top - 1]):
                    break
                top -= 1
            if top < nr:
                st[top] = c
                top += 1
        xcols = st
        nc = top
    no = nr // 2
    odd = <Py_ssize_t*>malloc((no + 1) * sizeof(Py_ssize_t))
    for i in range(no):
        odd[i] = xrows[2 * i + 1]
    _smawk(M, odd, no, xcols, nc, out)
    free(odd)
    k = 0
    i = 0
    while i < nr:
        r = xrows[i]
        if i + 1 < nr:
            stop = k
            while xcols[stop] != out[xrows[i + 1]]:
                stop += 1
        else:
            stop = nc - 1
        best = xcols[k]
        for j in range(k + 1, stop + 1):
            if _less(M, r, xcols[j], best):
                best = xcols[j]
        out[r] = best
        k = stop
        i += 2
    if st != NULL:
        free(st)


cdef void _rect(Mat* M, Py_ssize_t r0, Py_ssize_t r1, Py_ssize_t c0, Py_ssize_t c1,
                int64_t* best_v, int64_t* best_r, Py_ssize_t* out, long long* calls) noexcept nogil:
    cdef Py_ssize_t nr = 0, nc = c1 - c0, i, j, r
    cdef int64_t v
    if nc <= 0 or r1 <= r0:
        return
    cdef Py_ssize_t* xcols = <Py_ssize_t*>malloc((r1 - r0) * sizeof(Py_ssize_t))
    cdef Py_ssize_t* xrows = <Py_ssize_t*>malloc(nc * sizeof(Py_ssize_t))
    i = r1 - 1
    while i >= r0:
        if M.off[i] < INF:
            xcols[nr] = i
            nr += 1
        i -= 1
    if nr > 0:
        for j in range(nc):
            xrows[j] = c0 + j
        _smawk(M, xrows, nc, xcols, nr, out)
        calls[0] += 1
        for j in range(c0, c1):
            r = out[j]
            v = M.off[r] + M.D[r * M.ld + j]
            if v < best_v[j] or (v == best_v[j] and r < best_r[j]):
                best_v[j] = v
                best_r[j] = r
    free(xcols)
    free(xrows)


cdef void _cyclic(Mat* M, Py_ssize_t lo, Py_ssize_t hi, int64_t* best_v, int64_t* best_r,
                  Py_ssize_t* out, long long* calls) noexcept nogil:
    cdef Py_ssize_t mid
    while hi - lo > 1:
        mid = (lo + hi) // 2
        _rect(M, lo, mid, mid, hi, best_v, best_r, out, calls)
        _rect(M, mid, hi, lo, mid, best_v, best_r, out, calls)
        _cyclic(M, lo, mid, best_v, best_r, out, calls)
        lo = mid


def _finish(val, arg):
    miss = val >= INF
    val[miss] = INF
    arg[miss] = -1
    return val, arg


def colmin_rect(const int64_t[::1] off, const int64_t[:, ::1] D):
    cdef Py_ssize_t R = off.shape[0]
    cdef Py_ssize_t C = D.shape[1] if R > 0 else 0
    val = np.full(C, INF, dtype=np.int64)
    arg = np.full(C, R, dtype=np.int64)
    cdef int64_t[::1] bv = val
    cdef int64_t[::1] br = arg
    cdef Mat M
    cdef long long calls = 0
    cdef Py_ssize_t* out
    if R == 0 or C == 0:
        return _finish(val, arg) + ((0, 0),)
    M.off = &off[0]
    M.D = &D[0, 0]
    M.ld = C
    M.evals = 0
    out = <Py_ssize_t*>malloc(C * sizeof(Py_ssize_t))
    with nogil:
        _rect(&M, 0, R, 0, C, &bv[0], &br[0], out, &calls)
    free(out)
    return _finish(val, arg) + ((calls, M.evals),)


def colmin_cyclic(const int64_t[::1] off, const int64_t[:, ::1] D):
    cdef Py_ssize_t K = off.shape[0]
    val = np.full(K, INF, dtype=np.int64)
    arg = np.full(K, K, dtype=np.int64)
    cdef int64_t[::1] bv = val
    cdef int64_t[::1] br = arg
    cdef Mat M
    cdef long long calls = 0
    cdef Py_ssize_t i
    cdef Py_ssize_t* out
    if K == 0:
        return _finish(val, arg) + ((0, 0),)
    M.off = &off[0]
    M.D = &D[0, 0]
    M.ld = K
    M.evals = K
    out = <Py_ssize_t*>malloc(K * sizeof(Py_ssize_t))
    with nogil:
        for i in range(K):
            if off[i] < INF:
                bv[i] = off[i] + D[i, i]
                br[i] = i
        _cyclic(&M, 0, K, &bv[0], &br[0], out, &calls)
    free(out)
    return _finish(val, arg) + ((calls, M.evals),)
