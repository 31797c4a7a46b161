"""Embedded planar digraphs stored as darts with a rotation system.

Undirected embedding edge ``e`` owns darts ``2e`` (tail -> head as given) and
``2e + 1`` (the reverse).  A dart is *present* when the directed edge exists
with a finite length; absent darts still take part in the embedding so face
walks are always defined.  ``sigma[d]`` is the counterclockwise successor of
``d`` around its tail, and the face successor of ``d`` is ``sigma[d ^ 1]``.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .errors import BadInput, DisconnectedGraph, NonPlanarEmbedding, Overflow, SelfLoop

INF = 1 << 62
# Finite magnitudes must stay below this so that sums of two of them and an
# offset never leave int64.
LENGTH_LIMIT = 1 << 60


class PlanarGraph:
    """Immutable embedded multigraph.  Build with :func:`build_embedding`."""

    def __init__(self, n, tail, head, length, present, aux, sigma, coords=None):
        self.n = n
        self.tail = tail
        self.head = head
        self.length = length
        self.present = present
        self.aux = aux
        self.sigma = sigma
        self.coords = coords
        self.big = None
        self.first = [-1] * n
        for d in range(len(tail) - 1, -1, -1):
            self.first[tail[d]] = d
        self._faces = None
        self._face_of = None
        self._csr = None
        self._arcs = None

    @property
    def num_darts(self) -> int:
        return len(self.tail)

    @property
    def num_edges(self) -> int:
        return len(self.tail) // 2

    @staticmethod
    def rev(d: int) -> int:
        return d ^ 1

    def face_next(self, d: int) -> int:
        return self.sigma[d ^ 1]

    def rotation(self, v: int) -> list[int]:
        """Darts leaving ``v`` in counterclockwise order."""
        d0 = self.first[v]
        if d0 < 0:
            return []
        out = [d0]
        d = self.sigma[d0]
        while d != d0:
            out.append(d)
            d = self.sigma[d]
        return out

    def faces(self) -> list[list[int]]:
        if self._faces is None:
            face_of = [-1] * self.num_darts
            faces = []
            sigma = self.sigma
            for d0 in range(self.num_darts):
                if face_of[d0] >= 0:
                    continue
                fid = len(faces)
                walk = []
                d = d0
                while face_of[d] < 0:
                    face_of[d] = fid
                    walk.append(d)
                    d = sigma[d ^ 1]
                faces.append(walk)
            self._faces = faces
            self._face_of = face_of
        return self._faces

    @property
    def face_of(self) -> list[int]:
        self.faces()
        return self._face_of

    def num_faces(self) -> int:
        if self.num_darts == 0:
            return 1
        return len(self.faces())

    def arcs(self):
        """Present darts as numpy arrays ``(dart, tail, head, length)``."""
        if self._arcs is None:
            ds = np.array([d for d in range(self.num_darts) if self.present[d]], dtype=np.int64)
            t = np.array(self.tail, dtype=np.int64)[ds] if len(ds) else np.zeros(0, np.int64)
            h = np.array(self.head, dtype=np.int64)[ds] if len(ds) else np.zeros(0, np.int64)
            ln = np.array(self.length, dtype=np.int64)[ds] if len(ds) else np.zeros(0, np.int64)
            self._arcs = (ds, t, h, ln)
        return self._arcs

    def csr(self):
        """Out-adjacency of present darts: ``(indptr, heads, lengths, darts)``."""
        if self._csr is None:
            ds, t, h, ln = self.arcs()
            self._csr = make_csr(self.n, t, h, ln, ds)
        return self._csr

    def directed_edges(self) -> list[tuple[int, int, int]]:
        return [(self.tail[d], self.head[d], self.length[d]) for d in range(self.num_darts) if self.present[d]]

    def __repr__(self) -> str:
        return f"PlanarGraph(n={self.n}, edges={self.num_edges})"


def make_csr(n, tails, heads, lengths, ids=None):
    tails = np.asarray(tails, dtype=np.int64)
    order = np.argsort(tails, kind="stable")
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(tails, minlength=n), out=indptr[1:])
    heads = np.asarray(heads, dtype=np.int64)[order]
    lengths = np.asarray(lengths, dtype=np.int64)[order]
    if ids is None:
        ids = order.astype(np.int64)
    else:
        ids = np.asarray(ids, dtype=np.int64)[order]
    return indptr, heads, lengths, ids


def _sigma_from_rotations(rot: Sequence[Sequence[int]], num_darts: int) -> list[int]:
    sigma = [-1] * num_darts
    for lst in rot:
        k = len(lst)
        for i, d in enumerate(lst):
            sigma[d] = lst[(i + 1) % k]
    return sigma


def _check_connected(n: int, tail: list[int], head: list[int]) -> None:
    if n <= 1:
        return
    adj = [[] for _ in range(n)]
    for d in range(0, len(tail), 2):
        adj[tail[d]].append(head[d])
        adj[head[d]].append(tail[d])
    seen = [False] * n
    seen[0] = True
    q = deque([0])
    cnt = 1
    while q:
        u = q.popleft()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                cnt += 1
                q.append(w)
    if cnt != n:
        raise DisconnectedGraph(f"graph has {n - cnt} vertices unreachable from vertex 0")


def build_embedding(
    n: int,
    edges: Iterable[tuple[int, int, int]],
    rotations: Sequence[Sequence[int]] | None = None,
    coords: Sequence[tuple[float, float]] | None = None,
) -> PlanarGraph:
    """Validate and embed a directed multigraph.

    ``rotations[v]`` lists the indices of edges incident to ``v`` in
    counterclockwise order.  Without rotations, ``coords`` gives each vertex a
    point and the order is taken by angle.
    """
    n = int(n)
    if n < 1:
        raise BadInput("graph needs at least one vertex")
    edges = list(edges)
    m = len(edges)
    tail = [0] * (2 * m)
    head = [0] * (2 * m)
    length = [0] * (2 * m)
    present = [False] * (2 * m)
    for e, (t, h, ln) in enumerate(edges):
        t, h, ln = int(t), int(h), int(ln)
        if not (0 <= t < n and 0 <= h < n):
            raise BadInput(f"edge {e} has endpoint outside 0..{n - 1}")
        if t == h:
            raise SelfLoop(f"edge {e} is a self-loop at vertex {t}")
        if abs(ln) >= LENGTH_LIMIT:
            raise Overflow(f"edge {e} length {ln} exceeds 2^60")
        tail[2 * e], head[2 * e] = t, h
        tail[2 * e + 1], head[2 * e + 1] = h, t
        length[2 * e] = ln
        present[2 * e] = True

    rot: list[list[int]] = [[] for _ in range(n)]
    if rotations is not None:
        if len(rotations) != n:
            raise BadInput("need one rotation list per vertex")
        seen = [False] * (2 * m)
        for v, lst in enumerate(rotations):
            for e in lst:
                e = int(e)
                if not 0 <= e < m:
                    raise BadInput(f"rotation of vertex {v} names unknown edge {e}")
                if tail[2 * e] == v and not seen[2 * e]:
                    d = 2 * e
                elif head[2 * e] == v and not seen[2 * e + 1]:
                    d = 2 * e + 1
                else:
                    raise BadInput(f"edge {e} listed at vertex {v} which is not a free endpoint")
                seen[d] = True
                rot[v].append(d)
        if not all(seen):
            raise BadInput("every edge must appear in the rotation of both endpoints")
    elif coords is not None:
        if len(coords) != n:
            raise BadInput("need one coordinate pair per vertex")
        coords = [(float(x), float(y)) for x, y in coords]
        for d in range(2 * m):
            rot[tail[d]].append(d)
        for v in range(n):
            x0, y0 = coords[v]

            def key(d, x0=x0, y0=y0, v=v):
                x1, y1 = coords[head[d]]
                # parallel edges leave in opposite index order at the two ends
                tie = d >> 1 if v < head[d] else -(d >> 1)
                return (math.atan2(y1 - y0, x1 - x0), tie)

            rot[v].sort(key=key)
    else:
        raise BadInput("an embedding needs rotations or coordinates")

    sigma = _sigma_from_rotations(rot, 2 * m)
    _check_connected(n, tail, head)
    g = PlanarGraph(n, tail, head, length, present, [False] * (2 * m), sigma, coords)
    f = g.num_faces()
    if n - m + f != 2:
        raise NonPlanarEmbedding(f"Euler check failed: n - m + f = {n} - {m} + {f} != 2")
    return g


def faces(g: PlanarGraph) -> list[list[int]]:
    return g.faces()


def length_bound(g: PlanarGraph) -> int:
    """1 + sum of |length| over present darts."""
    return 1 + sum(abs(g.length[d]) for d in range(g.num_darts) if g.present[d])


def triangulate(g: PlanarGraph) -> PlanarGraph:
    """Return a triangulated, fully bidirectional copy of ``g``.

    Parallel edges are merged (shortest length per direction), every face is
    cut into triangles by chords, and every missing direction gets the length
    ``BIG = 1 + sum |l|``.  Any path using a ``BIG`` dart is longer than every
    simple path of ``g``, so finite distances of ``g`` are unchanged.
    """
    big = length_bound(g)
    if (g.n + 1) * big >= LENGTH_LIMIT:
        raise Overflow(f"n * BIG = {(g.n + 1) * big} does not fit the 2^60 distance budget")

    # merge parallel edges
    rep: dict[tuple[int, int], int] = {}
    tail: list[int] = []
    head: list[int] = []
    length: list[int] = []
    present: list[bool] = []
    origin: list[int] = []
    dart_map = [-1] * g.num_darts
    for e in range(g.num_edges):
        t, h = g.tail[2 * e], g.head[2 * e]
        key = (t, h) if t < h else (h, t)
        k = rep.get(key)
        if k is None:
            k = len(tail) // 2
            rep[key] = k
            tail += [t, h]
            head += [h, t]
            length += [0, 0]
            present += [False, False]
            origin += [-1, -1]
            dart_map[2 * e] = 2 * k
            dart_map[2 * e + 1] = 2 * k + 1
        for d in (2 * e, 2 * e + 1):
            nd = 2 * k if g.tail[d] == tail[2 * k] else 2 * k + 1
            if g.present[d]:
                if not present[nd] or g.length[d] < length[nd]:
                    length[nd] = g.length[d]
                    origin[nd] = d
                present[nd] = True
    aux = [False] * len(tail)
    rot = [[dart_map[d] for d in g.rotation(v) if dart_map[d] >= 0] for v in range(g.n)]
    sigma = _sigma_from_rotations(rot, len(tail))
    pred = [0] * len(tail)
    for d, s in enumerate(sigma):
        pred[s] = d

    base = PlanarGraph(g.n, tail, head, length, present, aux, sigma)
    walks = [list(w) for w in base.faces()] if g.n >= 3 else []
    adj = set(rep)

    def add_chord(a: int, c: int) -> int:
        x = len(tail)
        tail.extend((a, c))
        head.extend((c, a))
        length.extend((big, big))
        present.extend((True, True))
        aux.extend((True, True))
        origin.extend((-1, -1))
        sigma.extend((0, 0))
        pred.extend((0, 0))
        adj.add((a, c) if a < c else (c, a))
        return x

    for w in walks:
        i = 0
        fails = 0
        while len(w) > 3:
            k = len(w)
            j1, j2 = (i - 1) % k, i % k
            d1, d2 = w[j1], w[j2]
            a, c = tail[d1], head[d2]
            if a != c and ((a, c) if a < c else (c, a)) not in adj:
                x = add_chord(a, c)
                p = pred[d1]
                sigma[p], pred[x], sigma[x], pred[d1] = x, p, d1, x
                r = d2 ^ 1
                s = sigma[r]
                sigma[r], pred[x ^ 1], sigma[x ^ 1], pred[s] = x ^ 1, r, s, x ^ 1
                if j1 < j2:
                    w[j1 : j2 + 1] = [x]
                    i = j1
                else:
                    w[:] = [x] + w[1 : k - 1]
                    i = 0
                fails = 0
            else:
                i += 1
                fails += 1
                if fails > k:
                    raise NonPlanarEmbedding("face admits no chord; embedding is inconsistent")

    for d in range(len(tail)):
        if not present[d]:
            present[d] = True
            aux[d] = True
            length[d] = big
    out = PlanarGraph(g.n, tail, head, length, present, aux, sigma)
    out.big = big
    out.origin = origin  # input dart behind each dart, -1 for added ones
    return out


def is_triangulated(g: PlanarGraph) -> bool:
    return all(len(f) == 3 for f in g.faces())
