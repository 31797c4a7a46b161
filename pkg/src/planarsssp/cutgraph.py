"""Cutting a region open along a path between two boundary walks.

For boundary walks ``C1`` and ``C2`` of a region, a shortest-path tree from a
vertex of ``C1`` gives two extreme root-to-leaf paths (always turning to the
first tree edge counterclockwise, resp. clockwise, after the edge we came
in on).  Cutting along such a path duplicates its vertices into a left and a
right copy; the two walks and both sides of the path then bound a single
face, so distances from corners of ``C1`` to corners of ``C2`` in the cut
graph form a convex Monge matrix.

Corner positions: position ``k`` of ``C1`` (``0 <= k <= K``) is the tail of
the ``k``-th dart of the walk started at the cut corner, with position ``K``
being the second copy of the start vertex; likewise for ``C2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MalformedPath
from .sssp import ArcGraph, dijkstra


@dataclass
class CutGraph:
    graph: ArcGraph
    copy_of: np.ndarray  # cut vertex -> region-local vertex
    p1: list[int]  # cut vertex of every corner position of C1
    p2: list[int]
    p1_vertices: list[int]  # host vertex of every corner position
    p2_vertices: list[int]
    path: list[int]  # host darts of the cut path
    # copies of walk vertices lying on the path that own no corner of the walk
    p1_extra: list[int]
    p2_extra: list[int]
    p1_extra_vertices: list[int]
    p2_extra_vertices: list[int]
    rotation: dict = field(repr=False)  # cut dart -> ccw successor, for audits
    corners: dict = field(repr=False)  # (cut dart, successor) -> copy owning that corner


def rotate(walk: list[int], i: int) -> list[int]:
    return walk[i:] + walk[:i]


def region_pred(piece) -> dict:
    return {s: d for d, s in piece.rsig.items()}


def shortest_path_tree(ctx, root_host: int):
    """Parent dart (host id or -1) of every region-local vertex in a
    shortest-path tree from ``root_host``, computed with the region price."""
    res = dijkstra(ctx.graph, ctx.index[root_host], ctx.phi)
    return res.parent


def extreme_path(ctx, parent, c1: list[int], i: int, c2_vertices: set, side: str) -> list[int]:
    """Rightmost (``side="right"``) or leftmost root-to-leaf path of the tree
    pruned to the vertices of ``C2``; the root is the tail of ``c1[i]``."""
    piece = ctx.region.piece
    host = piece.host
    head, tail = host.head, host.tail
    index = ctx.index
    root = tail[c1[i]]
    keep = set()
    for v in c2_vertices:
        while v not in keep:
            keep.add(v)
            if v == root:
                break
            v = tail[int(parent[index[v]])]
    children: dict[int, set] = {}
    for v in keep:
        if v != root:
            d = int(parent[index[v]])
            children.setdefault(tail[d], set()).add(d)
    if side == "right":
        step = piece.rsig
        d = c1[i]
    else:
        step = region_pred(piece)
        d = c1[i - 1] ^ 1
    u = root
    path = []
    while u in children:
        kids = children[u]
        while d not in kids:
            d = step[d]
        path.append(d)
        u = head[d]
        d = step[d ^ 1]
    return path


def trim_path(path: list[int], tail, head, c1_vertices: set, c2_vertices: set, start: int):
    """Subpath from its last vertex on ``C1`` to the next vertex on ``C2``,
    with those two end vertices."""
    verts = [start] + [head[d] for d in path]
    a = max(k for k, v in enumerate(verts) if v in c1_vertices)
    b = next(k for k in range(a, len(verts)) if verts[k] in c2_vertices)
    return path[a:b], verts[a], verts[b]


def _interval(step, start, stop):
    out = []
    d = start
    while d != stop:
        out.append(d)
        d = step[d]
    return out


def build_cut_graph(ctx, c1: list[int], i: int, c2: list[int], j: int, path: list[int]) -> CutGraph:
    """Cut the region open along ``path`` (host darts), a simple path from the
    tail of ``c1[i]`` to the tail of ``c2[j]``.

    Every path vertex gets a right copy (its own local id) and a left copy;
    the end vertices are split at the chosen corners of the two walks.
    Interior path vertices may touch either walk, which leaves the cut open
    region pinched there but still bounded by one face.
    """
    piece = ctx.region.piece
    host = piece.host
    tail, head, length = host.tail, host.head, host.length
    rsig = piece.rsig
    index = ctx.index
    nv = len(piece.vertices)
    x0, xm = tail[c1[i]], tail[c2[j]]
    verts = [x0] + [head[d] for d in path]
    for k, d in enumerate(path):
        if d not in rsig or tail[d] != verts[k]:
            raise MalformedPath("path darts are not consecutive region darts")
    if verts[-1] != xm:
        raise MalformedPath("path does not end at the chosen corner of the second walk")
    if len(set(verts)) != len(verts):
        raise MalformedPath("path is not simple")
    m = len(path)
    pos_of = {v: k for k, v in enumerate(verts)}

    side: dict[int, str] = {}
    rot: dict = {}
    owner: dict = {}  # (cut dart, next cut dart) -> copy, for real corners

    def link(seq, copy_id, slit_last):
        for a in range(len(seq)):
            nxt = seq[(a + 1) % len(seq)]
            rot[seq[a]] = nxt
            if not (slit_last and a == len(seq) - 1):
                owner[(seq[a], nxt)] = copy_id

    for k in range(m + 1):
        fwd = path[k] if k < m else None
        back = path[k - 1] ^ 1 if k > 0 else None
        # left: strictly ccw-after the forward marker, strictly before the backward one
        f_after = rsig[fwd] if fwd is not None else c2[j]
        f_stop = fwd if fwd is not None else c2[j]
        b_after = rsig[back] if back is not None else c1[i]
        b_stop = back if back is not None else c1[i]
        left = _interval(rsig, f_after, b_stop) if f_after != b_stop else []
        right = _interval(rsig, b_after, f_stop) if b_after != f_stop else []
        for d in left:
            side[d] = "L"
        for d in right:
            side[d] = "R"
        lseq = ([(fwd, "L")] if fwd is not None else []) + [(d, "") for d in left]
        lseq += [(back, "L")] if back is not None else []
        rseq = ([(back, "R")] if back is not None else []) + [(d, "") for d in right]
        rseq += [(fwd, "R")] if fwd is not None else []
        # at interior vertices the wrap-around of each side is the slit itself
        interior = fwd is not None and back is not None
        if lseq:
            link(lseq, nv + k, interior)
        if rseq:
            link(rseq, index[verts[k]], interior)

    def copy(u: int, s: str) -> int:
        k = pos_of.get(u)
        if k is not None and s == "L":
            return nv + k
        return index[u]

    def tail_copy(d: int) -> int:
        return copy(tail[d], side.get(d, "R"))

    ct, ch, cl = [], [], []
    pathset = set(path) | {d ^ 1 for d in path}
    for d in piece.darts:
        if d in pathset:
            for s in ("L", "R"):
                ct.append(copy(tail[d], s))
                ch.append(copy(head[d], s))
                cl.append(length[d])
        else:
            ct.append(tail_copy(d))
            ch.append(tail_copy(d ^ 1))
            cl.append(length[d])
    copy_of = np.concatenate([np.arange(nv, dtype=np.int64), np.array([index[v] for v in verts], dtype=np.int64)])
    graph = ArcGraph(nv + m + 1, ct, ch, cl)
    for v in piece.vertices:
        if v in pos_of:
            continue
        seq = []
        d0 = next(d for d in host.rot[v] if d in rsig)
        d = d0
        while True:
            seq.append((d, ""))
            d = rsig[d]
            if d == d0:
                break
        link(seq, index[v], False)

    def versions(d):
        return [(d, "L"), (d, "R")] if d in pathset else [(d, "")]

    def corner_copy(walk, k):
        a, b = walk[k - 1] ^ 1, walk[k]
        u = tail[b]
        if u not in pos_of:
            return index[u]
        for x in versions(a):
            for y in versions(b):
                c = owner.get((x, y))
                if c is not None:
                    return c
        raise MalformedPath(f"corner at vertex {u} not found in the cut")

    K, L = len(c1), len(c2)
    p1 = [index[x0]] + [corner_copy(c1, (i + k) % K) for k in range(1, K)] + [nv]
    p2 = [nv + m] + [corner_copy(c2, (j + k) % L) for k in range(1, L)] + [index[xm]]
    c1r, c2r = rotate(c1, i), rotate(c2, j)
    on1 = {tail[d] for d in c1}
    on2 = {tail[d] for d in c2}
    x1, x2 = [], []
    s1, s2 = set(p1), set(p2)
    for k, v in enumerate(verts):
        for c in (index[v], nv + k):
            if v in on1 and c not in s1:
                x1.append(c)
            if v in on2 and c not in s2:
                x2.append(c)
    return CutGraph(
        graph,
        copy_of,
        p1,
        p2,
        [tail[d] for d in c1r] + [x0],
        [tail[d] for d in c2r] + [xm],
        list(path),
        x1,
        x2,
        [piece.vertices[int(copy_of[c])] for c in x1],
        [piece.vertices[int(copy_of[c])] for c in x2],
        rot,
        owner,
    )


def merged_face(cut: CutGraph, c1: list[int], i: int) -> list:
    """Face walk of the cut graph through the first dart of the cut ``C1``
    walk, as a list of ``(host dart, side)`` keys."""
    rot = cut.rotation
    # the walk may start along the path, whose darts carry a side
    start = (c1[i], "") if (c1[i], "") in rot else (c1[i], "R")
    walk = [start]
    x = start
    while True:
        d, s = x
        r = (d ^ 1, s)
        x = rot[r]
        if x == start:
            break
        walk.append(x)
        if len(walk) > 4 * len(rot) + 4:
            raise AssertionError("face walk does not close")
    return walk


def count_faces(cut: CutGraph) -> int:
    rot = cut.rotation
    seen = set()
    f = 0
    for x0 in rot:
        if x0 in seen:
            continue
        f += 1
        x = x0
        while x not in seen:
            seen.add(x)
            d, s = x
            x = rot[(d ^ 1, s)]
    return f


def cut_table(ctx, cut: CutGraph) -> np.ndarray:
    """Distances in the cut graph from the ``C1`` corners followed by the
    extra ``C1`` copies, to the ``C2`` corners followed by the extra ``C2``
    copies, using the region price on both copies of a vertex.  The block of
    corners against corners is the convex Monge part."""
    phi = ctx.phi[cut.copy_of]
    rows = cut.p1 + cut.p1_extra
    cols = np.array(cut.p2 + cut.p2_extra, dtype=np.int64)
    out = np.empty((len(rows), len(cols)), dtype=np.int64)
    done: dict[int, np.ndarray] = {}
    for k, s in enumerate(rows):
        row = done.get(s)
        if row is None:
            row = dijkstra(cut.graph, s, phi).dist[cols]
            done[s] = row
        out[k] = row
    return out


def choose_root(c1: list[int], c2_vertices: set, tail) -> int:
    """Corner of ``C1`` for the tree root: a vertex seen once on ``C1`` and
    not on ``C2`` when possible, lowest id first."""
    count: dict[int, int] = {}
    for d in c1:
        count[tail[d]] = count.get(tail[d], 0) + 1
    best = None
    for k, d in enumerate(c1):
        v = tail[d]
        key = (count[v] > 1, v in c2_vertices, v, k)
        if best is None or key < best[0]:
            best = (key, k)
    return best[1]


def first_corner(walk: list[int], v: int, tail) -> int:
    for k, d in enumerate(walk):
        if tail[d] == v:
            return k
    raise MalformedPath(f"vertex {v} is not on the walk")
