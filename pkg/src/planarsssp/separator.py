"""Cycle separators and r-divisions of a triangulated planar graph.

A region is a set of triangles of one fixed triangulated *host* graph.  Its
subgraph consists of the edges of those triangles.  Faces of that subgraph are
the triangles themselves plus larger walks; a walk that is not already a face
of the graph being divided is a *boundary cycle* (the external face or a
hole), and every vertex on one is a boundary vertex.  Boundary walks are face
walks, so a vertex may occur on one more than once.

Separators are fundamental cycles: every hole is coned off with a virtual
vertex, a BFS tree is grown, and the non-tree edges form a spanning tree of
the dual.  Cutting the dual tree edge that best balances the face weights
splits the region along the corresponding cycle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace


from .errors import InvalidHole, ParameterTooSmall
from .graph import PlanarGraph
from .sssp import ArcGraph

BOUNDARY_FACTOR = 4.0
RETRIES = 3


class Host:
    """A triangulated graph with its faces and rotations precomputed."""

    def __init__(self, g: PlanarGraph):
        self.g = g
        self.n = g.n
        self.tail = g.tail
        self.head = g.head
        self.length = g.length
        self.faces = g.faces()
        self.face_of = g.face_of
        self.rot = [g.rotation(v) for v in range(g.n)]


class Piece:
    """The subgraph spanned by a set of host triangles.

    ``parent`` maps darts of the enclosing piece's non-triangle faces to
    ``(walk id, walk length)``; walks equal to one of those are faces of the
    enclosing piece and do not count as boundary.
    """

    def __init__(self, host: Host, faces, parent: dict | None = None):
        self.host = host
        self.faces = sorted(faces)
        fset = set(self.faces)
        hf = host.faces
        face_of = host.face_of
        tail = host.tail
        in_r = set()
        for f in self.faces:
            for d in hf[f]:
                in_r.add(d)
                in_r.add(d ^ 1)
        self.darts = sorted(in_r)
        self.vertices = sorted({tail[d] for d in self.darts})
        rsig = {}
        for v in self.vertices:
            sel = [d for d in host.rot[v] if d in in_r]
            k = len(sel)
            for i in range(k):
                rsig[sel[i]] = sel[(i + 1) % k if k else 0]
        self.rsig = rsig
        walks = []
        seen = set()
        for d in self.darts:
            if d in seen or face_of[d] in fset:
                continue
            w = []
            x = d
            while x not in seen:
                seen.add(x)
                w.append(x)
                x = rsig[x ^ 1]
            walks.append(w)
        self.walks = walks
        cycles = []
        for w in walks:
            if parent:
                ids = {parent.get(d, (None, 0))[0] for d in w}
                if len(ids) == 1:
                    hid = next(iter(ids))
                    if hid is not None and parent[w[0]][1] == len(w):
                        continue
            cycles.append(w)
        cycles.sort(key=lambda w: (min(tail[d] for d in w), min(w)))
        self.cycles = cycles
        self.boundary = sorted({tail[d] for w in cycles for d in w})
        self._local = None

    @property
    def nv(self) -> int:
        return len(self.vertices)

    def walk_index(self) -> dict:
        """Dart -> (walk id, walk length) for every non-triangle face."""
        out = {}
        for i, w in enumerate(self.walks):
            for d in w:
                out[d] = (i, len(w))
        return out

    def local(self):
        """``(index, ArcGraph)`` with vertices renumbered 0..nv-1 in id order;
        arc ids are host darts."""
        if self._local is None:
            index = {v: i for i, v in enumerate(self.vertices)}
            tail, head, length = self.host.tail, self.host.head, self.host.length
            ds = self.darts
            t = [index[tail[d]] for d in ds]
            h = [index[head[d]] for d in ds]
            ln = [length[d] for d in ds]
            self._local = (index, ArcGraph(len(self.vertices), t, h, ln, ds))
        return self._local


def face_components(host: Host, faces) -> list[list[int]]:
    """Split a triangle set into classes connected through shared edges."""
    fset = set(faces)
    face_of = host.face_of
    hf = host.faces
    comp = {}
    out = []
    for f0 in sorted(fset):
        if f0 in comp:
            continue
        cid = len(out)
        comp[f0] = cid
        stack = [f0]
        members = []
        while stack:
            f = stack.pop()
            members.append(f)
            for d in hf[f]:
                g = face_of[d ^ 1]
                if g in fset and g not in comp:
                    comp[g] = cid
                    stack.append(g)
        out.append(members)
    return out


@dataclass
class Split:
    sides: tuple[list[int], list[int]]
    cycle: list[int]  # host vertex ids on the separating cycle
    weights: tuple[int, int]


def _fundamental_split(piece: Piece, weight: dict, root: int) -> Split | None:
    host = piece.host
    tail, head, face_of = host.tail, host.head, host.face_of
    verts = piece.vertices
    index = {v: i for i, v in enumerate(verts)}
    nv = len(verts)
    nf = len(piece.faces)
    fidx = {f: i for i, f in enumerate(piece.faces)}
    walks = piece.walks
    # cone faces get ids after the triangles, one per walk dart
    cone_id = {}
    for w in walks:
        for d in w:
            cone_id[d] = nf + len(cone_id)
    nfaces = nf + len(cone_id)

    # primal edges: (u, v, face_a, face_b)
    eu, ev, fa, fb = [], [], [], []
    for d in piece.darts:
        if d & 1:
            continue
        a = fidx.get(face_of[d])
        if a is None:
            a = cone_id[d]
        b = fidx.get(face_of[d ^ 1])
        if b is None:
            b = cone_id[d ^ 1]
        eu.append(index[tail[d]])
        ev.append(index[head[d]])
        fa.append(a)
        fb.append(b)
    for k, w in enumerate(walks):
        x = nv + k
        L = len(w)
        for i in range(L):
            eu.append(x)
            ev.append(index[tail[w[i]]])
            fa.append(cone_id[w[i - 1]])
            fb.append(cone_id[w[i]])
    ntot = nv + len(walks)
    adj = [[] for _ in range(ntot)]
    for e in range(len(eu)):
        adj[eu[e]].append(e)
        adj[ev[e]].append(e)

    par_e = [-1] * ntot
    depth = [-1] * ntot
    depth[root] = 0
    q = deque([root])
    tree = bytearray(len(eu))
    while q:
        u = q.popleft()
        for e in adj[u]:
            w = ev[e] if eu[e] == u else eu[e]
            if depth[w] < 0:
                depth[w] = depth[u] + 1
                par_e[w] = e
                tree[e] = 1
                q.append(w)
    if min(depth) < 0:
        return None

    dadj = [[] for _ in range(nfaces)]
    for e in range(len(eu)):
        if not tree[e]:
            dadj[fa[e]].append(e)
            dadj[fb[e]].append(e)
    fw = [0] * nfaces
    for v, wt in weight.items():
        if wt:
            fw[_home_face(piece, v, fidx)] += wt
    dpar = [-2] * nfaces
    dpar[0] = -1
    order = [0]
    for f in order:
        for e in dadj[f]:
            g = fb[e] if fa[e] == f else fa[e]
            if dpar[g] == -2:
                dpar[g] = e
                order.append(g)
    if len(order) != nfaces:
        return None
    sub = fw[:]
    for f in reversed(order[1:]):
        e = dpar[f]
        g = fb[e] if fa[e] == f else fa[e]
        sub[g] += sub[f]
    total = sub[0]
    best, best_key = -1, None
    for f in order[1:]:
        key = max(sub[f], total - sub[f])
        if best_key is None or key < best_key:
            best, best_key = f, key
    if best < 0:
        return None
    inside = {best}
    stack = [best]
    while stack:
        f = stack.pop()
        for e in dadj[f]:
            if e == dpar[f]:
                continue
            g = fb[e] if fa[e] == f else fa[e]
            if dpar[g] == e and g not in inside:
                inside.add(g)
                stack.append(g)
    side1 = [piece.faces[f] for f in inside if f < nf]
    side2 = [piece.faces[f] for f in range(nf) if f not in inside]
    # the cycle: tree paths from both ends of the cut edge to their meeting point
    e = dpar[best]
    a, b = eu[e], ev[e]
    pa = [a]
    while par_e[pa[-1]] >= 0:
        x = pa[-1]
        pe = par_e[x]
        pa.append(ev[pe] if eu[pe] == x else eu[pe])
    on_a = {x: i for i, x in enumerate(pa)}
    pb = [b]
    while pb[-1] not in on_a:
        x = pb[-1]
        pe = par_e[x]
        pb.append(ev[pe] if eu[pe] == x else eu[pe])
    cyc = pa[: on_a[pb[-1]] + 1] + pb[-2::-1]
    cycle = [verts[x] for x in cyc if x < nv]
    w1 = sum(fw[f] for f in inside)
    return Split((side1, side2), cycle, (w1, total - w1))


def _home_face(piece: Piece, v_local: int, fidx: dict) -> int:
    host = piece.host
    v = piece.vertices[v_local]
    for d in host.rot[v]:
        f = fidx.get(host.face_of[d])
        if f is not None:
            return f
    raise AssertionError("region vertex without a region triangle")


def _fallback_split(piece: Piece) -> Split:
    # halve the triangles in dual BFS order; always makes progress
    host = piece.host
    fset = set(piece.faces)
    start = piece.faces[0]
    seen = {start}
    order = [start]
    for f in order:
        for d in host.faces[f]:
            g = host.face_of[d ^ 1]
            if g in fset and g not in seen:
                seen.add(g)
                order.append(g)
    half = len(order) // 2
    s1 = order[:half]
    s2 = order[half:]
    v1 = {host.tail[d] for f in s1 for d in host.faces[f]}
    v2 = {host.tail[d] for f in s2 for d in host.faces[f]}
    return Split((s1, s2), sorted(v1 & v2), (len(s1), len(s2)))


def split_piece(piece: Piece, weight: dict, budget: float | None = None) -> Split:
    """Balanced fundamental-cycle split of a piece.

    ``weight`` maps local vertex indices to integer weights.  Up to
    ``RETRIES`` further BFS roots are tried when the first cycle is longer
    than ``budget`` or the split is degenerate.
    """
    nv = piece.nv
    roots = [0]
    best = None
    tried = set()
    for attempt in range(RETRIES + 1):
        if attempt >= len(roots):
            break
        root = roots[attempt]
        if root in tried:
            continue
        tried.add(root)
        s = _fundamental_split(piece, weight, root)
        if s is not None and s.sides[0] and s.sides[1]:
            if best is None or (max(s.weights), len(s.cycle)) < (max(best.weights), len(best.cycle)):
                best = s
            if budget is None or len(s.cycle) <= budget:
                break
        # next roots: spread over the vertex order
        roots.append((attempt + 1) * nv // (RETRIES + 1))
    if best is None:
        best = _fallback_split(piece)
    return best


@dataclass
class Region:
    """A region of an r-division (see the module docstring)."""

    piece: Piece = field(repr=False)
    vertices: list[int]
    cycles: list[list[int]]  # boundary dart walks; cycles[0] is external
    boundary: list[int]
    source: int

    @property
    def h(self) -> int:
        return max(len(self.cycles) - 1, 0)

    def cycle_vertices(self, k: int) -> list[int]:
        t = self.piece.host.tail
        return [t[d] for d in self.cycles[k]]


def region_from_piece(piece: Piece) -> Region:
    tail = piece.host.tail
    if piece.cycles:
        src = min(tail[d] for d in piece.cycles[0])
    else:
        src = piece.vertices[0]
    return Region(piece, piece.vertices, [list(w) for w in piece.cycles], piece.boundary, src)


def make_hole_external(reg: Region, hole: int) -> Region:
    """Swap hole ``hole`` (0-based among the holes) with the external cycle.

    Regions live on the sphere, so this only changes which boundary walk is
    designated external.
    """
    if not 0 <= hole < reg.h:
        raise InvalidHole(f"region has {reg.h} holes; no hole {hole}")
    cycles = list(reg.cycles)
    cycles[0], cycles[hole + 1] = cycles[hole + 1], cycles[0]
    return replace(reg, cycles=cycles)


@dataclass
class RDivision:
    r: int
    regions: list[Region]
    boundary: list[int]
    membership: dict  # vertex -> list of region indices
    n: int
    splits: int = 0

    def boundary_constant(self) -> float:
        if not self.regions:
            return 0.0
        return max(len(R.boundary) for R in self.regions) / math.sqrt(self.r)

    def count_constant(self) -> float:
        return len(self.regions) * self.r / max(self.n, 1)

    def max_holes(self) -> int:
        return max((R.h for R in self.regions), default=0)

    def dump(self) -> str:
        return "\n".join(
            f"region {i} nv={len(R.vertices)} nb={len(R.boundary)} holes={R.h}" for i, R in enumerate(self.regions)
        )


def _as_piece(g) -> Piece:
    if isinstance(g, Piece):
        return g
    if isinstance(g, Host):
        host = g
    else:
        host = Host(g)
    return Piece(host, range(len(host.faces)))


def r_division(g, r: int, boundary_factor: float = BOUNDARY_FACTOR) -> RDivision:
    """Divide a triangulated graph (or a piece of one) into regions of at most
    ``r`` vertices and at most ``boundary_factor * sqrt(r)`` boundary
    vertices where the separators allow it."""
    if r < 4:
        raise ParameterTooSmall(f"r must be at least 4, got {r}")
    top = _as_piece(g)
    host = top.host
    parent = top.walk_index()
    budget = boundary_factor * math.sqrt(r)
    work = face_components(host, top.faces)
    done: list[Piece] = []
    splits = 0
    while work:
        F = work.pop()
        P = Piece(host, F, parent)
        if P.nv > r:
            weight = {i: 1 for i in range(P.nv)}
        elif len(P.boundary) > budget and len(F) > 1:
            bset = set(P.boundary)
            weight = {i: 1 for i, v in enumerate(P.vertices) if v in bset}
        else:
            done.append(P)
            continue
        s = split_piece(P, weight, budget)
        splits += 1
        for side in s.sides:
            work.extend(face_components(host, side))
    return _assemble(top, done, r, splits)


def _assemble(top: Piece, pieces: list[Piece], r: int, splits: int) -> RDivision:
    pieces.sort(key=lambda P: P.faces[0])
    regions = [region_from_piece(P) for P in pieces]
    membership: dict[int, list[int]] = {}
    for i, R in enumerate(regions):
        for v in R.vertices:
            membership.setdefault(v, []).append(i)
    B = sorted({v for R in regions for v in R.boundary})
    return RDivision(r, regions, B, membership, top.nv, splits)


def division_from_groups(g, groups, r: int | None = None) -> RDivision:
    """Division whose regions are the given face sets (each split further
    into edge-connected components).  ``r`` defaults to the largest region."""
    top = _as_piece(g)
    parent = top.walk_index()
    seen = set()
    pieces = []
    for grp in groups:
        grp = list(grp)
        seen.update(grp)
        for comp in face_components(top.host, grp):
            pieces.append(Piece(top.host, comp, parent))
    if seen != set(top.faces):
        raise ValueError("face groups must partition the faces of the piece")
    if r is None:
        r = max(P.nv for P in pieces)
    return _assemble(top, pieces, r, 0)


def cycle_separator(g) -> list[int]:
    """Vertices of a balanced separating cycle of a triangulated graph.

    Removing them leaves components of at most ``2n/3`` vertices whenever
    one of the tried BFS roots achieves it; the most balanced is returned.
    """
    piece = _as_piece(g)
    n = piece.nv
    if n <= 3:
        return list(piece.vertices)
    weight = {i: 1 for i in range(n)}
    best = None
    for attempt in range(RETRIES + 1):
        root = attempt * n // (RETRIES + 1)
        s = _fundamental_split(piece, weight, root)
        if s is None:
            continue
        worst = largest_component_without(piece, s.cycle)
        if best is None or worst < best[0]:
            best = (worst, s.cycle)
        if worst <= 2 * n / 3:
            break
    return best[1] if best else list(piece.vertices)


def largest_component_without(piece: Piece, removed) -> int:
    host = piece.host
    gone = set(removed)
    seen = set(gone)
    best = 0
    for v0 in piece.vertices:
        if v0 in seen:
            continue
        seen.add(v0)
        q = [v0]
        cnt = 0
        while q:
            u = q.pop()
            cnt += 1
            for d in host.rot[u]:
                w = host.head[d]
                if w not in seen:
                    seen.add(w)
                    q.append(w)
        best = max(best, cnt)
    return best
