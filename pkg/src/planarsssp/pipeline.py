"""Recursive single-source shortest paths for planar graphs with negative lengths.

Outline for a piece with more than ``N0`` vertices:

1. divide it into regions (``r = ceil(n / p)``) and solve each region from
   its own root recursively, which gives a feasible price per region;
2. tabulate distances between the boundary vertices of every region, one
   reduced-cost Dijkstra per boundary vertex;
3. run Bellman-Ford over the global boundary set where every round relaxes
   whole boundary walks at once through column minima of Monge matrices;
   pairs of distinct walks of a region are handled through two cut graphs;
4. extend the boundary distances into every region with an apex vertex;
5. reroot at the real source using the distances from step 4 as prices.

Every stage is a plain function over :class:`RegionContext` objects so the
tests can audit them one by one.
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .cutgraph import (
    build_cut_graph,
    choose_root,
    cut_table,
    extreme_path,
    first_corner,
    shortest_path_tree,
)
from .errors import InfeasiblePrice, NegativeCycleDetected
from .graph import INF, PlanarGraph, triangulate
from .monge import monge_violations
from .separator import Host, Piece, RDivision, Region, r_division
from .sssp import ArcGraph, DistanceResult, NegativeCycleWitness, bellman_ford_oracle, check_feasible, dijkstra

N0 = 64


def choose_p(n: int) -> int:
    if n < 2:
        raise ValueError("need at least two vertices")
    return max(2, int(math.log2(n)) // 2)


def division_parameter(n: int) -> int:
    return max(4, math.ceil(n / choose_p(n)))


@dataclass
class Telemetry:
    counters: dict = field(default_factory=lambda: defaultdict(int))
    times: dict = field(default_factory=lambda: defaultdict(float))
    levels: list = field(default_factory=list)

    def add(self, key: str, value: int = 1) -> None:
        self.counters[key] += value

    def peak(self, key: str, value: int) -> None:
        self.counters[key] = max(self.counters[key], value)

    @contextmanager
    def stage(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.times[name] += time.perf_counter() - t0

    def report(self) -> str:
        """``key=value`` lines, counters first, then stage seconds."""
        lines = [f"{k}={v}" for k, v in sorted(self.counters.items())]
        lines += [f"time_{k}={v:.6f}" for k, v in sorted(self.times.items())]
        return "\n".join(lines)


class RegionContext:
    """A region together with its price and boundary distance table."""

    def __init__(self, region: Region, phi: np.ndarray):
        self.region = region
        self.index, self.graph = region.piece.local()
        self.phi = np.asarray(phi, dtype=np.int64)
        self.bverts = list(region.boundary)
        self.bpos = {v: i for i, v in enumerate(self.bverts)}
        self.blocal = np.array([self.index[v] for v in self.bverts], dtype=np.int64)
        self.table: np.ndarray | None = None


@dataclass
class Job:
    """One relaxation family: ``e[cols[l]] <- min_k e[rows[k]] + D[k, l]``."""

    kind: str  # "cyclic", "rect" or "brute"
    rows: np.ndarray  # global boundary indices
    cols: np.ndarray
    D: np.ndarray
    region: int = -1
    pair: tuple = ()

    def __post_init__(self):
        self.D = np.ascontiguousarray(self.D, dtype=np.int64)


def intra_region_boundary_distances(ctx: RegionContext) -> np.ndarray:
    """``table[i, j] = d_R(b_i, b_j)`` over the region's boundary vertices."""
    nb = len(ctx.bverts)
    table = np.empty((nb, nb), dtype=np.int64)
    for i in range(nb):
        res = dijkstra(ctx.graph, int(ctx.blocal[i]), ctx.phi)
        table[i] = res.dist[ctx.blocal]
    ctx.table = table
    return table


def _cycle_bidx(ctx: RegionContext, k: int) -> list[int]:
    return [ctx.bpos[v] for v in ctx.region.cycle_vertices(k)]


def same_cycle_job(ctx: RegionContext, k: int, gidx: dict, tele: Telemetry) -> Job:
    """Relaxation of all pairs on boundary walk ``k``.

    Walk positions are reversed so that the matrix is Monge on the blocks
    whose rows precede (or follow) their columns; a walk revisiting a
    vertex can break that, in which case a full scan is used instead.
    """
    bi = _cycle_bidx(ctx, k)[::-1]
    D = ctx.table[np.ix_(bi, bi)]
    g = np.array([gidx[ctx.bverts[i]] for i in bi], dtype=np.int64)
    kind = "cyclic"
    if monge_violations(D, True) or monge_violations(D, False):
        kind = "brute"
        tele.add("fallback_same_cycle")
    return Job(kind, g, g, D, pair=(k, k))


def cross_cycle_cuts(ctx: RegionContext, a: int, b: int):
    """Both cut graphs for relaxing from walk ``a`` to walk ``b``.

    Returns a list of ``(cut, table)``; the two cuts coincide when the
    rightmost and leftmost paths agree.
    """
    reg = ctx.region
    host = reg.piece.host
    tail, head = host.tail, host.head
    c1, c2 = reg.cycles[a], reg.cycles[b]
    on2 = {tail[d] for d in c2}
    i0 = choose_root(c1, on2, tail)
    root = tail[c1[i0]]
    parent = shortest_path_tree(ctx, root)
    out = []
    seen = set()
    for side in ("right", "left"):
        path = extreme_path(ctx, parent, c1, i0, on2, side)
        leaf = head[path[-1]] if path else root
        j = first_corner(c2, leaf, tail)
        key = (j, tuple(path))
        if key in seen:
            continue
        seen.add(key)
        cut = build_cut_graph(ctx, c1, i0, c2, j, path)
        out.append((cut, cut_table(ctx, cut)))
    return out


def cross_cycle_jobs(
    ctx: RegionContext, a: int, b: int, gidx: dict, tele: Telemetry, audit: bool = True, sink: list | None = None
) -> list[Job]:
    """Relaxations from walk ``a`` to walk ``b``: a Monge block per cut, plus
    full scans for the few copies of walk vertices that the cut path touches.
    Falls back to the whole in-region block if an audit fails."""
    cuts = cross_cycle_cuts(ctx, a, b)
    jobs = []
    ok = True

    def gi(vs):
        return np.array([gidx[v] for v in vs], dtype=np.int64)

    for cut, F in cuts:
        tele.add("cut_graphs")
        K1, L1 = len(cut.p1), len(cut.p2)
        A = F[:K1, :L1]
        if sink is not None:
            sink.append(A)
        if (F >= INF).any() or monge_violations(A):
            ok = False
        rows = gi(cut.p1_vertices)
        cols = gi(cut.p2_vertices)
        jobs.append(Job("rect", rows, cols, A, pair=(a, b)))
        if cut.p1_extra:
            tele.add("cut_extra_rows", len(cut.p1_extra))
            jobs.append(Job("brute", gi(cut.p1_extra_vertices), np.concatenate([cols, gi(cut.p2_extra_vertices)]), F[K1:], pair=(a, b)))
        if cut.p2_extra:
            tele.add("cut_extra_cols", len(cut.p2_extra))
            jobs.append(Job("brute", rows, gi(cut.p2_extra_vertices), F[:K1, L1:], pair=(a, b)))
    u1 = sorted(set(_cycle_bidx(ctx, a)))
    u2 = sorted(set(_cycle_bidx(ctx, b)))
    full = ctx.table[np.ix_(u1, u2)]
    if ok and audit:
        # together the cuts must reproduce every in-region distance
        best = np.full(full.shape, INF, dtype=np.int64)
        p1 = {ctx.bverts[i]: k for k, i in enumerate(u1)}
        p2 = {ctx.bverts[i]: k for k, i in enumerate(u2)}
        for cut, F in cuts:
            rr = np.array([p1[v] for v in cut.p1_vertices + cut.p1_extra_vertices])
            cc = np.array([p2[v] for v in cut.p2_vertices + cut.p2_extra_vertices])
            np.minimum.at(best, (rr[:, None], cc[None, :]), F)
        ok = bool((best == full).all())
    if not ok:
        tele.add("fallback_cross_cycle")
        rows = np.array([gidx[ctx.bverts[i]] for i in u1], dtype=np.int64)
        cols = np.array([gidx[ctx.bverts[i]] for i in u2], dtype=np.int64)
        return [Job("brute", rows, cols, full, pair=(a, b))]
    return jobs


def region_jobs(ctx: RegionContext, gidx: dict, tele: Telemetry, audit: bool = True, sink: list | None = None) -> list[Job]:
    ncyc = len(ctx.region.cycles)
    jobs = [same_cycle_job(ctx, k, gidx, tele) for k in range(ncyc)]
    for a in range(ncyc):
        for b in range(ncyc):
            if a != b:
                jobs.extend(cross_cycle_jobs(ctx, a, b, gidx, tele, audit, sink))
    return jobs


def full_cross_jobs(ctx: RegionContext, gidx: dict, tele: Telemetry) -> list[Job]:
    """Reference relaxation for regions with holes: the same-cycle jobs plus
    the complete in-region block for every ordered pair of distinct walks."""
    ncyc = len(ctx.region.cycles)
    jobs = [same_cycle_job(ctx, k, gidx, tele) for k in range(ncyc)]
    for a in range(ncyc):
        for b in range(ncyc):
            if a != b:
                u1 = sorted(set(_cycle_bidx(ctx, a)))
                u2 = sorted(set(_cycle_bidx(ctx, b)))
                rows = np.array([gidx[ctx.bverts[i]] for i in u1], dtype=np.int64)
                cols = np.array([gidx[ctx.bverts[i]] for i in u2], dtype=np.int64)
                jobs.append(Job("brute", rows, cols, ctx.table[np.ix_(u1, u2)], pair=(a, b)))
    return jobs


def full_region_jobs(ctx: RegionContext, gidx: dict) -> list[Job]:
    """Reference relaxation: the whole boundary table as one brute job."""
    g = np.array([gidx[v] for v in ctx.bverts], dtype=np.int64)
    return [Job("brute", g, g, ctx.table)]


def relax(job: Job, e_prev: np.ndarray, e_cur: np.ndarray, tele: Telemetry | None = None) -> None:
    off = e_prev[job.rows]
    if job.kind == "brute":
        live = off < INF
        if not live.any():
            return
        val = (off[live, None] + job.D[live]).min(axis=0)
    else:
        fn = kernels.colmin_cyclic if job.kind == "cyclic" else kernels.colmin_rect
        val, _, (calls, evals) = fn(off, job.D)
        if tele is not None:
            tele.add("smawk_calls", calls)
            tele.add("evaluator_calls", evals)
    np.minimum.at(e_cur, job.cols, val)


def inter_region_boundary_bf(b: int, jobs: list[Job], source: int, tele: Telemetry | None = None, on_round=None):
    """Distances from boundary vertex ``source`` to all ``b`` boundary
    vertices.  Rounds stop early once nothing changes; a change in round
    ``b + 1`` proves a negative cycle."""
    e = np.full(b, INF, dtype=np.int64)
    e[source] = 0
    if on_round is not None:
        on_round(0, e.copy())
    for j in range(1, b + 2):
        cur = e.copy()
        for job in jobs:
            relax(job, e, cur, tele)
        changed = bool((cur < e).any())
        e = cur
        if tele is not None:
            tele.add("bf_rounds")
        if on_round is not None:
            on_round(j, e.copy())
        if not changed:
            break
        if j == b + 1:
            raise NegativeCycleDetected("boundary distances still improve after b rounds", [])
    return e


def apex_graph(ctx: RegionContext, Db: np.ndarray):
    """The region plus an apex with an arc to every boundary vertex ``b`` of
    length ``Db[b]``, and the price extending the region price to it."""
    g = ctx.graph
    nv = g.n
    k = len(ctx.blocal)
    phi_apex = int((ctx.phi[ctx.blocal] - Db).max())
    graph = ArcGraph(
        nv + 1,
        np.concatenate([g.tails, np.full(k, nv, dtype=np.int64)]),
        np.concatenate([g.heads, ctx.blocal]),
        np.concatenate([g.lengths, Db]),
        np.concatenate([g.ids, -1 - np.arange(k, dtype=np.int64)]),
    )
    price = np.concatenate([ctx.phi, [phi_apex]])
    return graph, price


def single_source_inter_region(ctx: RegionContext, Db: np.ndarray, tele: Telemetry | None = None) -> np.ndarray:
    graph, price = apex_graph(ctx, Db)
    ok, _ = check_feasible(graph, price)
    if tele is not None:
        tele.add("apex_price_checks")
    if not ok:
        if tele is not None:
            tele.add("apex_price_violations")
        raise InfeasiblePrice("apex price is infeasible", -1)
    return dijkstra(graph, graph.n - 1, price).dist[: graph.n - 1]


@dataclass
class PieceRecord:
    """Intermediate results kept for auditing (top level only)."""

    division: RDivision
    contexts: list
    gidx: dict
    jobs: list
    source: int
    boundary_dist: np.ndarray
    root_dist: np.ndarray


class Solver:
    def __init__(
        self,
        r: int | None = None,
        n0: int = N0,
        workers: int = 1,
        audit: bool = True,
        record: bool = False,
        top_division=None,
    ):
        self.r = r
        self.top_division = top_division  # callable(piece) -> RDivision for the top level
        self.n0 = n0
        self.workers = workers
        self.audit = audit
        self.record = record
        self.tele = Telemetry()
        self.top: PieceRecord | None = None
        self.cut_tables: list | None = [] if record else None

    def base_case(self, piece: Piece, s_local: int) -> np.ndarray:
        _, g = piece.local()
        res = bellman_ford_oracle(g, s_local)
        if isinstance(res, NegativeCycleWitness):
            raise NegativeCycleDetected("negative cycle inside a base-case piece", res.cycle)
        self.tele.add("base_cases")
        return res.dist

    def recurse_regions(self, div: RDivision, depth: int) -> list[np.ndarray]:
        def one(R: Region):
            return self.solve_piece(R.piece, R.source, depth + 1)

        if self.workers > 1 and depth == 0:
            with ThreadPoolExecutor(self.workers) as ex:
                return list(ex.map(one, div.regions))
        return [one(R) for R in div.regions]

    def solve_piece(self, piece: Piece, source: int, depth: int = 0) -> np.ndarray:
        """Distances from host vertex ``source`` to every vertex of ``piece``
        (in ``piece.vertices`` order)."""
        index, g = piece.local()
        s = index[source]
        forced = depth == 0 and self.top_division is not None
        if piece.nv <= self.n0 and not forced:
            return self.base_case(piece, s)
        tele = self.tele
        r = self.r if (depth == 0 and self.r is not None) else division_parameter(piece.nv)
        with tele.stage("division"):
            if forced:
                div = self.top_division(piece)
                r = div.r
            else:
                div = r_division(piece, r)
        if len(div.regions) < 2:
            tele.add("undivided_pieces")
            return self.base_case(piece, s)
        tele.add("divisions")
        tele.add("regions", len(div.regions))
        tele.peak("max_holes", div.max_holes())
        tele.peak("max_region_boundary", max(len(R.boundary) for R in div.regions))
        if depth == 0:
            tele.counters["top_regions"] = len(div.regions)
            tele.counters["top_boundary"] = len(div.boundary)
            tele.counters["top_r"] = r
        tele.levels.append((depth, piece.nv, r, len(div.regions), len(div.boundary), div.max_holes()))

        phis = self.recurse_regions(div, depth)
        with tele.stage("tables"):
            ctxs = [RegionContext(R, phi) for R, phi in zip(div.regions, phis)]
            for c in ctxs:
                intra_region_boundary_distances(c)
        B = div.boundary
        gidx = {v: i for i, v in enumerate(B)}
        with tele.stage("cuts"):
            jobs = []
            for k, c in enumerate(ctxs):
                for job in region_jobs(c, gidx, tele, self.audit, self.cut_tables):
                    job.region = k
                    jobs.append(job)
        root = B[0]
        with tele.stage("boundary_bf"):
            D = inter_region_boundary_bf(len(B), jobs, gidx[root], tele)
        with tele.stage("apex"):
            dist_r = np.full(piece.nv, INF, dtype=np.int64)
            for c in ctxs:
                Db = D[[gidx[v] for v in c.bverts]]
                try:
                    d = single_source_inter_region(c, Db, tele)
                except InfeasiblePrice as exc:
                    raise NegativeCycleDetected("infeasible apex price", []) from exc
                loc = np.array([index[v] for v in c.region.vertices], dtype=np.int64)
                seen = dist_r[loc]
                clash = (seen < INF) & (seen != d)
                if clash.any():
                    tele.add("region_disagreements", int(clash.sum()))
                np.minimum.at(dist_r, loc, d)
        if self.record and depth == 0:
            self.top = PieceRecord(div, ctxs, gidx, jobs, root, D, dist_r)
        with tele.stage("reroot"):
            try:
                res = dijkstra(g, s, dist_r, check=True)
            except InfeasiblePrice as exc:
                raise NegativeCycleDetected("distances from the boundary root admit an improving arc", []) from exc
        return res.dist


def _witness(gt: PlanarGraph, origin) -> list[int]:
    res = bellman_ford_oracle(gt, 0)
    if isinstance(res, NegativeCycleWitness):
        return [origin[d] for d in res.cycle]
    return []


def positive_total(g: PlanarGraph) -> int:
    return sum(g.length[d] for d in range(g.num_darts) if g.present[d] and g.length[d] > 0)


def solve_sssp(
    g: PlanarGraph,
    s: int,
    r: int | None = None,
    solver: Solver | None = None,
) -> DistanceResult:
    """Exact distances from ``s`` in ``g`` (``INF`` where unreachable).

    ``parent`` holds, for every reachable vertex, the input dart entering it
    on a shortest-path tree.  Raises :class:`NegativeCycleDetected` when
    ``g`` has a negative cycle anywhere.
    """
    if not 0 <= s < g.n:
        raise IndexError(f"source {s} out of range")
    if g.n == 1:
        return DistanceResult(s, np.zeros(1, dtype=np.int64), np.full(1, -1, dtype=np.int64))
    solver = solver or Solver(r=r)
    tele = solver.tele
    with tele.stage("triangulate"):
        gt = triangulate(g)
        host = Host(gt)
        top = Piece(host, range(len(host.faces)))
    tele.counters["n"] = g.n
    try:
        dist = solver.solve_piece(top, s)
    except NegativeCycleDetected as exc:
        # cycles found inside the recursion are in triangulated darts
        exc.cycle = [gt.origin[d] for d in exc.cycle] if exc.cycle else _witness(gt, gt.origin)
        raise
    # the final Dijkstra tree, mapped back to input darts
    with tele.stage("reroot"):
        _, lg = top.local()
        tree = dijkstra(lg, s, dist)
    cap = positive_total(g)
    out = dist.copy()
    out[out > cap] = INF
    parent = np.full(g.n, -1, dtype=np.int64)
    origin = gt.origin
    for v in range(g.n):
        d = int(tree.parent[v])
        if d >= 0 and out[v] < INF:
            parent[v] = origin[d]
    tele.counters["fallbacks"] = tele.counters["fallback_same_cycle"] + tele.counters["fallback_cross_cycle"]
    return DistanceResult(s, out, parent)
