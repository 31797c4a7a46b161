"""Price functions, reduced-cost Dijkstra and the Bellman-Ford oracle.

Graphs here are anything exposing ``n``, ``arcs()`` and ``csr()`` in the
shape of :class:`~planarsssp.graph.PlanarGraph`; :class:`ArcGraph` is the
minimal stand-alone version used for regions and auxiliary graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import InfeasiblePrice
from .graph import INF, make_csr


class ArcGraph:
    """A plain directed graph given by arc arrays."""

    def __init__(self, n, tails, heads, lengths, ids=None):
        self.n = int(n)
        self.tails = np.asarray(tails, dtype=np.int64)
        self.heads = np.asarray(heads, dtype=np.int64)
        self.lengths = np.asarray(lengths, dtype=np.int64)
        self.ids = np.arange(len(self.tails), dtype=np.int64) if ids is None else np.asarray(ids, dtype=np.int64)
        self._csr = None

    def arcs(self):
        return self.ids, self.tails, self.heads, self.lengths

    def csr(self):
        if self._csr is None:
            self._csr = make_csr(self.n, self.tails, self.heads, self.lengths, self.ids)
        return self._csr


@dataclass
class DistanceResult:
    source: int
    dist: np.ndarray
    # arc id (dart for planar graphs) entering each vertex on the tree, or -1
    parent: np.ndarray = field(repr=False)

    def reachable(self, v: int) -> bool:
        return int(self.dist[v]) < INF

    def tree_path(self, g, v: int) -> list[int]:
        """Arc ids of the tree path from the source to ``v``."""
        ids, tails, _, _ = g.arcs()
        pos = {int(a): i for i, a in enumerate(ids)}
        out = []
        while v != self.source:
            a = int(self.parent[v])
            if a < 0:
                raise ValueError(f"vertex {v} is not reachable")
            out.append(a)
            v = int(tails[pos[a]])
        out.reverse()
        return out


@dataclass
class NegativeCycleWitness:
    cycle: list[int]  # arc ids in order
    total: int


def as_prices(g, p) -> np.ndarray:
    if p is None:
        return np.zeros(g.n, dtype=np.int64)
    p = np.asarray(p, dtype=np.int64)
    if p.shape != (g.n,):
        raise ValueError("price vector must have one entry per vertex")
    return p


def check_feasible(g, p) -> tuple[bool, int | None]:
    """True iff ``p[u] + l(u, v) - p[v] >= 0`` on every arc; else the first
    violating arc id."""
    p = as_prices(g, p)
    ids, t, h, ln = g.arcs()
    if len(ids) == 0:
        return True, None
    if (p >= INF).any():
        raise ValueError("price function must be finite")
    red = ln + p[t] - p[h]
    bad = np.flatnonzero(red < 0)
    if len(bad):
        return False, int(ids[bad[0]])
    return True, None


def reduced_lengths(g, p) -> np.ndarray:
    p = as_prices(g, p)
    _, t, h, ln = g.arcs()
    return ln + p[t] - p[h]


def dijkstra(g, s: int, p=None, check: bool = False) -> DistanceResult:
    """Single-source distances using the reduced costs of price ``p``.

    Raises :class:`InfeasiblePrice` if a negative reduced cost is met while
    scanning (always) or anywhere in the graph (with ``check=True``).
    """
    p = as_prices(g, p)
    if check:
        ok, bad = check_feasible(g, p)
        if not ok:
            raise InfeasiblePrice(f"arc {bad} has negative reduced cost", bad)
    indptr, heads, lengths, ids = g.csr()
    dist, parent, bad = kernels.dijkstra(indptr, heads, lengths, p, int(s))
    if bad >= 0:
        raise InfeasiblePrice(f"arc {int(ids[bad])} has negative reduced cost", int(ids[bad]))
    return DistanceResult(int(s), dist, _arc_ids(ids, parent))


def _arc_ids(ids, parent):
    if len(ids) == 0:
        return np.full(len(parent), -1, dtype=np.int64)
    return np.where(parent >= 0, ids[np.maximum(parent, 0)], -1)


def bellman_ford_oracle(g, s: int) -> DistanceResult | NegativeCycleWitness:
    """Textbook Bellman-Ford: exact distances or a negative cycle reachable
    from ``s``."""
    ids, t, h, ln = g.arcs()
    dist, parent, witness = kernels.bellman_ford(g.n, t, h, ln, int(s))
    if witness >= 0:
        # the witness lies on the cycle: the parent walk returns to it
        v = int(witness)
        arcs = []
        u = v
        while True:
            a = int(parent[u])
            arcs.append(a)
            u = int(t[a])
            if u == v:
                break
        arcs.reverse()
        total = int(sum(int(ln[a]) for a in arcs))
        return NegativeCycleWitness([int(ids[a]) for a in arcs], total)
    return DistanceResult(int(s), dist, _arc_ids(ids, parent))


def reroot_distances(g, dist_from_r: DistanceResult, s: int) -> DistanceResult:
    """Distances from ``s`` using the distances from another root as prices."""
    p = dist_from_r.dist
    if (p >= INF).any():
        raise ValueError("rerooting needs finite distances from the old root")
    return dijkstra(g, s, p, check=True)
