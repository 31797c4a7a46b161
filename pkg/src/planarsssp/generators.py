"""Seeded instance generators.

Every undirected edge becomes two arcs with lengths
``l(u, v) = c(u, v) + pi(u) - pi(v)`` where ``c >= 0`` and ``pi`` is a random
integer potential, so every cycle has nonnegative length.  The fraction of
negative arcs is hit exactly (up to rounding) by choosing which uphill arcs
get a cost below their potential gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadSpec
from .graph import PlanarGraph, build_embedding
from .io import edge_rotations

FAMILIES = ("grid", "delaunay", "ring")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    neg_frac: float = 0.0
    amplitude: int = 1000
    seed: int = 0
    cost_max: int = 100


def _grid(n, rng):
    cols = max(1, math.isqrt(n))
    cols = math.ceil(n / cols)
    coords = [(i % cols, i // cols) for i in range(n)]
    edges = []
    for i in range(n):
        if (i % cols) + 1 < cols and i + 1 < n:
            edges.append((i, i + 1))
        if i + cols < n:
            edges.append((i, i + cols))
    return coords, edges


def _delaunay(n, rng):
    from scipy.spatial import Delaunay

    pts = rng.random((n, 2))
    tri = Delaunay(pts)
    es = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (c, a)):
            es.add((min(u, v), max(u, v)))
    return [tuple(p) for p in pts.tolist()], sorted((int(u), int(v)) for u, v in es)


def ring_spokes(n: int) -> int:
    return max(3, math.isqrt(n))


def _ring(n, rng):
    spokes = ring_spokes(n)
    rings = max(1, n // spokes)
    coords = []
    for i in range(rings):
        for j in range(spokes):
            a = 2 * math.pi * j / spokes
            coords.append(((i + 1) * math.cos(a), (i + 1) * math.sin(a)))
    edges = []
    for i in range(rings):
        for j in range(spokes):
            v = i * spokes + j
            edges.append((v, i * spokes + (j + 1) % spokes))
            if i + 1 < rings:
                edges.append((v, v + spokes))
    return coords, edges


def generate(spec: GeneratorSpec) -> PlanarGraph:
    """Build a connected embedded instance; identical output for equal specs.

    ``ring`` produces ``floor(n / s) * s`` vertices for ``s = max(3, isqrt(n))``
    spokes; the other families produce exactly ``n``.
    """
    if spec.family not in FAMILIES:
        raise BadSpec(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    if spec.n < 3:
        raise BadSpec("n must be at least 3")
    if not 0.0 <= spec.neg_frac <= 1.0:
        raise BadSpec("neg-frac must lie in [0, 1]")
    if spec.amplitude < 1 or spec.cost_max < 0:
        raise BadSpec("amplitude must be positive and cost_max nonnegative")
    rng = np.random.default_rng(spec.seed)
    coords, edges = {"grid": _grid, "delaunay": _delaunay, "ring": _ring}[spec.family](spec.n, rng)
    n = len(coords)
    pi = rng.integers(0, spec.amplitude + 1, size=n)
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        arcs.append((v, u))
    gap = np.array([pi[v] - pi[u] for u, v in arcs], dtype=np.int64)
    uphill = np.flatnonzero(gap > 0)
    want = int(round(spec.neg_frac * len(arcs)))
    if want > len(uphill):
        raise BadSpec(
            f"neg-frac {spec.neg_frac} needs {want} negative arcs but only {len(uphill)} can be negative"
        )
    neg = np.zeros(len(arcs), dtype=bool)
    neg[rng.choice(uphill, size=want, replace=False)] = True
    cost = rng.integers(0, spec.cost_max + 1, size=len(arcs))
    out = []
    for k, (u, v) in enumerate(arcs):
        g = int(gap[k])
        if neg[k]:
            c = int(rng.integers(0, g))
        elif g > 0:
            c = g + int(cost[k])
        else:
            c = int(cost[k])
        out.append((u, v, c - g))
    return build_embedding(n, out, coords=coords)


def plant_negative_cycle(g: PlanarGraph, seed: int = 0) -> tuple[PlanarGraph, list[int]]:
    """Copy of ``g`` in which the arcs around one face sum to -1.

    Needs arcs in both directions along the chosen face (true for generated
    instances).  Returns the new graph and the cycle's vertices.
    """
    rng = np.random.default_rng(seed)
    arc = {}
    for e, (u, v, ln) in enumerate(g.directed_edges()):
        arc.setdefault((u, v), e)
    cands = []
    for f in g.faces():
        vs = [g.tail[d] for d in f]
        if len(vs) >= 3 and len(set(vs)) == len(vs):
            if all((vs[i], vs[(i + 1) % len(vs)]) in arc for i in range(len(vs))):
                cands.append(vs)
    if not cands:
        raise BadSpec("no face carries a directed cycle")
    vs = cands[int(rng.integers(len(cands)))]
    edges = [list(e) for e in g.directed_edges()]
    ids = [arc[(vs[i], vs[(i + 1) % len(vs)])] for i in range(len(vs))]
    total = sum(edges[e][2] for e in ids)
    edges[ids[-1]][2] -= total + 1
    rot = edge_rotations(g)
    return build_embedding(g.n, [tuple(e) for e in edges], rotations=rot), vs


def annulus_groups(gt: PlanarGraph, spokes: int, inner: int, outer: int) -> list[list[int]]:
    """Split the faces of a triangulated ring-family graph into three bands
    by the lowest ring index among each face's vertices: below ``inner``,
    from ``inner`` up to ``outer``, and the rest.  The middle band is an
    annulus whose two boundary walks lie on rings ``inner`` and ``outer``."""
    groups: list[list[int]] = [[], [], []]
    for f, w in enumerate(gt.faces()):
        lo = min(gt.tail[d] for d in w) // spokes
        groups[0 if lo < inner else 1 if lo < outer else 2].append(f)
    return [grp for grp in groups if grp]
