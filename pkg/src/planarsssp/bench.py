"""Per-stage wall-clock timing of the pipeline on generated instances."""

from __future__ import annotations

import time

from .generators import GeneratorSpec, generate
from .pipeline import Solver, solve_sssp
from .sssp import bellman_ford_oracle

STAGES = ("triangulate", "division", "tables", "cuts", "boundary_bf", "apex", "reroot")


def bench_rows(sizes, seed: int = 0, family: str = "delaunay", neg_frac: float = 0.1, oracle: bool = False):
    """Yield ``(n, stage, millis)``; stage ``total`` is the whole solve and
    ``oracle`` the Bellman-Ford reference when requested.  Recursive calls
    add into the stage of the same name."""
    for n in sizes:
        g = generate(GeneratorSpec(family, n, neg_frac, seed=seed))
        solver = Solver()
        t0 = time.perf_counter()
        solve_sssp(g, 0, solver=solver)
        total = time.perf_counter() - t0
        for st in STAGES:
            yield g.n, st, solver.tele.times.get(st, 0.0) * 1000
        yield g.n, "total", total * 1000
        if oracle:
            t0 = time.perf_counter()
            bellman_ford_oracle(g, 0)
            yield g.n, "oracle", (time.perf_counter() - t0) * 1000


def format_csv(rows) -> str:
    out = ["n,stage,millis"]
    out += [f"{n},{st},{ms:.3f}" for n, st, ms in rows]
    return "\n".join(out) + "\n"
