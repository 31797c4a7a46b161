"""Command line: ``planarsssp solve|verify|gen|bench``.

Exit codes: 0 success, 1 mismatch, 2 bad input, 3 negative cycle.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import bench
from .errors import BadSpec, InfeasiblePrice, NegativeCycleDetected, PlanarError
from .generators import FAMILIES, GeneratorSpec, generate
from .io import format_distances, read_graph, write_graph
from .pipeline import Solver, solve_sssp
from .sssp import NegativeCycleWitness, bellman_ford_oracle, dijkstra

OK, MISMATCH, BAD_INPUT, NEG_CYCLE = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planarsssp", description="Planar shortest paths with negative lengths.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="print 'v distance' lines")
    s.add_argument("--input", required=True)
    s.add_argument("--source", type=int, required=True)
    s.add_argument("--algo", choices=("pipeline", "oracle", "dijkstra"), default="pipeline")
    s.add_argument("--r", type=int, default=None, help="top-level division parameter")
    s.add_argument("--report", action="store_true", help="key=value telemetry on stderr")

    v = sub.add_parser("verify", help="compare pipeline and oracle")
    v.add_argument("--input", required=True)
    v.add_argument("--source", type=int, required=True)
    v.add_argument("--r", type=int, default=None)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("-n", type=int, required=True)
    g.add_argument("--neg-frac", type=float, default=0.0)
    g.add_argument("--amplitude", type=int, default=1000)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)

    b = sub.add_parser("bench", help="CSV n,stage,millis")
    b.add_argument("--sizes", required=True, help="comma separated vertex counts")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--family", choices=FAMILIES, default="delaunay")
    b.add_argument("--neg-frac", type=float, default=0.1)
    b.add_argument("--oracle", action="store_true", help="also time the Bellman-Ford reference")
    return p


def _oracle(g, s):
    res = bellman_ford_oracle(g, s)
    if isinstance(res, NegativeCycleWitness):
        raise NegativeCycleDetected(f"negative cycle of length {res.total}", res.cycle)
    return res.dist


def _check_source(g, s):
    if not 0 <= s < g.n:
        raise PlanarError(f"source {s} outside 0..{g.n - 1}")


def _solve(args) -> int:
    g = read_graph(args.input)
    _check_source(g, args.source)
    solver = Solver(r=args.r)
    if args.algo == "pipeline":
        dist = solve_sssp(g, args.source, solver=solver).dist
    elif args.algo == "oracle":
        dist = _oracle(g, args.source)
    else:
        try:
            dist = dijkstra(g, args.source, check=True).dist
        except InfeasiblePrice:
            raise PlanarError("dijkstra needs nonnegative lengths; use --algo pipeline") from None
    sys.stdout.write(format_distances(dist))
    if args.report:
        sys.stderr.write(solver.tele.report() + "\n")
    return OK


def _verify(args) -> int:
    g = read_graph(args.input)
    _check_source(g, args.source)
    outcome = []
    for run in (lambda: solve_sssp(g, args.source, r=args.r).dist, lambda: _oracle(g, args.source)):
        try:
            outcome.append(run())
        except NegativeCycleDetected:
            outcome.append(None)
    a, b = outcome
    if a is None and b is None:
        print("both report a negative cycle")
        return NEG_CYCLE
    if a is None or b is None or not np.array_equal(a, b):
        print("MISMATCH between pipeline and oracle")
        return MISMATCH
    print(f"ok: {g.n} distances identical")
    return OK


def _gen(args) -> int:
    g = generate(GeneratorSpec(args.family, args.n, args.neg_frac, args.amplitude, args.seed))
    write_graph(g, args.out)
    return OK


def _bench(args) -> int:
    try:
        sizes = [int(x) for x in args.sizes.split(",") if x.strip()]
    except ValueError:
        raise BadSpec(f"bad size list {args.sizes!r}") from None
    sys.stdout.write("n,stage,millis\n")
    for n, st, ms in bench.bench_rows(sizes, args.seed, args.family, args.neg_frac, args.oracle):
        sys.stdout.write(f"{n},{st},{ms:.3f}\n")
        sys.stdout.flush()
    return OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"solve": _solve, "verify": _verify, "gen": _gen, "bench": _bench}[args.cmd]
    try:
        return handler(args)
    except NegativeCycleDetected as exc:
        print(f"negative cycle detected: {exc}", file=sys.stderr)
        return NEG_CYCLE
    except PlanarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
