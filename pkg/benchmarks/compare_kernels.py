"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/compare_kernels.py [--n 5000] [--k 300] [--repeat 3]

Prints one CSV row per kernel: name, compiled ms, python ms, speedup.
Both backends are also checked to return identical results.
"""

import argparse
import sys
import time

import numpy as np

from planarsssp import _pykernels
from planarsssp.generators import GeneratorSpec, generate
from planarsssp.kernels import compiled


def best_ms(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best * 1000, out


def same(a, b):
    # the Monge kernels also return evaluation counts, which are bookkeeping
    # and differ between backends; compare values and argmins only
    if isinstance(a, tuple) and len(a) == 3 and isinstance(a[2], tuple):
        return same(a[:2], b[:2])
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def cases(n, k, seed):
    g = generate(GeneratorSpec("delaunay", n, 0.0, seed=seed))
    indptr, heads, lengths, _ = g.csr()
    price = np.zeros(g.n, dtype=np.int64)
    _, t, h, ln = g.arcs()
    neg = generate(GeneratorSpec("delaunay", n, 0.2, seed=seed))
    _, nt, nh, nl = neg.arcs()
    rng = np.random.default_rng(seed)
    D = np.ascontiguousarray(np.cumsum(np.cumsum(rng.integers(0, 20, size=(k, k)), axis=0), axis=1), dtype=np.int64)
    off = rng.integers(-1000, 1000, size=k).astype(np.int64)
    return {
        "dijkstra": lambda m: m.dijkstra(indptr, heads, lengths, price, 0),
        "bellman_ford": lambda m: m.bellman_ford(neg.n, nt, nh, nl, 0),
        "colmin_rect": lambda m: m.colmin_rect(off, D),
        "colmin_cyclic": lambda m: m.colmin_cyclic(off, D),
    }


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=5000, help="vertices of the graph kernels' instance")
    p.add_argument("--k", type=int, default=300, help="side of the Monge matrices")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    if compiled is None:
        print("compiled kernels are not built; run pip install -e . --no-build-isolation", file=sys.stderr)
        return 1
    print("kernel,compiled_ms,python_ms,speedup")
    for name, run in cases(args.n, args.k, args.seed).items():
        tc, rc = best_ms(lambda: run(compiled), args.repeat)
        tp, rp = best_ms(lambda: run(_pykernels), args.repeat)
        if not same(rc, rp):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        print(f"{name},{tc:.3f},{tp:.3f},{tp / tc:.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
