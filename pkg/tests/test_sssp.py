import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarsssp.errors import InfeasiblePrice
from planarsssp.generators import GeneratorSpec, generate, plant_negative_cycle
from planarsssp.graph import INF, build_embedding
from planarsssp.sssp import (
    DistanceResult,
    NegativeCycleWitness,
    bellman_ford_oracle,
    check_feasible,
    dijkstra,
    reduced_lengths,
    reroot_distances,
)


def cycle4():
    # one -2 arc, the rest +1; the only cycle has length +1
    return build_embedding(
        4, [(0, 1, 1), (1, 2, 1), (2, 3, -2), (3, 0, 1)], coords=[(0, 0), (1, 0), (1, 1), (0, 1)]
    )


def test_oracle_on_small_cycle():
    res = bellman_ford_oracle(cycle4(), 1)
    assert res.dist.tolist() == [0, 0, 1, -1]
    assert res.tree_path(cycle4(), 0) == [2, 4, 6]


def test_dijkstra_matches_oracle_without_negatives():
    g = generate(GeneratorSpec("delaunay", 300, 0.0, seed=4))
    assert np.array_equal(dijkstra(g, 7).dist, bellman_ford_oracle(g, 7).dist)


def test_infeasible_price_reported():
    g = cycle4()
    ok, arc = check_feasible(g, np.zeros(4, dtype=np.int64))
    assert not ok and arc == 4
    with pytest.raises(InfeasiblePrice) as info:
        dijkstra(g, 0, check=True)
    assert info.value.dart == 4


def test_oracle_finds_negative_cycle():
    g = generate(GeneratorSpec("grid", 49, 0.2, seed=3))
    h, verts = plant_negative_cycle(g, seed=5)
    res = bellman_ford_oracle(h, 0)
    assert isinstance(res, NegativeCycleWitness)
    assert res.total < 0
    ids, t, hd, ln = h.arcs()
    pos = {int(a): i for i, a in enumerate(ids)}
    cyc = [pos[a] for a in res.cycle]
    # consecutive arcs chain and close up
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        assert hd[a] == t[b]
    assert sum(int(ln[a]) for a in cyc) == res.total


def test_unreachable_is_inf():
    # one-way path: nothing reaches vertex 0 from 2
    g = build_embedding(3, [(0, 1, 5), (1, 2, -3)], coords=[(0, 0), (1, 0), (2, 1)])
    res = bellman_ford_oracle(g, 2)
    assert res.dist.tolist() == [INF, INF, 0]
    assert not res.reachable(0)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["grid", "delaunay"]), st.integers(10, 150), st.floats(0, 0.4), st.integers(0, 2**31))
def test_reroot_and_reduced_costs(family, n, q, seed):
    g = generate(GeneratorSpec(family, n, q, seed=seed))
    r = bellman_ford_oracle(g, 0)
    assert isinstance(r, DistanceResult)
    assert check_feasible(g, r.dist)[0]
    assert (reduced_lengths(g, r.dist) >= 0).all()
    s = seed % g.n
    assert np.array_equal(reroot_distances(g, r, s).dist, bellman_ford_oracle(g, s).dist)


def line(n, lengths):
    return build_embedding(n, [(k, k + 1, ln) for k, ln in enumerate(lengths)], coords=[(k, k * k) for k in range(n)])


def test_single_edge_price_violation():
    g = line(2, [3])
    assert check_feasible(g, [0, 5]) == (False, 0)
    assert check_feasible(g, [0, 0]) == (True, None)


def test_dijkstra_with_exact_prices():
    g = line(3, [2, -1])
    assert dijkstra(g, 0, [0, 2, 1]).dist.tolist() == [0, 2, 1]
    assert dijkstra(build_embedding(1, [], rotations=[[]]), 0).dist.tolist() == [0]


def test_negative_triangle_witness():
    g = build_embedding(3, [(0, 1, 1), (1, 2, 1), (2, 0, -3)], coords=[(0, 0), (1, 0), (0, 1)])
    res = bellman_ford_oracle(g, 0)
    assert isinstance(res, NegativeCycleWitness) and res.total == -1
    assert sorted(res.cycle) == [0, 2, 4]


def test_path_prefix_sums():
    assert bellman_ford_oracle(line(4, [5, -2, -2]), 0).dist.tolist() == [0, 5, 3, 1]


def test_reroot_two_vertices():
    g = build_embedding(2, [(0, 1, 4), (1, 0, -1)], coords=[(0, 0), (1, 0)])
    d0 = bellman_ford_oracle(g, 0)
    assert d0.dist.tolist() == [0, 4]
    assert reroot_distances(g, d0, 1).dist.tolist() == [-1, 0]
    assert reroot_distances(g, d0, 0).dist.tolist() == [0, 4]


def test_reroot_random_instance():
    g = generate(GeneratorSpec("delaunay", 300, 0.2, seed=12))
    d0 = bellman_ford_oracle(g, 0)
    assert np.array_equal(reroot_distances(g, d0, 77).dist, bellman_ford_oracle(g, 77).dist)
    # shortest distances from any root are a feasible price
    assert check_feasible(g, d0.dist)[0]


def test_dijkstra_with_feasible_price_on_negative_instance():
    g = generate(GeneratorSpec("grid", 500, 0.2, seed=6))
    p = bellman_ford_oracle(g, 0).dist
    assert np.array_equal(dijkstra(g, 17, p).dist, bellman_ford_oracle(g, 17).dist)
