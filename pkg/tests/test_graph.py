import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import k4, square
from planarsssp.errors import DisconnectedGraph, NonPlanarEmbedding, Overflow, SelfLoop
from planarsssp.generators import GeneratorSpec, generate
from planarsssp.graph import INF, build_embedding, faces, is_triangulated, triangulate
from planarsssp.sssp import ArcGraph, bellman_ford_oracle


def test_triangle_has_two_faces():
    g = build_embedding(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)], coords=[(0, 0), (1, 0), (0, 1)])
    fs = faces(g)
    assert len(fs) == 2
    assert sorted(len(f) for f in fs) == [3, 3]


def test_square_faces():
    assert sorted(len(f) for f in faces(square())) == [4, 4]


def test_k4_four_triangles():
    fs = faces(k4())
    assert len(fs) == 4
    assert all(len(f) == 3 for f in fs)


def test_k5_rejected_for_every_rotation():
    edges = [(u, v, 1) for u, v in itertools.combinations(range(5), 2)]
    inc = [[e for e, (u, v, _) in enumerate(edges) if w in (u, v)] for w in range(5)]
    # cyclic orders: fix the first edge, permute the other three
    orders = [[[lst[0]] + list(p) for p in itertools.permutations(lst[1:])] for lst in inc]
    count = 0
    for rot in itertools.product(*orders):
        with pytest.raises(NonPlanarEmbedding):
            build_embedding(5, edges, rotations=[list(r) for r in rot])
        count += 1
    assert count == 6**5


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        build_embedding(2, [(0, 0, 1), (0, 1, 1)], coords=[(0, 0), (1, 0)])


def test_disconnected_rejected():
    with pytest.raises(DisconnectedGraph):
        build_embedding(4, [(0, 1, 1), (2, 3, 1)], coords=[(0, 0), (1, 0), (0, 1), (1, 1)])


def test_explicit_rotation_matches_coordinates():
    g = square()
    # edges 0:(0,1) 1:(1,2) 2:(2,3) 3:(3,0)
    h = build_embedding(4, g.directed_edges(), rotations=[[0, 3], [1, 0], [2, 1], [3, 2]])
    assert sorted(map(sorted, faces(g))) == sorted(map(sorted, faces(h)))


def test_square_triangulation_adds_one_chord_pair():
    t = triangulate(square())
    assert is_triangulated(t)
    aux_edges = {(t.tail[d], t.head[d]) for d in range(t.num_darts) if t.aux[d]}
    # two chords (one per face), each in both directions, plus the four reverse directions
    chords = {e for e in aux_edges if abs(e[0] - e[1]) == 2}
    assert len(chords) == 4
    assert all((v, u) in chords for u, v in chords)
    assert t.big == 1 + 4


def test_k4_triangulation_only_bidirectionalizes():
    g = k4()
    t = triangulate(g)
    assert t.num_edges == g.num_edges
    assert sum(t.aux) == g.num_edges
    assert all(t.length[d] == t.big for d in range(t.num_darts) if t.aux[d])


def _all_pairs(g):
    ids, tl, hd, ln = g.arcs()
    ag = ArcGraph(g.n, tl, hd, ln)
    return np.array([bellman_ford_oracle(ag, s).dist for s in range(g.n)])


def test_triangulation_preserves_finite_distances():
    g = generate(GeneratorSpec("delaunay", 50, 0.2, seed=11))
    before = _all_pairs(g)
    t = triangulate(g)
    after = _all_pairs(t)
    finite = before < INF
    assert (after < INF).all()
    assert np.array_equal(before[finite], after[finite])
    # unreachable pairs become longer than any simple path of the input
    assert (after[~finite] > sum(abs(x) for x in g.length)).all()


def test_overflow_guard():
    g = build_embedding(3, [(0, 1, 1 << 59), (1, 2, 1 << 59), (2, 0, 1)], coords=[(0, 0), (1, 0), (0, 1)])
    with pytest.raises(Overflow):
        triangulate(g)


def test_length_limit_on_input():
    with pytest.raises(Overflow):
        build_embedding(2, [(0, 1, 1 << 61)], coords=[(0, 0), (1, 0)])


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["grid", "delaunay", "ring"]),
    st.integers(9, 120),
    st.integers(0, 2**31),
)
def test_face_structure_properties(family, n, seed):
    g = generate(GeneratorSpec(family, n, 0.0, seed=seed))
    fs = g.faces()
    seen = [d for f in fs for d in f]
    assert sorted(seen) == list(range(g.num_darts))
    fo = g.face_of
    assert all(fo[g.face_next(d)] == fo[d] for d in range(g.num_darts))
    assert all(g.rev(g.rev(d)) == d for d in range(g.num_darts))
    assert g.n - g.num_edges + len(fs) == 2
    t = triangulate(g)
    assert is_triangulated(t)
    assert t.n - t.num_edges + len(t.faces()) == 2
    assert all(t.present)
