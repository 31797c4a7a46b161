import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planarsssp import _pykernels
from planarsssp.kernels import compiled
from planarsssp.monge import (
    INF,
    MatrixOracle,
    brute_column_minima,
    cyclic_column_minima,
    is_convex_monge,
    monge_violations,
    smawk_column_minima,
    staircase_column_minima,
)


def random_monge(rng, rows, cols, spread=50):
    """Convex Monge by construction: row and column offsets plus a double
    prefix sum of a nonnegative matrix, whose mixed differences are >= 0."""
    w = rng.integers(0, spread, size=(rows, cols))
    core = np.cumsum(np.cumsum(w, axis=0), axis=1)
    return core + rng.integers(-1000, 1000, size=(rows, 1)) + rng.integers(-1000, 1000, size=(1, cols))


monge_case = st.tuples(st.integers(1, 40), st.integers(1, 40), st.integers(0, 2**32))


def test_generator_makes_convex_monge():
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert is_convex_monge(random_monge(rng, 7, 9))


def test_quadratic_example_sign():
    # f(i) + g(j) + c (i - j)^2 is convex Monge exactly when c <= 0
    i = np.arange(6)[:, None]
    j = np.arange(6)[None, :]
    assert is_convex_monge(3 * i + 5 * j - (i - j) ** 2)
    assert not is_convex_monge(3 * i + 5 * j + (i - j) ** 2)


def test_tie_break_smallest_row():
    res = smawk_column_minima(MatrixOracle.from_array(np.zeros((4, 5), dtype=np.int64)))
    assert res.rows == [0] * 5


def test_single_row_and_column():
    m = MatrixOracle.from_array([[3, 1, 2]])
    assert smawk_column_minima(m).values == [3, 1, 2]
    m = MatrixOracle.from_array([[3], [1], [2]])
    res = smawk_column_minima(m)
    assert (res.values, res.rows) == ([1], [1])


def test_check_flag_detects_non_monotone():
    a = np.array([[0, 9], [9, 0]])
    assert not is_convex_monge(a)
    with pytest.raises(AssertionError):
        smawk_column_minima(MatrixOracle.from_array(a), check=True)


@settings(max_examples=150, deadline=None)
@given(monge_case)
def test_smawk_matches_scan(case):
    r, c, seed = case
    a = random_monge(np.random.default_rng(seed), r, c)
    m = MatrixOracle.from_array(a)
    res = smawk_column_minima(m)
    ref = brute_column_minima(m)
    assert res.values == ref.values
    assert res.rows == ref.rows
    assert res.evaluations <= 8 * (r + c)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 40), st.integers(0, 2**32), st.sampled_from(["upper", "lower", "diagonal"]))
def test_staircase_matches_masked_scan(k, seed, shape):
    a = random_monge(np.random.default_rng(seed), k, k)
    m = MatrixOracle.from_array(a)
    valid = {"upper": lambda i, j: i <= j, "lower": lambda i, j: i >= j, "diagonal": lambda i, j: i == j}[shape]
    res = staircase_column_minima(m, shape)
    ref = brute_column_minima(m, valid)
    assert (res.values, res.rows) == (ref.values, ref.rows)


def cyclic_boundary_matrix(rng, k):
    """Distances around a cycle with random positive arc lengths in one
    direction and a chord-free interior: a cyclic matrix whose blocks off
    the diagonal are Monge."""
    fwd = rng.integers(1, 20, size=k)
    bwd = rng.integers(1, 20, size=k)
    pos_f = np.concatenate([[0], np.cumsum(fwd)])
    pos_b = np.concatenate([[0], np.cumsum(bwd)])
    a = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            if i <= j:
                cw = pos_f[j] - pos_f[i]
                ccw = pos_b[k] - (pos_b[j] - pos_b[i])
            else:
                cw = pos_f[k] - (pos_f[i] - pos_f[j])
                ccw = pos_b[i] - pos_b[j]
            a[i, j] = min(cw, ccw)
    return a


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32))
def test_cyclic_matches_scan(k, seed):
    rng = np.random.default_rng(seed)
    a = cyclic_boundary_matrix(rng, k)
    assert monge_violations(a, True) == 0 and monge_violations(a, False) == 0
    off = rng.integers(0, 100, size=k)
    full = a + off[:, None]
    res = cyclic_column_minima(MatrixOracle.from_array(full))
    ref = brute_column_minima(MatrixOracle.from_array(full))
    assert (res.values, res.rows) == (ref.values, ref.rows)


def test_violation_count():
    a = np.array([[0, 0, 0], [0, 5, 0], [0, 0, 0]])
    assert monge_violations(a) == 2
    assert monge_violations(np.ones((1, 5))) == 0


backends = [_pykernels] + ([compiled] if compiled is not None else [])


@pytest.mark.parametrize("kern", backends, ids=lambda k: k.__name__.rsplit(".", 1)[-1])
@settings(max_examples=60, deadline=None)
@given(monge_case, st.floats(0, 0.5))
def test_kernel_rect_against_scan(kern, case, dead):
    r, c, seed = case
    rng = np.random.default_rng(seed)
    D = np.ascontiguousarray(random_monge(rng, r, c), dtype=np.int64)
    off = rng.integers(-500, 500, size=r).astype(np.int64)
    off[rng.random(r) < dead] = INF
    val, arg, (calls, evals) = kern.colmin_rect(off, D)
    live = off < INF
    if not live.any():
        assert (val == INF).all() and (arg == -1).all()
        return
    full = np.where(live[:, None], off[:, None] + D, INF)
    assert np.array_equal(val, full.min(axis=0))
    assert np.array_equal(arg, full.argmin(axis=0))


@pytest.mark.parametrize("kern", backends, ids=lambda k: k.__name__.rsplit(".", 1)[-1])
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 30), st.integers(0, 2**32))
def test_kernel_cyclic_against_scan(kern, k, seed):
    rng = np.random.default_rng(seed)
    D = cyclic_boundary_matrix(rng, k)
    off = rng.integers(0, 50, size=k).astype(np.int64)
    val, arg, _ = kern.colmin_cyclic(off, D)
    full = off[:, None] + D
    assert np.array_equal(val, full.min(axis=0))
    assert np.array_equal(arg, full.argmin(axis=0))


def test_quadratic_200_by_300():
    rng = np.random.default_rng(5)
    i = np.arange(200)[:, None]
    j = np.arange(300)[None, :]
    a = rng.integers(-99, 99, size=(200, 1)) + rng.integers(-99, 99, size=(1, 300)) - 3 * (i - j) ** 2
    assert is_convex_monge(a)
    res = smawk_column_minima(MatrixOracle.from_array(a))
    assert res.values == a.min(axis=0).tolist()
    assert res.rows == a.argmin(axis=0).tolist()


@settings(max_examples=50, deadline=None)
@given(monge_case)
def test_row_offsets_keep_monge(case):
    r, c, seed = case
    rng = np.random.default_rng(seed)
    a = random_monge(rng, r, c)
    b = rng.integers(-(10**9), 10**9, size=(r, 1))
    assert is_convex_monge(a + b)


def test_two_by_two_example():
    m = MatrixOracle.from_array([[0, 1], [1, 3]])
    res = smawk_column_minima(m)
    assert (res.values, res.rows) == ([0, 1], [0, 0])
    assert is_convex_monge([[0, 1], [1, 3]])
    assert not is_convex_monge([[1, 2], [2, 1]])
    assert is_convex_monge([[5, -3, 8]]) and is_convex_monge([[5], [-3], [8]])


def test_staircase_examples():
    a = np.array([[0, 9, 9], [1, 2, 9], [3, 3, 4]])
    m = MatrixOracle.from_array(a)
    lower = staircase_column_minima(m, "lower")
    ref = brute_column_minima(m, lambda i, j: i >= j)
    assert (lower.values, lower.rows) == (ref.values, ref.rows)
    full = staircase_column_minima(m, "full")
    plain = smawk_column_minima(m)
    assert (full.values, full.rows) == (plain.values, plain.rows)
    diag = staircase_column_minima(m, "diagonal")
    assert diag.values == [0, 2, 4] and diag.rows == [0, 1, 2]
