"""Column minima of convex Monge matrices.

A matrix is convex Monge when ``M[i][j] + M[i'][j'] >= M[i][j'] + M[i'][j]``
for all ``i < i'`` and ``j < j'``.  Then the smallest minimizing row of each
column never increases from left to right, which is what SMAWK exploits.
Every routine breaks ties toward the smallest row index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

INF = 1 << 62


@dataclass
class MatrixOracle:
    """A lazily evaluated matrix.  ``calls`` counts evaluator invocations."""

    rows: int
    cols: int
    evaluator: Callable[[int, int], int]
    calls: int = 0

    def __call__(self, i: int, j: int) -> int:
        self.calls += 1
        return self.evaluator(i, j)

    @classmethod
    def from_array(cls, a) -> "MatrixOracle":
        a = np.asarray(a)
        if a.ndim != 2:
            raise ValueError("need a 2-d array")
        rows = a.tolist()
        return cls(a.shape[0], a.shape[1], lambda i, j: rows[i][j])


@dataclass
class ColumnMinima:
    values: list[int]
    rows: list[int]  # -1 for a column without valid entries
    evaluations: int = field(default=0)


def _smawk(xrows, xcols, key, out):
    """Row minima of a totally monotone matrix (minima move right going down).

    ``key(r, c)`` must be strictly ordered within a row.  Writes ``out[r]``.
    """
    if not xrows:
        return
    if len(xcols) > len(xrows):
        st = []
        nr = len(xrows)
        for c in xcols:
            while st:
                r = xrows[len(st) - 1]
                if key(r, st[-1]) <= key(r, c):
                    break
                st.pop()
            if len(st) < nr:
                st.append(c)
        xcols = st
    _smawk(xrows[1::2], xcols, key, out)
    pos = {c: i for i, c in enumerate(xcols)}
    k = 0
    last = len(xcols) - 1
    for i in range(0, len(xrows), 2):
        r = xrows[i]
        stop = pos[out[xrows[i + 1]]] if i + 1 < len(xrows) else last
        best = xcols[k]
        bk = key(r, best)
        for j in range(k + 1, stop + 1):
            kj = key(r, xcols[j])
            if kj < bk:
                best, bk = xcols[j], kj
        out[r] = best
        k = stop


def colmin_monge(rows: Sequence[int], cols: Sequence[int], value) -> dict[int, int]:
    """Smallest argmin row of every column of a convex Monge block.

    The block is fed to SMAWK transposed with its rows reversed, which turns
    non-increasing column argmins into non-decreasing row argmins; comparing
    ``(value, row)`` pairs makes the order strict.
    """
    out: dict[int, int] = {}
    _smawk(list(cols), list(reversed(rows)), lambda c, r: (value(r, c), r), out)
    return out


def _memo(m: MatrixOracle):
    cache: dict[tuple[int, int], int] = {}

    def value(i, j):
        v = cache.get((i, j))
        if v is None:
            v = m(i, j)
            cache[(i, j)] = v
        return v

    return value, cache


def brute_column_minima(m: MatrixOracle, valid=None) -> ColumnMinima:
    """Exhaustive scan; ``valid(i, j)`` optionally masks entries."""
    vals, rows = [], []
    for j in range(m.cols):
        bv, br = INF, -1
        for i in range(m.rows):
            if valid is not None and not valid(i, j):
                continue
            v = m.evaluator(i, j)
            if br < 0 or v < bv:
                bv, br = v, i
        vals.append(bv)
        rows.append(br)
    return ColumnMinima(vals, rows, m.rows * m.cols)


def smawk_column_minima(m: MatrixOracle, check: bool = False) -> ColumnMinima:
    """Column minima of a convex Monge (hence totally monotone) matrix in
    O(rows + cols) evaluations.  ``check`` compares with an exhaustive scan."""
    before = m.calls
    if m.rows == 0:
        return ColumnMinima([INF] * m.cols, [-1] * m.cols, 0)
    value, cache = _memo(m)
    arg = colmin_monge(range(m.rows), range(m.cols), value)
    rows = [arg[j] for j in range(m.cols)]
    vals = [cache[(rows[j], j)] for j in range(m.cols)]
    res = ColumnMinima(vals, rows, m.calls - before)
    if check:
        ref = brute_column_minima(m)
        if ref.values != res.values or ref.rows != res.rows:
            raise AssertionError("matrix is not totally monotone: SMAWK disagrees with a full scan")
    return res


def _merge(best_v, best_r, value, arg):
    for j, i in arg.items():
        v = value(i, j)
        if best_r[j] < 0 or v < best_v[j] or (v == best_v[j] and i < best_r[j]):
            best_v[j] = v
            best_r[j] = i


def _triangle_blocks(lo: int, hi: int, upper: bool, emit) -> None:
    # blocks of the square [lo, hi)^2 lying strictly on one side of the diagonal
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if upper:
            emit(range(lo, mid), range(mid, hi))
        else:
            emit(range(mid, hi), range(lo, mid))
        _triangle_blocks(lo, mid, upper, emit)
        lo = mid


def staircase_column_minima(m: MatrixOracle, shape: str = "upper") -> ColumnMinima:
    """Column minima over a triangular valid region of a square matrix.

    ``shape`` is ``"upper"`` (valid iff ``i <= j``), ``"lower"`` (``i >= j``),
    ``"diagonal"`` (``i == j``) or ``"full"``.  The valid region must be convex
    Monge.  It is covered by full rectangles (recursive halving around the
    diagonal) each solved by SMAWK, which costs O(k log k) evaluations.
    Columns with no valid entry report ``INF`` and row -1.
    """
    if shape == "full":
        return smawk_column_minima(m)
    if shape not in ("upper", "lower", "diagonal"):
        raise ValueError(f"unknown staircase shape {shape!r}")
    if m.rows != m.cols:
        raise ValueError("triangular staircases need a square matrix")
    before = m.calls
    k = m.rows
    value, _ = _memo(m)
    best_v = [INF] * k
    best_r = [-1] * k
    for i in range(k):
        best_v[i] = value(i, i)
        best_r[i] = i
    if shape != "diagonal":

        def emit(rows, cols):
            _merge(best_v, best_r, value, colmin_monge(rows, cols, value))

        _triangle_blocks(0, k, shape == "upper", emit)
    return ColumnMinima(best_v, best_r, m.calls - before)


def cyclic_column_minima(m: MatrixOracle) -> ColumnMinima:
    """Column minima of a square matrix indexed twice by one cyclic order.

    Only blocks whose rows all precede (or all follow) their columns need to
    be Monge; this is the shape of boundary distances along one face.
    """
    up = staircase_column_minima(m, "upper")
    calls = up.evaluations
    lo = staircase_column_minima(m, "lower")
    vals, rows = [], []
    for j in range(m.cols):
        a = (up.values[j], up.rows[j])
        b = (lo.values[j], lo.rows[j])
        v, r = min(a, b)
        vals.append(v)
        rows.append(r)
    return ColumnMinima(vals, rows, calls + lo.evaluations)


def is_convex_monge(m) -> bool:
    """Quadrangle inequality on all adjacent 2x2 minors (hence on all)."""
    if isinstance(m, MatrixOracle):
        a = np.array([[m.evaluator(i, j) for j in range(m.cols)] for i in range(m.rows)], dtype=object)
    else:
        a = np.asarray(m)
    if a.shape[0] < 2 or a.shape[1] < 2:
        return True
    a = a.astype(object)
    lhs = a[:-1, :-1] + a[1:, 1:]
    rhs = a[:-1, 1:] + a[1:, :-1]
    return bool((lhs >= rhs).all())


def monge_violations(a: np.ndarray, rows_before_cols: bool | None = None) -> int:
    """Count adjacent 2x2 minors breaking the inequality.

    With ``rows_before_cols`` set, ``a`` is a cyclic square matrix and only
    minors lying entirely strictly above (True) or below (False) the diagonal,
    where ``rows`` precede ``cols`` or the reverse, are checked.
    """
    a = np.asarray(a, dtype=np.int64)
    if a.shape[0] < 2 or a.shape[1] < 2:
        return 0
    lhs = a[:-1, :-1] + a[1:, 1:]
    rhs = a[:-1, 1:] + a[1:, :-1]
    bad = lhs < rhs
    if rows_before_cols is not None:
        i = np.arange(a.shape[0] - 1)[:, None]
        j = np.arange(a.shape[1] - 1)[None, :]
        # minor rows i, i+1 and cols j, j+1
        mask = (i + 1 <= j) if rows_before_cols else (j + 1 <= i)
        bad &= mask
    return int(bad.sum())
