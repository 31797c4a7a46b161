"""Reading and writing the ``pgraph`` text format.

::

    pgraph <n> <m>
    <tail> <head> <length>        # m lines, edge ids 0..m-1 in order
    coord <x> <y>                 # n lines, vertex ids 0..n-1 in order
    # or instead of coords:
    rot <v> <e> <e> ...           # one line per vertex, edge ids ccw

``#`` starts a comment.  A single vertex needs no embedding lines.
"""

from __future__ import annotations

from pathlib import Path

from .errors import BadInput
from .graph import INF, PlanarGraph, build_embedding


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if line:
            yield no, line


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise BadInput(f"line {no}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> PlanarGraph:
    lines = list(_lines(text))
    if not lines:
        raise BadInput("empty input")
    no, head = lines[0]
    if head[0] != "pgraph" or len(head) != 3:
        raise BadInput(f"line {no}: expected 'pgraph <n> <m>'")
    n, m = _int(head[1], no), _int(head[2], no)
    if n < 1 or m < 0:
        raise BadInput(f"line {no}: need n >= 1 and m >= 0")
    if len(lines) < 1 + m:
        raise BadInput(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for no, tok in lines[1 : 1 + m]:
        if len(tok) != 3:
            raise BadInput(f"line {no}: expected 'tail head length'")
        edges.append(tuple(_int(t, no) for t in tok))
    rest = lines[1 + m :]
    coords = None
    rot = None
    if rest and rest[0][1][0] == "coord":
        if len(rest) != n:
            raise BadInput(f"expected {n} coord lines, found {len(rest)}")
        coords = []
        for no, tok in rest:
            if tok[0] != "coord" or len(tok) != 3:
                raise BadInput(f"line {no}: expected 'coord x y'")
            try:
                coords.append((float(tok[1]), float(tok[2])))
            except ValueError:
                raise BadInput(f"line {no}: bad coordinate") from None
    elif rest and rest[0][1][0] == "rot":
        rot = [None] * n
        for no, tok in rest:
            if tok[0] != "rot" or len(tok) < 2:
                raise BadInput(f"line {no}: expected 'rot v e ...'")
            v = _int(tok[1], no)
            if not 0 <= v < n or rot[v] is not None:
                raise BadInput(f"line {no}: bad or repeated vertex {v}")
            rot[v] = [_int(t, no) for t in tok[2:]]
        if any(r is None for r in rot):
            raise BadInput("every vertex needs a rot line")
    elif rest:
        no, tok = rest[0]
        raise BadInput(f"line {no}: expected 'coord' or 'rot', got {tok[0]!r}")
    elif n == 1 and m == 0:
        rot = [[]]
    else:
        raise BadInput("missing coord or rot lines")
    return build_embedding(n, edges, rotations=rot, coords=coords)


def read_graph(path) -> PlanarGraph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BadInput(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def edge_rotations(g: PlanarGraph) -> list[list[int]]:
    """Per-vertex ccw edge ids, numbering present darts in dart order."""
    num = {}
    for d in range(g.num_darts):
        if g.present[d]:
            num[d] = len(num)
    rot = []
    for v in range(g.n):
        rot.append([num[d] if g.present[d] else num[d ^ 1] for d in g.rotation(v)])
    return rot


def format_graph(g: PlanarGraph) -> str:
    """Text form with explicit rotations (only input darts are written)."""
    es = g.directed_edges()
    out = [f"pgraph {g.n} {len(es)}"]
    out += [f"{t} {h} {ln}" for t, h, ln in es]
    if es:
        for v, lst in enumerate(edge_rotations(g)):
            out.append(" ".join(["rot", str(v)] + [str(e) for e in lst]))
    return "\n".join(out) + "\n"


def write_graph(g: PlanarGraph, path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")


def format_distances(dist) -> str:
    """``v distance`` lines in vertex order, ``+inf`` when unreachable."""
    return "".join(f"{v} {'+inf' if int(d) >= INF else int(d)}\n" for v, d in enumerate(dist))
