"""Single-source shortest paths in planar graphs with negative edge lengths."""

from .errors import (
    BadInput,
    BadSpec,
    DisconnectedGraph,
    InfeasiblePrice,
    InvalidHole,
    MalformedPath,
    NegativeCycleDetected,
    NonPlanarEmbedding,
    Overflow,
    ParameterTooSmall,
    PlanarError,
    SelfLoop,
)
from .generators import GeneratorSpec, generate
from .graph import INF, PlanarGraph, build_embedding, faces, triangulate
from .io import format_graph, parse_graph, read_graph, write_graph
from .kernels import BACKEND
from .pipeline import Solver, choose_p, solve_sssp
from .separator import r_division
from .sssp import DistanceResult, bellman_ford_oracle, dijkstra, reroot_distances

__all__ = [
    "BACKEND",
    "BadInput",
    "BadSpec",
    "DisconnectedGraph",
    "DistanceResult",
    "GeneratorSpec",
    "INF",
    "InfeasiblePrice",
    "InvalidHole",
    "MalformedPath",
    "NegativeCycleDetected",
    "NonPlanarEmbedding",
    "Overflow",
    "ParameterTooSmall",
    "PlanarError",
    "PlanarGraph",
    "SelfLoop",
    "Solver",
    "bellman_ford_oracle",
    "build_embedding",
    "choose_p",
    "dijkstra",
    "faces",
    "format_graph",
    "generate",
    "parse_graph",
    "r_division",
    "read_graph",
    "reroot_distances",
    "solve_sssp",
    "triangulate",
    "write_graph",
]
