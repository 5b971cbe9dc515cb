"""A* planner returning a path together with a lower-bound certificate.

The heuristic is one of the four bound schemas, each admissible (never
above the true remaining distance) and consistent on the filtered graph,
so the search is optimal and the distance it establishes doubles as the
certificate: a norphism equal to the returned path's length witnesses
optimality, and an infinite bound witnesses infeasibility.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .domains import DOMAINS, INTFLOOR, REL_TOL, close, schema_steepness
from .paths import BergPath, make_path
from .terrain import SteepnessInterval, Terrain, TerrainGraph, build_terrain_graph

__all__ = [
    "SCHEMAS",
    "PlanResult",
    "heuristic_field",
    "schema_geodesic",
    "shortest_distances",
    "plan",
    "certify_optimal",
    "format_plan_result",
]

SCHEMAS = ("zero", "euclid", "geodesic", "steepness")

INF = math.inf


def shortest_distances(graph: TerrainGraph, src: int, backend=None):
    """Single-source shortest distances and predecessors on the graph."""
    return _kernels.dijkstra(graph.indptr, graph.nbr, graph.elen, src, graph.n, backend)


def _unconstrained(graph: TerrainGraph) -> TerrainGraph:
    cached = getattr(graph, "_unconstrained", None)
    if cached is None:
        cached = build_terrain_graph(
            graph.terrain, SteepnessInterval(-INF, INF), graph.connectivity
        )
        graph._unconstrained = cached
    return cached


def _distances_to(graph: TerrainGraph, goal: int, backend=None):
    rptr, rnbr, rlen = graph.reversed_csr()
    dist, _ = _kernels.dijkstra(rptr, rnbr, rlen, goal, graph.n, backend)
    return dist


def schema_geodesic(terrain: Terrain, connectivity: int, x: int, y: int, backend=None) -> float:
    """Distance on the unconstrained walk graph, the grid stand-in for the
    surface metric; infinite when disconnected."""
    graph = build_terrain_graph(terrain, SteepnessInterval(-INF, INF), connectivity)
    dist, _ = shortest_distances(graph, x, backend)
    return float(dist[y])


def heuristic_field(graph: TerrainGraph, goal: int, schema: str, backend=None) -> np.ndarray:
    """Per-node lower bounds on the remaining distance to ``goal``."""
    if schema == "zero":
        return np.zeros(graph.n)
    if schema == "euclid":
        return np.sqrt(
            (graph.xs - graph.xs[goal]) ** 2
            + (graph.ys - graph.ys[goal]) ** 2
            + (graph.zs - graph.zs[goal]) ** 2
        )
    if schema == "geodesic":
        return _distances_to(_unconstrained(graph), goal, backend)
    if schema == "steepness":
        return np.array([schema_steepness(graph, v, goal) for v in range(graph.n)])
    raise ValueError(f"unknown schema {schema!r} (expected one of {SCHEMAS})")


@dataclass(frozen=True)
class PlanResult:
    path: BergPath | None
    bound: float
    certified: bool
    schema: str
    domain: str

    @property
    def feasible(self) -> bool:
        return self.path is not None


def certify_optimal(path: BergPath, bound: float) -> bool:
    """A valid lower bound at least the path's length witnesses optimality."""
    return path.length <= bound or close(path.length, bound)


def _node_of(graph: TerrainGraph, where) -> int:
    if isinstance(where, tuple):
        return graph.node_id(*where)
    node = int(where)
    if not (0 <= node < graph.n):
        raise ValueError(f"node id {node} outside the graph")
    return node


def plan(
    graph: TerrainGraph,
    start,
    goal,
    schema: str = "euclid",
    domain: str = "nonneg",
    backend=None,
) -> PlanResult:
    """Shortest feasible path plus its certificate.

    Feasible goal: the returned bound is the exact shortest distance the
    search established (floored in the integer domain) and certification
    compares it against the path length.  Unreachable goal: no path and an
    infinite bound, which is itself the infeasibility certificate.
    """
    if domain not in DOMAINS:
        raise ValueError(f"unknown norphism domain {domain!r}")
    s = _node_of(graph, start)
    t = _node_of(graph, goal)
    h = heuristic_field(graph, t, schema, backend)
    g, parent = _kernels.astar(graph.indptr, graph.nbr, graph.elen, h, s, t, graph.n, backend)
    if math.isinf(g[t]):
        return PlanResult(None, INF, True, schema, domain)
    nodes = [t]
    while nodes[-1] != s:
        nodes.append(int(parent[nodes[-1]]))
    nodes.reverse()
    path = make_path(graph, nodes)
    bound = float(g[t])
    if domain == INTFLOOR:
        bound = float(math.floor(bound))
    return PlanResult(path, bound, certify_optimal(path, bound), schema, domain)


def _fmt_num(v: float) -> str:
    if v == INF:
        return '"inf"'
    if v == -INF:
        return '"-inf"'
    return repr(float(v))


def format_plan_result(result: PlanResult, graph: TerrainGraph) -> str:
    """Stable-order structured text for one planning answer."""
    if result.path is None:
        path_txt = "null"
        length_txt = "null"
    else:
        cells = [list(graph.cell(v)) for v in result.path.nodes]
        path_txt = json.dumps(cells, separators=(",", ":"))
        length_txt = repr(float(result.path.length))
    lines = [
        f"path: {path_txt}",
        f"length_m: {length_txt}",
        f"bound_m: {_fmt_num(result.bound)}",
        f"certified: {'true' if result.certified else 'false'}",
        f"schema: {result.schema}",
        f"domain: {result.domain}",
        f"sigma: [{_fmt_num(graph.sigma.lo)}, {_fmt_num(graph.sigma.hi)}]",
    ]
    return "\n".join(lines) + "\n"
