"""Terrain instance: steepness-filtered walk graphs, numeric length-bound
norphisms in three domains, admissible bound schemas, and a certifying
planner."""

from .domains import (
    DOMAINS,
    INTFLOOR,
    NONNEG,
    REAL,
    compose_value,
    incompat_value,
    schema_euclid,
    schema_steepness,
    schema_zero,
)
from .instance import DEFAULT_NOR_VALUES, BergInstance
from .paths import BergPath, PathSet, concat, enumerate_simple_paths, make_path, trivial_path
from .planner import (
    SCHEMAS,
    PlanResult,
    certify_optimal,
    format_plan_result,
    heuristic_field,
    plan,
    schema_geodesic,
    shortest_distances,
)
from .terrain import (
    DegenerateEdgeError,
    SteepnessInterval,
    Terrain,
    TerrainFormatError,
    TerrainGraph,
    build_terrain_graph,
    edge_steepness,
    random_terrain,
)

__all__ = [
    "DOMAINS",
    "NONNEG",
    "REAL",
    "INTFLOOR",
    "compose_value",
    "incompat_value",
    "schema_zero",
    "schema_euclid",
    "schema_steepness",
    "schema_geodesic",
    "DEFAULT_NOR_VALUES",
    "BergInstance",
    "BergPath",
    "PathSet",
    "concat",
    "enumerate_simple_paths",
    "make_path",
    "trivial_path",
    "SCHEMAS",
    "PlanResult",
    "certify_optimal",
    "format_plan_result",
    "heuristic_field",
    "plan",
    "shortest_distances",
    "DegenerateEdgeError",
    "SteepnessInterval",
    "Terrain",
    "TerrainFormatError",
    "TerrainGraph",
    "build_terrain_graph",
    "edge_steepness",
    "random_terrain",
]
