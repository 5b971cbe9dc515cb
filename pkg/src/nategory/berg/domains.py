"""Numeric norphism domains and the bound schemas.

A norphism value here is a lower bound on the length of any path between
two nodes; positive infinity negates every path.  Three carriers are
supported, differing in how a bound is pushed past a path of length L:

* ``nonneg``   - nonnegative reals, bound becomes max(n - L, 0),
* ``real``     - all reals, bound becomes n - L (exact),
* ``intfloor`` - integers, bound becomes floor(n - L).

Schemas construct admissible bounds from geometry: the zero bound, the 3D
straight-line distance, the unconstrained-graph distance (a stand-in for
geodesic distance, see the planner), and a bound from the steepness window
(a forced climb or descent cannot be shorter than the height difference
divided by the steepest allowed slope).
"""

from __future__ import annotations

import math

__all__ = [
    "NONNEG",
    "REAL",
    "INTFLOOR",
    "DOMAINS",
    "DOMAIN_CODES",
    "REL_TOL",
    "compose_value",
    "incompat_value",
    "validate_value",
    "values_close",
    "close",
    "schema_zero",
    "schema_euclid",
    "schema_steepness",
]

NONNEG = "nonneg"
REAL = "real"
INTFLOOR = "intfloor"
DOMAINS = (NONNEG, REAL, INTFLOOR)
DOMAIN_CODES = {NONNEG: 0, REAL: 1, INTFLOOR: 2}

REL_TOL = 1e-9

INF = math.inf


def compose_value(domain: str, n: float, length: float) -> float:
    """Push the bound ``n`` past a path of the given length."""
    v = n - length
    if domain == NONNEG:
        return v if v > 0.0 else 0.0
    if domain == INTFLOOR:
        return v if v == INF else float(math.floor(v))
    return v


def incompat_value(n: float, length: float) -> bool:
    """A bound excludes exactly the paths shorter than it."""
    return length < n


def validate_value(domain: str, v: float):
    if math.isnan(v):
        raise ValueError("norphism value may not be NaN")
    if domain == NONNEG and v < 0.0:
        raise ValueError(f"nonneg norphism value {v} is negative")
    if domain == INTFLOOR and v != INF and v != math.floor(v):
        raise ValueError(f"intfloor norphism value {v} is not integral")


def close(a: float, b: float, rel: float = REL_TOL) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def values_close(domain: str, a: float, b: float) -> bool:
    """Law-level value equality: exact for integers, tolerant for reals."""
    if domain == INTFLOOR:
        return a == b
    return close(a, b)


# ---------------------------------------------------------------------------
# schemas (scalar forms; the planner exposes whole-field variants)


def schema_zero(graph, x: int, y: int) -> float:
    """Lengths are never negative; excludes nothing."""
    return 0.0


def schema_euclid(graph, x: int, y: int) -> float:
    """No path beats the straight line through space."""
    p1 = graph.position(x)
    p2 = graph.position(y)
    return math.dist(p1, p2)


def schema_steepness(graph, x: int, y: int) -> float:
    """A climb (descent) of dz within slope window sigma takes at least
    |dz| / sigma_hi (|dz| / |sigma_lo|) of path; an impossible direction
    gives infinity."""
    dz = graph.zs[y] - graph.zs[x]
    if dz == 0.0:
        return 0.0
    if dz > 0.0:
        hi = graph.sigma.hi
        return abs(dz) / hi if hi > 0.0 else INF
    lo = graph.sigma.lo
    return abs(dz) / abs(lo) if lo < 0.0 else INF
