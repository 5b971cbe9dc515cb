"""Discretized mountain terrain and the steepness-filtered walk graph.

A terrain is a height raster over a square grid.  Grid cells become graph
nodes at their 3D positions; directed edges connect neighbouring cells
whose steepness (rise over horizontal run) lies inside a closed interval,
so an uphill edge can exist while its reverse does not.  Edge length is the
3D chord between the endpoints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Terrain",
    "SteepnessInterval",
    "TerrainGraph",
    "DegenerateEdgeError",
    "TerrainFormatError",
    "edge_steepness",
    "build_terrain_graph",
    "random_terrain",
]

_OFFSETS_4 = ((-1, 0), (0, -1), (0, 1), (1, 0))
_OFFSETS_8 = ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1))


class DegenerateEdgeError(ValueError):
    """Steepness is undefined between coincident horizontal positions."""


class TerrainFormatError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class SteepnessInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"invalid steepness interval [{self.lo}, {self.hi}]")

    def contains(self, s: float) -> bool:
        return self.lo <= s <= self.hi


class Terrain:
    """Height raster (meters) with a fixed cell size (meters)."""

    def __init__(self, heights, cell_size: float):
        h = np.asarray(heights, dtype=np.float64)
        if h.ndim != 2 or h.shape[0] < 1 or h.shape[1] < 1:
            raise ValueError("heights must be a rows x cols array")
        if not np.isfinite(h).all():
            raise ValueError("heights must be finite")
        if not (cell_size > 0):
            raise ValueError("cell size must be positive")
        self.heights = h
        self.heights.setflags(write=False)
        self.cell_size = float(cell_size)

    @property
    def rows(self) -> int:
        return self.heights.shape[0]

    @property
    def cols(self) -> int:
        return self.heights.shape[1]

    @classmethod
    def from_function(cls, fn, rows: int, cols: int, cell_size: float) -> "Terrain":
        """Sample an analytic height expression ``fn(x, y)`` onto the grid."""
        h = np.empty((rows, cols))
        for r in range(rows):
            for c in range(cols):
                h[r, c] = fn(c * cell_size, r * cell_size)
        return cls(h, cell_size)

    @classmethod
    def from_csv(cls, text: str) -> "Terrain":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines:
            raise TerrainFormatError(1, "empty terrain file")
        head = lines[0].split(",")
        if len(head) != 3:
            raise TerrainFormatError(1, "expected header 'rows,cols,cell_size'")
        try:
            rows, cols = int(head[0]), int(head[1])
            cell = float(head[2])
        except ValueError as exc:
            raise TerrainFormatError(1, f"bad header: {exc}") from exc
        if len(lines) - 1 != rows:
            raise TerrainFormatError(
                len(lines), f"expected {rows} height rows, found {len(lines) - 1}"
            )
        data = []
        for i, ln in enumerate(lines[1:], start=2):
            parts = ln.split(",")
            if len(parts) != cols:
                raise TerrainFormatError(i, f"expected {cols} values, found {len(parts)}")
            try:
                data.append([float(p) for p in parts])
            except ValueError as exc:
                raise TerrainFormatError(i, f"bad height value: {exc}") from exc
        try:
            return cls(np.array(data), cell)
        except ValueError as exc:
            raise TerrainFormatError(1, str(exc)) from exc

    def to_csv(self) -> str:
        out = [f"{self.rows},{self.cols},{self.cell_size!r}"]
        for r in range(self.rows):
            out.append(",".join(repr(float(v)) for v in self.heights[r]))
        return "\n".join(out) + "\n"


def edge_steepness(p1, p2) -> float:
    """Rise over horizontal run between two 3D points."""
    dx = p2[0] - p1[0]
    dy = p2[1] - p1[1]
    run = math.hypot(dx, dy)
    if run == 0.0:
        raise DegenerateEdgeError(f"zero horizontal distance between {p1} and {p2}")
    return (p2[2] - p1[2]) / run


class TerrainGraph:
    """CSR digraph over grid cells; every stored edge passed the filter."""

    def __init__(self, terrain, sigma, connectivity, indptr, nbr, elen):
        self.terrain = terrain
        self.sigma = sigma
        self.connectivity = connectivity
        self.indptr = indptr
        self.nbr = nbr
        self.elen = elen
        self.n = terrain.rows * terrain.cols
        cell = terrain.cell_size
        cols = terrain.cols
        ids = np.arange(self.n)
        self.xs = (ids % cols).astype(np.float64) * cell
        self.ys = (ids // cols).astype(np.float64) * cell
        self.zs = terrain.heights.reshape(-1).astype(np.float64)
        self._rev = None
        self._edge_len = None

    def node_id(self, row: int, col: int) -> int:
        if not (0 <= row < self.terrain.rows and 0 <= col < self.terrain.cols):
            raise ValueError(f"cell ({row}, {col}) outside the grid")
        return row * self.terrain.cols + col

    def cell(self, node: int) -> tuple[int, int]:
        return divmod(int(node), self.terrain.cols)

    def position(self, node: int) -> tuple[float, float, float]:
        return (float(self.xs[node]), float(self.ys[node]), float(self.zs[node]))

    def neighbors(self, node: int):
        lo, hi = self.indptr[node], self.indptr[node + 1]
        return self.nbr[lo:hi], self.elen[lo:hi]

    def edge_count(self) -> int:
        return int(self.nbr.shape[0])

    def edge_length(self, u: int, v: int) -> float:
        if self._edge_len is None:
            self._edge_len = {}
            for a in range(self.n):
                lo, hi = self.indptr[a], self.indptr[a + 1]
                for b, w in zip(self.nbr[lo:hi], self.elen[lo:hi]):
                    self._edge_len[(a, int(b))] = float(w)
        try:
            return self._edge_len[(u, v)]
        except KeyError:
            raise ValueError(f"no edge {u} -> {v}") from None

    def reversed_csr(self):
        """Reverse-graph CSR (cached), for distances *to* a node."""
        if self._rev is None:
            n = self.n
            counts = np.zeros(n + 1, dtype=self.indptr.dtype)
            for v in self.nbr:
                counts[v + 1] += 1
            rptr = np.cumsum(counts)
            rnbr = np.empty_like(self.nbr)
            rlen = np.empty_like(self.elen)
            cursor = rptr[:-1].copy()
            for u in range(n):
                for e in range(self.indptr[u], self.indptr[u + 1]):
                    v = self.nbr[e]
                    rnbr[cursor[v]] = u
                    rlen[cursor[v]] = self.elen[e]
                    cursor[v] += 1
            self._rev = (rptr, rnbr, rlen)
        return self._rev


def build_terrain_graph(
    terrain: Terrain, sigma: SteepnessInterval, connectivity: int = 4
) -> TerrainGraph:
    """Keep exactly the neighbour edges whose steepness lies in the interval."""
    if connectivity not in (4, 8):
        raise ValueError("connectivity must be 4 or 8")
    offsets = _OFFSETS_4 if connectivity == 4 else _OFFSETS_8
    rows, cols = terrain.rows, terrain.cols
    cell = terrain.cell_size
    h = terrain.heights
    indptr = [0]
    nbr: list[int] = []
    elen: list[float] = []
    for r in range(rows):
        for c in range(cols):
            for dr, dc in offsets:
                r2, c2 = r + dr, c + dc
                if not (0 <= r2 < rows and 0 <= c2 < cols):
                    continue
                run = cell * math.hypot(dr, dc)
                dz = h[r2, c2] - h[r, c]
                if sigma.contains(dz / run):
                    nbr.append(r2 * cols + c2)
                    elen.append(math.hypot(run, dz))
            indptr.append(len(nbr))
    return TerrainGraph(
        terrain,
        sigma,
        connectivity,
        np.asarray(indptr, dtype=np.int64),
        np.asarray(nbr, dtype=np.int32),
        np.asarray(elen, dtype=np.float64),
    )


def random_terrain(
    rows: int, cols: int, cell_size: float = 1.0, seed: int = 0, amplitude: float = 1.0
) -> Terrain:
    """Smooth seeded terrain: a few random sinusoidal swells plus mild noise."""
    rng = np.random.default_rng(seed)
    r = np.arange(rows)[:, None] / max(rows, 1)
    c = np.arange(cols)[None, :] / max(cols, 1)
    h = np.zeros((rows, cols))
    for _ in range(3):
        fr, fc = rng.uniform(0.5, 2.5, size=2)
        phase = rng.uniform(0, 2 * np.pi)
        weight = rng.uniform(0.3, 1.0)
        h += weight * np.sin(2 * np.pi * (fr * r + fc * c) + phase)
    h += 0.05 * rng.standard_normal((rows, cols))
    peak = np.abs(h).max()
    if peak > 0:
        h *= amplitude / peak
    return Terrain(h, cell_size)
