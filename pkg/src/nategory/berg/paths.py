"""Walks on the terrain graph and their bounded enumeration.

A path is a node sequence whose consecutive nodes are graph edges, plus a
cached total length (left-fold over edge lengths).  Single nodes are the
trivial paths of length zero and serve as identities; concatenation is the
morphism composition.  Hom-sets are infinite, so the law checkers work on
the deterministic enumeration of all simple paths with at most ``k`` edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import SignatureError
from .terrain import TerrainGraph

__all__ = ["BergPath", "make_path", "trivial_path", "concat", "PathSet", "enumerate_simple_paths"]


@dataclass(frozen=True)
class BergPath:
    nodes: tuple[int, ...]
    length: float

    @property
    def src(self) -> int:
        return self.nodes[0]

    @property
    def dst(self) -> int:
        return self.nodes[-1]

    @property
    def edge_count(self) -> int:
        return len(self.nodes) - 1

    def __repr__(self) -> str:
        return f"BergPath({'-'.join(map(str, self.nodes))}, len={self.length:.6g})"


def make_path(graph: TerrainGraph, nodes) -> BergPath:
    """Build a path, validating adjacency and computing the cached length."""
    nodes = tuple(int(v) for v in nodes)
    if not nodes:
        raise ValueError("a path needs at least one node")
    total = 0.0
    for u, v in zip(nodes, nodes[1:]):
        total += graph.edge_length(u, v)
    return BergPath(nodes, total)


def trivial_path(node: int) -> BergPath:
    return BergPath((int(node),), 0.0)


def concat(graph: TerrainGraph, f: BergPath, g: BergPath) -> BergPath:
    """Concatenation; endpoints must meet.  Length is re-folded over the
    combined edges so the cached-length invariant is exact."""
    if f.dst != g.src:
        raise SignatureError(f"cannot concatenate {f!r} with {g!r}")
    return make_path(graph, f.nodes + g.nodes[1:])


class PathSet:
    """All simple paths with at most ``max_edges`` edges, in deterministic
    order (start node ascending, then depth-first by neighbour order),
    packed into arrays for the scan kernels."""

    def __init__(self, graph: TerrainGraph, max_edges: int):
        self.graph = graph
        self.max_edges = max_edges
        starts: list[int] = []
        ends: list[int] = []
        lengths: list[float] = []
        flat: list[int] = []
        offsets: list[int] = [0]

        indptr, nbr, elen = graph.indptr, graph.nbr, graph.elen

        def emit(stack: list[int], total: float):
            starts.append(stack[0])
            ends.append(stack[-1])
            lengths.append(total)
            flat.extend(stack)
            offsets.append(len(flat))

        def dfs(stack: list[int], on_stack: set, total: float):
            if len(stack) - 1 >= max_edges:
                return
            u = stack[-1]
            for e in range(indptr[u], indptr[u + 1]):
                v = int(nbr[e])
                if v in on_stack:
                    continue
                stack.append(v)
                on_stack.add(v)
                t = total + float(elen[e])
                emit(stack, t)
                dfs(stack, on_stack, t)
                on_stack.discard(v)
                stack.pop()

        for s in range(graph.n):
            emit([s], 0.0)
            dfs([s], {s}, 0.0)

        self.starts = np.asarray(starts, dtype=np.int32)
        self.ends = np.asarray(ends, dtype=np.int32)
        self.lengths = np.asarray(lengths, dtype=np.float64)
        self.flat = np.asarray(flat, dtype=np.int32)
        self.offsets = np.asarray(offsets, dtype=np.int64)
        # start-major enumeration makes the by-start index contiguous
        counts = np.bincount(self.starts, minlength=graph.n)
        self.by_start_indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.by_start_order = np.arange(len(starts), dtype=np.int64)
        order = np.argsort(self.ends, kind="stable").astype(np.int64)
        counts_e = np.bincount(self.ends, minlength=graph.n)
        self.by_end_indptr = np.concatenate(([0], np.cumsum(counts_e))).astype(np.int64)
        self.by_end_order = order

    def __len__(self) -> int:
        return len(self.starts)

    def path(self, i: int) -> BergPath:
        lo, hi = self.offsets[i], self.offsets[i + 1]
        return BergPath(tuple(int(v) for v in self.flat[lo:hi]), float(self.lengths[i]))

    def unique_lengths(self):
        """Distinct length values with a representative path index each."""
        vals, first = np.unique(self.lengths, return_index=True)
        return vals, first.astype(np.int64)


def enumerate_simple_paths(graph: TerrainGraph, max_edges: int = 6) -> PathSet:
    return PathSet(graph, max_edges)
