"""Shortest-path ground truth on the accessible-site graph.

Sites are connected to their accessible von-Neumann neighbors; distances
are unweighted shortest-path lengths.  Single-source fields come from a
numpy frontier BFS; the all-pairs and agent-pairs histograms go through
scipy.sparse.csgraph so large domains stay practical, streaming a bounded
block of sources at a time instead of materializing an all-pairs matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from .errors import DomainError
from .histogram import DistanceHistogram
from .lattice import ObstacleConfiguration, OccupancyState

UNREACHABLE = -1

# frontier expansion order: N, E, S, W
_STEPS = ((0, 1), (1, 0), (0, -1), (-1, 0))


@dataclass(frozen=True)
class DistanceField:
    """Per-site shortest-path distances from one source site.

    ``grid`` has shape (Lx, Ly); unreachable and inaccessible sites hold
    UNREACHABLE (-1).
    """

    source: tuple
    grid: np.ndarray

    def distance(self, x: int, y: int) -> int:
        return int(self.grid[x - 1, y - 1])

    def render(self) -> str:
        """Debug dump, top row = y = Ly, "∞" for unreachable."""
        lines = []
        width = max(2, len(str(int(self.grid.max(initial=0)))))
        for y in range(self.grid.shape[1], 0, -1):
            row = [
                ("∞" if self.grid[x - 1, y - 1] == UNREACHABLE else str(int(self.grid[x - 1, y - 1]))).rjust(width)
                for x in range(1, self.grid.shape[0] + 1)
            ]
            lines.append(" ".join(row))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PairCountResult:
    """Histogram of finite pair distances plus the unreachable-pair count."""

    histogram: DistanceHistogram
    unreachable_pairs: int = 0

    @property
    def has_unreachable(self) -> bool:
        return self.unreachable_pairs > 0


def bfs_distances(config: ObstacleConfiguration, source: tuple) -> DistanceField:
    """Exact shortest-path distances from one accessible source site."""
    x, y = source
    if not config.domain.contains(x, y):
        raise DomainError(f"source {source} outside domain")
    acc = ~config.mask()
    if not acc[x - 1, y - 1]:
        raise DomainError(f"source {source} is inaccessible")
    dist = np.full(acc.shape, UNREACHABLE, dtype=np.int64)
    dist[x - 1, y - 1] = 0
    frontier = np.zeros(acc.shape, dtype=bool)
    frontier[x - 1, y - 1] = True
    d = 0
    while frontier.any():
        d += 1
        nxt = np.zeros(acc.shape, dtype=bool)
        for dx, dy in _STEPS:
            shifted = np.zeros(acc.shape, dtype=bool)
            src_x = slice(max(0, -dx), acc.shape[0] - max(0, dx))
            dst_x = slice(max(0, dx), acc.shape[0] - max(0, -dx))
            src_y = slice(max(0, -dy), acc.shape[1] - max(0, dy))
            dst_y = slice(max(0, dy), acc.shape[1] - max(0, -dy))
            shifted[dst_x, dst_y] = frontier[src_x, src_y]
            nxt |= shifted
        nxt &= acc & (dist == UNREACHABLE)
        dist[nxt] = d
        frontier = nxt
    return DistanceField(source=(x, y), grid=dist)


def _accessible_graph(config: ObstacleConfiguration):
    """Compact CSR adjacency over accessible sites.

    Returns (graph, node_of_grid, coords) where node_of_grid maps grid
    indices to compact node ids (-1 on inaccessible sites) and coords is
    the (n_a, 2) array of 1-based coordinates per node.
    """
    acc = ~config.mask()
    node = np.full(acc.shape, -1, dtype=np.int64)
    node[acc] = np.arange(int(acc.sum()))
    rows, cols = [], []
    for axis in (0, 1):
        a = [slice(None), slice(None)]
        b = [slice(None), slice(None)]
        a[axis] = slice(None, -1)
        b[axis] = slice(1, None)
        ok = acc[tuple(a)] & acc[tuple(b)]
        u = node[tuple(a)][ok]
        v = node[tuple(b)][ok]
        rows.extend((u, v))
        cols.extend((v, u))
    n = int(acc.sum())
    rows = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    cols = np.concatenate(cols) if cols else np.empty(0, dtype=np.int64)
    graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    xs, ys = np.nonzero(acc)
    coords = np.stack([xs + 1, ys + 1], axis=1)
    return graph, node, coords


def oracle_pair_counts(config: ObstacleConfiguration, chunk_size: int | None = None) -> PairCountResult:
    """Histogram of shortest-path distances over all accessible-site pairs."""
    graph, _, _ = _accessible_graph(config)
    n = graph.shape[0]
    if n == 0:
        raise DomainError("accessible region is empty")
    return _pair_histogram(graph, np.arange(n), restrict_above_source=True, chunk_size=chunk_size)


def occupied_pair_counts(config: ObstacleConfiguration, occ: OccupancyState) -> PairCountResult:
    """C(m): shortest-path distances over unordered agent pairs.

    Unreachable agent pairs are excluded from the histogram and
    surfaced via ``unreachable_pairs``.
    """
    if occ.z <= 1:
        return PairCountResult(DistanceHistogram.zeros(1), 0)
    graph, node, _ = _accessible_graph(config)
    agent_nodes = []
    for (x, y) in sorted(occ.agents):
        if not config.domain.contains(x, y) or node[x - 1, y - 1] < 0:
            raise DomainError(f"agent at {(x, y)} is not on an accessible site")
        agent_nodes.append(int(node[x - 1, y - 1]))
    return _pair_histogram(graph, np.array(agent_nodes), restrict_above_source=False)


def _pair_histogram(graph, sources, restrict_above_source: bool, chunk_size=None):
    n = graph.shape[0]
    if chunk_size is None:
        chunk_size = max(1, 4_000_000 // max(1, n))
    counts = np.zeros(1, dtype=np.int64)
    unreachable = 0
    targets = None if restrict_above_source else sources
    for start in range(0, len(sources), chunk_size):
        idx = sources[start : start + chunk_size]
        dist = dijkstra(graph, unweighted=True, indices=idx, min_only=False)
        dist = np.atleast_2d(dist)
        for row, src in zip(dist, idx):
            if restrict_above_source:
                d = row[src + 1 :]
            else:
                d = row[targets[targets > src]]
            finite = np.isfinite(d)
            unreachable += int((~finite).sum())
            di = d[finite].astype(np.int64)
            di = di[di > 0]
            if len(di):
                h = np.bincount(di)
                if len(h) > len(counts):
                    h[: len(counts)] += counts
                    counts = h
                else:
                    counts[: len(h)] += h
    return PairCountResult(DistanceHistogram(counts[1:]), unreachable)
