"""Obstacle layout generators: admissible random layouts and the named
figure-style configurations used for calibration and benchmarking."""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .lattice import Admissibility, LatticeDomain, ObstacleCluster, ObstacleConfiguration


def random_admissible_config(
    lx: int,
    ly: int,
    n_clusters: int,
    rng: np.random.Generator,
    max_extent: int = 3,
) -> ObstacleConfiguration:
    """Random configuration of rectangular clusters, admissible by construction.

    The domain is tiled by a coarse meta-grid of (max_extent + 2)-sized
    cells.  Each meta-row draws one cluster height and vertical offset,
    each meta-column one width and horizontal offset, and clusters are
    dropped into a random subset of cells.  Sharing offsets along a
    meta-row/column keeps cluster intervals identical or disjoint and
    reserves empty flanking rows and columns, so the exact analytic
    transformation always applies.  (Per-cell jitter would not: it can
    put one cluster inside another's flanking row.)
    """
    g = max_extent + 2
    n_cols, n_rows = lx // g, ly // g
    if n_cols < 1 or n_rows < 1:
        raise DomainError(f"domain {lx}x{ly} too small for extent {max_extent} clusters")
    if n_clusters > n_cols * n_rows:
        raise DomainError(
            f"cannot place {n_clusters} admissible clusters of extent <= {max_extent} "
            f"on a {lx}x{ly} domain (capacity {n_cols * n_rows})"
        )
    widths = rng.integers(1, max_extent + 1, size=n_cols)
    heights = rng.integers(1, max_extent + 1, size=n_rows)
    off_x = np.array([rng.integers(1, g - w) for w in widths])
    off_y = np.array([rng.integers(1, g - h) for h in heights])
    cells = rng.choice(n_cols * n_rows, size=n_clusters, replace=False)
    clusters = []
    for cell in cells:
        c, r = int(cell) % n_cols, int(cell) // n_cols
        clusters.append(
            ObstacleCluster(
                x0=c * g + 1 + int(off_x[c]),
                y0=r * g + 1 + int(off_y[r]),
                extent_x=int(widths[c]),
                extent_y=int(heights[r]),
            )
        )
    config = ObstacleConfiguration.from_clusters(LatticeDomain(lx, ly), clusters)
    assert config.admissibility is Admissibility.EXACT
    return config


def random_scattered_sites(
    lx: int, ly: int, n_sites: int, rng: np.random.Generator
) -> ObstacleConfiguration:
    """Uniformly scattered single inaccessible sites (generally inadmissible;
    usable with the approximate and oracle modes only)."""
    if n_sites > lx * ly:
        raise DomainError("more obstacle sites than lattice sites")
    flat = rng.choice(lx * ly, size=n_sites, replace=False)
    mask = np.zeros((lx, ly), dtype=bool)
    mask[flat // ly, flat % ly] = True
    return ObstacleConfiguration.from_mask(LatticeDomain(lx, ly), mask)


def empty_layout(lx: int, ly: int) -> ObstacleConfiguration:
    return ObstacleConfiguration.empty(LatticeDomain(lx, ly))


def central_block_layout(lx: int, ly: int, extent_x: int, extent_y: int) -> ObstacleConfiguration:
    """One rectangular cluster centered in the domain."""
    x0 = (lx - extent_x) // 2 + 1
    y0 = (ly - extent_y) // 2 + 1
    return ObstacleConfiguration.from_clusters(
        LatticeDomain(lx, ly), [ObstacleCluster(x0, y0, extent_x, extent_y)]
    )


def cluster_grid_layout(
    lx: int, ly: int, n_side: int, extent: int = 2
) -> ObstacleConfiguration:
    """n_side x n_side equal clusters on a regular grid."""
    step_x, step_y = lx // n_side, ly // n_side
    if step_x < extent + 2 or step_y < extent + 2:
        raise DomainError("clusters would touch; enlarge domain or shrink extents")
    clusters = [
        ObstacleCluster(
            x0=i * step_x + (step_x - extent) // 2 + 1,
            y0=j * step_y + (step_y - extent) // 2 + 1,
            extent_x=extent,
            extent_y=extent,
        )
        for i in range(n_side)
        for j in range(n_side)
    ]
    return ObstacleConfiguration.from_clusters(LatticeDomain(lx, ly), clusters)


def single_site_grid_layout(lx: int, ly: int, n_side: int) -> ObstacleConfiguration:
    """n_side x n_side single inaccessible sites, evenly spaced from (2, 2)."""
    sx = max(2, (lx - 3) // max(1, n_side - 1))
    sy = max(2, (ly - 3) // max(1, n_side - 1))
    clusters = [
        ObstacleCluster(2 + i * sx, 2 + j * sy, 1, 1)
        for i in range(n_side)
        for j in range(n_side)
    ]
    return ObstacleConfiguration.from_clusters(LatticeDomain(lx, ly), clusters)


def figure_layouts(size: int = 50) -> dict:
    """The four calibration layouts: 0, 1, 25 and 576 clusters.

    Stand-ins for the published panel domains (whose exact geometry is
    not stated): an empty domain, one size/5 central block, a 5x5 grid
    of 2x2 clusters, and a 24x24 grid of single sites.
    """
    block = max(2, size // 5)
    return {
        "none": empty_layout(size, size),
        "single-cluster": central_block_layout(size, size, block, block),
        "25-clusters": cluster_grid_layout(size, size, 5, extent=2),
        "576-sites": single_site_grid_layout(size, size, 24),
    }
