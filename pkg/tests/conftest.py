import collections

import numpy as np
import pytest

from cpcf import DistanceHistogram, ObstacleConfiguration
from cpcf.lattice import LatticeDomain, ObstacleCluster


def brute_force_path_histogram(config: ObstacleConfiguration) -> DistanceHistogram:
    """Reference all-pairs histogram by plain python BFS, for small domains.

    Independent of the oracle module: no scipy, no shared helpers.
    """
    lx, ly = config.domain.width_x, config.domain.width_y
    blocked = config.sites
    sites = [
        (x, y)
        for x in range(1, lx + 1)
        for y in range(1, ly + 1)
        if (x, y) not in blocked
    ]
    counter = collections.Counter()
    for i, src in enumerate(sites):
        dist = {src: 0}
        queue = collections.deque([src])
        while queue:
            x, y = queue.popleft()
            d = dist[(x, y)]
            for nx, ny in ((x, y + 1), (x + 1, y), (x, y - 1), (x - 1, y)):
                if 1 <= nx <= lx and 1 <= ny <= ly and (nx, ny) not in blocked:
                    if (nx, ny) not in dist:
                        dist[(nx, ny)] = d + 1
                        queue.append((nx, ny))
        for other in sites[i + 1 :]:
            if other in dist:
                counter[dist[other]] += 1
    if not counter:
        return DistanceHistogram.zeros(1)
    m_max = max(counter)
    return DistanceHistogram(np.array([counter.get(m, 0) for m in range(1, m_max + 1)], dtype=np.int64))


def brute_force_taxicab_histogram(sites) -> DistanceHistogram:
    sites = list(sites)
    counter = collections.Counter()
    for i, (x1, y1) in enumerate(sites):
        for x2, y2 in sites[i + 1 :]:
            counter[abs(x1 - x2) + abs(y1 - y2)] += 1
    m_max = max(counter) if counter else 1
    return DistanceHistogram(np.array([counter.get(m, 0) for m in range(1, m_max + 1)], dtype=np.int64))


@pytest.fixture
def small_admissible_config():
    dom = LatticeDomain(9, 8)
    return ObstacleConfiguration.from_clusters(
        dom, [ObstacleCluster(3, 3, 2, 2), ObstacleCluster(6, 6, 2, 1)]
    )
