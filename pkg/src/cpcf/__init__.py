"""Corrected pair correlation functions for lattice domains with obstacles."""

from .analytic import (
    approx_counts,
    corrected_counts,
    d_no,
    d_no_histogram,
    gained_counts,
    inaccessible_pair_counts,
    accessible_inaccessible_counts,
    k_subdomain,
    lost_counts,
)
from .histogram import DistanceHistogram
from .lattice import (
    Admissibility,
    LatticeDomain,
    ObstacleCluster,
    ObstacleConfiguration,
    OccupancyState,
    accessible_neighbor_ratio,
    check_admissibility,
    extract_clusters,
    parse_grid,
    parse_json_config,
    render_grid,
)
from .oracle import bfs_distances, occupied_pair_counts, oracle_pair_counts
from .pcf import Mode, PcfResult, corrected_pcf, ensemble_pcf, expected_counts, pcf_from_counts
from .sim import SimulationParams, run_simulation, seed_occupancy, simulate_step

__version__ = "0.1.0"

__all__ = [
    "Admissibility",
    "DistanceHistogram",
    "LatticeDomain",
    "Mode",
    "ObstacleCluster",
    "ObstacleConfiguration",
    "OccupancyState",
    "PcfResult",
    "SimulationParams",
    "accessible_inaccessible_counts",
    "accessible_neighbor_ratio",
    "approx_counts",
    "bfs_distances",
    "check_admissibility",
    "corrected_counts",
    "corrected_pcf",
    "d_no",
    "d_no_histogram",
    "ensemble_pcf",
    "expected_counts",
    "extract_clusters",
    "gained_counts",
    "inaccessible_pair_counts",
    "k_subdomain",
    "lost_counts",
    "occupied_pair_counts",
    "oracle_pair_counts",
    "parse_grid",
    "parse_json_config",
    "pcf_from_counts",
    "render_grid",
    "run_simulation",
    "seed_occupancy",
    "simulate_step",
]
