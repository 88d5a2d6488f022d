"""Ensemble drivers: identically-prepared realizations reduced to one PCF.

Realization i uses the generator ``default_rng(seed + i)``; the reduction
is an ordered fold over realization index, so results are independent of
any parallel execution of the realizations.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .lattice import ObstacleConfiguration
from .pcf import Mode, PcfResult, corrected_pcf, ensemble_pcf
from .sim import SimulationParams, run_simulation, seed_occupancy


def random_occupancy_ensemble(
    config: ObstacleConfiguration,
    density: float,
    realizations: int,
    seed: int,
    mode: Mode,
    standard_accessible_denominator: bool = False,
) -> PcfResult:
    """PCF ensemble over random occupancies at the given density."""
    results = []
    for i in range(realizations):
        rng = np.random.default_rng(seed + i)
        occ = seed_occupancy(config, density, rng)
        res = corrected_pcf(config, occ, mode, standard_accessible_denominator)
        results.append(replace(res, seeds=(seed + i,)))
    return ensemble_pcf(results)


def simulation_ensemble(
    config: ObstacleConfiguration,
    params: SimulationParams,
    realizations: int,
    mode: Mode,
) -> PcfResult:
    """PCF ensemble over final states of the birth-movement random walk."""
    results = []
    for i in range(realizations):
        p = replace(params, seed=params.seed + i)
        final, _ = run_simulation(config, p)
        res = corrected_pcf(config, final, mode)
        results.append(replace(res, seeds=(p.seed,)))
    return ensemble_pcf(results)
