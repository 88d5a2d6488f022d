"""Birth-movement exclusion-process random walk on the obstacle lattice.

Each time step has a birth phase followed by a movement phase.  A phase
makes one draw per agent (counted at phase start), with replacement and
seeing intermediate updates, so an agent born earlier in the step can be
drawn again later.  A drawn agent acts with the phase probability and
targets one of its four von-Neumann neighbors uniformly; the attempt
succeeds only if the target is in-domain, accessible and unoccupied, and
failed attempts are simply aborted.

Randomness comes from numpy's PCG64 generator.  Realization i of an
ensemble uses ``default_rng(seed + i)``, which makes ensembles
bit-reproducible and realization-order independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .errors import DomainError
from .lattice import ObstacleConfiguration, OccupancyState, accessible_neighbor_ratio

_DX = np.array([0, 1, 0, -1], dtype=np.int64)
_DY = np.array([1, 0, -1, 0], dtype=np.int64)


@dataclass(frozen=True)
class SimulationParams:
    """Parameters of one realization."""

    p_b: float = 0.1
    p_m: float = 0.1
    t_end: int = 70
    initial_density: float = 0.01
    seed: int = 0
    scale_time: bool = False
    # movement draws use the post-birth population by default; set False
    # to count draws from the pre-birth population instead
    post_birth_movement_population: bool = True

    def __post_init__(self):
        if not (0.0 <= self.p_b <= 1.0 and 0.0 <= self.p_m <= 1.0):
            raise DomainError("event probabilities must lie in [0, 1]")
        if not 0.0 <= self.initial_density <= 1.0:
            raise DomainError("initial density must lie in [0, 1]")
        if self.t_end < 0:
            raise DomainError("final time must be >= 0")

    def effective_t_end(self, config: ObstacleConfiguration) -> int:
        """Final step count, scaled by the accessible-neighbor ratio and
        rounded half-up when scale_time is set."""
        if not self.scale_time:
            return self.t_end
        scaled = Fraction(self.t_end) * accessible_neighbor_ratio(config)
        return int(scaled + Fraction(1, 2))


@njit(cache=True)
def _phase(grid, ax, ay, z, prob, u_select, u_event, dirs, dx, dy, is_birth):
    """Apply one phase of pre-drawn events sequentially; returns new z.

    grid is an int8 array with a one-cell blocked border so coordinates
    need no bounds checks: 0 = free, 1 = blocked (obstacle, edge, agent).
    """
    for i in range(len(u_select)):
        if u_event[i] >= prob:
            continue
        idx = int(u_select[i] * z)
        if idx >= z:
            idx = z - 1
        x = ax[idx]
        y = ay[idx]
        tx = x + dx[dirs[i]]
        ty = y + dy[dirs[i]]
        if grid[tx, ty] != 0:
            continue
        grid[tx, ty] = 1
        if is_birth:
            ax[z] = tx
            ay[z] = ty
            z += 1
        else:
            grid[x, y] = 0
            ax[idx] = tx
            ay[idx] = ty
    return z


class _SimState:
    """Mutable grid/agent arrays for one realization."""

    def __init__(self, config: ObstacleConfiguration, occ: OccupancyState):
        lx, ly = config.domain.width_x, config.domain.width_y
        grid = np.ones((lx + 2, ly + 2), dtype=np.int8)
        grid[1:-1, 1:-1] = config.mask().astype(np.int8)
        self.capacity = config.n_a
        self.ax = np.zeros(self.capacity, dtype=np.int64)
        self.ay = np.zeros(self.capacity, dtype=np.int64)
        self.z = 0
        for (x, y) in sorted(occ.agents):
            if grid[x, y] != 0:
                raise DomainError(f"agent at {(x, y)} is not on a free accessible site")
            grid[x, y] = 1
            self.ax[self.z] = x
            self.ay[self.z] = y
            self.z += 1
        self.grid = grid

    def occupancy(self) -> OccupancyState:
        return OccupancyState.of(zip(self.ax[: self.z], self.ay[: self.z]))

    def step(self, params: SimulationParams, rng: np.random.Generator):
        pre_birth = self.z
        self.z = self._run_phase(params.p_b, pre_birth, rng, is_birth=True)
        draws = self.z if params.post_birth_movement_population else pre_birth
        self.z = self._run_phase(params.p_m, draws, rng, is_birth=False)

    def _run_phase(self, prob, draws, rng, is_birth):
        if draws == 0:
            return self.z
        u_select = rng.random(draws)
        u_event = rng.random(draws)
        dirs = rng.integers(0, 4, draws)
        return _phase(
            self.grid, self.ax, self.ay, self.z, prob,
            u_select, u_event, dirs, _DX, _DY, is_birth,
        )


def seed_occupancy(
    config: ObstacleConfiguration, density: float, rng: np.random.Generator
) -> OccupancyState:
    """round(density * n_a) distinct accessible sites, uniform without replacement."""
    if not 0.0 <= density <= 1.0:
        raise DomainError("density must lie in [0, 1]")
    acc = np.argwhere(~config.mask()) + 1
    z = round(density * len(acc))
    chosen = rng.choice(len(acc), size=z, replace=False)
    return OccupancyState.of((int(x), int(y)) for x, y in acc[chosen])


def simulate_step(
    config: ObstacleConfiguration,
    occ: OccupancyState,
    params: SimulationParams,
    rng: np.random.Generator,
) -> OccupancyState:
    """One birth phase followed by one movement phase."""
    state = _SimState(config, occ)
    state.step(params, rng)
    return state.occupancy()


def run_simulation(
    config: ObstacleConfiguration,
    params: SimulationParams,
    rng: np.random.Generator | None = None,
    snapshot_every: int | None = None,
):
    """Seed an initial occupancy and run the effective number of steps.

    Returns (final OccupancyState, snapshots), where snapshots is a list
    of (t, OccupancyState) taken every ``snapshot_every`` steps (empty
    when not requested).  Deterministic for a fixed seed.
    """
    if rng is None:
        rng = np.random.default_rng(params.seed)
    occ = seed_occupancy(config, params.initial_density, rng)
    state = _SimState(config, occ)
    snapshots = []
    t_end = params.effective_t_end(config)
    for t in range(1, t_end + 1):
        state.step(params, rng)
        if snapshot_every and t % snapshot_every == 0:
            snapshots.append((t, state.occupancy()))
    return state.occupancy(), snapshots


def simulation_ensemble(config: ObstacleConfiguration, params: SimulationParams, realizations: int):
    """Final occupancies for realizations i = 0..n-1, seeded seed + i."""
    out = []
    for i in range(realizations):
        p = SimulationParams(
            p_b=params.p_b,
            p_m=params.p_m,
            t_end=params.t_end,
            initial_density=params.initial_density,
            seed=params.seed + i,
            scale_time=params.scale_time,
            post_birth_movement_population=params.post_birth_movement_population,
        )
        final, _ = run_simulation(config, p)
        out.append((p.seed, final))
    return out
