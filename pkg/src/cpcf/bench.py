"""Timing harness: analytic versus shortest-path-oracle cPCF evaluation.

Each case times the full pipeline (normalization counts, agent-pair
counts C(m), expected counts and P(m)) on one randomly generated
admissible layout occupied at the given density.  Layouts and
occupancies are derived deterministically from the seed, so repeats
re-time identical computations and equal seeds give byte-identical
layouts.  Absolute times are hardware-bound; the speedup ratio is the
meaningful output.
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass

import numpy as np

from .layouts import random_admissible_config
from .pcf import Mode, corrected_pcf
from .sim import seed_occupancy


@dataclass(frozen=True)
class BenchCase:
    size: int
    n_clusters: int
    layout_seed: int
    analytic_time: float
    oracle_time: float

    @property
    def speedup(self) -> float:
        return self.oracle_time / self.analytic_time


@dataclass(frozen=True)
class BenchReport:
    cases: tuple
    repeats: int

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("size,clusters,layout_seed,analytic_s,oracle_s,speedup\n")
        for c in self.cases:
            buf.write(
                f"{c.size},{c.n_clusters},{c.layout_seed},"
                f"{c.analytic_time:.6f},{c.oracle_time:.6f},{c.speedup:.3f}\n"
            )
        return buf.getvalue()

    def to_table(self) -> str:
        header = f"{'domain':>10} {'clusters':>8} {'analytic (s)':>14} {'oracle (s)':>12} {'speedup':>8}"
        rows = [header, "-" * len(header)]
        for c in self.cases:
            rows.append(
                f"{c.size:>7}x{c.size:<3}{c.n_clusters:>8} {c.analytic_time:>14.4f} "
                f"{c.oracle_time:>12.4f} {c.speedup:>8.2f}"
            )
        rows.append(f"(mean over {self.repeats} repeat(s) per case)")
        return "\n".join(rows)


def _time_pipeline(config, occ, mode: Mode) -> float:
    start = time.perf_counter()
    corrected_pcf(config, occ, mode)
    return time.perf_counter() - start


def bench_compare(
    sizes,
    cluster_counts,
    repeats: int = 3,
    seed: int = 0,
    density: float = 0.2,
    max_extent: int = 3,
) -> BenchReport:
    """Time exact-analytic vs oracle cPCF over size x cluster-count cases."""
    cases = []
    for size in sizes:
        for n_clusters in cluster_counts:
            layout_seed = seed + 1000 * size + n_clusters
            rng = np.random.default_rng(layout_seed)
            config = random_admissible_config(size, size, n_clusters, rng, max_extent)
            occ = seed_occupancy(config, density, rng)
            t_analytic = np.mean(
                [_time_pipeline(config, occ, Mode.CORRECTED_EXACT) for _ in range(repeats)]
            )
            t_oracle = np.mean(
                [_time_pipeline(config, occ, Mode.CORRECTED_ORACLE) for _ in range(repeats)]
            )
            cases.append(
                BenchCase(
                    size=size,
                    n_clusters=n_clusters,
                    layout_seed=layout_seed,
                    analytic_time=float(t_analytic),
                    oracle_time=float(t_oracle),
                )
            )
    return BenchReport(cases=tuple(cases), repeats=repeats)
