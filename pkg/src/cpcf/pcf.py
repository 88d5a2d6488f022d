"""Pair correlation assembly: C(m), E[C(m)] and P(m) in four modes.

P(m) = C(m) / E[C(m)] with E[C(m)] = z(z-1)/(n_a(n_a-1)) * D(m).  The
mode picks where the normalization counts D(m) come from and which
distance metric C(m) uses:

  standard  - taxicab C(m) ignoring obstacles, D = D_NO over the full
              lattice (prefactor denominator N = Lx*Ly by default).
  exact     - path-distance C(m), analytic corrected D(m).
  approx    - path-distance C(m), D_approx(m) = D_NO - A + I.
  oracle    - path-distance C(m), BFS all-pairs D(m).

Bins with E = 0 carry NaN in P (undefined marker) and empty CSV cells.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from . import analytic, oracle
from .errors import DomainError, ModeError
from .histogram import DistanceHistogram
from .lattice import Admissibility, ObstacleConfiguration, OccupancyState


class Mode(enum.Enum):
    STANDARD = "standard"
    CORRECTED_EXACT = "exact"
    CORRECTED_APPROX = "approx"
    CORRECTED_ORACLE = "oracle"


@dataclass
class PcfResult:
    """Per-distance pair correlation record.

    For ensembles, ``p`` is the per-bin arithmetic mean of the
    realization P(m) values (undefined bins excluded per bin), with
    ``p_std`` and ``participation`` alongside; ``c`` and ``e`` then hold
    per-bin means for reference only.
    """

    mode: Mode
    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    p: np.ndarray
    ensemble_size: int = 1
    p_std: np.ndarray | None = None
    participation: np.ndarray | None = None
    unreachable_pairs: int = 0
    seeds: tuple = field(default_factory=tuple)

    @property
    def m_max(self) -> int:
        return len(self.p)

    @property
    def defined(self) -> np.ndarray:
        return ~np.isnan(self.p)

    def p_at(self, m: int) -> float:
        return float(self.p[m - 1])

    def to_csv(self) -> str:
        def cell(v):
            return "" if v is None or (isinstance(v, float) and np.isnan(v)) else repr(float(v))

        lines = ["m,C,D,E,P,Pstd"]
        for i in range(self.m_max):
            std = self.p_std[i] if self.p_std is not None else None
            lines.append(
                ",".join(
                    [
                        str(i + 1),
                        cell(float(self.c[i])),
                        cell(float(self.d[i])),
                        cell(float(self.e[i])),
                        cell(float(self.p[i])),
                        cell(float(std) if std is not None else None),
                    ]
                )
            )
        return "\n".join(lines) + "\n"

    def metadata(self) -> str:
        return json.dumps(
            {
                "mode": self.mode.value,
                "seeds": list(self.seeds),
                "ensemble_size": self.ensemble_size,
                "unreachable_pairs": self.unreachable_pairs,
            }
        )


def expected_counts(d: DistanceHistogram, z: int, n_a: int) -> np.ndarray:
    """E(m) = z(z-1)/(n_a(n_a-1)) * D(m)."""
    if n_a < 2:
        raise DomainError(f"need at least two accessible sites, got {n_a}")
    if not 0 <= z <= n_a:
        raise DomainError(f"agent count {z} outside [0, {n_a}]")
    return d.counts.astype(np.float64) * (z * (z - 1)) / (n_a * (n_a - 1))


def pcf_from_counts(c: DistanceHistogram, e: np.ndarray):
    """Elementwise C/E with NaN marking bins where E = 0."""
    n = max(c.m_max, len(e))
    cc = c.padded(n).astype(np.float64)
    ee = np.zeros(n, dtype=np.float64)
    ee[: len(e)] = e
    p = np.full(n, np.nan)
    np.divide(cc, ee, out=p, where=ee > 0)
    return cc, ee, p


def taxicab_pair_counts(occ: OccupancyState) -> DistanceHistogram:
    """Agent-pair counts at plain taxicab distance, obstacles ignored."""
    coords = np.array(sorted(occ.agents), dtype=np.int64)
    if len(coords) <= 1:
        return DistanceHistogram.zeros(1)
    counts = np.zeros(1, dtype=np.int64)
    for i in range(len(coords) - 1):
        d = np.abs(coords[i + 1 :] - coords[i]).sum(axis=1)
        h = np.bincount(d)
        if len(h) > len(counts):
            h[: len(counts)] += counts
            counts = h
        else:
            counts[: len(h)] += h
    return DistanceHistogram(counts[1:])


def normalization_counts(config: ObstacleConfiguration, mode: Mode) -> DistanceHistogram:
    """D(m) for the requested mode."""
    if mode is Mode.STANDARD:
        return analytic.d_no_histogram(config.domain.width_x, config.domain.width_y)
    if mode is Mode.CORRECTED_EXACT:
        return analytic.corrected_counts(config)
    if mode is Mode.CORRECTED_APPROX:
        return analytic.approx_counts(config)
    if mode is Mode.CORRECTED_ORACLE:
        return oracle.oracle_pair_counts(config).histogram
    raise ModeError(f"unknown mode {mode}")


def corrected_pcf(
    config: ObstacleConfiguration,
    occ: OccupancyState,
    mode: Mode,
    standard_accessible_denominator: bool = False,
) -> PcfResult:
    """Single-realization PCF in the requested mode.

    ``standard_accessible_denominator`` swaps the standard-mode prefactor
    denominator from the full site count N to n_a (sensitivity runs).
    """
    if mode is Mode.CORRECTED_EXACT and config.admissibility is not Admissibility.EXACT:
        raise ModeError("exact mode requires an admissible configuration")
    unreachable = 0
    if mode is Mode.STANDARD:
        c_hist = taxicab_pair_counts(occ)
        denom = config.n_a if standard_accessible_denominator else config.domain.n_sites
    else:
        pair = oracle.occupied_pair_counts(config, occ)
        c_hist = pair.histogram
        unreachable = pair.unreachable_pairs
        denom = config.n_a
    d_hist = normalization_counts(config, mode)
    e = expected_counts(d_hist, occ.z, denom)
    c, e, p = pcf_from_counts(c_hist, e)
    return PcfResult(
        mode=mode,
        c=c,
        d=d_hist.padded(len(p)).astype(np.float64),
        e=e,
        p=p,
        unreachable_pairs=unreachable,
    )


def ensemble_pcf(results) -> PcfResult:
    """Per-bin mean and standard deviation of P(m) over realizations."""
    results = list(results)
    if not results:
        raise DomainError("empty ensemble")
    modes = {r.mode for r in results}
    if len(modes) != 1:
        raise DomainError(f"mixed modes in ensemble: {modes}")
    if len(results) == 1:
        return results[0]
    n = max(r.m_max for r in results)

    def pad(a):
        out = np.full(n, np.nan)
        out[: len(a)] = a
        return out

    ps = np.stack([pad(r.p) for r in results])
    cs = np.stack([pad(r.c) for r in results])
    ds = np.stack([pad(r.d) for r in results])
    es = np.stack([pad(r.e) for r in results])
    participation = (~np.isnan(ps)).sum(axis=0)
    with np.errstate(invalid="ignore"):
        p_mean = np.nanmean(np.where(np.isnan(ps), np.nan, ps), axis=0)
        p_std = np.nanstd(ps, axis=0)
    p_mean[participation == 0] = np.nan
    p_std[participation == 0] = np.nan
    seeds = tuple(s for r in results for s in r.seeds)
    return PcfResult(
        mode=results[0].mode,
        c=np.nanmean(np.where(np.isnan(cs), 0.0, cs), axis=0),
        d=np.nanmean(np.where(np.isnan(ds), 0.0, ds), axis=0),
        e=np.nanmean(np.where(np.isnan(es), 0.0, es), axis=0),
        p=p_mean,
        ensemble_size=len(results),
        p_std=p_std,
        participation=participation,
        unreachable_pairs=sum(r.unreachable_pairs for r in results),
        seeds=seeds,
    )
