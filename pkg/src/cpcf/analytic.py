"""Exact analytic pair-distance counts for lattices with obstacle clusters.

Assembles the corrected count of accessible-site pair distances

    D(m) = D_NO(m) - A(m) + I(m) - L(m) + G(m)

from closed-form ingredients: the obstacle-free counts D_NO, the
accessible-inaccessible pairs A, the inaccessible-inaccessible pairs I,
and the shifted pairs L (lost) / G (gained) obtained by transforming each
band of clusters into one-dimensional subdomains.  The cheaper
approximation D_approx(m) = D_NO(m) - A(m) + I(m) drops the shifted
pairs and works for arbitrary obstacle masks.

All arithmetic is integer-exact; the triangular-ramp subdomain counts use
doubled integers to avoid half-integer midpoints.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InternalError, ModeError
from .histogram import DistanceHistogram
from .lattice import Admissibility, LatticeDomain, ObstacleConfiguration


def d_no(m: int, lx: int, ly: int) -> int:
    """Counts of pair distances on an obstacle-free lx-by-ly lattice."""
    if m <= 0:
        raise DomainError(f"pair distance must be >= 1, got {m}")
    if lx < 1 or ly < 1:
        raise DomainError("domain extents must be >= 1")
    if m > lx + ly - 2:
        return 0
    mn, mx = min(lx, ly), max(lx, ly)
    if m <= mn:
        return 2 * m * lx * ly - (lx + ly) * m * m + (m**3 - m) // 3
    if m < mx:
        at_min = 2 * mn * lx * ly - (lx + ly) * mn * mn + (mn**3 - mn) // 3
        return at_min - mn * mn * (m - mn)
    k = lx + ly - 1 - m
    return k * (k + 1) * (k + 2) // 3


def d_no_histogram(lx: int, ly: int, m_max: int | None = None) -> DistanceHistogram:
    n = m_max if m_max is not None else max(lx + ly - 2, 1)
    return DistanceHistogram(
        np.array([d_no(m, lx, ly) for m in range(1, n + 1)], dtype=np.int64)
    )


@dataclass(frozen=True)
class BoundaryDistances:
    """Distances from a site to the four boundaries and four corners."""

    b_l: int
    b_r: int
    b_d: int
    b_u: int

    @classmethod
    def from_site(cls, domain: LatticeDomain, x: int, y: int) -> "BoundaryDistances":
        if not domain.contains(x, y):
            raise DomainError(f"site {(x, y)} outside domain")
        return cls(b_l=x, b_r=domain.width_x - x + 1, b_d=y, b_u=domain.width_y - y + 1)

    @property
    def corners(self):
        return (
            self.b_d + self.b_l,
            self.b_d + self.b_r,
            self.b_u + self.b_l,
            self.b_u + self.b_r,
        )


def _alpha_array(bd: BoundaryDistances, m: np.ndarray) -> np.ndarray:
    """Out-of-domain pair counts alpha(m) for a vector of distances."""
    alpha = np.zeros(len(m), dtype=np.int64)
    for b in (bd.b_l, bd.b_r, bd.b_d, bd.b_u):
        alpha += m >= b
    for bj, bk in ((bd.b_d, bd.b_l), (bd.b_d, bd.b_r), (bd.b_u, bd.b_l), (bd.b_u, bd.b_r)):
        mn, mx, c = min(bj, bk), max(bj, bk), bj + bk
        alpha += np.select(
            [m <= mn, m <= mx, m <= c - 2],
            [0, m - mn, 2 * m - c],
            default=m - 1,
        )
    return alpha


def alpha_out_of_domain(m: int, bd: BoundaryDistances) -> int:
    if m <= 0:
        raise DomainError(f"pair distance must be >= 1, got {m}")
    return int(_alpha_array(bd, np.array([m]))[0])


def accessible_inaccessible_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """A(m): site pairs with one inaccessible member, at taxicab distance m.

    Each inaccessible site contributes its boundary-clipped taxicab ring
    4m - alpha(m); inaccessible-inaccessible pairs are counted from both
    endpoints (cancelled later by the +I(m) term).
    """
    m_max = max(config.domain.max_pair_distance, 1)
    m = np.arange(1, m_max + 1, dtype=np.int64)
    counts = np.zeros(m_max, dtype=np.int64)
    for (x, y) in config.sites:
        bd = BoundaryDistances.from_site(config.domain, x, y)
        counts += 4 * m - _alpha_array(bd, m)
    return DistanceHistogram(counts)


def inaccessible_pair_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """I(m): unordered inaccessible-site pairs at taxicab distance m."""
    m_max = max(config.domain.max_pair_distance, 1)
    counts = np.zeros(m_max + 1, dtype=np.int64)
    coords = np.array(sorted(config.sites), dtype=np.int64)
    for i in range(len(coords) - 1):
        d = np.abs(coords[i + 1 :] - coords[i]).sum(axis=1)
        counts += np.bincount(d, minlength=m_max + 1)
    return DistanceHistogram(counts[1:])


def k_subdomain(m: int, n: int, x_total: int, d: int) -> int:
    """Straddling-pair count for a 1-D subdomain of x_total sites with an
    n-site inaccessible block, capped at d pairs per distance."""
    if not (1 <= n < x_total):
        raise DomainError(f"need 1 <= n < X, got n={n}, X={x_total}")
    if d < 0:
        raise DomainError(f"straddle cap must be >= 0, got d={d}")
    if m <= 0:
        raise DomainError(f"pair distance must be >= 1, got {m}")
    ramp = x_total - n - abs(2 * m - x_total - n)
    return max(0, min(ramp, 2 * d)) // 2


@dataclass(frozen=True)
class SubdomainSpec:
    """m-independent parameters of one transformed 1-D subdomain."""

    n: int
    x_total: int
    d: int
    multiplicity: int
    orientation: str  # "horizontal" | "vertical"

    def __post_init__(self):
        if not (1 <= self.n < self.x_total):
            raise DomainError(f"need 1 <= n < X in {self}")
        if self.d < 0 or self.multiplicity < 1:
            raise DomainError(f"bad cap or multiplicity in {self}")

    @property
    def max_support(self) -> int:
        return self.x_total - 1


def _require_exact(config: ObstacleConfiguration, what: str):
    if config.admissibility is not Admissibility.EXACT:
        raise ModeError(f"{what} requires an admissible (exact-mode) configuration")


def subdomain_specs(config: ObstacleConfiguration):
    """Transform every cluster band into 1-D subdomains.

    Returns (lost, gained) lists of SubdomainSpec.  Clusters sharing an
    identical y-interval form one horizontal band (straddling pairs run
    left-right through them); identical x-intervals form vertical bands.
    Within a band, every contiguous run of clusters becomes an effective
    block (gap sites count as inaccessible), and every ordered pair of
    lanes through the band yields one subdomain: a lane offset o
    lengthens both the block and the subdomain by o, and a gained pair
    detours around the band by twice the lane distance to the nearest
    accessible side.
    """
    _require_exact(config, "subdomain transformation")
    lost: Counter = Counter()
    gained: Counter = Counter()

    def add_band(starts, ends, thickness, length, orientation):
        # starts/ends: sorted coordinates of cluster extents along the band
        b = len(starts)
        for k in range(b):
            for i in range(1, b - k + 1):
                left = ends[k - 1] if k > 0 else 0
                right = starts[k + i] if k + i < b else length + 1
                block = ends[k + i - 1] - starts[k] + 1
                x_len = right - left - 1
                d = min(starts[k] - left - 1, right - ends[k + i - 1] - 1)
                if d <= 0:
                    continue
                for a in range(1, thickness + 1):
                    for bb in range(a, thickness + 1):
                        o = bb - a
                        mult = 1 if o == 0 else 2
                        j = min(a, thickness + 1 - bb)
                        lost[(block + o, x_len + o, d, orientation)] += mult
                        gained[(block + o + 2 * j, x_len + o + 2 * j, d, orientation)] += mult

    by_row: dict = {}
    by_col: dict = {}
    for c in config.clusters:
        by_row.setdefault((c.y0, c.y1), []).append(c)
        by_col.setdefault((c.x0, c.x1), []).append(c)
    for (y0, y1), cs in by_row.items():
        cs.sort(key=lambda c: c.x0)
        add_band(
            [c.x0 for c in cs], [c.x1 for c in cs],
            y1 - y0 + 1, config.domain.width_x, "horizontal",
        )
    for (x0, x1), cs in by_col.items():
        cs.sort(key=lambda c: c.y0)
        add_band(
            [c.y0 for c in cs], [c.y1 for c in cs],
            x1 - x0 + 1, config.domain.width_y, "vertical",
        )

    def to_specs(counter):
        return [
            SubdomainSpec(n=n, x_total=x, d=d, multiplicity=mult, orientation=orient)
            for (n, x, d, orient), mult in sorted(counter.items())
        ]

    return to_specs(lost), to_specs(gained)


def _specs_histogram(specs, m_max: int) -> DistanceHistogram:
    m = np.arange(1, m_max + 1, dtype=np.int64)
    counts = np.zeros(m_max, dtype=np.int64)
    for s in specs:
        ramp = s.x_total - s.n - np.abs(2 * m - s.x_total - s.n)
        counts += s.multiplicity * (np.clip(ramp, 0, 2 * s.d) // 2)
    return DistanceHistogram(counts)


def _shift_m_max(config: ObstacleConfiguration, gained) -> int:
    base = max(config.domain.max_pair_distance, 1)
    return max([base] + [s.max_support for s in gained])


def lost_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """L(m): straddling pairs at their uncorrected taxicab distance."""
    lost, gained = subdomain_specs(config)
    return _specs_histogram(lost, _shift_m_max(config, gained))


def gained_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """G(m): the same straddling pairs at their detoured path distance."""
    lost, gained = subdomain_specs(config)
    return _specs_histogram(gained, _shift_m_max(config, gained))


def corrected_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """Exact accessible-pair path-distance counts D(m) for admissible configs."""
    _require_exact(config, "corrected_counts")
    lost, gained = subdomain_specs(config)
    m_max = _shift_m_max(config, gained)
    d = (
        d_no_histogram(config.domain.width_x, config.domain.width_y, m_max)
        - accessible_inaccessible_counts(config)
        + inaccessible_pair_counts(config)
        - _specs_histogram(lost, m_max)
        + _specs_histogram(gained, m_max)
    )
    if (d.counts < 0).any():
        raise InternalError("negative corrected count; exactness invariant violated")
    return d.trimmed()


def approx_counts(config: ObstacleConfiguration) -> DistanceHistogram:
    """D_approx(m) = D_NO - A + I: accessible pairs at plain taxicab distance.

    Needs only the raw inaccessible-site set; valid for any configuration.
    """
    d = (
        d_no_histogram(config.domain.width_x, config.domain.width_y)
        - accessible_inaccessible_counts(config)
        + inaccessible_pair_counts(config)
    )
    if (d.counts < 0).any():
        raise InternalError("negative approximate count")
    return d.trimmed()
