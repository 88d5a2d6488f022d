"""Integer histograms of pair counts indexed by distance m >= 1."""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class DistanceHistogram:
    """Counts of site pairs per distance, index m starting at 1.

    ``counts[i]`` holds the count for m = i + 1.  Stored as int64; all
    relevant counts fit (bins are bounded by n_a^2 for domains well past
    10^4 x 10^4 sites).
    """

    counts: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", arr)
        if arr.ndim != 1:
            raise DomainError("histogram counts must be one-dimensional")

    @property
    def m_max(self) -> int:
        return len(self.counts)

    def __getitem__(self, m: int) -> int:
        if m < 1:
            raise DomainError(f"distance index must be >= 1, got {m}")
        return int(self.counts[m - 1]) if m <= self.m_max else 0

    def total(self) -> int:
        return int(self.counts.sum())

    def padded(self, m_max: int) -> np.ndarray:
        out = np.zeros(max(m_max, self.m_max), dtype=np.int64)
        out[: self.m_max] = self.counts
        return out[:m_max] if m_max >= self.m_max else out

    def trimmed(self) -> "DistanceHistogram":
        """Drop trailing zero bins."""
        nz = np.nonzero(self.counts)[0]
        end = int(nz[-1]) + 1 if len(nz) else 0
        return DistanceHistogram(self.counts[:end])

    def __add__(self, other: "DistanceHistogram") -> "DistanceHistogram":
        n = max(self.m_max, other.m_max)
        return DistanceHistogram(self.padded(n) + other.padded(n))

    def __sub__(self, other: "DistanceHistogram") -> "DistanceHistogram":
        n = max(self.m_max, other.m_max)
        return DistanceHistogram(self.padded(n) - other.padded(n))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceHistogram):
            return NotImplemented
        n = max(self.m_max, other.m_max)
        return bool((self.padded(n) == other.padded(n)).all())

    @classmethod
    def zeros(cls, m_max: int) -> "DistanceHistogram":
        return cls(np.zeros(m_max, dtype=np.int64))

    @classmethod
    def from_distances(cls, distances, m_max: int | None = None) -> "DistanceHistogram":
        d = np.asarray(distances, dtype=np.int64)
        if len(d) and d.min() < 1:
            raise DomainError("pair distances must be >= 1")
        hi = int(d.max()) if len(d) else 0
        counts = np.bincount(d, minlength=(m_max or 0) + 1)[1:]
        if m_max is not None and hi > m_max:
            raise DomainError(f"distance {hi} exceeds m_max {m_max}")
        return cls(counts)

    def to_csv(self) -> str:
        """CSV export with header "m,count", including zero entries."""
        buf = io.StringIO()
        buf.write("m,count\n")
        for i, c in enumerate(self.counts):
            buf.write(f"{i + 1},{int(c)}\n")
        return buf.getvalue()
