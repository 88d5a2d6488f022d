"""Lattice domain model: grids, obstacle clusters, admissibility.

Coordinates are 1-based with x in [1, Lx] and y in [1, Ly]; y increases
upward.  Boolean masks are numpy arrays of shape (Lx, Ly) indexed
``mask[x - 1, y - 1]``.  Text grids list rows top to bottom, so the first
line of a grid corresponds to y = Ly.
"""

from __future__ import annotations

import enum
import json
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy import ndimage

from .errors import DomainError, IsolatedSiteWarning, NonRectangularObstacle, ParseError

GRID_ALPHABET = {".", "#", "A"}


class Admissibility(enum.Enum):
    EXACT = "exact"
    APPROXIMATE_ONLY = "approximate-only"


@dataclass(frozen=True)
class LatticeDomain:
    """Rectangular lattice with no-flux boundaries."""

    width_x: int
    width_y: int
    boundary: str = "no-flux"

    def __post_init__(self):
        if self.width_x < 1 or self.width_y < 1:
            raise DomainError(f"domain extents must be >= 1, got {self.width_x}x{self.width_y}")
        if self.boundary != "no-flux":
            raise DomainError(f"unsupported boundary condition: {self.boundary!r}")

    @property
    def n_sites(self) -> int:
        return self.width_x * self.width_y

    @property
    def max_pair_distance(self) -> int:
        return self.width_x + self.width_y - 2

    def contains(self, x: int, y: int) -> bool:
        return 1 <= x <= self.width_x and 1 <= y <= self.width_y


@dataclass(frozen=True)
class ObstacleCluster:
    """Filled rectangle of inaccessible sites; (x0, y0) is the lower-left site."""

    x0: int
    y0: int
    extent_x: int
    extent_y: int

    def __post_init__(self):
        if self.extent_x < 1 or self.extent_y < 1:
            raise DomainError("cluster extents must be >= 1")
        if self.x0 < 1 or self.y0 < 1:
            raise DomainError("cluster coordinates are 1-based")

    @property
    def x1(self) -> int:
        """Largest x covered (inclusive)."""
        return self.x0 + self.extent_x - 1

    @property
    def y1(self) -> int:
        """Largest y covered (inclusive)."""
        return self.y0 + self.extent_y - 1

    def sites(self):
        for x in range(self.x0, self.x1 + 1):
            for y in range(self.y0, self.y1 + 1):
                yield (x, y)


@dataclass(frozen=True)
class ObstacleConfiguration:
    """Domain plus a set of inaccessible sites.

    ``clusters`` is empty when the obstacle mask could not be decomposed
    into rectangular clusters; such configurations are always
    APPROXIMATE_ONLY but remain usable for the approximate and oracle
    count modes.
    """

    domain: LatticeDomain
    clusters: tuple[ObstacleCluster, ...]
    sites: frozenset
    admissibility: Admissibility = field(init=False)

    def __post_init__(self):
        for (x, y) in self.sites:
            if not self.domain.contains(x, y):
                raise DomainError(f"inaccessible site {(x, y)} outside domain")
        object.__setattr__(self, "admissibility", check_admissibility(self))

    @property
    def n_h(self) -> int:
        return len(self.sites)

    @property
    def n_a(self) -> int:
        return self.domain.n_sites - self.n_h

    def mask(self) -> np.ndarray:
        """Boolean inaccessibility mask of shape (Lx, Ly)."""
        m = np.zeros((self.domain.width_x, self.domain.width_y), dtype=bool)
        for (x, y) in self.sites:
            m[x - 1, y - 1] = True
        return m

    def is_accessible(self, x: int, y: int) -> bool:
        return self.domain.contains(x, y) and (x, y) not in self.sites

    @classmethod
    def empty(cls, domain: LatticeDomain) -> "ObstacleConfiguration":
        return cls(domain, (), frozenset())

    @classmethod
    def from_clusters(cls, domain: LatticeDomain, clusters) -> "ObstacleConfiguration":
        clusters = tuple(clusters)
        sites = set()
        for c in clusters:
            if not (domain.contains(c.x0, c.y0) and domain.contains(c.x1, c.y1)):
                raise DomainError(f"cluster {c} extends outside the domain")
            sites.update(c.sites())
        if len(sites) != sum(c.extent_x * c.extent_y for c in clusters):
            raise ParseError("clusters overlap")
        for c in clusters:
            for d in clusters:
                if c is d:
                    continue
                # edge-adjacent rectangles would really be one cluster
                if (c.x0 - 1 <= d.x1 and d.x0 <= c.x1 + 1 and c.y0 <= d.y1 and d.y0 <= c.y1) or (
                    c.x0 <= d.x1 and d.x0 <= c.x1 and c.y0 - 1 <= d.y1 and d.y0 <= c.y1 + 1
                ):
                    raise ParseError(f"clusters {c} and {d} touch")
        return cls(domain, clusters, frozenset(sites))

    @classmethod
    def from_mask(cls, domain: LatticeDomain, mask: np.ndarray) -> "ObstacleConfiguration":
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (domain.width_x, domain.width_y):
            raise DomainError(f"mask shape {mask.shape} does not match domain")
        sites = frozenset((int(x) + 1, int(y) + 1) for x, y in zip(*np.nonzero(mask)))
        try:
            clusters = tuple(extract_clusters(mask))
        except NonRectangularObstacle:
            clusters = ()
        return cls(domain, clusters, sites)


@dataclass(frozen=True)
class OccupancyState:
    """Set of agent-occupied sites; at most one agent per site (exclusion)."""

    agents: frozenset

    @property
    def z(self) -> int:
        return len(self.agents)

    @classmethod
    def of(cls, coords) -> "OccupancyState":
        coords = list(coords)
        agents = frozenset((int(x), int(y)) for x, y in coords)
        if len(agents) != len(coords):
            raise DomainError("duplicate agent coordinates violate exclusion")
        return cls(agents)


def extract_clusters(mask: np.ndarray) -> list[ObstacleCluster]:
    """Decompose a boolean mask into rectangular 4-connected clusters.

    Raises NonRectangularObstacle if any connected component is not a
    filled axis-aligned rectangle.
    """
    mask = np.asarray(mask, dtype=bool)
    structure = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]])
    labels, n = ndimage.label(mask, structure=structure)
    clusters = []
    for sl_x, sl_y in ndimage.find_objects(labels):
        block = labels[sl_x, sl_y]
        if not (block > 0).all():
            raise NonRectangularObstacle(
                "obstacle component is not a filled rectangle; exact mode unavailable"
            )
        clusters.append(
            ObstacleCluster(
                x0=sl_x.start + 1,
                y0=sl_y.start + 1,
                extent_x=sl_x.stop - sl_x.start,
                extent_y=sl_y.stop - sl_y.start,
            )
        )
    clusters.sort(key=lambda c: (c.y0, c.x0))
    return clusters


def check_admissibility(config: ObstacleConfiguration) -> Admissibility:
    """Decide whether the exact analytic normalization applies.

    Exact requires every obstacle component to be a rectangular cluster
    lying strictly inside the domain, with the four full domain rows and
    columns immediately adjacent to the cluster entirely free of
    inaccessible sites (the strictest reading of the flanking-row
    condition; it also forces the y-intervals and x-intervals of any two
    clusters to be either identical or disjoint, which the subdomain
    transformations rely on).
    """
    if not config.sites:
        return Admissibility.EXACT
    if not config.clusters:
        return Admissibility.APPROXIMATE_ONLY
    lx, ly = config.domain.width_x, config.domain.width_y
    occupied_rows = {y for (_, y) in config.sites}
    occupied_cols = {x for (x, _) in config.sites}
    for c in config.clusters:
        if c.x0 <= 1 or c.x1 >= lx or c.y0 <= 1 or c.y1 >= ly:
            return Admissibility.APPROXIMATE_ONLY
        if c.y0 - 1 in occupied_rows or c.y1 + 1 in occupied_rows:
            return Admissibility.APPROXIMATE_ONLY
        if c.x0 - 1 in occupied_cols or c.x1 + 1 in occupied_cols:
            return Admissibility.APPROXIMATE_ONLY
    return Admissibility.EXACT


def accessible_neighbor_ratio(config: ObstacleConfiguration) -> Fraction:
    """Ratio of potential to actual accessible von-Neumann neighbor slots.

    The numerator counts the in-domain neighbor slots of the obstacle-free
    domain (every site accessible); the denominator counts, over the
    actually accessible sites, the slots that land on accessible sites.
    Used to scale the final simulation time on crowded domains.
    """
    acc = ~config.mask()
    if not acc.any():
        raise DomainError("no accessible sites")
    lx, ly = acc.shape
    potential = np.zeros(acc.shape, dtype=np.int64)
    actual = np.zeros(acc.shape, dtype=np.int64)
    for axis, shift in ((0, 1), (0, -1), (1, 1), (1, -1)):
        nbr_in = np.zeros(acc.shape, dtype=bool)
        nbr_acc = np.zeros(acc.shape, dtype=bool)
        src = [slice(None), slice(None)]
        dst = [slice(None), slice(None)]
        src[axis] = slice(1, None) if shift == 1 else slice(None, -1)
        dst[axis] = slice(None, -1) if shift == 1 else slice(1, None)
        nbr_in[tuple(dst)] = True
        nbr_acc[tuple(dst)] = acc[tuple(src)]
        potential += nbr_in
        actual += nbr_acc
    numerator = int(potential.sum())
    denominator = int(actual[acc].sum())
    if (acc & (actual == 0)).any() and config.domain.n_sites > 1:
        warnings.warn(
            "accessible site(s) with no accessible neighbors; agents there cannot move",
            IsolatedSiteWarning,
            stacklevel=2,
        )
    if denominator == 0:
        raise DomainError("every accessible site is isolated")
    return Fraction(numerator, denominator)


def parse_grid(text: str):
    """Parse a character grid into (domain, configuration, occupancy).

    Alphabet: '.' accessible-empty, '#' inaccessible, 'A' agent.  The top
    line of the text is the row y = Ly.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty grid")
    width = len(lines[0])
    if width == 0 or any(len(line) != width for line in lines):
        raise ParseError("grid rows must be non-empty and equally long")
    bad = set("".join(lines)) - GRID_ALPHABET
    if bad:
        raise ParseError(f"unknown grid characters: {sorted(bad)}")
    ly = len(lines)
    domain = LatticeDomain(width, ly)
    mask = np.zeros((width, ly), dtype=bool)
    agents = []
    for row, line in enumerate(lines):
        y = ly - row
        for col, ch in enumerate(line):
            if ch == "#":
                mask[col, y - 1] = True
            elif ch == "A":
                agents.append((col + 1, y))
    config = ObstacleConfiguration.from_mask(domain, mask)
    return domain, config, OccupancyState.of(agents)


def render_grid(config: ObstacleConfiguration, occ: OccupancyState | None = None) -> str:
    """Inverse of parse_grid for canonical grids."""
    agents = occ.agents if occ is not None else frozenset()
    lines = []
    for y in range(config.domain.width_y, 0, -1):
        row = []
        for x in range(1, config.domain.width_x + 1):
            if (x, y) in config.sites:
                row.append("#")
            elif (x, y) in agents:
                row.append("A")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def parse_json_config(text: str):
    """Parse the JSON configuration alternative to grid text.

    Schema: {"lx": int, "ly": int,
             "clusters": [{"x0":..,"y0":..,"cx":..,"cy":..}, ...],
             "agents": [[x, y], ...]}
    """
    try:
        obj = json.loads(text)
        lx, ly = int(obj["lx"]), int(obj["ly"])
        cluster_objs = obj.get("clusters", [])
        agent_objs = obj.get("agents", [])
        clusters = [
            ObstacleCluster(int(c["x0"]), int(c["y0"]), int(c["cx"]), int(c["cy"]))
            for c in cluster_objs
        ]
        agents = [(int(x), int(y)) for x, y in agent_objs]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad JSON configuration: {exc}") from exc
    domain = LatticeDomain(lx, ly)
    config = ObstacleConfiguration.from_clusters(domain, clusters)
    occ = OccupancyState.of(agents)
    for (x, y) in occ.agents:
        if not config.is_accessible(x, y):
            raise ParseError(f"agent at {(x, y)} is not on an accessible site")
    return domain, config, occ


def config_to_json(config: ObstacleConfiguration, occ: OccupancyState | None = None) -> str:
    obj = {
        "lx": config.domain.width_x,
        "ly": config.domain.width_y,
        "clusters": [
            {"x0": c.x0, "y0": c.y0, "cx": c.extent_x, "cy": c.extent_y}
            for c in config.clusters
        ],
        "agents": sorted([x, y] for (x, y) in (occ.agents if occ else ())),
    }
    return json.dumps(obj)
