from fractions import Fraction

import numpy as np
import pytest

from cpcf import (
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
from cpcf.errors import DomainError, IsolatedSiteWarning, NonRectangularObstacle, ParseError
from cpcf.lattice import config_to_json


class TestParseGrid:
    def test_empty_two_by_two(self):
        dom, config, occ = parse_grid("..\n..")
        assert (dom.width_x, dom.width_y) == (2, 2)
        assert config.clusters == ()
        assert occ.z == 0

    def test_single_obstacle_and_agent(self):
        dom, config, occ = parse_grid(".#\nA.")
        assert (dom.width_x, dom.width_y) == (2, 2)
        assert config.clusters == (ObstacleCluster(2, 2, 1, 1),)
        assert occ.agents == frozenset({(1, 1)})

    def test_top_row_is_highest_y(self):
        _, config, occ = parse_grid("#..\n...\n..A")
        assert config.sites == frozenset({(1, 3)})
        assert occ.agents == frozenset({(3, 1)})

    def test_twenty_percent_occupancy(self):
        rng = np.random.default_rng(5)
        cells = np.full(400, ".", dtype="U1")
        cells[rng.choice(400, size=80, replace=False)] = "A"
        text = "\n".join("".join(row) for row in cells.reshape(20, 20))
        _, config, occ = parse_grid(text)
        assert occ.z == 80
        assert config.n_a == 400
        assert occ.z / config.n_a == 0.2

    def test_ragged_rows_rejected(self):
        with pytest.raises(ParseError):
            parse_grid("...\n..")

    def test_unknown_character_rejected(self):
        with pytest.raises(ParseError):
            parse_grid(".x\n..")

    def test_render_round_trip(self, small_admissible_config):
        occ = OccupancyState.of([(1, 1), (5, 4), (9, 8)])
        text = render_grid(small_admissible_config, occ)
        dom, config, occ2 = parse_grid(text)
        assert dom == small_admissible_config.domain
        assert config.sites == small_admissible_config.sites
        assert occ2.agents == occ.agents


class TestJsonConfig:
    def test_round_trip(self, small_admissible_config):
        occ = OccupancyState.of([(1, 2), (8, 7)])
        text = config_to_json(small_admissible_config, occ)
        _, config, occ2 = parse_json_config(text)
        assert config.sites == small_admissible_config.sites
        assert occ2.agents == occ.agents

    def test_malformed_rejected(self):
        with pytest.raises(ParseError):
            parse_json_config("{not json")
        with pytest.raises(ParseError):
            parse_json_config('{"lx": 5}')


class TestExtractClusters:
    def test_single_cell(self):
        mask = np.zeros((4, 4), dtype=bool)
        mask[2, 1] = True
        assert extract_clusters(mask) == [ObstacleCluster(3, 2, 1, 1)]

    def test_three_by_three_block(self):
        mask = np.zeros((7, 7), dtype=bool)
        mask[2:5, 3:6] = True
        (cluster,) = extract_clusters(mask)
        assert (cluster.extent_x, cluster.extent_y) == (3, 3)
        assert len(list(cluster.sites())) == 9

    def test_l_shape_rejected(self):
        mask = np.zeros((5, 5), dtype=bool)
        mask[1, 1:4] = True
        mask[2, 1] = True
        with pytest.raises(NonRectangularObstacle):
            extract_clusters(mask)

    def test_cover_is_exact_and_disjoint(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            mask = np.zeros((12, 10), dtype=bool)
            for _ in range(rng.integers(1, 5)):
                x0, y0 = rng.integers(0, 9), rng.integers(0, 7)
                mask[x0 : x0 + rng.integers(1, 4), y0 : y0 + rng.integers(1, 4)] = True
            try:
                clusters = extract_clusters(mask)
            except NonRectangularObstacle:
                continue
            covered = set()
            for c in clusters:
                sites = set(c.sites())
                assert not covered & sites
                covered |= sites
            assert covered == {tuple(int(v) + 1 for v in idx) for idx in np.argwhere(mask)}


class TestAdmissibility:
    def test_interior_single_site_exact(self):
        config = ObstacleConfiguration.from_clusters(LatticeDomain(5, 5), [ObstacleCluster(3, 3, 1, 1)])
        assert config.admissibility is Admissibility.EXACT

    def test_regular_grid_of_singles_exact(self):
        clusters = [ObstacleCluster(2 * i, 2 * j, 1, 1) for i in range(1, 6) for j in range(1, 6)]
        config = ObstacleConfiguration.from_clusters(LatticeDomain(11, 11), clusters)
        assert check_admissibility(config) is Admissibility.EXACT

    def test_abutting_column_bands_approximate_only(self):
        config = ObstacleConfiguration.from_clusters(
            LatticeDomain(9, 9), [ObstacleCluster(3, 3, 2, 1), ObstacleCluster(5, 6, 2, 1)]
        )
        assert config.admissibility is Admissibility.APPROXIMATE_ONLY

    def test_boundary_cluster_approximate_only(self):
        config = ObstacleConfiguration.from_clusters(LatticeDomain(6, 6), [ObstacleCluster(1, 3, 1, 1)])
        assert config.admissibility is Admissibility.APPROXIMATE_ONLY

    def test_non_rectangular_mask_approximate_only(self):
        mask = np.zeros((6, 6), dtype=bool)
        mask[2, 2:4] = True
        mask[3, 2] = True
        config = ObstacleConfiguration.from_mask(LatticeDomain(6, 6), mask)
        assert config.admissibility is Admissibility.APPROXIMATE_ONLY
        assert config.n_h == 3

    def test_overlapping_clusters_rejected(self):
        with pytest.raises(ParseError):
            ObstacleConfiguration.from_clusters(
                LatticeDomain(8, 8), [ObstacleCluster(3, 3, 2, 2), ObstacleCluster(4, 4, 2, 2)]
            )


class TestNeighborRatio:
    def test_obstacle_free(self):
        assert accessible_neighbor_ratio(ObstacleConfiguration.empty(LatticeDomain(7, 4))) == 1

    def test_center_site_blocked_three_by_three(self):
        config = ObstacleConfiguration.from_clusters(LatticeDomain(3, 3), [ObstacleCluster(2, 2, 1, 1)])
        assert accessible_neighbor_ratio(config) == Fraction(24, 16)

    def test_ratio_at_least_one(self, small_admissible_config):
        assert accessible_neighbor_ratio(small_admissible_config) >= 1

    def test_isolated_site_warns(self):
        config = ObstacleConfiguration.from_clusters(
            LatticeDomain(4, 4), [ObstacleCluster(2, 1, 1, 1), ObstacleCluster(1, 2, 1, 1)]
        )
        with pytest.warns(IsolatedSiteWarning):
            accessible_neighbor_ratio(config)


class TestTypes:
    def test_domain_validation(self):
        with pytest.raises(DomainError):
            LatticeDomain(0, 5)

    def test_cluster_extent_validation(self):
        with pytest.raises(DomainError):
            ObstacleCluster(1, 1, 0, 2)

    def test_duplicate_agents_rejected(self):
        with pytest.raises(DomainError):
            OccupancyState.of([(1, 1), (1, 1)])

    def test_counts(self, small_admissible_config):
        config = small_admissible_config
        assert config.n_h == 6
        assert config.n_a == 9 * 8 - 6
