import json

import numpy as np
import pytest

from cpcf import d_no_histogram
from cpcf.cli import main
from cpcf.layouts import central_block_layout
from cpcf.lattice import config_to_json, render_grid
from cpcf.sim import seed_occupancy


def grid_file(tmp_path, text, name="in.txt"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture
def empty_ten_by_ten(tmp_path):
    return grid_file(tmp_path, "\n".join(["." * 10] * 10))


@pytest.fixture
def obstacle_grid_with_agents(tmp_path):
    config = central_block_layout(12, 12, 2, 2)
    occ = seed_occupancy(config, 0.2, np.random.default_rng(0))
    return grid_file(tmp_path, render_grid(config, occ))


class TestCounts:
    def test_exact_matches_closed_form(self, empty_ten_by_ten, tmp_path, capsys):
        out = tmp_path / "d.csv"
        assert main(["counts", "-i", empty_ten_by_ten, "--mode", "exact", "-o", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "m,count"
        ref = d_no_histogram(10, 10)
        for line in lines[1:]:
            m, count = line.split(",")
            assert int(count) == ref[int(m)]

    def test_stdout_default(self, empty_ten_by_ten, capsys):
        assert main(["counts", "-i", empty_ten_by_ten]) == 0
        assert capsys.readouterr().out.startswith("m,count")

    def test_modes_agree_on_admissible_input(self, obstacle_grid_with_agents, tmp_path):
        outputs = {}
        for mode in ("exact", "approx", "oracle"):
            out = tmp_path / f"{mode}.csv"
            assert main(["counts", "-i", obstacle_grid_with_agents, "--mode", mode, "-o", str(out)]) == 0
            outputs[mode] = out.read_text()
        assert outputs["exact"] == outputs["oracle"]

    def test_json_input(self, tmp_path):
        config = central_block_layout(8, 8, 2, 2)
        path = grid_file(tmp_path, config_to_json(config), "in.json")
        assert main(["counts", "-i", path]) == 0


class TestPcf:
    def test_single_realization_csv(self, obstacle_grid_with_agents, tmp_path):
        out = tmp_path / "p.csv"
        assert main(["pcf", "-i", obstacle_grid_with_agents, "--mode", "exact", "-o", str(out)]) == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "m,C,D,E,P,Pstd"
        meta = json.loads((tmp_path / "p.meta.json").read_text())
        assert meta["mode"] == "exact"

    def test_ensemble_requires_density(self, obstacle_grid_with_agents):
        assert main(["pcf", "-i", obstacle_grid_with_agents, "--ensemble", "5"]) == 3

    def test_ensemble_runs(self, obstacle_grid_with_agents, tmp_path):
        out = tmp_path / "p.csv"
        code = main(
            ["pcf", "-i", obstacle_grid_with_agents, "--ensemble", "5", "--density", "0.2",
             "--seed", "3", "-o", str(out)]
        )
        assert code == 0
        meta = json.loads((tmp_path / "p.meta.json").read_text())
        assert meta["ensemble_size"] == 5
        assert meta["seeds"] == [3, 4, 5, 6, 7]

    def test_plot_output(self, obstacle_grid_with_agents, tmp_path):
        plot = tmp_path / "plot.csv"
        assert main(["pcf", "-i", obstacle_grid_with_agents, "--plot", str(plot), "-o", str(tmp_path / "p.csv")]) == 0
        assert plot.read_text().startswith("m,P\n")

    def test_agentless_input_rejected(self, empty_ten_by_ten):
        assert main(["pcf", "-i", empty_ten_by_ten]) == 3


class TestSimulate:
    def test_snapshot_output(self, empty_ten_by_ten, tmp_path):
        out = tmp_path / "run.txt"
        code = main(
            ["simulate", "-i", empty_ten_by_ten, "--tend", "6", "--density", "0.1",
             "--snapshot-every", "3", "-o", str(out)]
        )
        assert code == 0
        text = out.read_text()
        assert "# t=3" in text and "# t=6" in text
        meta = json.loads((tmp_path / "run.meta.json").read_text())
        assert meta["final_agents"] >= 10

    def test_pcf_pipeline(self, obstacle_grid_with_agents, tmp_path):
        out = tmp_path / "p.csv"
        code = main(
            ["simulate", "-i", obstacle_grid_with_agents, "--tend", "5", "--density", "0.05",
             "--pcf", "exact", "--ensemble", "3", "-o", str(out)]
        )
        assert code == 0
        assert out.read_text().startswith("m,C,D,E,P,Pstd")


class TestBench:
    def test_tiny_bench(self, tmp_path, capsys):
        csv = tmp_path / "bench.csv"
        code = main(["bench", "--sizes", "20", "--clusters", "2", "--repeats", "1", "--csv", str(csv)])
        assert code == 0
        table = capsys.readouterr().out
        assert "speedup" in table
        header, row = csv.read_text().strip().split("\n")
        assert "speedup" in header
        assert float(row.split(",")[-1]) > 0


class TestValidate:
    def test_small_run_passes(self, capsys):
        assert main(["validate", "--domains", "3", "--max-size", "20", "--seed", "7"]) == 0
        assert "analytic == oracle" in capsys.readouterr().out


class TestErrorPaths:
    def test_parse_error_exit_code(self, tmp_path):
        path = grid_file(tmp_path, "..x\n...")
        assert main(["counts", "-i", path]) == 3

    def test_mode_error_exit_code(self, tmp_path):
        # boundary-touching cluster cannot be handled exactly
        path = grid_file(tmp_path, "#....\n.....\n..A.A")
        assert main(["counts", "-i", path, "--mode", "exact"]) == 4
        assert main(["counts", "-i", path, "--mode", "approx"]) == 0

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as err:
            main(["no-such-command"])
        assert err.value.code == 2
