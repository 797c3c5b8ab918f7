"""CLI behaviour tests: exit codes, file outputs, determinism."""

import pytest

from centiwalk.cli import main

FAST_CFG = """\
[meta]
schema_version = 1
[experiment]
seeds = 0..2
cycles = 6
steps = 72
terrain_rows = 20
"""


@pytest.fixture
def fast_config(tmp_path):
    p = tmp_path / "fast.cfg"
    p.write_text(FAST_CFG)
    return str(p)


def run(args):
    return main(args)


class TestExitCodes:
    def test_usage_error_is_1(self, tmp_path):
        assert run(["--out", str(tmp_path), "--steps", "2", "gait-dump"]) == 1

    def test_config_error_is_1(self, tmp_path):
        assert run(["--config", "/no/such.cfg", "--out", str(tmp_path),
                    "gait-dump"]) == 1

    def test_validation_failure_is_2(self, tmp_path, fast_config):
        code = run(["--config", fast_config, "--out", str(tmp_path),
                    "--tolerance", "1e-9", "validate"])
        assert code == 2

    def test_success_is_0(self, tmp_path):
        assert run(["--out", str(tmp_path), "gait-dump"]) == 0


class TestGaitDump:
    def test_outputs(self, tmp_path):
        assert run(["--out", str(tmp_path), "--steps", "72", "gait-dump"]) == 0
        contact = (tmp_path / "contact_map.csv").read_text().splitlines()
        assert contact[0].startswith("# centiwalk v")
        assert contact[1].startswith("step,leg_l1")
        assert len(contact) == 2 + 72
        # [DERIVED] duty count: half the samples of each leg are stance
        bits = [[int(x) for x in line.split(",")[1:]] for line in contact[2:]]
        for leg in range(12):
            assert sum(row[leg] for row in bits) == 36

    def test_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert run(["--out", str(out), "gait-dump"]) == 0
        for name in ("contact_map.csv", "joint_angles.csv"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestTerrainGen:
    def test_writes_loadable_file(self, tmp_path):
        from centiwalk.terrain import TerrainGrid
        assert run(["--out", str(tmp_path), "--seeds", "3", "terrain-gen",
                    "--r-g", "0.17"]) == 0
        grid = TerrainGrid.load(tmp_path / "terrain_rg0.17_seed3.txt")
        assert grid.r_g == pytest.approx(0.17)


class TestModelSweep:
    def test_grid_row_count(self, tmp_path, fast_config):
        assert run(["--config", fast_config, "--out", str(tmp_path),
                    "model-sweep"]) == 0
        lines = (tmp_path / "model_sweep.csv").read_text().splitlines()
        # 3 terrains x 3 amplitudes, plus stamp and header
        assert len(lines) == 2 + 9

    def test_flat_rows_trivial(self, tmp_path, fast_config):
        # [TRIVIAL] r_g = 0 rows have gamma = 1; p_e = 0 at a_v = 0
        run(["--config", fast_config, "--out", str(tmp_path), "model-sweep"])
        lines = (tmp_path / "model_sweep.csv").read_text().splitlines()[2:]
        flat = [l.split(",") for l in lines if l.startswith("rg=0,")]
        assert flat
        for row in flat:
            assert float(row[4]) == pytest.approx(1.0)
        a0 = [r for r in flat if float(r[1]) == 0.0][0]
        assert float(a0[6]) == pytest.approx(0.0)

    def test_rough_terrain_prefers_lift(self, tmp_path, fast_config):
        # Fig-8-style ordering: at high rugosity a lifted gait beats a_v=0
        run(["--config", fast_config, "--out", str(tmp_path), "model-sweep"])
        lines = (tmp_path / "model_sweep.csv").read_text().splitlines()[2:]
        rough = {float(r[1]): float(r[4])
                 for r in (l.split(",") for l in lines)
                 if r[0] == "rg=0.32"}
        assert max(rough[10.0], rough[20.0]) > rough[0.0]

    def test_terrain_file_entry(self, tmp_path):
        # a terrain file path in the terrain list uses the empirical model
        run(["--out", str(tmp_path), "--seeds", "0", "terrain-gen",
             "--r-g", "0.32"])
        tfile = tmp_path / "terrain_rg0.32_seed0.txt"
        cfg = tmp_path / "c.cfg"
        cfg.write_text(
            "[meta]\nschema_version = 1\n"
            f"[experiment]\nterrains = {tfile}\na_v_grid = 0\nseeds = 0\n"
            "terrain_rows = 20\n"
        )
        assert run(["--config", str(cfg), "--out", str(tmp_path),
                    "model-sweep"]) == 0
        lines = (tmp_path / "model_sweep.csv").read_text().splitlines()
        assert len(lines) == 3
        assert lines[2].startswith("terrain_rg0.32_seed0,")

    def test_missing_terrain_file(self, tmp_path):
        cfg = tmp_path / "c.cfg"
        cfg.write_text(
            "[meta]\nschema_version = 1\n"
            "[experiment]\nterrains = /no/such/terrain.txt\n"
        )
        assert run(["--config", str(cfg), "--out", str(tmp_path),
                    "model-sweep"]) == 1


class TestValidate:
    def test_passes_at_default_tolerance(self, tmp_path, fast_config):
        assert run(["--config", fast_config, "--out", str(tmp_path),
                    "validate"]) == 0
        lines = (tmp_path / "validation.csv").read_text().splitlines()
        assert len(lines) == 2 + 9
        assert all(l.endswith(",pass") for l in lines[2:])


class TestWalkAndCompare:
    def test_walk_outputs(self, tmp_path, fast_config):
        assert run(["--config", fast_config, "--out", str(tmp_path),
                    "--seeds", "0,1", "--cycles", "5", "walk"]) == 0
        lines = (tmp_path / "walk.csv").read_text().splitlines()
        # 3 terrains x 2 seeds x 5 cycles
        assert len(lines) == 2 + 30

    def test_compare_outputs(self, tmp_path, fast_config):
        assert run(["--config", fast_config, "--out", str(tmp_path),
                    "--seeds", "0..3", "--cycles", "6",
                    "controller-compare"]) == 0
        lines = (tmp_path / "controller_summary.csv").read_text().splitlines()
        names = [l.split(",")[0] for l in lines[2:]]
        assert names == ["open_loop", "feedback_every1", "feedback_every2",
                         "feedback_every3"]
        assert (tmp_path / "trace_open_loop.csv").is_file()

    def test_compare_deterministic(self, tmp_path, fast_config):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            assert run(["--config", fast_config, "--out", str(out),
                        "--seeds", "0..2", "--cycles", "5",
                        "controller-compare"]) == 0
        assert (out1 / "controller_summary.csv").read_bytes() == \
            (out2 / "controller_summary.csv").read_bytes()
