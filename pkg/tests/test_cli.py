"""Command-line client: exit codes, output formats, determinism."""

import json

import pytest

from diracglide import cli


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerifyAlgebra:
    def test_standard_passes(self, capsys):
        code, out, _ = run_cli(["verify-algebra", "standard"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert data["seed"] == 42

    def test_chiral_csv(self, capsys):
        code, out, _ = run_cli(["verify-algebra", "chiral", "--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "name,max_deviation,tolerance,passed"
        assert all(line.endswith("True") for line in lines[1:])

    def test_bogus_representation_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["verify-algebra", "bogus"])
        assert excinfo.value.code == 2


class TestPlaneWave:
    def test_rest_frame_record(self, capsys):
        code, out, _ = run_cli(["plane-wave", "0", "0", "0", "--mass", "1"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["momentum"] == [1.0, 0.0, 0.0, 0.0]
        assert data["passed"] is True

    def test_boosted_spin_down(self, capsys):
        code, out, _ = run_cli(
            ["plane-wave", "1", "0", "0", "--mass", "1", "--branch", "spin-down"], capsys
        )
        assert code == 0
        data = json.loads(out)
        assert data["momentum"][0] == pytest.approx(2.0**0.5)

    def test_negative_mass_is_config_error(self, capsys):
        code, _, err = run_cli(["plane-wave", "0", "0", "0", "--mass", "-1"], capsys)
        assert code == 2
        assert "mass" in err


class TestHydrogen:
    ARGS = ["hydrogen", "--coupling", "0.5", "--count", "1", "--extent", "60", "--points", "2000"]

    def test_table_and_exit(self, capsys):
        code, out, _ = run_cli(self.ARGS + ["--format", "csv"], capsys)
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,kappa,energy_grid,energy_sommerfeld,rel_error"
        assert len(lines) == 2

    def test_supercritical_is_config_error(self, capsys):
        code, _, err = run_cli(["hydrogen", "--coupling", "1.2"], capsys)
        assert code == 2
        assert "supercritical" in err

    def test_missing_coupling(self, capsys):
        code, _, err = run_cli(["hydrogen"], capsys)
        assert code == 2
        assert "coupling" in err

    def test_determinism(self, capsys):
        code1, out1, _ = run_cli(self.ARGS, capsys)
        code2, out2, _ = run_cli(self.ARGS, capsys)
        assert code1 == code2 == 0
        assert out1 == out2


class TestConfigDriven:
    def test_bound_states_config(self, capsys):
        code, out, _ = run_cli(
            ["bound-states", "--config", "configs/bound_states.yaml"], capsys
        )
        assert code == 0
        data = json.loads(out)
        assert data["passed"] is True
        assert len(data["energies"]) == 2

    def test_effective_potential_csv(self, capsys):
        code, out, _ = run_cli(
            ["effective-potential", "--config", "configs/effective_potential.yaml",
             "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "r,v1,v2,v3,local_potential"
        assert len(lines) == 122

    def test_wrong_config_lists_offending_keys(self, capsys):
        code, _, err = run_cli(
            ["bound-states", "--config", "configs/nr_limit.yaml"], capsys
        )
        assert code == 2
        for key in ("kappa", "v1", "epsilons"):
            assert key in err

    def test_missing_config_file(self, capsys):
        code, _, err = run_cli(["bound-states", "--config", "does/not/exist.yaml"], capsys)
        assert code == 2

    def test_config_required_fields(self, capsys):
        code, _, err = run_cli(["nr-limit"], capsys)
        assert code == 2

    def test_v3_on_radial_grid_config(self, tmp_path, capsys):
        bad = tmp_path / "bad.yaml"
        bad.write_text(
            "model:\n"
            "  v3: {kind: gaussian, strength: 0.1, width: 1.0}\n"
            "grid: {dimension: radial-1d, extent: 30.0, points: 600}\n"
        )
        code, _, err = run_cli(["bound-states", "--config", str(bad)], capsys)
        assert code == 2
        assert "cartesian-3d" in err

    def test_seed_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "seeded.yaml"
        cfg.write_text("representation: standard\nseed: 7\n")
        code, out, _ = run_cli(["verify-algebra", "--config", str(cfg)], capsys)
        assert json.loads(out)["seed"] == 7
        code, out, _ = run_cli(
            ["verify-algebra", "--config", str(cfg), "--seed", "11"], capsys
        )
        assert json.loads(out)["seed"] == 11


class TestOutputFile:
    def test_output_written(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            ["verify-algebra", "standard", "--output", str(target)], capsys
        )
        assert code == 0
        assert out == ""
        data = json.loads(target.read_text())
        assert data["passed"] is True

    def test_output_determinism_bytes(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run_cli(["effective-potential", "--config", "configs/effective_potential.yaml",
                 "--output", str(a)], capsys)
        run_cli(["effective-potential", "--config", "configs/effective_potential.yaml",
                 "--output", str(b)], capsys)
        assert a.read_bytes() == b.read_bytes()
