"""Command-line interface: outputs, determinism, exit codes."""

import json
from importlib import resources
from pathlib import Path

import jsonschema
import pytest
from click.testing import CliRunner

from noiseprobe.cli import OUTDIR_ENV, main


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, tmp_path, args, env=None):
    env = dict(env or {})
    env.setdefault(OUTDIR_ENV, str(tmp_path))
    return runner.invoke(main, args, env=env, catch_exceptions=False)


class TestRtnQfi:
    def test_writes_surface_csv(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["rtn-qfi", "--gamma-grid", "0.1,10,4", "--tau-grid", "0.2,3,5"])
        assert res.exit_code == 0
        path = tmp_path / "fig1_surface.csv"
        assert path.exists()
        lines = path.read_text().splitlines()
        assert lines[0] == "tau,gamma,qfi,qsnr"
        assert len(lines) == 1 + 4 * 5

    def test_json_format(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["rtn-qfi", "--gamma-grid", "0.1,10,2", "--tau-grid", "0.5,1,2",
                      "--format", "json"])
        assert res.exit_code == 0
        rows = json.loads((tmp_path / "fig1_surface.json").read_text())
        assert len(rows) == 4
        assert set(rows[0]) == {"tau", "gamma", "qfi", "qsnr"}

    def test_reruns_are_byte_identical(self, runner, tmp_path):
        args = ["rtn-qfi", "--gamma-grid", "0.5,5,3", "--tau-grid", "0.2,2,4"]
        invoke(runner, tmp_path, args)
        first = (tmp_path / "fig1_surface.csv").read_bytes()
        invoke(runner, tmp_path, args)
        assert (tmp_path / "fig1_surface.csv").read_bytes() == first

    def test_bad_grid_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["rtn-qfi", "--gamma-grid", "nope"],
                            env={OUTDIR_ENV: str(tmp_path)})
        assert res.exit_code == 2
        res = runner.invoke(main, ["rtn-qfi", "--gamma-grid", "5,1,10"],
                            env={OUTDIR_ENV: str(tmp_path)})
        assert res.exit_code == 2


class TestOptimalTime:
    def test_staircase_columns(self, runner, tmp_path):
        res = invoke(runner, tmp_path, ["optimal-time", "--gamma-grid", "0.1,10,6"])
        assert res.exit_code == 0
        lines = (tmp_path / "fig2_staircase.csv").read_text().splitlines()
        assert lines[0] == "gamma,tau_opt,tau_approx,pi_over_4gamma,qfi_max,deviation"
        assert len(lines) == 7


class TestColoredScan:
    def test_writes_surface_and_profiles(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["colored-scan", "--alpha-grid", "0.8,1.6,3",
                      "--tau-grid", "0.5,3,4", "--n-list", "1,5"])
        assert res.exit_code == 0
        assert (tmp_path / "fig3_qsnr_surface.csv").exists()
        profiles = (tmp_path / "fig4_profiles.csv").read_text().splitlines()
        assert profiles[0] == "alpha,n_fluctuators,tau_opt,qfi_max,qsnr_max"
        assert len(profiles) == 1 + 3 * 2
        assert not (tmp_path / "fig5_nmax.csv").exists()

    def test_optional_count_scan(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["colored-scan", "--alpha-grid", "1.8,2,2",
                      "--tau-grid", "0.5,3,3", "--n-list", "1",
                      "--nmax-range", "1,40"])
        assert res.exit_code == 0
        assert (tmp_path / "fig5_nmax.csv").exists()

    def test_bad_count_list(self, runner, tmp_path):
        res = runner.invoke(main, ["colored-scan", "--n-list", "1,x"],
                            env={OUTDIR_ENV: str(tmp_path)})
        assert res.exit_code == 2


class TestNmaxScan:
    def test_writes_json(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["nmax-scan", "--alpha", "2.0", "--n-range", "1,40"])
        assert res.exit_code == 0
        out = json.loads((tmp_path / "nmax_scan.json").read_text())
        assert out["alpha"] == 2.0
        assert out["n_max"] >= 1
        assert out["record"]["n_fluctuators"] == out["n_max"]


class TestMcValidate:
    def test_passes_with_enough_samples(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["mc-validate", "--n-samples", "60000", "--seed", "5"])
        assert res.exit_code == 0
        out = json.loads((tmp_path / "mc_validate.json").read_text())
        assert out["passed"] is True
        assert len(out["checks"]) == 15
        assert all(c["seed"] == 5 for c in out["checks"])


class TestEstimate:
    def test_from_counts(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["estimate", "--n0", "8100", "--n1", "1900", "--tau", "1.0"])
        assert res.exit_code == 0
        out = json.loads((tmp_path / "estimate.json").read_text())
        assert out["n0"] == 8100
        assert 0.05 <= out["estimate"] <= 5.0

    def test_simulated_counts_recover_parameter(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["estimate", "--simulate", "1.0", "--shots", "40000",
                      "--tau", "1.2", "--seed", "9"])
        assert res.exit_code == 0
        out = json.loads((tmp_path / "estimate.json").read_text())
        assert out["estimate"] == pytest.approx(1.0, abs=0.1)
        assert out["at_boundary"] is False

    def test_missing_counts_is_usage_error(self, runner, tmp_path):
        res = runner.invoke(main, ["estimate"], env={OUTDIR_ENV: str(tmp_path)})
        assert res.exit_code == 2


class TestValidate:
    def test_report_passes_and_matches_schema(self, runner, tmp_path):
        res = invoke(runner, tmp_path,
                     ["validate", "--n-samples", "60000", "--repetitions", "60",
                      "--seed", "21"])
        assert res.exit_code == 0
        report = json.loads((tmp_path / "validate.json").read_text())
        schema = json.loads(
            resources.files("noiseprobe.schemas")
            .joinpath("validate_report.schema.json")
            .read_text()
        )
        jsonschema.validate(report, schema)
        assert report["passed"] is True


class TestOutputDirectory:
    def test_out_flag_overrides_env(self, runner, tmp_path):
        env_dir = tmp_path / "env"
        flag_dir = tmp_path / "flag"
        env_dir.mkdir()
        res = invoke(runner, env_dir,
                     ["optimal-time", "--gamma-grid", "1,2,2", "--out", str(flag_dir)])
        assert res.exit_code == 0
        assert (flag_dir / "fig2_staircase.csv").exists()
        assert not (env_dir / "fig2_staircase.csv").exists()
