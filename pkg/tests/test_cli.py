import json
import subprocess
import sys

import pytest

from alphabug.cli import main

GOLDEN_ARGS = ["spectrum", "--n", "11", "--d", "5", "--i", "2", "--alpha", "0.6"]


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


class TestSpectrumCommand:
    def test_golden_example(self, capsys):
        code, payload = run_json(capsys, *GOLDEN_ARGS)
        assert code == 0
        assert payload["input"] == {
            "input_form": "ndi", "n": 11, "d": 5, "i": 2, "p": 8, "q": 2, "r": 3,
            "alpha": 0.6,
        }
        assert payload["method"] == "structured"
        assert payload["closed_form"] == {"value": 3.8, "multiplicity": 5}
        expected = [0.3909, 0.5539, 1.3521, 3.5403, 4.2486, 6.9144]
        for got, want in zip(payload["quotient_eigenvalues"], expected):
            assert got == pytest.approx(want, abs=5e-5)
        assert payload["rho"] == payload["quotient_eigenvalues"][-1]
        assert payload["timings_ms"] is None
        assert payload["verification"] is None

    def test_parameterization_equivalence(self, capsys):
        _, ndi = run_json(capsys, *GOLDEN_ARGS)
        _, pqr = run_json(
            capsys, "spectrum", "--p", "8", "--q", "2", "--r", "3", "--alpha", "0.6"
        )
        assert ndi["input"].pop("input_form") == "ndi"
        assert pqr["input"].pop("input_form") == "pqr"
        assert ndi == pqr

    def test_byte_identical_reruns(self, capsys):
        _, first = run_cli(capsys, *GOLDEN_ARGS)
        _, second = run_cli(capsys, *GOLDEN_ARGS)
        assert first == second

    def test_timings_flag(self, capsys):
        _, payload = run_json(capsys, *GOLDEN_ARGS, "--timings")
        assert payload["timings_ms"] > 0

    def test_method_halved(self, capsys):
        code, payload = run_json(
            capsys, "spectrum", "--n", "10", "--d", "4", "--i", "2",
            "--alpha", "0", "--method", "halved",
        )
        assert code == 0
        assert payload["method"] == "halved"
        assert len(payload["quotient_eigenvalues"]) == 3
        assert payload["rho"] == pytest.approx(6.802908345718773, abs=1e-9)

    def test_method_halved_rejects_unbalanced(self, capsys):
        code, _ = run_cli(capsys, "spectrum", "--n", "11", "--d", "5", "--i", "2",
                          "--alpha", "0.6", "--method", "halved")
        assert code == 2

    def test_method_dense_clusters(self, capsys):
        code, payload = run_json(
            capsys, "spectrum", "--n", "5", "--d", "2", "--i", "1",
            "--alpha", "0.5", "--method", "dense",
        )
        assert code == 0
        assert payload["quotient_eigenvalues"] is None
        assert payload["closed_form"] is None
        mults = [e["multiplicity"] for e in payload["dense_spectrum"]]
        assert mults == [1, 3, 1]

    def test_method_all_verifies(self, capsys):
        code, payload = run_json(capsys, *GOLDEN_ARGS[:-2], "--alpha", "0.6",
                                 "--method", "all")
        assert code == 0
        v = payload["verification"]
        assert v["matched"] is True
        assert v["max_abs_deviation"] <= v["tolerance"] == 1e-8

    def test_csv_output(self, capsys):
        code, out = run_cli(capsys, *GOLDEN_ARGS, "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "value,multiplicity,source"
        assert len(lines) == 8  # header + 6 quotient + 1 closed-form
        assert "3.8,5,closed-form" in lines
        assert out.endswith("\n")

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "result.json"
        code, out = run_cli(capsys, *GOLDEN_ARGS, "--output", str(target))
        assert code == 0 and out == ""
        payload = json.loads(target.read_text())
        assert payload["closed_form"]["value"] == 3.8

    def test_rejects_mixed_triples(self, capsys):
        code, _ = run_cli(capsys, "spectrum", "--n", "11", "--d", "5", "--i", "2",
                          "--p", "8", "--alpha", "0.6")
        assert code == 2

    def test_rejects_incomplete_triple(self, capsys):
        code, _ = run_cli(capsys, "spectrum", "--n", "11", "--d", "5", "--alpha", "0.6")
        assert code == 2

    def test_rejects_alpha_one(self, capsys):
        code, _ = run_cli(capsys, "spectrum", "--n", "11", "--d", "5", "--i", "2",
                          "--alpha", "1.0")
        assert code == 2


class TestSweepCommand:
    def test_golden_single_row(self, capsys):
        code, payload = run_json(
            capsys, "sweep", "--n", "11", "--d", "5", "--i", "2", "--alphas", "0.6"
        )
        assert code == 0
        (row,) = payload["rows"]
        assert row["alpha"] == 0.6
        assert row["rho"] == pytest.approx(6.9144, abs=5e-5)
        assert row["closed_form"] == 3.8
        assert row["closed_mult"] == 5
        assert row["min_quotient"] == pytest.approx(0.3909, abs=5e-5)

    def test_path_collapse_csv(self, capsys):
        code, out = run_cli(
            capsys, "sweep", "--p", "3", "--q", "1", "--r", "2",
            "--alphas", "0,0.5", "--format", "csv",
        )
        assert code == 0
        # rho rows are the adjacency and half-signless-Laplacian radii of P_4
        assert out == (
            "alpha,rho,closed_form,closed_mult\n"
            "0,1.61803398875,,0\n"
            "0.5,1.70710678119,,0\n"
        )

    def test_empty_alpha_list(self, capsys):
        code, _ = run_cli(capsys, "sweep", "--n", "11", "--d", "5", "--i", "2",
                          "--alphas", "")
        assert code == 2

    def test_alpha_out_of_range(self, capsys):
        code, _ = run_cli(capsys, "sweep", "--n", "11", "--d", "5", "--i", "2",
                          "--alphas", "0.2,1.0")
        assert code == 2


class TestScanCommand:
    def test_balanced_argmax(self, capsys):
        code, payload = run_json(capsys, "scan", "--n", "10", "--d", "4",
                                 "--alpha", "0.5")
        assert code == 0
        assert payload["argmax_i"] == 2
        assert [r["i"] for r in payload["rows"]] == [1, 2]

    def test_single_row_csv(self, capsys):
        code, out = run_cli(capsys, "scan", "--n", "6", "--d", "2", "--alpha", "0",
                            "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "i,rho,is_argmax"
        assert len(lines) == 2
        assert lines[1].startswith("1,") and lines[1].endswith(",true")

    def test_two_rows(self, capsys):
        code, payload = run_json(capsys, "scan", "--n", "11", "--d", "5",
                                 "--alpha", "0.6")
        assert code == 0
        assert len(payload["rows"]) == 2
        assert sum(r["is_argmax"] for r in payload["rows"]) == 1


class TestVerifyCommand:
    def test_small_grid_passes(self, capsys):
        code, payload = run_json(capsys, "verify", "--max-n", "5")
        assert code == 0
        assert payload["summary"]["ok"] is True
        assert payload["summary"]["checks_failed"] == 0
        assert payload["failures"] == []

    def test_impossible_tolerance_exits_one(self, capsys):
        code, payload = run_json(capsys, "verify", "--max-n", "4", "--tol", "1e-300")
        assert code == 1
        assert payload["summary"]["ok"] is False
        assert payload["failures"]

    def test_csv_summary(self, capsys):
        code, out = run_cli(capsys, "verify", "--max-n", "4", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "instances,checks_run,checks_passed,checks_failed,worst_deviation,ok"
        assert lines[1].endswith(",true")

    def test_custom_alphas(self, capsys):
        code, payload = run_json(capsys, "verify", "--max-n", "5", "--alphas", "0.6")
        assert code == 0
        assert payload["input"]["alphas"] == [0.6]


class TestBatchCommand:
    def test_mixed_jobs(self, capsys, tmp_path):
        jobs = [
            {"command": "spectrum", "n": 11, "d": 5, "i": 2, "alpha": 0.6},
            {"command": "scan", "n": 6, "d": 2, "alpha": 0},
            {"command": "spectrum", "n": 2, "d": 5, "i": 1, "alpha": 0.5},
        ]
        source = tmp_path / "jobs.json"
        source.write_text(json.dumps(jobs))
        code, out = run_cli(capsys, "batch", str(source))
        assert code == 2  # first failing job's code
        lines = [json.loads(line) for line in out.splitlines()]
        assert [line["job_id"] for line in lines] == [0, 1, 2]
        assert [line["status"] for line in lines] == ["ok", "ok", "error"]
        assert lines[0]["result"]["closed_form"] == {"value": 3.8, "multiplicity": 5}
        assert lines[2]["result"] is None and lines[2]["exit_code"] == 2

    def test_rejects_per_job_output_settings(self, capsys, tmp_path):
        source = tmp_path / "jobs.json"
        source.write_text(json.dumps([
            {"command": "spectrum", "n": 4, "d": 2, "i": 1, "alpha": 0, "format": "csv"},
        ]))
        code, out = run_cli(capsys, "batch", str(source))
        assert code == 2
        line = json.loads(out)
        assert "format" in line["error"]

    def test_output_file(self, capsys, tmp_path):
        source = tmp_path / "jobs.json"
        source.write_text(json.dumps([{"command": "scan", "n": 6, "d": 2, "alpha": 0}]))
        target = tmp_path / "results.ndjson"
        code, out = run_cli(capsys, "batch", str(source), "--output", str(target))
        assert code == 0 and out == ""
        line = json.loads(target.read_text())
        assert line["status"] == "ok" and line["result"]["argmax_i"] == 1

    def test_rejects_non_array_input(self, capsys, tmp_path):
        source = tmp_path / "jobs.json"
        source.write_text(json.dumps({"command": "scan"}))
        assert run_cli(capsys, "batch", str(source))[0] == 2

    def test_rejects_invalid_json(self, capsys, tmp_path):
        source = tmp_path / "jobs.json"
        source.write_text("not json")
        assert run_cli(capsys, "batch", str(source))[0] == 2

    def test_verify_failure_propagates(self, capsys, tmp_path):
        source = tmp_path / "jobs.json"
        source.write_text(json.dumps([
            {"command": "verify", "max_n": 4, "tol": 1e-300},
        ]))
        code, out = run_cli(capsys, "batch", str(source))
        assert code == 1
        line = json.loads(out)
        assert line["exit_code"] == 1
        assert line["result"]["summary"]["ok"] is False


class TestEnvironmentOverride:
    def test_invalid_tolerance_rejected(self, capsys, monkeypatch):
        monkeypatch.setenv("ALPHA_BUG_SOLVE_TOL", "not-a-number")
        assert run_cli(capsys, *GOLDEN_ARGS)[0] == 2

    def test_loose_tolerance_still_accurate(self, capsys, monkeypatch):
        monkeypatch.setenv("ALPHA_BUG_SOLVE_TOL", "1e-6")
        code, payload = run_json(capsys, *GOLDEN_ARGS)
        assert code == 0
        assert payload["rho"] == pytest.approx(6.9144, abs=1e-3)

    def test_solver_failure_maps_to_exit_three(self, capsys, monkeypatch):
        from alphabug import ConvergenceError
        import alphabug.cli as cli_module

        def explode(*args, **kwargs):
            raise ConvergenceError("synthetic stall")

        monkeypatch.setattr(cli_module, "jacobi_eigenvalues", explode)
        code, _ = run_cli(capsys, "spectrum", "--n", "9", "--d", "3", "--i", "1",
                          "--alpha", "0.4", "--method", "dense")
        assert code == 3


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert main(["polish"]) == 2

    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "alphabug", *GOLDEN_ARGS],
        capture_output=True, text=True, check=False,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["closed_form"]["multiplicity"] == 5
