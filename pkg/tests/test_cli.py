import json
import subprocess
import sys

import pytest

from wfuse.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def parse_csv(text):
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


class TestCostCommand:
    def test_optimal_table(self, capsys):
        code, out = run_cli(capsys, "cost", "--strategy", "optimal", "--target", "6")
        assert code == 0
        rows = parse_csv(out)
        last = rows[-1]
        assert last["N"] == "6"
        assert (last["cost_exact_num"], last["cost_exact_den"]) == ("24", "1")

    def test_linear_table(self, capsys):
        code, out = run_cli(capsys, "cost", "--strategy", "linear", "--target", "5")
        assert code == 0
        rows = parse_csv(out)
        assert [r["N"] for r in rows] == ["3", "4", "5"]
        assert (rows[-1]["cost_exact_num"], rows[-1]["cost_exact_den"]) == ("66", "5")

    def test_exponential_stages(self, capsys):
        code, out = run_cli(
            capsys, "cost", "--strategy", "exponential", "--target", "4"
        )
        assert code == 0
        rows = parse_csv(out)
        assert [r["N"] for r in rows] == ["3", "4"]
        assert (rows[-1]["cost_exact_num"], rows[-1]["cost_exact_den"]) == ("9", "2")

    def test_exponential_rejects_non_stage_target(self, capsys):
        assert main(["cost", "--strategy", "exponential", "--target", "5"]) == 2

    def test_rejects_tiny_target(self, capsys):
        assert main(["cost", "--strategy", "optimal", "--target", "2"]) == 2

    def test_json_mirrors_csv_fields(self, capsys):
        code, csv_out = run_cli(capsys, "cost", "--strategy", "optimal", "--target", "4")
        code, json_out = run_cli(
            capsys, "cost", "--strategy", "optimal", "--target", "4",
            "--format", "json",
        )
        csv_rows = parse_csv(csv_out)
        json_rows = json.loads(json_out)
        assert [list(r.keys()) for r in json_rows] == [
            list(r.keys()) for r in csv_rows
        ]
        assert json_rows[-1]["cost_exact_num"] == "9"
        assert json_rows[-1]["cost_float"] == 4.5

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "table.csv"
        code, out = run_cli(
            capsys, "cost", "--strategy", "optimal", "--target", "4", "--out", str(path)
        )
        assert code == 0 and out == ""
        assert path.read_text().startswith("N,strategy,")


class TestSimulateCommand:
    def test_stats_row(self, capsys):
        code, out = run_cli(
            capsys, "simulate", "--k", "0", "--runs", "400", "--seed", "7"
        )
        assert code == 0
        (row,) = parse_csv(out)
        assert row["k"] == "0" and row["nominal_N"] == "4"
        assert row["runs"] == "400" and row["seed"] == "7"
        assert 4.0 < float(row["mean"]) < 5.0

    def test_missing_seed_is_usage_error(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["simulate", "--k", "0", "--runs", "10"])
        assert excinfo.value.code == 2

    def test_rejects_bad_runs(self, capsys):
        assert main(["simulate", "--k", "0", "--runs", "0", "--seed", "1"]) == 2

    def test_dump_runs(self, capsys, tmp_path):
        path = tmp_path / "runs.csv"
        code, _ = run_cli(
            capsys,
            "simulate", "--k", "0", "--runs", "25", "--seed", "3",
            "--dump-runs", str(path),
        )
        assert code == 0
        dumped = parse_csv(path.read_text())
        assert len(dumped) == 25
        assert [r["run"] for r in dumped] == [str(i) for i in range(25)]
        assert all(int(r["final_N"]) >= 4 for r in dumped)  # 2^0 + 3

    def test_repeat_is_byte_identical(self, capsys):
        _, first = run_cli(capsys, "simulate", "--k", "1", "--runs", "200", "--seed", "9")
        _, second = run_cli(capsys, "simulate", "--k", "1", "--runs", "200", "--seed", "9")
        assert first == second

    def test_workers_flag_does_not_change_output(self, capsys):
        _, one = run_cli(
            capsys, "simulate", "--k", "1", "--runs", "120", "--seed", "5",
            "--workers", "1",
        )
        _, three = run_cli(
            capsys, "simulate", "--k", "1", "--runs", "120", "--seed", "5",
            "--workers", "3",
        )
        assert one == three


class TestVerifyGateCommand:
    def test_passes_for_small_states(self, capsys):
        code, out = run_cli(capsys, "verify-gate", "--n", "3", "--m", "3")
        assert code == 0
        rows = parse_csv(out)
        assert [r["branch"] for r in rows] == ["success", "recycle", "failure"]
        success = rows[0]
        assert float(success["analytic"]) == pytest.approx(4 / 9)
        assert float(success["abs_error"]) < 1e-12
        assert float(success["fidelity"]) == pytest.approx(1)

    def test_bell_pair_column(self, capsys):
        code, out = run_cli(capsys, "verify-gate", "--n", "2", "--m", "5")
        assert code == 0
        rows = parse_csv(out)
        assert float(rows[0]["analytic"]) == 0.5

    def test_w5_fidelity_column(self, capsys):
        code, out = run_cli(capsys, "verify-gate", "--n", "3", "--m", "4")
        assert code == 0
        rows = parse_csv(out)
        assert float(rows[0]["fidelity"]) == pytest.approx(1, abs=1e-12)

    def test_out_of_range_sizes(self, capsys):
        assert main(["verify-gate", "--n", "13", "--m", "3"]) == 2
        assert main(["verify-gate", "--n", "3", "--m", "1"]) == 2


class TestFigure4Command:
    def test_schema_and_known_row(self, capsys):
        code, out = run_cli(
            capsys, "figure4", "--max-k", "2", "--runs", "30", "--seed", "11"
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[0]["N"] == "3"
        assert rows[-1]["N"] == "7"
        by_size = {r["N"]: r for r in rows}
        row6 = by_size["6"]
        assert (row6["optimal_num"], row6["optimal_den"]) == ("24", "1")
        assert (row6["linear_num"], row6["linear_den"]) == ("71", "2")
        assert row6["exponential_num"] == "24"
        assert row6["mc_mean"] == ""  # MC points sit at nominal sizes 2^k + 3
        assert by_size["4"]["mc_k"] == "0"
        assert by_size["5"]["mc_k"] == "1"
        assert by_size["7"]["mc_k"] == "2"

    def test_rejects_large_k(self, capsys):
        assert main(["figure4", "--max-k", "9", "--runs", "5", "--seed", "1"]) == 2

    def test_json_blanks_are_null(self, capsys):
        code, out = run_cli(
            capsys,
            "figure4", "--max-k", "0", "--runs", "10", "--seed", "2",
            "--format", "json",
        )
        rows = json.loads(out)
        assert rows[0]["N"] == 3
        assert rows[0]["mc_mean"] is None
        assert rows[1]["mc_k"] == 0


class TestSubprocessDeterminism:
    def test_module_invocation_reproduces_bytes(self):
        cmd = [
            sys.executable, "-m", "wfuse",
            "simulate", "--k", "2", "--runs", "150", "--seed", "77",
        ]
        first = subprocess.run(cmd, capture_output=True, check=True)
        second = subprocess.run(cmd, capture_output=True, check=True)
        assert first.stdout == second.stdout
        assert first.stdout.endswith(b"\n")
