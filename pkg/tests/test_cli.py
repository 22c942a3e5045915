import json
import subprocess
import sys

import pytest

from cycletest.cli import main


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out, err = capsys.readouterr() if capsys else ("", "")
    return code, out, err


@pytest.fixture
def k6_file(tmp_path):
    p = tmp_path / "k6.edges"
    p.write_text("".join(f"{i} {j}\n" for i in range(6) for j in range(i + 1, 6)))
    return p


@pytest.fixture
def c6_file(tmp_path, c6):
    p = tmp_path / "c6.edges"
    c6.write_edge_list(p)
    return p


class TestTestCommand:
    def test_json_output(self, k6_file, capsys):
        code, out, _ = run_cli("test", "--input", str(k6_file), "--json",
                               capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 6
        assert payload["m"] == 15
        assert payload["t_n"] == 0.0
        assert payload["reject"] is False

    def test_text_output(self, k6_file, capsys):
        code, out, _ = run_cli("test", "--input", str(k6_file), capsys=capsys)
        assert code == 0
        assert "T = 0.0000" in out
        assert "fail to reject" in out

    def test_degenerate_exit_code(self, c6_file, capsys):
        code, out, _ = run_cli("test", "--input", str(c6_file), capsys=capsys)
        assert code == 3
        assert "DEGENERATE" in out

    def test_missing_file_exit_code(self, capsys):
        code, _, err = run_cli("test", "--input", "/nonexistent/g.edges",
                               capsys=capsys)
        assert code == 2

    def test_parse_error_exit_code(self, tmp_path, capsys):
        p = tmp_path / "bad.edges"
        p.write_text("0 1\nbroken-line\n")
        code, _, err = run_cli("test", "--input", str(p), capsys=capsys)
        assert code == 2
        assert "line 2" in err

    def test_usage_error_exit_code(self, capsys):
        assert run_cli("test", capsys=capsys)[0] == 1  # --input missing
        assert run_cli("frobnicate", capsys=capsys)[0] == 1

    def test_explicit_n(self, tmp_path, capsys):
        p = tmp_path / "g.edges"
        p.write_text("".join(f"{i} {j}\n" for i in range(6) for j in range(i + 1, 6)))
        code, out, _ = run_cli("test", "--input", str(p), "--n", "9", "--json",
                               capsys=capsys)
        assert json.loads(out)["n"] == 9


class TestSimulateCommand:
    ARGS = ("simulate", "--n", "50", "--weights", "linear",
            "--a-over-n", "0.9", "--b-over-n", "0.3", "--r", "0.3",
            "--reps", "4", "--seed", "11")

    def test_json_deterministic_across_workers(self, capsys):
        code, out1, _ = run_cli(*self.ARGS, "--workers", "1", "--json",
                                capsys=capsys)
        assert code == 0
        code, out2, _ = run_cli(*self.ARGS, "--workers", "2", "--json",
                                capsys=capsys)
        assert code == 0
        assert out1 == out2

    def test_text_table(self, capsys):
        code, out, _ = run_cli(*self.ARGS, capsys=capsys)
        assert code == 0
        assert "a/n" in out

    def test_csv_out(self, tmp_path, capsys):
        dest = tmp_path / "table.csv"
        code, _, _ = run_cli(*self.ARGS, "--csv-out", str(dest), capsys=capsys)
        assert code == 0
        assert dest.read_text().startswith("a_over_n,")

    def test_config_file(self, tmp_path, capsys):
        cfg = {"n": 50, "weights": "linear", "rate_grid": [[0.9, 0.3]],
               "r_grid": [0.3], "reps": 4, "alpha": 0.05, "master_seed": 11}
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(cfg))
        code, out, _ = run_cli("simulate", "--config", str(p), "--json",
                               capsys=capsys)
        assert code == 0
        assert json.loads(out)["config"]["n"] == 50

    def test_mismatched_rate_lists(self, capsys):
        code, _, err = run_cli("simulate", "--n", "50", "--a-over-n", "0.9",
                               "--b-over-n", "0.3", "0.1", "--r", "0.3",
                               capsys=capsys)
        assert code == 2
        assert "pair up" in err

    def test_invalid_probability_rejected_before_sampling(self, capsys):
        code, _, err = run_cli("simulate", "--n", "50", "--a-over-n", "1.5",
                               "--b-over-n", "0.3", "--r", "0.3", capsys=capsys)
        assert code == 2


class TestCalibrateCommand:
    def test_basic(self, capsys):
        code, out, _ = run_cli("calibrate-null", "--n", "60", "--p0", "0.4",
                               "--reps", "15", "--seed", "3", "--json",
                               capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["n"] == 60
        assert payload["reps"] == 15

    def test_requires_p0(self, capsys):
        code, _, err = run_cli("calibrate-null", "--n", "60", capsys=capsys)
        assert code == 2
        assert "--p0" in err


class TestGenerateAndDiagnose:
    def test_generate_files(self, tmp_path, capsys):
        out_file = tmp_path / "g.edges"
        code, out, _ = run_cli("generate", "--n", "30", "--a-over-n", "0.8",
                               "--b-over-n", "0.2", "--r", "0.4",
                               "--seed", "5", "--out", str(out_file),
                               capsys=capsys)
        assert code == 0
        assert out_file.exists()
        meta = json.loads((tmp_path / "g.edges.json").read_text())
        assert meta["n"] == 30
        assert len(meta["z"]) == 30

    def test_generate_then_test_round_trip(self, tmp_path, capsys):
        out_file = tmp_path / "g.edges"
        run_cli("generate", "--n", "60", "--a-over-n", "0.9", "--b-over-n",
                "0.3", "--r", "0.3", "--seed", "11", "--out", str(out_file),
                capsys=capsys)
        code, out, _ = run_cli("test", "--input", str(out_file), "--n", "60",
                               "--json", capsys=capsys)
        assert code in (0, 3)
        payload = json.loads(out)
        assert payload["n"] == 60

    def test_diagnose_text(self, capsys):
        code, out, _ = run_cli("diagnose", "--n", "400", "--a-over-n", "0.56",
                               "--b-over-n", "0.08", "--r", "0.3", capsys=capsys)
        assert code == 0
        assert "power index 5.782" in out
        assert "np0 << sqrt(n) violated" in out

    def test_diagnose_json(self, capsys):
        code, out, _ = run_cli("diagnose", "--n", "100", "--a-over-n", "0.2",
                               "--b-over-n", "0.2", "--r", "0.5", "--json",
                               capsys=capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["theory"]["power_index"] == 0.0


class TestModuleEntryPoint:
    def test_python_dash_m(self, k6_file):
        proc = subprocess.run(
            [sys.executable, "-m", "cycletest", "test", "--input",
             str(k6_file), "--json"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["t_n"] == 0.0
