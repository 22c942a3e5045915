import json

import numpy as np
import pytest

from cycletest.errors import InputError, ParameterError, ParseError
from cycletest.experiment import (SimulationConfig, default_workers, diagnose,
                                  generate, resolve_weights, run_dataset,
                                  run_null_calibration, run_size_power)
from cycletest.inference import t_statistic
from cycletest.models import ModelParams, SeedSpec, weights_linear


def small_cfg(**overrides):
    base = dict(n=40, weights="linear", rate_grid=((0.9, 0.3),),
                r_grid=(0.3,), reps=5, alpha=0.05, master_seed=7, workers=1)
    base.update(overrides)
    return SimulationConfig(**base)


class TestSimulationConfig:
    def test_validate_rejects_bad_reps(self):
        with pytest.raises(InputError):
            small_cfg(reps=0).validate()

    def test_validate_rejects_bad_alpha(self):
        with pytest.raises(InputError):
            small_cfg(alpha=1.5).validate()

    def test_validate_rejects_invalid_probability_before_sampling(self):
        # a/n * max WiWj > 1 must fail at validation time
        with pytest.raises(ParameterError):
            small_cfg(rate_grid=((1.2, 0.1),)).validate()

    def test_validate_rejects_a_below_b(self):
        with pytest.raises(ParameterError):
            small_cfg(rate_grid=((0.1, 0.4),)).validate()

    def test_dict_round_trip(self):
        cfg = small_cfg()
        again = SimulationConfig.from_dict(cfg.to_dict())
        assert again.to_dict() == cfg.to_dict()

    def test_missing_field(self):
        with pytest.raises(InputError, match="missing field"):
            SimulationConfig.from_dict({"n": 10})

    def test_from_json_file(self, tmp_path):
        p = tmp_path / "cfg.json"
        p.write_text(json.dumps(small_cfg().to_dict()))
        cfg = SimulationConfig.from_json_file(p)
        assert cfg.n == 40
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        with pytest.raises(InputError):
            SimulationConfig.from_json_file(bad)

    def test_cells_order_is_rate_major(self):
        cfg = small_cfg(rate_grid=((0.5, 0.1), (0.3, 0.1)), r_grid=(0.1, 0.2))
        assert cfg.cells() == [(0.5, 0.1, 0.1), (0.5, 0.1, 0.2),
                               (0.3, 0.1, 0.1), (0.3, 0.1, 0.2)]


class TestResolveWeights:
    def test_linear(self):
        assert resolve_weights("linear", 5).values.tolist() == [0.2, 0.4, 0.6, 0.8, 1.0]

    def test_constant(self):
        assert resolve_weights("constant:2.5", 3).values.tolist() == [2.5] * 3
        assert resolve_weights("constant", 3).values.tolist() == [1.0] * 3

    def test_file(self, tmp_path):
        p = tmp_path / "w.txt"
        p.write_text("1\n2\n3\n")
        assert resolve_weights(str(p), 3).values.tolist() == [1.0, 2.0, 3.0]
        with pytest.raises(InputError):
            resolve_weights(str(p), 4)

    def test_unknown(self):
        with pytest.raises(InputError):
            resolve_weights("quadratic", 5)


class TestRunSizePower:
    def test_single_rep_bit_identical(self):
        cfg = small_cfg(reps=1)
        a = run_size_power(cfg).to_json()
        b = run_size_power(cfg).to_json()
        assert a == b

    def test_worker_count_invariance(self):
        cfg1 = small_cfg(n=50, reps=6, workers=1)
        cfg2 = small_cfg(n=50, reps=6, workers=3)
        assert run_size_power(cfg1).to_json() == run_size_power(cfg2).to_json()

    def test_row_shape_and_log(self):
        cfg = small_cfg(reps=4, rate_grid=((0.9, 0.3), (0.3, 0.3)))
        table = run_size_power(cfg)
        assert len(table.rows) == 2
        for row in table.rows:
            assert len(row.t_values) == 4
            assert row.reps == 4
            assert row.degenerate + sum(t is not None for t in row.t_values) == 4

    def test_aggregates_recomputable_from_log(self):
        from cycletest.inference import normal_upper_quantile
        cfg = small_cfg(reps=8)
        row = run_size_power(cfg).rows[0]
        z = normal_upper_quantile(cfg.alpha / 2)
        finite = [t for t in row.t_values if t is not None]
        assert row.rejections == sum(1 for t in finite if abs(t) > z)
        if finite:
            assert row.rejection_fraction == pytest.approx(
                row.rejections / len(finite))
            assert row.t_mean == pytest.approx(float(np.mean(finite)))

    def test_degenerate_reps_counted_and_excluded(self):
        # n=12 at tiny rates: most samples have no triangles
        cfg = small_cfg(n=12, rate_grid=((0.08, 0.08),), reps=30)
        row = run_size_power(cfg).rows[0]
        assert row.degenerate > 0
        finite = [t for t in row.t_values if t is not None]
        if finite:
            assert row.rejection_fraction == row.rejections / len(finite)
        else:
            assert row.rejection_fraction is None

    def test_csv_and_text(self):
        table = run_size_power(small_cfg(reps=3))
        csv = table.to_csv()
        assert csv.splitlines()[0].startswith("a_over_n,b_over_n,r,")
        assert len(csv.splitlines()) == 2
        assert "a/n" in table.to_text()

    def test_row_lookup(self):
        table = run_size_power(small_cfg(reps=2))
        assert table.row(0.9, 0.3, 0.3).reps == 2
        with pytest.raises(KeyError):
            table.row(0.1, 0.1, 0.1)


class TestRunNullCalibration:
    def test_requires_a_equals_b(self):
        with pytest.raises(InputError):
            run_null_calibration(small_cfg(rate_grid=((0.5, 0.3),)))

    def test_requires_single_pair(self):
        with pytest.raises(InputError):
            run_null_calibration(
                small_cfg(rate_grid=((0.3, 0.3), (0.4, 0.4))))

    def test_report_fields_and_determinism(self):
        cfg = small_cfg(n=60, rate_grid=((0.4, 0.4),), reps=25)
        rep1 = run_null_calibration(cfg)
        rep2 = run_null_calibration(cfg)
        assert rep1.to_json() == rep2.to_json()
        assert rep1.reps == 25
        assert 0 <= rep1.ks_distance <= 1
        assert 0 <= rep1.rejection_rate <= 1
        assert len(rep1.t_values) == 25

    def test_worker_invariance(self):
        cfg1 = small_cfg(n=60, rate_grid=((0.4, 0.4),), reps=12, workers=1)
        cfg2 = small_cfg(n=60, rate_grid=((0.4, 0.4),), reps=12, workers=2)
        assert run_null_calibration(cfg1).to_json() == run_null_calibration(cfg2).to_json()

    def test_seed_sensitivity(self):
        cfg1 = small_cfg(n=60, rate_grid=((0.4, 0.4),), reps=20, master_seed=1)
        cfg2 = small_cfg(n=60, rate_grid=((0.4, 0.4),), reps=20, master_seed=2)
        assert (run_null_calibration(cfg1).t_values
                != run_null_calibration(cfg2).t_values)

    def test_degenerates_counted_not_crashed(self):
        # around one expected triangle per sample: a mix of degenerate
        # and usable replications
        cfg = small_cfg(n=12, weights="constant:1", rate_grid=((0.18, 0.18),),
                        reps=60)
        rep = run_null_calibration(cfg)
        assert rep.degenerate > 0
        finite = [t for t in rep.t_values if t is not None]
        assert len(finite) >= 3
        assert rep.mean == pytest.approx(float(np.mean(finite)))


class TestRunDataset:
    def test_triangle_file(self, tmp_path):
        p = tmp_path / "g.edges"
        # K6 plus a pendant: plenty of cycles
        edges = [(i, j) for i in range(6) for j in range(i + 1, 6)] + [(0, 6)]
        p.write_text("".join(f"{u} {v}\n" for u, v in edges))
        report, parse = run_dataset(p)
        assert parse.n == 7
        assert not report.degenerate
        assert report.t_n is not None

    def test_degenerate_dataset(self, tmp_path, c6):
        p = tmp_path / "c6.edges"
        c6.write_edge_list(p)
        report, _ = run_dataset(p)
        assert report.degenerate

    def test_mtx_dataset(self, tmp_path):
        p = tmp_path / "g.mtx"
        p.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n"
                     "6 6 15\n" +
                     "".join(f"{i+1} {j+1}\n" for i in range(6)
                             for j in range(i + 1, 6)))
        report, parse = run_dataset(p)
        assert (parse.n, parse.m) == (6, 15)
        assert report.t_n == 0.0  # complete graph

    def test_parse_error_propagates(self, tmp_path):
        p = tmp_path / "bad.edges"
        p.write_text("0 1\noops\n")
        with pytest.raises(ParseError, match="line 2"):
            run_dataset(p)


class TestGenerate:
    def test_round_trip_matches_in_memory(self, tmp_path):
        params = ModelParams.from_rates(60, 0.9, 0.3, 0.3)
        w = weights_linear(60)
        seed = SeedSpec(11, 0)
        out = tmp_path / "sample.edges"
        edge_path, sidecar = generate(params, w, seed, out)
        report, _ = run_dataset(edge_path, n=60)
        from cycletest.models import sample_planted
        g, _z = sample_planted(params, w, seed)
        direct = t_statistic(g)
        assert report.t_n == direct.t_n

    def test_identical_bytes_across_runs(self, tmp_path):
        params = ModelParams.from_rates(30, 0.8, 0.2, 0.4)
        w = weights_linear(30)
        a = tmp_path / "a.edges"
        b = tmp_path / "b.edges"
        generate(params, w, SeedSpec(3, 1), a)
        generate(params, w, SeedSpec(3, 1), b)
        assert a.read_bytes() == b.read_bytes()
        assert ((tmp_path / "a.edges.json").read_text()
                == (tmp_path / "b.edges.json").read_text())

    def test_sidecar_contents(self, tmp_path):
        params = ModelParams.from_rates(20, 0.5, 0.5, 0.5)
        w = weights_linear(20)
        _, sidecar = generate(params, w, SeedSpec(9, 2), tmp_path / "g.edges")
        meta = json.loads(sidecar.read_text())
        assert meta["n"] == 20
        assert meta["z_inert"] is True  # a == b
        assert len(meta["z"]) == 20
        assert meta["replication_index"] == 2


class TestDiagnose:
    def test_table_setting(self):
        params = ModelParams.from_rates(400, 0.56, 0.08, 0.3)
        info = diagnose(params, weights_linear(400))
        assert info["community"]["power_index"] == pytest.approx(5.7816, abs=1e-3)
        assert info["community"]["power_index_large"]
        assert any("np0 << sqrt(n)" in f for f in info["regularity"]["flags"])
        assert info["community"]["expected_size"] == pytest.approx(120.0)

    def test_null_setting_zeroes(self):
        params = ModelParams.from_rates(100, 0.2, 0.2, 0.5)
        info = diagnose(params, weights_linear(100))
        assert info["theory"]["lambda_sq"] == 0.0
        assert info["theory"]["lambda1_leading"] == 0.0
        assert info["community"]["power_index"] == 0.0
        assert not info["community"]["power_index_large"]

    def test_homogeneous_flagged(self):
        from cycletest.models import weights_constant
        params = ModelParams.from_rates(50, 0.5, 0.2, 0.3)
        info = diagnose(params, weights_constant(50, 1.0))
        assert info["homogeneous_weights"] is True


class TestWorkersEnv:
    def test_default_workers_env(self, monkeypatch):
        monkeypatch.delenv("CYCLETEST_WORKERS", raising=False)
        assert default_workers() == 1
        monkeypatch.setenv("CYCLETEST_WORKERS", "4")
        assert default_workers() == 4
        monkeypatch.setenv("CYCLETEST_WORKERS", "junk")
        assert default_workers() == 1
