import dataclasses
import json

import numpy as np
import pytest

from rkfield.experiments import (
    ConfigError,
    ExperimentConfig,
    run_reconstruction_experiment,
    run_selftest,
    run_spectrum_experiment,
    simulate,
)


def test_defaults_match_table2_conditions():
    cfg = ExperimentConfig()
    assert (cfg.frequency, cfg.direction_deg, cfg.side, cfg.n_samples) == (2000.0, 45.0, 0.4, 21)
    assert (cfg.snr_db, cfg.lam, cfg.baseline_order) == (30.0, 0.01, 10)


def test_json_round_trip_is_idempotent(tmp_path):
    cfg = ExperimentConfig(frequency=1500.0, snr_db=None, seeds=3)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    back = ExperimentConfig.load(path)
    assert back == cfg
    assert back.to_dict() == cfg.to_dict()


def test_partial_config_and_inf_snr():
    cfg = ExperimentConfig.from_dict({"lambda": 0.5, "snr_db": "inf"})
    assert cfg.lam == 0.5 and cfg.snr_db is None and cfg.n_samples == 21


@pytest.mark.parametrize(
    "bad",
    [{"frequencyy": 1.0}, {"frequency": -1.0}, {"lambda": -0.1}, {"n_samples": 0},
     {"snr_db": "loud"}, {"layout": "grid", "n_samples": 21}],
)
def test_invalid_configs(bad):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict(bad)


def test_unreadable_config(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.load(tmp_path / "missing.json")
    p = tmp_path / "list.json"
    p.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        ExperimentConfig.load(p)


def test_simulate_is_deterministic():
    cfg = ExperimentConfig()
    _, a_clean, a_noisy = simulate(cfg, 7)
    _, b_clean, b_noisy = simulate(cfg, 7)
    np.testing.assert_array_equal(a_noisy.pressures, b_noisy.pressures)
    np.testing.assert_array_equal(a_clean.positions, b_clean.positions)
    _, c_clean, _ = simulate(cfg, 8)
    assert not np.array_equal(a_clean.positions, c_clean.positions)


def test_identical_configs_give_identical_files(tmp_path):
    cfg = ExperimentConfig(grid=21)
    run_reconstruction_experiment(cfg, tmp_path / "a")
    run_reconstruction_experiment(cfg, tmp_path / "b")
    for name in ("field_ref.csv", "field_rk.csv", "field_harmonic.csv", "ne_rk.csv",
                 "ne_harmonic.csv", "summary.json", "model.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_csv_round_trips_doubles(tmp_path):
    cfg = ExperimentConfig(grid=11)
    run_reconstruction_experiment(cfg, tmp_path)
    data = np.loadtxt(tmp_path / "field_ref.csv", delimiter=",", skiprows=1)
    from rkfield.metrics import square_grid
    from rkfield.scenario import plane_wave_pressure
    scn, _, _ = simulate(cfg, cfg.seed)
    ref = plane_wave_pressure(scn, square_grid(cfg.side, cfg.grid))
    np.testing.assert_array_equal(data[:, 2], ref.real)
    np.testing.assert_array_equal(data[:, 3], ref.imag)


def test_single_sample_flags_undersampling():
    with pytest.warns(UserWarning, match="underdetermined"):
        report = run_reconstruction_experiment(ExperimentConfig(n_samples=1, grid=11))
    assert "severe_undersampling" in report["flags"]
    assert "baseline_underdetermined" in report["flags"]
    assert np.isfinite(report["rk"]["mean"])


def test_table2_defaults_not_flagged():
    report = run_reconstruction_experiment(ExperimentConfig(grid=21))
    assert "severe_undersampling" not in report["flags"]


def test_peak_follows_direction():
    report = run_spectrum_experiment(ExperimentConfig(direction_deg=0.0))
    assert min(report["peak_angle_deg"], 360 - report["peak_angle_deg"]) <= 1.0


def test_dense_grid_off_peak_is_small():
    cfg = ExperimentConfig(n_samples=81, layout="grid", snr_db=None, lam=0.01)
    report = run_spectrum_experiment(cfg)
    assert abs(report["peak_angle_deg"] - 45.0) <= 1.0
    assert report["off_peak_rms"] <= 0.1 * report["peak_value"][0]


def test_spectrum_csv(tmp_path):
    run_spectrum_experiment(ExperimentConfig(), n_directions=36, out_dir=tmp_path)
    data = np.loadtxt(tmp_path / "spectrum.csv", delimiter=",", skiprows=1)
    assert data.shape == (36, 3)
    np.testing.assert_allclose(data[:, 0], np.arange(0, 360, 10), atol=1e-9)
    assert json.loads((tmp_path / "summary.json").read_text())["n_directions"] == 36


def test_multi_seed_statistics():
    report = run_reconstruction_experiment(dataclasses.replace(ExperimentConfig(grid=21), seeds=3))
    assert [r["seed"] for r in report["runs"]] == [0, 1, 2]
    assert report["rk"]["std"] > 0


def test_selftest_passes():
    report = run_selftest()
    assert report["passed"], [c for c in report["checks"] if not c["passed"]]


def test_selftest_detects_perturbation():
    report = run_selftest(_perturb=1.001)
    assert not report["passed"]
