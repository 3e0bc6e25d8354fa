"""Config parsing, error naming, and the run_simulation pipeline contract."""

import json

import pytest

from tbsim import ConfigurationError, load_config, parse_config, run_simulation
from tbsim.validate import example_config


def test_parse_roundtrip_and_hash_stability():
    raw = example_config()
    a, b = parse_config(raw), parse_config(json.loads(json.dumps(raw)))
    assert a.sha256 == b.sha256
    assert len(a.sha256) == 64


def test_missing_field_is_named():
    raw = example_config()
    del raw["pump"]["sigma"]
    with pytest.raises(ConfigurationError, match="pump.sigma"):
        parse_config(raw)


def test_wrong_type_is_named():
    raw = example_config()
    raw["waveguide"]["v_s"] = "fast"
    with pytest.raises(ConfigurationError, match="waveguide.v_s"):
        parse_config(raw)


def test_unknown_version_rejected():
    raw = example_config()
    raw["version"] = 99
    with pytest.raises(ConfigurationError, match="version"):
        parse_config(raw)


def test_unknown_artifact_rejected():
    raw = example_config()
    raw["outputs"] = {"artifacts": ["report", "hologram"]}
    with pytest.raises(ConfigurationError, match="hologram"):
        parse_config(raw)


def test_uniform_solver_rejects_spm():
    raw = example_config(spm=0.1)
    raw["solver"]["kind"] = "uniform"
    with pytest.raises(ConfigurationError, match="SPM"):
        parse_config(raw)


def test_uniform_solver_rejects_structured_poling():
    raw = example_config()
    raw["waveguide"]["g_profile"] = [[-5.0, 0.0, 1.0], [0.0, 5.0, -1.0]]
    with pytest.raises(ConfigurationError, match="uniform"):
        parse_config(raw)


def test_default_span_is_four_pump_bandwidths():
    raw = example_config()
    del raw["grid"]["span"]
    cfg = parse_config(raw)
    assert cfg.grid.span == pytest.approx(4.0 * cfg.pump.sigma)


def test_malformed_json_names_location(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"pump": [,]}')
    with pytest.raises(ConfigurationError, match="line 1"):
        load_config(path)


def test_with_n_photons_rescales_only_the_pump():
    base = parse_config(example_config(n_photons=1.0))
    bumped = base.with_n_photons(9.0)
    assert bumped.pump.n_photons == 9.0
    assert bumped.waveguide == base.waveguide
    assert bumped.sha256 != base.sha256


def test_report_contents(moderate_gain_result):
    rep = moderate_gain_result.report
    assert rep["tool"] == "tbsim"
    assert rep["su11"]["passed"]
    assert rep["squeezing_parameters"][0] > 0
    assert rep["mean_n_signal"] == pytest.approx(rep["mean_n_idler"])
    assert rep["config_sha256"] == moderate_gain_result.config.sha256
    assert rep["units"]["v_p"] == 1.0
    assert rep["timing_seconds"] > 0
    json.dumps(rep)  # must be serializable as-is


def test_trotter_solver_matches_uniform_on_constant_generator():
    import numpy as np

    raw_u = example_config(n_points=30, n_photons=2.0)
    raw_t = example_config(n_points=30, n_photons=2.0, solver="trotter", n_steps=16)
    res_u = run_simulation(parse_config(raw_u))
    res_t = run_simulation(parse_config(raw_t))
    np.testing.assert_allclose(res_t.dressed.matrix, res_u.dressed.matrix, atol=1e-12)


def test_vacuum_run():
    res = run_simulation(parse_config(example_config(n_points=20, n_photons=0.0)))
    assert res.report["is_vacuum"]
    assert res.report["schmidt_number"] == 1.0
