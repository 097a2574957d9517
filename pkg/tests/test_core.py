import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylinder_landau.core import (
    CylinderConfig,
    PhysicalInput,
    config_from_mapping,
    load_config,
    new_config,
    physical_step_size,
    translation_step,
)
from cylinder_landau.errors import ConfigError, NonPositiveParameter

positive = st.floats(0.05, 20.0)


def test_defaults():
    cfg = new_config()
    assert cfg.mu == 1.0
    assert cfg.q == 0.0 and cfg.rho == 0.0
    assert cfg.magnetic_length == 1.0
    assert translation_step(cfg) == 1.0


def test_mu_from_field_and_radius():
    cfg = new_config(B=2.0, R=3.0, q=0.25)
    assert cfg.mu == pytest.approx(6.0)
    assert translation_step(cfg) == pytest.approx(1 / 6)
    # rho defaults to q/mu so the n = 0 centre sits at y = 0
    assert cfg.rho == pytest.approx(0.25 / 6)


@pytest.mark.parametrize("field", ["B", "R", "hbar", "e", "m"])
@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_nonpositive_rejected(field, bad):
    with pytest.raises(NonPositiveParameter):
        new_config(**{field: bad})


def test_nonfinite_q_rejected():
    with pytest.raises(ConfigError):
        CylinderConfig(q=math.nan)


@given(st.floats(-50, 50))
def test_q_reduced_into_unit_interval(q):
    cfg = new_config(q=q, rho=0.0)
    assert 0.0 <= cfg.q < 1.0
    assert math.isclose(math.cos(2 * math.pi * cfg.q), math.cos(2 * math.pi * q), abs_tol=1e-9)


@given(positive, positive, positive, positive)
def test_mu_is_derived(B, R, hbar, e):
    cfg = new_config(B=B, R=R, hbar=hbar, e=e)
    assert cfg.mu == pytest.approx(e * B * R / hbar)
    assert cfg.magnetic_length == pytest.approx(math.sqrt(R / cfg.mu))


def test_replace_recomputes_mu():
    cfg = new_config(B=2.0).replace(R=4.0)
    assert cfg.mu == pytest.approx(8.0)


def test_step_size_one_gauss_one_cm():
    assert physical_step_size(PhysicalInput(1.0, 1.0)) == pytest.approx(6.58e-8, rel=1e-3)


@given(positive, positive)
def test_step_size_scales_inversely(B, R):
    base = physical_step_size(PhysicalInput(1.0, 1.0))
    assert physical_step_size(PhysicalInput(B, R)) == pytest.approx(base / (B * R))


def test_physical_input_validation():
    with pytest.raises(NonPositiveParameter):
        PhysicalInput(0.0, 1.0)


def test_mapping_round_trip():
    cfg = new_config(B=1.5, R=2.0, q=0.3, rho=0.7)
    assert config_from_mapping(cfg.to_dict()) == cfg


@pytest.mark.parametrize("data", [{"B": 1, "colour": 2}, {"B": "strong"}, [1, 2]])
def test_mapping_errors(data):
    with pytest.raises(ConfigError):
        config_from_mapping(data)


def test_load_config(tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps({"B": 3.0, "q": 0.5}))
    cfg = load_config(p)
    assert cfg.mu == 3.0 and cfg.q == 0.5
    assert load_config(None) == new_config()


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(bad)
