import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cylinder_landau import spectral
from cylinder_landau.core import new_config
from cylinder_landau.errors import GridTooNarrow
from cylinder_landau.hilbert import WaveFunction, inner_product, make_grid, smooth_random_state


def test_mode_centres_spaced_by_step():
    cfg = new_config(B=2.0, q=0.3, rho=0.1)
    assert spectral.mode_center(cfg, 0) - spectral.mode_center(cfg, 1) == pytest.approx(1 / cfg.mu)
    assert spectral.mode_center(cfg, 0) == pytest.approx(0.1 - 0.3 / 2.0)


def test_grid_too_narrow():
    cfg = new_config()
    with pytest.raises(GridTooNarrow):
        spectral.mode_hamiltonian(cfg, 0, make_grid(0.0, 3.0, 301))
    with pytest.raises(GridTooNarrow):
        spectral.mode_hamiltonian(cfg, 20, spectral.default_grid(cfg, 0, 0, 501))


def test_hamiltonian_is_symmetric():
    cfg = new_config()
    H = spectral.mode_hamiltonian(cfg, 0, spectral.default_grid(cfg, 0, 0, 101))
    D = H.dense()
    assert np.allclose(D, D.T)
    f = np.random.default_rng(0).normal(size=101)
    assert np.allclose(H.apply(f), D @ f)


def test_spectrum_with_units(config):
    res = spectral.spectrum(config, (-2, 2), 3, n_points=1501)
    assert np.allclose(res.levels, res.exact_levels, rtol=2e-4)
    assert all(d == 5 for d in res.degeneracy.values())
    assert res.mode_spread < 1e-6


@settings(max_examples=8)
@given(st.floats(0.5, 4.0), st.floats(0.5, 2.0), st.floats(0.5, 2.0))
def test_levels_scale_with_cyclotron_energy(B, m, hbar):
    cfg = new_config(B=B, m=m, hbar=hbar)
    res = spectral.spectrum(cfg, (0, 1), 2, n_points=1201)
    assert np.allclose(res.levels, hbar * B / m * (np.arange(2) + 0.5), rtol=5e-4)


def test_spectrum_table_and_dict(unit_config):
    res = spectral.spectrum(unit_config, (0, 1), 2, n_points=401)
    rows = res.table_rows()
    assert len(rows) == 4 and rows[0][:2] == (0, 0)
    d = res.to_dict()
    assert d["degeneracy"] == {"0": 2, "1": 2}


def test_ground_state_is_normalized_and_annihilated(config):
    grid = spectral.default_grid(config, 1, 1)
    psi = spectral.analytic_ground_state(config, 1, grid)
    assert psi.norm() == pytest.approx(1.0, abs=1e-12)
    assert spectral.annihilation_residual(config, 1, psi) < 1e-3
    excited = spectral.numeric_eigenstate(config, 1, grid, level=1)
    assert spectral.annihilation_residual(config, 1, excited) == pytest.approx(math.sqrt(2), rel=1e-3)


def test_energy_expectation_of_ground_state(unit_config):
    grid = spectral.default_grid(unit_config, 0, 0)
    psi = spectral.analytic_ground_state(unit_config, 0, grid)
    assert spectral.energy_expectation(unit_config, psi) == pytest.approx(0.5, rel=1e-5)


def test_excited_states_orthogonal(unit_config):
    grid = spectral.default_grid(unit_config, 0, 0, 1001)
    states = [spectral.numeric_eigenstate(unit_config, 0, grid, level=k) for k in range(3)]
    for i in range(3):
        for j in range(3):
            assert abs(inner_product(states[i], states[j]) - (i == j)) < 1e-10


@pytest.fixture
def smooth_states(config):
    rng = np.random.default_rng(2)
    grid = spectral.default_grid(config, -2, 2, 1601)
    centers = {n: spectral.mode_center(config, n) for n in range(-2, 3)}
    return [smooth_random_state(config.q, grid, range(-2, 3), rng, centers) for _ in range(3)]


def test_kinetic_commutator(config, smooth_states):
    assert spectral.pi_commutator_check(config, smooth_states) < 1e-3


def test_velocity_relation(config, smooth_states):
    report = spectral.velocity_check(config, smooth_states)
    assert report.passed, report.to_dict()


def test_two_dimensional_action_reduces_per_mode(config, smooth_states):
    assert spectral.block_reduction_check(config, smooth_states[0]) < 1e-3


def test_hamiltonian_is_hermitian_on_states(config, smooth_states):
    a, b = smooth_states[:2]
    lhs = inner_product(a, spectral.apply_hamiltonian(config, b))
    rhs = inner_product(spectral.apply_hamiltonian(config, a), b)
    assert lhs == pytest.approx(rhs, rel=1e-9)
