import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cylinder_landau import grouprep as gr
from cylinder_landau.core import new_config
from cylinder_landau.errors import KindMismatch, WindowOverflow
from cylinder_landau.hilbert import make_grid, smooth_random_state

angles = st.floats(-20, 20)
reals = st.floats(-5, 5)
ints = st.integers(-6, 6)


def test_element_wrapping():
    assert gr.PerCylElem(2 * math.pi + 0.5, 3).phi == pytest.approx(0.5)
    assert gr.CylElem(-0.5, 1.0).theta == pytest.approx(2 * math.pi - 0.5)
    with pytest.raises(Exception):
        gr.PerCylElem(0.0, 0.5)


def test_kind_mismatch():
    with pytest.raises(KindMismatch):
        gr.eval_commutator(gr.PlaneLambda(1.0), gr.PerCylElem(0.0, 1), gr.PerCylElem(0.0, 1))


@pytest.mark.parametrize(
    "cf",
    [gr.PlaneLambda(0.7), gr.PeriodicCylinderNu(2), gr.PeriodicCylinderNu(-3)],
    ids=["plane", "nu=2", "nu=-3"],
)
def test_cocycle_laws_hold(cf):
    rng = np.random.default_rng(0)
    report = gr.check_cocycle_laws(cf, gr.random_triples(cf, 200, rng))
    assert report.passed, report.to_dict()


def test_cocycle_laws_need_samples():
    cf = gr.PlaneLambda(1.0)
    with pytest.raises(ValueError):
        gr.check_cocycle_laws(cf, gr.random_triples(cf, 10, np.random.default_rng(0)))


def test_fractional_nu_breaks_periodicity():
    cf = gr.PeriodicCylinderNu(0.5)
    report = gr.check_cocycle_laws(cf, gr.random_triples(cf, 200, np.random.default_rng(1)))
    assert not report.passed


@given(angles, reals, angles, reals)
def test_plane_commutator_antisymmetric(a, b, c, d):
    cf = gr.PlaneLambda(1.3)
    g, h = gr.PlaneVec(a, b), gr.PlaneVec(c, d)
    assert cf(g, h) * cf(h, g) == pytest.approx(1.0)
    assert cf(g, g) == pytest.approx(1.0)


@given(angles, ints)
def test_nu_commutator_is_periodic_in_angle(phi, m):
    cf = gr.PeriodicCylinderNu(2)
    g = gr.PerCylElem(0.0, 1)
    a = np.exp(1j * cf.alpha(gr.PerCylElem(phi, m), g))
    b = np.exp(1j * cf.alpha(gr.PerCylElem(phi + 2 * math.pi, m), g))
    assert abs(a - b) < 1e-9


def test_obstruction_values():
    assert gr.cylinder_obstruction(0.0, [0.5, 0.3]) == 0.0
    assert gr.cylinder_obstruction(1.0, [0.5]) == pytest.approx(2.0)
    assert gr.cylinder_obstruction(0.5, [0.5]) == pytest.approx(math.sqrt(2))
    with pytest.raises(ValueError):
        gr.cylinder_obstruction(1.0, [])


@given(st.floats(0.01, 5.0), st.floats(0.0, 6.0))
def test_obstruction_independent_of_base_angle(lam, theta0):
    etas = [0.5, 0.31]
    assert gr.cylinder_obstruction(lam, etas, theta0) == pytest.approx(gr.cylinder_obstruction(lam, etas), abs=1e-9)


@pytest.mark.parametrize("nu", range(-3, 4))
def test_flux_quantization(nu):
    assert gr.flux_quantization_check(nu)
    assert not gr.flux_quantization_check(nu + 0.5)
    assert not gr.flux_quantization_check(nu + 1e-3)


@given(angles, ints, angles, ints)
def test_extension_commutator_is_central(p1, m1, p2, m2):
    beta = gr.landau_beta(2)
    cf = gr.PeriodicCylinderNu(2)
    a = gr.ExtensionElement(gr.PerCylElem(p1, m1))
    b = gr.ExtensionElement(gr.PerCylElem(p2, m2))
    c = gr.extension_commutator(a, b, beta)
    assert c.g.phi == pytest.approx(0.0, abs=1e-9) or c.g.phi == pytest.approx(2 * math.pi)
    assert c.g.m == 0
    assert c.s == pytest.approx(cf(a.g, b.g), abs=1e-9)


@given(reals, reals, reals, reals)
def test_plane_extension_symmetric_beta(a, b, c, d):
    cf = gr.PlaneLambda(0.9)
    beta = gr.symmetric_beta(cf)
    x = gr.ExtensionElement(gr.PlaneVec(a, b))
    y = gr.ExtensionElement(gr.PlaneVec(c, d))
    assert gr.extension_commutator(x, y, beta).s == pytest.approx(cf(x.g, y.g), abs=1e-9)
    inv = gr.extension_inverse(x, beta)
    ident = gr.extension_multiply(x, inv, beta)
    assert ident.s == pytest.approx(1.0) and ident.g == gr.PlaneVec(0.0, 0.0)


def test_symmetric_beta_refused_on_cylinder():
    with pytest.raises(KindMismatch):
        gr.symmetric_beta(gr.PeriodicCylinderNu(1))


def test_extension_unit_modulus():
    with pytest.raises(ValueError):
        gr.ExtensionElement(gr.PlaneVec(0, 0), 2.0)


@pytest.mark.parametrize("kind", ["S1", "Z"])
@pytest.mark.parametrize("nu", [1, 2, -1])
def test_truncated_reps(kind, nu):
    rng = np.random.default_rng(7)
    for _ in range(10):
        g = gr.PerCylElem(rng.uniform(0, 2 * math.pi), int(rng.integers(-2, 3)))
        h = gr.PerCylElem(rng.uniform(0, 2 * math.pi), int(rng.integers(-2, 3)))
        assert gr.rep_commutator_deviation(kind, nu, g, h, 16) < 1e-12


@pytest.mark.parametrize("kind", ["S1", "Z"])
def test_truncated_reps_are_isometric_inside(kind):
    rep = gr.rep_S1 if kind == "S1" else gr.rep_Z
    h = gr.PerCylElem(1.1, 2)
    U = rep(2, h, 12)
    assert gr.unitarity_deviation(U, gr.rep_shift_size(kind, 2, h)) < 1e-14
    assert gr.unitarity_deviation(U, 0) > 0.5  # edge columns fall out of the window


def test_rep_window_overflow():
    with pytest.raises(WindowOverflow):
        gr.rep_S1(3, gr.PerCylElem(0.0, 6), 16)
    with pytest.raises(KindMismatch):
        gr.rep_Z(0.5, gr.PerCylElem(0.0, 1), 8)


@pytest.fixture(scope="module")
def smooth_state():
    cfg = new_config(q=0.4, rho=0.2)
    grid = make_grid(0.0, 14.0, 1201)
    return cfg, smooth_random_state(cfg.q, grid, range(-2, 3), np.random.default_rng(11), [0.3, -1, 0.5, 1.0, -0.2])


def test_W_is_projective_with_nu_cocycle(smooth_state):
    cfg, psi = smooth_state
    nu = 2
    g, h = gr.PerCylElem(0.8, 1), gr.PerCylElem(2.1, -1)
    gh = gr.wavefunction_rep_W(cfg, nu, g.phi, g.m, gr.wavefunction_rep_W(cfg, nu, h.phi, h.m, psi))
    hg = gr.wavefunction_rep_W(cfg, nu, h.phi, h.m, gr.wavefunction_rep_W(cfg, nu, g.phi, g.m, psi))
    c = gr.PeriodicCylinderNu(nu)(g, h)
    assert (gh - hg * c).norm() < 1e-9


def test_W_and_V_preserve_norm(smooth_state):
    cfg, psi = smooth_state
    assert gr.wavefunction_rep_W(cfg, 1, 0.7, 1, psi).norm() == pytest.approx(psi.norm(), abs=1e-10)
    assert gr.heisenberg_rep_V(cfg, 1, 0.7, -0.4, psi).norm() == pytest.approx(psi.norm(), abs=1e-10)


def test_W_mode_cutoff(smooth_state):
    cfg, psi = smooth_state
    with pytest.raises(WindowOverflow):
        gr.wavefunction_rep_W(cfg, 3, 0.0, 1, psi, max_mode=4)


def test_V_has_opposite_central_charge(smooth_state):
    cfg, psi = smooth_state
    nu = 1
    a = gr.heisenberg_rep_V(cfg, nu, 0.6, 0.0, gr.heisenberg_rep_V(cfg, nu, 0.0, 0.9, psi))
    b = gr.heisenberg_rep_V(cfg, nu, 0.0, 0.9, gr.heisenberg_rep_V(cfg, nu, 0.6, 0.0, psi))
    # the pure x-shift picks up exp(i nu xi eta) relative to the pure y-shift
    assert (a - b * np.exp(-1j * nu * 0.6 * 0.9)).norm() < 1e-9


@pytest.mark.parametrize("lam", [0.5, 1.0])
def test_plane_representation(lam):
    pairs = [((0.7, -0.3), (0.4, 1.1)), ((1.0, 0.0), (0.0, 1.0))]
    report = gr.plane_rep_check(lam, pairs)
    assert report.passed, report.to_dict()
