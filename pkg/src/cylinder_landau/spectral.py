"""Per-mode Landau Hamiltonians, spectra and ground states.

In the gauge ``A_theta = zeta - B R y``, ``A_y = 0`` with ``zeta = B R rho``,
angular mode ``n`` decouples and the Hamiltonian on its y-profile is a
shifted harmonic oscillator

    H_n = p_y^2 / 2m + (eB)^2 (y - y_n)^2 / 2m,   y_n = rho - (n + q)/mu,

with frequency eB/m.  Profiles are discretized with second-order central
differences and Dirichlet ends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .core import CylinderConfig
from .errors import ConvergenceFailure, GridTooNarrow, IncompatibleStates
from .gauge import GaugePotential, potential_for_config
from .hilbert import Q_MATCH_TOL, Grid, WaveFunction, make_grid

N_SIGMA = 12.0
DEFAULT_POINTS = 2001


def mode_center(config: CylinderConfig, n: int) -> float:
    return config.rho - (n + config.q) / config.mu


def default_grid(
    config: CylinderConfig,
    n_lo: int = 0,
    n_hi: int | None = None,
    n_points: int = DEFAULT_POINTS,
    n_sigma: float = N_SIGMA,
) -> Grid:
    """Grid covering every centre of modes ``n_lo..n_hi`` by ``n_sigma`` lengths."""
    n_hi = n_lo if n_hi is None else n_hi
    c1, c2 = mode_center(config, n_lo), mode_center(config, n_hi)
    half = 0.5 * abs(c1 - c2) + n_sigma * config.magnetic_length
    return make_grid(0.5 * (c1 + c2), half, n_points)


@dataclass(frozen=True, eq=False)
class ModeHamiltonian:
    n: int
    y_center: float
    grid: Grid
    diag: np.ndarray
    offdiag: np.ndarray

    def apply(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f)
        out = self.diag * f
        out[:-1] += self.offdiag * f[1:]
        out[1:] += self.offdiag * f[:-1]
        return out

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


def _check_coverage(config: CylinderConfig, grid: Grid, yc: float, n_sigma: float = N_SIGMA) -> None:
    s = n_sigma * config.magnetic_length
    if not grid.covers(yc - s, yc + s):
        raise GridTooNarrow(
            f"grid [{grid.y_min:.4g}, {grid.y_max:.4g}] does not cover centre {yc:.4g} +- {s:.4g}"
        )


def mode_hamiltonian(config: CylinderConfig, n: int, grid: Grid, check: bool = True) -> ModeHamiltonian:
    yc = mode_center(config, n)
    if check:
        _check_coverage(config, grid, yc)
    h = grid.spacing
    kin = config.hbar**2 / (2.0 * config.m * h**2)
    y = grid.points
    pot = (config.e * config.B) ** 2 * (y - yc) ** 2 / (2.0 * config.m)
    diag = 2.0 * kin + pot
    off = np.full(grid.n_points - 1, -kin)
    return ModeHamiltonian(n, yc, grid, diag, off)


def _grid_normalize(vecs: np.ndarray, h: float) -> np.ndarray:
    norms = np.sqrt(trapezoid(np.abs(vecs) ** 2, dx=h, axis=0))
    vecs = vecs / norms
    # fix the sign so the largest component is positive
    idx = np.argmax(np.abs(vecs), axis=0)
    signs = np.sign(vecs[idx, np.arange(vecs.shape[1])])
    return vecs * signs


def eigensolve(H: ModeHamiltonian, k_levels: int) -> tuple[np.ndarray, np.ndarray]:
    """Lowest ``k_levels`` eigenpairs; eigenvectors are columns with unit L^2 norm on the grid."""
    if not 1 <= k_levels <= H.grid.n_points:
        raise ValueError(f"k_levels must be in [1, {H.grid.n_points}], got {k_levels}")
    try:
        vals, vecs = eigh_tridiagonal(H.diag, H.offdiag, select="i", select_range=(0, k_levels - 1))
    except LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return vals, _grid_normalize(vecs, H.grid.spacing)


def landau_level(config: CylinderConfig, N: int) -> float:
    """``hbar (eB/m) (N + 1/2)``."""
    return config.cyclotron_energy * (N + 0.5)


@dataclass
class SpectrumResult:
    per_mode: dict[int, np.ndarray]
    levels: np.ndarray
    exact_levels: np.ndarray
    degeneracy: dict[int, int]
    bin_tolerance: float
    grid: Grid = field(repr=False)

    @property
    def mode_spread(self) -> float:
        """Largest relative spread of a level across modes."""
        table = np.array([self.per_mode[n] for n in sorted(self.per_mode)])
        return float(np.max((table.max(axis=0) - table.min(axis=0)) / np.abs(self.levels)))

    def to_dict(self) -> dict:
        return {
            "levels": self.levels.tolist(),
            "exact_levels": self.exact_levels.tolist(),
            "degeneracy": {str(k): v for k, v in self.degeneracy.items()},
            "bin_tolerance": self.bin_tolerance,
            "mode_spread": self.mode_spread,
            "per_mode": {str(n): v.tolist() for n, v in sorted(self.per_mode.items())},
            "grid": {"y_min": self.grid.y_min, "y_max": self.grid.y_max, "n_points": self.grid.n_points},
        }

    def table_rows(self) -> list[tuple]:
        """``(n, N, E)`` rows for CSV export."""
        return [(n, N, float(E)) for n in sorted(self.per_mode) for N, E in enumerate(self.per_mode[n])]


def spectrum(
    config: CylinderConfig,
    mode_window: tuple[int, int] = (-3, 3),
    k_levels: int = 4,
    grid: Grid | None = None,
    n_points: int = DEFAULT_POINTS,
) -> SpectrumResult:
    lo, hi = mode_window
    if lo > hi:
        raise ValueError(f"empty mode window {mode_window}")
    grid = grid or default_grid(config, lo, hi, n_points)
    per_mode = {}
    for n in range(lo, hi + 1):
        vals, _ = eigensolve(mode_hamiltonian(config, n, grid), k_levels)
        per_mode[n] = vals
    table = np.array([per_mode[n] for n in range(lo, hi + 1)])
    levels = table.mean(axis=0)
    tol = 1e-6 * config.e * config.B / config.m
    degeneracy = {N: int(np.sum(np.abs(table[:, N] - levels[N]) <= tol)) for N in range(k_levels)}
    exact = np.array([landau_level(config, N) for N in range(k_levels)])
    return SpectrumResult(per_mode, levels, exact, degeneracy, tol, grid)


# --------------------------------------------------------------------------
# ground states


def ground_state_profile(config: CylinderConfig, n: int, y: np.ndarray) -> np.ndarray:
    """``(mu / pi R)^(1/4) exp(-(mu / 2R) (y - y_n)^2)``; the (2 pi)^(-1/2) lives in the angular factor."""
    mu, R = config.mu, config.R
    return (mu / (math.pi * R)) ** 0.25 * np.exp(-0.5 * mu / R * (y - mode_center(config, n)) ** 2)


def analytic_ground_state(config: CylinderConfig, n: int, grid: Grid, check: bool = True) -> WaveFunction:
    if check:
        _check_coverage(config, grid, mode_center(config, n))
    return WaveFunction.from_modes(config.q, grid, {n: ground_state_profile(config, n, grid.points)})


def numeric_eigenstate(config: CylinderConfig, n: int, grid: Grid, level: int = 0) -> WaveFunction:
    _, vecs = eigensolve(mode_hamiltonian(config, n, grid), level + 1)
    return WaveFunction.from_modes(config.q, grid, {n: vecs[:, level]})


# --------------------------------------------------------------------------
# kinetic momenta and operator checks


def _d1(f: np.ndarray, h: float) -> np.ndarray:
    """Central first difference along the last axis, zero outside the grid."""
    out = np.zeros_like(f)
    out[..., 1:-1] = f[..., 2:] - f[..., :-2]
    out[..., 0] = f[..., 1]
    out[..., -1] = -f[..., -2]
    return out / (2.0 * h)


def _check_q(config: CylinderConfig, psi: WaveFunction) -> None:
    if abs(config.q - psi.q) > Q_MATCH_TOL:
        raise IncompatibleStates(f"state has q={psi.q}, config has q={config.q}")


def pi_theta(config: CylinderConfig, psi: WaveFunction) -> WaveFunction:
    """``(-i hbar d_theta - e A_theta) psi`` in the Lambda = 0 gauge of class ``rho``."""
    _check_q(config, psi)
    n = np.arange(psi.n_min, psi.n_max + 1)[:, None]
    a_theta = config.zeta - config.B * config.R * psi.grid.points[None, :]
    return psi.with_profiles((config.hbar * (n + psi.q) - config.e * a_theta) * psi.profiles)


def pi_y(config: CylinderConfig, psi: WaveFunction) -> WaveFunction:
    """``-i hbar d_y psi`` (A_y = 0)."""
    return psi.with_profiles(-1j * config.hbar * _d1(psi.profiles, psi.grid.spacing))


def apply_hamiltonian(config: CylinderConfig, psi: WaveFunction) -> WaveFunction:
    _check_q(config, psi)
    out = np.empty_like(psi.profiles)
    for i, n in enumerate(psi.modes):
        out[i] = mode_hamiltonian(config, n, psi.grid, check=False).apply(psi.profiles[i])
    return psi.with_profiles(out)


def energy_expectation(config: CylinderConfig, psi: WaveFunction) -> float:
    from .hilbert import inner_product

    return float(inner_product(psi, apply_hamiltonian(config, psi)).real / psi.norm() ** 2)


def annihilation_residual(config: CylinderConfig, n: int, state: WaveFunction) -> float:
    """``||(Q + iP) psi_n||`` for the mode-``n`` component of ``state``.

    ``Q = pi_theta / (R sqrt(eB))`` and ``P = pi_y / sqrt(eB)``.
    """
    single = WaveFunction.from_modes(state.q, state.grid, {n: state.profile(n)})
    s = math.sqrt(config.e * config.B)
    Q = pi_theta(config, single) * (1.0 / (config.R * s))
    P = pi_y(config, single) * (1.0 / s)
    return (Q + 1j * P).norm()


def pi_commutator_check(config: CylinderConfig, test_states) -> float:
    """Max over states of ``||([pi_theta, pi_y] - i hbar e B R) psi|| / ||psi||``."""
    c = 1j * config.hbar * config.e * config.B * config.R
    worst = 0.0
    for psi in test_states:
        comm = pi_theta(config, pi_y(config, psi)) - pi_y(config, pi_theta(config, psi))
        worst = max(worst, (comm - psi * c).norm() / psi.norm())
    return worst


@dataclass
class VelocityReport:
    deviations: list[float]
    tolerance: float = 1e-3

    @property
    def max_deviation(self) -> float:
        return max(self.deviations, default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {"deviations": self.deviations, "max_deviation": self.max_deviation,
                "tolerance": self.tolerance, "pass": self.passed}


def velocity_check(config: CylinderConfig, test_states, tol: float = 1e-3) -> VelocityReport:
    """Check ``(i/hbar) [H, Y] psi = pi_y psi / m`` mode by mode."""
    devs = []
    for psi in test_states:
        y = psi.grid.points[None, :]
        Hpsi = apply_hamiltonian(config, psi)
        HY = apply_hamiltonian(config, psi.with_profiles(y * psi.profiles))
        lhs = (HY - Hpsi.with_profiles(y * Hpsi.profiles)) * (1j / config.hbar)
        rhs = pi_y(config, psi) * (1.0 / config.m)
        nrm = psi.norm()
        devs.append(0.0 if nrm == 0 else (lhs - rhs).norm() / nrm)
    return VelocityReport(devs, tol)


def full_hamiltonian_action(
    config: CylinderConfig,
    psi: WaveFunction,
    n_theta: int = 512,
    A: GaugePotential | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Apply the two-variable Hamiltonian to ``psi`` sampled on a (theta, y) grid.

    Both derivatives are central differences; theta neighbours across the
    seam pick up the quasi-periodic phase.  Returns ``(H psi, psi)`` as
    ``(n_theta, n_y)`` arrays.
    """
    A = A or potential_for_config(config)
    hb, e, m, R = config.hbar, config.e, config.m, config.R
    g = psi.grid
    th = 2.0 * math.pi * np.arange(n_theta) / n_theta
    dth = th[1]
    y = g.points
    TH, Y = np.meshgrid(th, y, indexing="ij")
    phases = np.exp(1j * np.outer(th, np.arange(psi.n_min, psi.n_max + 1) + psi.q))
    vals = phases @ psi.profiles / math.sqrt(2.0 * math.pi)

    seam = np.exp(2j * math.pi * psi.q)
    plus = np.roll(vals, -1, axis=0)
    plus[-1] *= seam
    minus = np.roll(vals, 1, axis=0)
    minus[0] /= seam
    d_th = (plus - minus) / (2 * dth)
    d2_th = (plus - 2 * vals + minus) / dth**2

    a_th = A.A_theta(TH, Y)
    a_y = A.A_y(TH, Y)
    da_th = (A.A_theta(TH + 1e-5, Y) - A.A_theta(TH - 1e-5, Y)) / 2e-5
    # (-i hb d - e a)^2 = -hb^2 d^2 + 2 i hb e a d + i hb e (d a) + e^2 a^2
    pth2 = -hb**2 * d2_th + 2j * hb * e * a_th * d_th + 1j * hb * e * da_th * vals + (e * a_th) ** 2 * vals

    h = g.spacing
    vp = np.zeros_like(vals)
    vm = np.zeros_like(vals)
    vp[:, :-1] = vals[:, 1:]
    vm[:, 1:] = vals[:, :-1]
    d_y = (vp - vm) / (2 * h)
    d2_y = (vp - 2 * vals + vm) / h**2
    da_y = (A.A_y(TH, Y + 1e-5) - A.A_y(TH, Y - 1e-5)) / 2e-5
    py2 = -hb**2 * d2_y + 2j * hb * e * a_y * d_y + 1j * hb * e * da_y * vals + (e * a_y) ** 2 * vals

    return (py2 + pth2 / R**2) / (2 * m), vals


def block_reduction_check(config: CylinderConfig, psi: WaveFunction, n_theta: int = 512) -> float:
    """Relative difference between the 2-D action and the per-mode action."""
    full, vals = full_hamiltonian_action(config, psi, n_theta)
    reduced = apply_hamiltonian(config, psi)
    th = 2.0 * math.pi * np.arange(n_theta) / n_theta
    phases = np.exp(1j * np.outer(th, np.arange(reduced.n_min, reduced.n_max + 1) + psi.q))
    red_vals = phases @ reduced.profiles / math.sqrt(2.0 * math.pi)
    w = (2 * math.pi / n_theta) * psi.grid.spacing
    diff = math.sqrt(w * np.sum(np.abs(full - red_vals) ** 2))
    base = math.sqrt(w * np.sum(np.abs(vals) ** 2))
    return diff / base
