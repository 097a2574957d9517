"""Magnetic translations on the cylinder.

Two families commute with the Hamiltonian of gauge class ``rho``:

* rotations ``U(phi) psi(theta, y) = exp(-i phi (mu rho - C_theta/hbar)) psi(theta + phi, y)``,
* axial shifts ``V(a) psi(theta, y) = exp(i a (mu theta + C_y/hbar)) psi(theta, y + a)``.

``C_theta = hbar (mu rho - q)`` makes ``U(2 pi)`` the identity and ``C_y = 0``.
``V(a)`` maps quasi-periodic states to quasi-periodic states only when
``a mu`` is an integer, so an axial shift is stored as that integer ``k``.
Together they obey ``U(phi) V(k/mu) = exp(i k phi) V(k/mu) U(phi)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .core import CylinderConfig
from .errors import IncompatibleStates, NonAdmissibleTranslation, WindowTooSmall
from .hilbert import Q_MATCH_TOL, Grid, WaveFunction, inner_product, normalize, shift_profiles
from .spectral import (
    analytic_ground_state,
    apply_hamiltonian,
    default_grid,
    mode_center,
    numeric_eigenstate,
)

TWO_PI = 2.0 * math.pi
ADMISSIBILITY_TOL = 1e-9
MIN_FOURIER_WINDOW = 8


def c_theta(config: CylinderConfig) -> float:
    return config.hbar * (config.mu * config.rho - config.q)


def c_y(config: CylinderConfig) -> float:
    return 0.0


@dataclass(frozen=True)
class Rotation:
    config: CylinderConfig
    phi: float

    def __post_init__(self):
        p = float(self.phi) % TWO_PI
        object.__setattr__(self, "phi", 0.0 if p >= TWO_PI else p)

    def apply(self, psi: WaveFunction) -> WaveFunction:
        return apply_U(self.config, self.phi, psi)


@dataclass(frozen=True)
class AxialShift:
    """Axial translation by ``k / mu``; only integer ``k`` can be built."""

    config: CylinderConfig
    k: int

    def __post_init__(self):
        try:
            kf = float(self.k)
        except (TypeError, ValueError) as exc:
            raise NonAdmissibleTranslation(f"shift index must be an integer, got {self.k!r}") from exc
        if not math.isfinite(kf) or kf != round(kf):
            raise NonAdmissibleTranslation(
                f"a*mu = {self.k!r} is not an integer; exp(i a sigma_y / hbar) would be multivalued"
            )
        object.__setattr__(self, "k", int(round(kf)))

    @classmethod
    def from_length(cls, config: CylinderConfig, a: float, tol: float = ADMISSIBILITY_TOL) -> "AxialShift":
        x = a * config.mu
        if abs(x - round(x)) > tol:
            raise NonAdmissibleTranslation(
                f"shift a={a} has a*mu={x:.12g}, not an integer (step is 1/mu={1 / config.mu:.12g})"
            )
        return cls(config, int(round(x)))

    @property
    def length(self) -> float:
        return self.k / self.config.mu

    def apply(self, psi: WaveFunction) -> WaveFunction:
        return apply_V(self.config, self, psi)


SymmetryOp = Rotation | AxialShift


def _check_q(config: CylinderConfig, psi: WaveFunction) -> None:
    if abs(config.q - psi.q) > Q_MATCH_TOL:
        raise IncompatibleStates(f"state has q={psi.q}, config has q={config.q}")


def apply_U(config: CylinderConfig, phi: float, psi: WaveFunction) -> WaveFunction:
    _check_q(config, psi)
    prefactor = np.exp(-1j * phi * (config.mu * config.rho - c_theta(config) / config.hbar))
    n = np.arange(psi.n_min, psi.n_max + 1)
    translate = np.exp(1j * (n + psi.q) * phi)
    return psi.with_profiles(psi.profiles * (prefactor * translate)[:, None])


def apply_V(config: CylinderConfig, k, psi: WaveFunction) -> WaveFunction:
    """Axial shift by ``k/mu``; ``k`` may be an int or an :class:`AxialShift`."""
    _check_q(config, psi)
    op = k if isinstance(k, AxialShift) else AxialShift(config, k)
    a = op.length
    constant = np.exp(1j * a * c_y(config) / config.hbar)
    shifted = shift_profiles(psi.profiles, psi.grid, a) * constant
    # exp(i a mu theta) = exp(i k theta) moves mode n to n + k
    return psi.with_profiles(shifted).relabel(op.k)


def apply(op: SymmetryOp, psi: WaveFunction) -> WaveFunction:
    return op.apply(psi)


def projective_phase_check(config: CylinderConfig, phi: float, k: int, psi: WaveFunction) -> float:
    """``||U V psi - exp(i k phi) V U psi|| / ||psi||``."""
    uv = apply_U(config, phi, apply_V(config, k, psi))
    vu = apply_V(config, k, apply_U(config, phi, psi))
    return (uv - vu * np.exp(1j * k * phi)).norm() / psi.norm()


def hamiltonian_commutation_check(config: CylinderConfig, op: SymmetryOp, test_states) -> float:
    """Max over states of ``||(Op H - H Op) psi|| / ||psi||``."""
    worst = 0.0
    for psi in test_states:
        a = op.apply(apply_hamiltonian(config, psi))
        b = apply_hamiltonian(config, op.apply(psi))
        worst = max(worst, (a - b).norm() / psi.norm())
    return worst


def axial_multiplier_mismatch(config: CylinderConfig, a: float, theta: float = 0.3) -> float:
    """``|exp(i a sigma_y / hbar)|`` evaluated at theta and theta + 2 pi, differenced.

    ``sigma_y = e B R theta + C_y`` is the multiplier a continuous axial
    generator would need; its exponential is single valued only for integer
    ``a mu``.
    """
    sig = lambda t: config.e * config.B * config.R * t + c_y(config)
    f = lambda t: np.exp(1j * a * sig(t) / config.hbar)
    return float(abs(f(theta + TWO_PI) - f(theta)))


# --------------------------------------------------------------------------
# Fourier eigenbasis of the axial shifts


def fourier_eigenstate(
    config: CylinderConfig,
    xi: float,
    mode_window: tuple[int, int],
    grid: Grid | None = None,
) -> WaveFunction:
    """Normalized truncation of ``sum_n exp(i n xi) Omega_n`` over the window.

    The untruncated sum is not normalizable; this surrogate is.
    """
    lo, hi = mode_window
    if hi - lo + 1 < MIN_FOURIER_WINDOW:
        raise WindowTooSmall(f"need at least {MIN_FOURIER_WINDOW} modes, got {hi - lo + 1}")
    grid = grid or default_grid(config, lo, hi)
    modes = {}
    for n in range(lo, hi + 1):
        modes[n] = np.exp(1j * n * xi) * analytic_ground_state(config, n, grid).profile(n)
    return normalize(WaveFunction.from_modes(config.q, grid, modes))


@dataclass
class FourierReport:
    xi: float
    k: int
    window: tuple[int, int]
    overlap: complex
    phase_error: float
    interior_deviation: float
    truncation_bound: float

    @property
    def passed(self) -> bool:
        return self.phase_error <= 1e-2 and 1.0 - abs(self.overlap) <= self.truncation_bound + 1e-12

    def to_dict(self) -> dict:
        return {
            "xi": self.xi,
            "k": self.k,
            "window": list(self.window),
            "overlap": [self.overlap.real, self.overlap.imag],
            "expected_phase": [math.cos(-self.k * self.xi), math.sin(-self.k * self.xi)],
            "phase_error": self.phase_error,
            "interior_deviation": self.interior_deviation,
            "truncation_bound": self.truncation_bound,
            "truncated_surrogate": True,
            "pass": self.passed,
        }


def fourier_eigen_check(
    config: CylinderConfig,
    xi: float,
    k: int,
    mode_window: tuple[int, int],
    grid: Grid | None = None,
) -> FourierReport:
    lo, hi = mode_window
    grid = grid or default_grid(config, lo - abs(k), hi + abs(k))
    omega = fourier_eigenstate(config, xi, mode_window, grid)
    v_omega = apply_V(config, k, omega)
    ov = inner_product(omega, v_omega)
    phase_error = abs(np.angle(ov * np.exp(1j * k * xi))) if abs(ov) > 0 else math.pi
    # compare only on modes present in both windows
    common = range(max(lo, lo + k), min(hi, hi + k) + 1)
    target = np.exp(-1j * k * xi)
    diff = sum(
        trapezoid(np.abs(v_omega.profile(n) - target * omega.profile(n)) ** 2, dx=grid.spacing)
        for n in common
    )
    width = hi - lo + 1
    return FourierReport(
        xi, k, (lo, hi), ov, float(phase_error), math.sqrt(diff), 2.0 * abs(k) / width
    )


# --------------------------------------------------------------------------
# rho <-> q redundancy


@dataclass
class RedundancyReport:
    rho: float
    rho_shifted: float
    index_offset: int
    overlaps: dict[int, float]
    center_errors: dict[int, float]
    tolerance: float = 1e-8

    @property
    def min_overlap(self) -> float:
        return min(self.overlaps.values())

    @property
    def passed(self) -> bool:
        return 1.0 - self.min_overlap <= self.tolerance and max(self.center_errors.values()) <= 1e-12

    def to_dict(self) -> dict:
        return {
            "rho": self.rho,
            "rho_shifted": self.rho_shifted,
            "index_offset": self.index_offset,
            "angular_factor": f"exp(i*{self.index_offset}*theta)",
            "pairing": f"mode n at rho <-> mode n+{self.index_offset} at rho+{self.index_offset}/mu",
            "overlaps": {str(n): v for n, v in self.overlaps.items()},
            "center_errors": {str(n): v for n, v in self.center_errors.items()},
            "min_overlap": self.min_overlap,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def rho_q_redundancy_check(
    config: CylinderConfig,
    grid: Grid | None = None,
    window: tuple[int, int] = (-3, 3),
    shift: int = 1,
    tol: float = 1e-8,
) -> RedundancyReport:
    """Shifting ``rho`` by ``shift/mu`` relabels ground states ``n -> n + shift``.

    Profiles are computed numerically for both classes and compared mode by
    mode; the angular factors differ by ``exp(i shift theta)``.
    """
    lo, hi = window
    if lo != -hi:
        raise ValueError(f"window must be symmetric, got {window}")
    shifted = config.replace(rho=config.rho + shift / config.mu)
    grid = grid or default_grid(config, lo, hi)
    overlaps, centers = {}, {}
    h = grid.spacing
    for n in range(lo, hi + 1):
        f = numeric_eigenstate(config, n, grid).profile(n)
        g = numeric_eigenstate(shifted, n + shift, grid).profile(n + shift)
        num = abs(trapezoid(np.conj(f) * g, dx=h))
        den = math.sqrt(trapezoid(np.abs(f) ** 2, dx=h) * trapezoid(np.abs(g) ** 2, dx=h))
        overlaps[n] = float(num / den)
        centers[n] = abs(mode_center(config, n) - mode_center(shifted, n + shift))
    return RedundancyReport(config.rho, shifted.rho, shift, overlaps, centers, tol)
