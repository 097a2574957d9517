"""Quasi-periodic wavefunctions stored mode by mode.

A state is

    psi(theta, y) = (2 pi)^(-1/2) * sum_n exp(i (n + q) theta) f_n(y)

with the profiles ``f_n`` sampled on a uniform y-grid.  Angular modes are
orthogonal, so every inner product reduces to one-dimensional quadratures.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.fft import fft, ifft, fftfreq, next_fast_len
from scipy.integrate import trapezoid

from .errors import (
    GridOverflow,
    IncompatibleStates,
    NonPositiveParameter,
    OutOfGrid,
    TooFewPoints,
    ZeroState,
)

MIN_POINTS = 3
Q_MATCH_TOL = 1e-12
SHIFT_LOSS_TOL = 1e-10


@dataclass(frozen=True)
class Grid:
    y_min: float
    y_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < MIN_POINTS:
            raise TooFewPoints(f"need at least {MIN_POINTS} grid points, got {self.n_points}")
        if not self.y_min < self.y_max:
            raise NonPositiveParameter("grid requires y_min < y_max")

    @property
    def spacing(self) -> float:
        return (self.y_max - self.y_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.n_points)

    def covers(self, lo: float, hi: float, slack: float = 1e-9) -> bool:
        return self.y_min <= lo + slack and self.y_max >= hi - slack


def make_grid(center: float, half_width: float, n_points: int) -> Grid:
    if not half_width > 0:
        raise NonPositiveParameter(f"half_width must be positive, got {half_width}")
    if n_points < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} grid points, got {n_points}")
    return Grid(center - half_width, center + half_width, int(n_points))


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Mode-resolved quasi-periodic state.

    ``profiles[i]`` is the y-profile of angular mode ``n_min + i``.  Modes
    outside the stored window are zero.
    """

    q: float
    grid: Grid
    n_min: int
    profiles: np.ndarray

    def __post_init__(self):
        prof = np.array(self.profiles, dtype=complex, copy=True)
        if prof.ndim == 1:
            prof = prof[None, :]
        if prof.ndim != 2 or prof.shape[1] != self.grid.n_points:
            raise ValueError(
                f"profiles must have shape (n_modes, {self.grid.n_points}), got {prof.shape}"
            )
        prof.setflags(write=False)
        object.__setattr__(self, "profiles", prof)
        object.__setattr__(self, "n_min", int(self.n_min))

    @classmethod
    def from_modes(cls, q: float, grid: Grid, modes: Mapping[int, np.ndarray]) -> "WaveFunction":
        if not modes:
            return cls(q, grid, 0, np.zeros((1, grid.n_points)))
        lo, hi = min(modes), max(modes)
        prof = np.zeros((hi - lo + 1, grid.n_points), dtype=complex)
        for n, f in modes.items():
            prof[n - lo] = f
        return cls(q, grid, lo, prof)

    @property
    def n_max(self) -> int:
        return self.n_min + self.profiles.shape[0] - 1

    @property
    def modes(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def profile(self, n: int) -> np.ndarray:
        if self.n_min <= n <= self.n_max:
            return self.profiles[n - self.n_min]
        return np.zeros(self.grid.n_points, dtype=complex)

    def mode_weights(self) -> np.ndarray:
        """Per-mode squared norms (trapezoid in y)."""
        return trapezoid(np.abs(self.profiles) ** 2, dx=self.grid.spacing, axis=1)

    def norm(self) -> float:
        return float(math.sqrt(self.mode_weights().sum()))

    def with_profiles(self, profiles: np.ndarray, n_min: int | None = None) -> "WaveFunction":
        return WaveFunction(self.q, self.grid, self.n_min if n_min is None else n_min, profiles)

    def relabel(self, offset: int) -> "WaveFunction":
        """Same profiles attached to angular modes ``n + offset``."""
        return self.with_profiles(self.profiles, self.n_min + offset)

    def _check_compatible(self, other: "WaveFunction") -> None:
        if abs(self.q - other.q) > Q_MATCH_TOL:
            raise IncompatibleStates(f"quasi-periodicity mismatch: q={self.q} vs q={other.q}")
        if self.grid != other.grid:
            raise IncompatibleStates("states live on different grids")

    def _aligned(self, other: "WaveFunction"):
        self._check_compatible(other)
        lo, hi = min(self.n_min, other.n_min), max(self.n_max, other.n_max)
        a = np.zeros((hi - lo + 1, self.grid.n_points), dtype=complex)
        b = np.zeros_like(a)
        a[self.n_min - lo : self.n_max - lo + 1] = self.profiles
        b[other.n_min - lo : other.n_max - lo + 1] = other.profiles
        return lo, a, b

    def __add__(self, other: "WaveFunction") -> "WaveFunction":
        lo, a, b = self._aligned(other)
        return self.with_profiles(a + b, lo)

    def __sub__(self, other: "WaveFunction") -> "WaveFunction":
        lo, a, b = self._aligned(other)
        return self.with_profiles(a - b, lo)

    def __mul__(self, scalar: complex) -> "WaveFunction":
        return self.with_profiles(self.profiles * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "WaveFunction":
        return self * -1.0

    def to_records(self) -> list[tuple[int, float, float, float]]:
        """Rows ``(n, y, Re f_n(y), Im f_n(y))`` for tabular export."""
        y = self.grid.points
        rows = []
        for n in self.modes:
            f = self.profile(n)
            rows.extend(zip([n] * len(y), y.tolist(), f.real.tolist(), f.imag.tolist()))
        return rows


def inner_product(psi: WaveFunction, chi: WaveFunction) -> complex:
    """<psi, chi>, antilinear in the first slot."""
    psi._check_compatible(chi)
    lo = max(psi.n_min, chi.n_min)
    hi = min(psi.n_max, chi.n_max)
    if lo > hi:
        return 0j
    a = psi.profiles[lo - psi.n_min : hi - psi.n_min + 1]
    b = chi.profiles[lo - chi.n_min : hi - chi.n_min + 1]
    return complex(trapezoid(np.conj(a) * b, dx=psi.grid.spacing, axis=1).sum())


def normalize(psi: WaveFunction) -> WaveFunction:
    nrm = psi.norm()
    if not nrm > 0:
        raise ZeroState("cannot normalize the zero state")
    return psi * (1.0 / nrm)


def evaluate(psi: WaveFunction, theta, y):
    """Pointwise value; profiles are linearly interpolated between nodes."""
    theta = np.asarray(theta, dtype=float)
    y = np.asarray(y, dtype=float)
    g = psi.grid
    if np.any(y < g.y_min - 1e-12) or np.any(y > g.y_max + 1e-12):
        raise OutOfGrid(f"y outside [{g.y_min}, {g.y_max}]")
    nodes = g.points
    total = np.zeros(np.broadcast(theta, y).shape, dtype=complex)
    for n in psi.modes:
        f = psi.profile(n)
        fy = np.interp(y, nodes, f.real) + 1j * np.interp(y, nodes, f.imag)
        total = total + np.exp(1j * (n + psi.q) * theta) * fy
    total /= math.sqrt(2.0 * math.pi)
    return complex(total) if total.ndim == 0 else total


def shift_profiles(profiles: np.ndarray, grid: Grid, a: float, tol: float = SHIFT_LOSS_TOL) -> np.ndarray:
    """Return rows ``f(y + a)`` sampled on the same grid.

    The shift is done spectrally on a zero-padded copy, which is exact for
    band-limited profiles and norm preserving.  Raises GridOverflow when
    more than ``tol`` of the weight would be pushed off the grid.
    """
    profiles = np.atleast_2d(np.asarray(profiles, dtype=complex))
    if a == 0.0:
        return profiles.copy()
    h = grid.spacing
    n = grid.n_points
    s = int(math.ceil(abs(a) / h))
    if s >= n:
        raise GridOverflow(f"shift {a} exceeds the grid length")
    w = np.abs(profiles) ** 2
    total = w.sum()
    if total > 0:
        lost = w[:, :s].sum() if a > 0 else w[:, n - s :].sum()
        if lost / total > tol:
            raise GridOverflow(
                f"shift by {a} pushes a fraction {lost / total:.2e} of the weight off the grid"
            )
    size = next_fast_len(n + s + 16)
    k = 2.0 * math.pi * fftfreq(size, d=h)
    coeffs = fft(profiles, n=size, axis=1)
    return ifft(coeffs * np.exp(1j * k * a), axis=1)[:, :n]


def shift_y(psi: WaveFunction, a: float, tol: float = SHIFT_LOSS_TOL) -> WaveFunction:
    """(T_a psi)(theta, y) = psi(theta, y + a)."""
    return psi.with_profiles(shift_profiles(psi.profiles, psi.grid, a, tol))


def smooth_random_state(
    q: float,
    grid: Grid,
    modes: Iterable[int],
    rng: np.random.Generator,
    centers: Sequence[float] | Mapping[int, float] | None = None,
    width: float = 1.0,
    degree: int = 2,
) -> WaveFunction:
    """Normalized random superposition of low Hermite-like functions per mode.

    ``centers`` gives the y-centre for each mode (default: grid centre).
    """
    modes = list(modes)
    y = grid.points
    mid = 0.5 * (grid.y_min + grid.y_max)
    out = {}
    for i, n in enumerate(modes):
        if centers is None:
            c = mid
        elif isinstance(centers, Mapping):
            c = centers[n]
        else:
            c = centers[i]
        u = (y - c) / width
        coeffs = rng.normal(size=degree + 1) + 1j * rng.normal(size=degree + 1)
        poly = np.polynomial.polynomial.polyval(u, coeffs)
        out[n] = poly * np.exp(-0.5 * u**2)
    return normalize(WaveFunction.from_modes(q, grid, out))
