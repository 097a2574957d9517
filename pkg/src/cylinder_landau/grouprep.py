"""Commutator functions, central extensions and truncated representations.

Sign conventions, fixed once here:

* wedge: ``x ^ y = x1*y2 - x2*y1``;
* the commutator of a projective representation is
  ``c(g, h) = U(g) U(h) U(g)^-1 U(h)^-1 = exp(i alpha(g, h))``;
* plane: ``alpha = lam * (x ^ y)``;
* periodic cylinder SO(2) x Z: ``alpha((phi, m), (phi', m')) = nu (m' phi - m phi')``;
* cylinder candidate SO(2) x R: ``alpha = lam (theta eta' - theta' eta)``, which is
  not well defined once theta is read modulo 2 pi.

Extension law: ``(g, s).(h, t) = (g + h, exp(i beta(g, h)) s t)`` with
``beta(g, h) - beta(h, g) = alpha(g, h)``.  For the periodic cylinder the
one-sided ``beta = nu * phi_g * m_h`` is used; it is the cocycle of the
wavefunction action ``W`` below, which is built as "rotate, then multiply".
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.fft import fft2, ifft2, fftfreq, next_fast_len

from .core import CylinderConfig
from .errors import GridOverflow, IncompatibleStates, KindMismatch, WindowOverflow
from .hilbert import Q_MATCH_TOL, WaveFunction, shift_profiles

TWO_PI = 2.0 * math.pi
COCYCLE_TOL = 1e-9
DEFAULT_CUTOFF = 16


def _wrap(angle: float) -> float:
    a = float(angle) % TWO_PI
    return 0.0 if a >= TWO_PI else a


# --------------------------------------------------------------------------
# group elements


@dataclass(frozen=True)
class PlaneVec:
    x1: float
    x2: float

    def __add__(self, other):
        if not isinstance(other, PlaneVec):
            return NotImplemented
        return PlaneVec(self.x1 + other.x1, self.x2 + other.x2)

    def __neg__(self):
        return PlaneVec(-self.x1, -self.x2)

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0)


@dataclass(frozen=True)
class CylElem:
    """Element of SO(2) x R; the angle is stored in [0, 2 pi)."""

    theta: float
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _wrap(self.theta))

    def __add__(self, other):
        if not isinstance(other, CylElem):
            return NotImplemented
        return CylElem(self.theta + other.theta, self.eta + other.eta)

    def __neg__(self):
        return CylElem(-self.theta, -self.eta)

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0)


@dataclass(frozen=True)
class PerCylElem:
    """Element of SO(2) x Z."""

    phi: float
    m: int

    def __post_init__(self):
        object.__setattr__(self, "phi", _wrap(self.phi))
        if float(self.m) != round(float(self.m)):
            raise ValueError(f"m must be an integer, got {self.m!r}")
        object.__setattr__(self, "m", int(round(float(self.m))))

    def __add__(self, other):
        if not isinstance(other, PerCylElem):
            return NotImplemented
        return PerCylElem(self.phi + other.phi, self.m + other.m)

    def __neg__(self):
        return PerCylElem(-self.phi, -self.m)

    @classmethod
    def identity(cls):
        return cls(0.0, 0)


# --------------------------------------------------------------------------
# commutator functions


class CommutatorFunction:
    element_type: type = object

    def alpha(self, g, h) -> float:
        raise NotImplementedError

    def _check(self, *elems):
        for x in elems:
            if not isinstance(x, self.element_type):
                raise KindMismatch(
                    f"{type(self).__name__} expects {self.element_type.__name__}, got {type(x).__name__}"
                )

    def __call__(self, g, h) -> complex:
        self._check(g, h)
        return complex(np.exp(1j * self.alpha(g, h)))


@dataclass(frozen=True)
class PlaneLambda(CommutatorFunction):
    lam: float
    element_type = PlaneVec

    def alpha(self, g, h):
        return self.lam * (g.x1 * h.x2 - g.x2 * h.x1)


@dataclass(frozen=True)
class PeriodicCylinderNu(CommutatorFunction):
    """Genuine commutator function only for integer ``nu``."""

    nu: float
    element_type = PerCylElem

    def alpha(self, g, h):
        return self.nu * (h.m * g.phi - g.m * h.phi)


@dataclass(frozen=True)
class CylinderCandidate(CommutatorFunction):
    lam: float
    element_type = CylElem

    def alpha(self, g, h):
        return self.lam * (g.theta * h.eta - h.theta * g.eta)


def eval_commutator(cf: CommutatorFunction, g, h) -> complex:
    return cf(g, h)


def random_element(cf: CommutatorFunction, rng: np.random.Generator):
    t = cf.element_type
    if t is PlaneVec:
        return PlaneVec(*rng.normal(scale=2.0, size=2))
    if t is PerCylElem:
        return PerCylElem(rng.uniform(0, TWO_PI), int(rng.integers(-5, 6)))
    if t is CylElem:
        return CylElem(rng.uniform(0, TWO_PI), rng.uniform(-3.0, 3.0))
    raise KindMismatch(f"no sampler for {t}")


def random_triples(cf: CommutatorFunction, n: int, rng: np.random.Generator) -> list[tuple]:
    return [tuple(random_element(cf, rng) for _ in range(3)) for _ in range(n)]


@dataclass
class CocycleReport:
    max_deviation: dict[str, float]
    tolerance: float
    n_samples: int

    @property
    def worst(self) -> float:
        return max(self.max_deviation.values())

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "worst": self.worst,
            "tolerance": self.tolerance,
            "n_samples": self.n_samples,
            "pass": self.passed,
        }


def check_cocycle_laws(
    cf: CommutatorFunction,
    sample_triples: Sequence[tuple],
    tol: float = COCYCLE_TOL,
    min_samples: int = 100,
) -> CocycleReport:
    """Max deviation over the three bilinearity/antisymmetry laws."""
    if len(sample_triples) < min_samples:
        raise ValueError(f"need at least {min_samples} triples, got {len(sample_triples)}")
    left = right = anti = 0.0
    for g, h, k in sample_triples:
        left = max(left, abs(cf(g + h, k) - cf(g, k) * cf(h, k)))
        right = max(right, abs(cf(g, h + k) - cf(g, h) * cf(g, k)))
        anti = max(anti, abs(cf(g, h) * cf(h, g) - 1.0))
    return CocycleReport(
        {"additive_left": left, "additive_right": right, "antisymmetry": anti},
        tol,
        len(sample_triples),
    )


def cylinder_obstruction(lam: float, eta_samples: Iterable[float], theta0: float = 0.0) -> float:
    """Largest failure of the candidate commutator to respect theta ~ theta + 2 pi.

    Evaluates ``exp(i lam theta eta)`` at ``theta0`` and ``theta0 + 2 pi`` and
    returns ``max_eta |ratio - 1| = max_eta |exp(2 pi i lam eta) - 1|``.
    """
    etas = np.asarray(list(eta_samples), dtype=float)
    if etas.size == 0:
        raise ValueError("eta_samples must be nonempty")
    at = np.exp(1j * lam * theta0 * etas)
    wrapped = np.exp(1j * lam * (theta0 + TWO_PI) * etas)
    return float(np.max(np.abs(wrapped / at - 1.0)))


def flux_quantization_defect(nu: float) -> float:
    """``|c_nu((2 pi, 0), (0, 1)) - 1|`` with the unreduced angle."""
    return abs(complex(np.exp(1j * TWO_PI * nu)) - 1.0)


def flux_quantization_check(nu: float, tol: float = COCYCLE_TOL) -> bool:
    """True iff the flux per unit slice is an integer number of flux quanta."""
    return flux_quantization_defect(nu) <= tol


# --------------------------------------------------------------------------
# central extension


@dataclass(frozen=True)
class ExtensionElement:
    g: object
    s: complex = 1.0 + 0j

    def __post_init__(self):
        s = complex(self.s)
        if abs(abs(s) - 1.0) > 1e-12:
            raise ValueError(f"central component must have unit modulus, got |s|={abs(s)}")
        object.__setattr__(self, "s", s)


Beta = Callable[[object, object], float]


def symmetric_beta(cf: CommutatorFunction) -> Beta:
    """``beta = alpha/2``; available for the plane only."""
    if isinstance(cf, (PeriodicCylinderNu, CylinderCandidate)):
        raise KindMismatch("alpha/2 is not well defined when an angle is involved")
    return lambda g, h: 0.5 * cf.alpha(g, h)


def landau_beta(nu: int) -> Beta:
    """``beta((phi, m), (phi', m')) = nu phi m'``, well defined for integer nu."""

    def beta(g, h):
        return nu * g.phi * h.m

    return beta


def extension_multiply(a: ExtensionElement, b: ExtensionElement, beta: Beta) -> ExtensionElement:
    if type(a.g) is not type(b.g):
        raise KindMismatch(f"cannot multiply {type(a.g).__name__} by {type(b.g).__name__}")
    s = np.exp(1j * beta(a.g, b.g)) * a.s * b.s
    return ExtensionElement(a.g + b.g, s / abs(s))


def extension_inverse(a: ExtensionElement, beta: Beta) -> ExtensionElement:
    ginv = -a.g
    s = np.conj(a.s) * np.exp(-1j * beta(a.g, ginv))
    return ExtensionElement(ginv, s / abs(s))


def extension_commutator(a: ExtensionElement, b: ExtensionElement, beta: Beta) -> ExtensionElement:
    ab = extension_multiply(a, b, beta)
    ab_ainv = extension_multiply(ab, extension_inverse(a, beta), beta)
    return extension_multiply(ab_ainv, extension_inverse(b, beta), beta)


# --------------------------------------------------------------------------
# truncated representations on L^2(S^1) (Fourier window) and l^2(Z)


def _window(N: int) -> np.ndarray:
    return np.arange(-N, N + 1)


def _shift_matrix(N: int, s: int) -> np.ndarray:
    """Matrix sending basis vector e_n to e_{n+s}, dropping what leaves the window."""
    if abs(s) > N:
        raise WindowOverflow(f"shift {s} does not fit the window [-{N}, {N}]")
    return np.eye(2 * N + 1, k=-s, dtype=complex)


def _as_int_nu(nu) -> int:
    if float(nu) != round(float(nu)):
        raise KindMismatch(f"truncated representations need an integer nu, got {nu!r}")
    return int(round(float(nu)))


def rep_S1(nu: int, element: PerCylElem, N: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Action on L^2(S^1) in the Fourier basis e_n, n in [-N, N].

    ``(U(phi, m) f)(x) = exp(i nu m x) f(x + phi)``: diagonal phases
    ``exp(i n phi)`` followed by the index shift ``n -> n + nu m``.
    """
    nu = _as_int_nu(nu)
    n = _window(N)
    rot = np.diag(np.exp(1j * n * element.phi))
    return _shift_matrix(N, nu * element.m) @ rot


def rep_Z(nu: int, element: PerCylElem, N: int = DEFAULT_CUTOFF) -> np.ndarray:
    """Action on l^2(Z) restricted to n in [-N, N].

    ``(U(theta, m) f)(n) = exp(-i nu (n + m) theta) f(n + m)``: diagonal
    phases ``exp(-i nu n theta)`` followed by the shift ``f(n) -> f(n + m)``.
    """
    nu = _as_int_nu(nu)
    n = _window(N)
    rot = np.diag(np.exp(-1j * nu * n * element.phi))
    return _shift_matrix(N, -element.m) @ rot


def rep_shift_size(kind: str, nu: int, element: PerCylElem) -> int:
    return abs(nu * element.m) if kind == "S1" else abs(element.m)


def interior_mask(N: int, margin: int) -> np.ndarray:
    return np.abs(_window(N)) + margin <= N


def rep_commutator_deviation(kind: str, nu: int, g: PerCylElem, h: PerCylElem, N: int = DEFAULT_CUTOFF) -> float:
    """Max entry error of ``U(g)U(h)U(g)^+U(h)^+ - c_nu(g,h) I`` on interior columns."""
    rep = rep_S1 if kind == "S1" else rep_Z
    Ug, Uh = rep(nu, g, N), rep(nu, h, N)
    C = Ug @ Uh @ Ug.conj().T @ Uh.conj().T
    margin = rep_shift_size(kind, nu, g) + rep_shift_size(kind, nu, h)
    cols = interior_mask(N, margin)
    if not cols.any():
        raise WindowOverflow(f"no interior columns left for margin {margin} at N={N}")
    expected = PeriodicCylinderNu(nu)(g, h) * np.eye(2 * N + 1)
    return float(np.max(np.abs(C[:, cols] - expected[:, cols])))


def unitarity_deviation(U: np.ndarray, margin: int = 0) -> float:
    """``max |(U^+ U - I)|`` on the columns a shift of ``margin`` keeps inside."""
    N = (U.shape[0] - 1) // 2
    cols = interior_mask(N, margin)
    G = U.conj().T @ U
    return float(np.max(np.abs(G[np.ix_(cols, cols)] - np.eye(cols.sum()))))


# --------------------------------------------------------------------------
# actions on cylinder wavefunctions


def _check_q(config: CylinderConfig, psi: WaveFunction) -> None:
    if abs(config.q - psi.q) > Q_MATCH_TOL:
        raise IncompatibleStates(f"state has q={psi.q}, config has q={config.q}")


def wavefunction_rep_W(
    config: CylinderConfig,
    nu: int,
    phi: float,
    m: int,
    psi: WaveFunction,
    max_mode: int | None = None,
) -> WaveFunction:
    """``(W(phi, m) psi)(theta, y) = exp(i (nu m theta - q phi)) psi(theta + phi, y + m)``."""
    _check_q(config, psi)
    nu = _as_int_nu(nu)
    m = PerCylElem(0.0, m).m
    n = np.arange(psi.n_min, psi.n_max + 1)
    # theta + phi on mode n gives exp(i (n + q) phi); the prefactor removes q
    rotated = psi.profiles * np.exp(1j * n * phi)[:, None]
    shifted = shift_profiles(rotated, psi.grid, float(m))
    out = psi.with_profiles(shifted).relabel(nu * m)
    if max_mode is not None and max(abs(out.n_min), abs(out.n_max)) > max_mode:
        raise WindowOverflow(f"modes [{out.n_min}, {out.n_max}] exceed cutoff {max_mode}")
    return out


def heisenberg_rep_V(config: CylinderConfig, nu: float, xi: float, eta: float, psi: WaveFunction) -> WaveFunction:
    """``(V(xi, eta) psi)(theta, y) = exp(i nu xi y) psi(theta + xi, y + eta)``.

    Central charge ``-nu``; commutes with every ``W(phi, m)``.
    """
    _check_q(config, psi)
    n = np.arange(psi.n_min, psi.n_max + 1)
    rotated = psi.profiles * np.exp(1j * (n + psi.q) * xi)[:, None]
    shifted = shift_profiles(rotated, psi.grid, float(eta))
    return psi.with_profiles(shifted * np.exp(1j * nu * xi * psi.grid.points)[None, :])


# --------------------------------------------------------------------------
# plane: commutators of the wavefunction representation on L^2(R^2)


def _wedge(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


@dataclass
class PlaneGrid:
    half_width: float = 14.0
    n_points: int = 160

    @property
    def axis(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.n_points)

    @property
    def spacing(self) -> float:
        return 2 * self.half_width / (self.n_points - 1)


def default_plane_state(pg: PlaneGrid) -> np.ndarray:
    w1, w2 = np.meshgrid(pg.axis, pg.axis, indexing="ij")
    return (1.0 + 0.3 * w1 + 0.2j * w2) * np.exp(-0.5 * (w1**2 + w2**2))


def _shift2d(f: np.ndarray, h: float, a: Sequence[float]) -> np.ndarray:
    """``f(w + a)`` by zero-padded spectral interpolation."""
    n1, n2 = f.shape
    s1, s2 = (int(math.ceil(abs(c) / h)) for c in a)
    w = np.abs(f) ** 2
    total = w.sum()
    lost = 0.0
    for axis, s, c in ((0, s1, a[0]), (1, s2, a[1])):
        if s == 0:
            continue
        sl = [slice(None), slice(None)]
        sl[axis] = slice(0, s) if c > 0 else slice(f.shape[axis] - s, None)
        lost += w[tuple(sl)].sum()
    if total > 0 and lost / total > 1e-10:
        raise GridOverflow(f"plane shift {tuple(a)} leaves the grid")
    m1, m2 = next_fast_len(n1 + s1 + 16), next_fast_len(n2 + s2 + 16)
    k1 = 2 * math.pi * fftfreq(m1, d=h)[:, None]
    k2 = 2 * math.pi * fftfreq(m2, d=h)[None, :]
    F = fft2(f, s=(m1, m2))
    return ifft2(F * np.exp(1j * (k1 * a[0] + k2 * a[1])))[:n1, :n2]


def plane_action(lam: float, x: Sequence[float], y: Sequence[float], psi: np.ndarray, pg: PlaneGrid) -> np.ndarray:
    """``exp(i lam/2 (x^w - y^w)) psi(w + x + y)`` on the plane grid."""
    w1, w2 = np.meshgrid(pg.axis, pg.axis, indexing="ij")
    shifted = _shift2d(psi, pg.spacing, (x[0] + y[0], x[1] + y[1]))
    phase = 0.5 * lam * ((x[0] * w2 - x[1] * w1) - (y[0] * w2 - y[1] * w1))
    return np.exp(1j * phase) * shifted


@dataclass
class PlaneRepReport:
    lam: float
    rows: list[dict] = field(default_factory=list)
    tolerance: float = 1e-6

    @property
    def max_deviation(self) -> float:
        return max((r["deviation"] for r in self.rows), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "lam": self.lam,
            "rows": self.rows,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def plane_rep_check(
    lam: float,
    pairs: Sequence[tuple[Sequence[float], Sequence[float]]],
    psi_test: np.ndarray | None = None,
    grid: PlaneGrid | None = None,
    tol: float = 1e-6,
) -> PlaneRepReport:
    """Group commutators of the plane wavefunction representation.

    For translations ``x, x'`` acting through the first factor the
    commutator is ``exp(-i lam x^x')``; through the second factor it is
    ``exp(+i lam x^x')``; mixed pairs commute.
    """
    pg = grid or PlaneGrid()
    psi = default_plane_state(pg) if psi_test is None else np.asarray(psi_test, dtype=complex)
    zero = (0.0, 0.0)
    nrm = np.linalg.norm(psi)
    report = PlaneRepReport(lam, tolerance=tol)
    for x, xp in pairs:
        wedge = _wedge(x, xp)
        cases = {
            "first": ((x, zero), (xp, zero), np.exp(-1j * lam * wedge)),
            "second": ((zero, x), (zero, xp), np.exp(1j * lam * wedge)),
            "mixed": ((x, zero), (zero, xp), 1.0 + 0j),
        }
        for name, (a, b, expected) in cases.items():
            ab = plane_action(lam, *a, plane_action(lam, *b, psi, pg), pg)
            ba = plane_action(lam, *b, plane_action(lam, *a, psi, pg), pg)
            measured = np.vdot(ba, ab) / np.vdot(ba, ba)
            report.rows.append(
                {
                    "factor": name,
                    "x": list(map(float, x)),
                    "x_prime": list(map(float, xp)),
                    "expected_phase": [expected.real, expected.imag],
                    "measured_phase": [measured.real, measured.imag],
                    "deviation": float(np.linalg.norm(ab - expected * ba) / nrm),
                }
            )
    return report
