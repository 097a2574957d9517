"""Gauge potentials on the cylinder, holonomies and gauge classes.

Every potential with field strength ``dA = B R dtheta ^ dy`` can be written

    A = (zeta - B R y) dtheta + dLambda

with a real constant ``zeta`` and a single-valued function ``Lambda``.
Here ``Lambda`` is a finite sum of :class:`LambdaTerm` objects, each an
integer-frequency trigonometric factor in theta times a polynomial-Gaussian
factor in y, so single-valuedness holds by construction.

Orientation: the holonomy closed form uses ``Phi = B R * oint y dtheta``.
For a loop traversed counter-clockwise in the (theta, y) chart this is
minus B R times the enclosed area.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson

from .core import CylinderConfig
from .errors import InsufficientLoopSuite, NonIntegerWinding, OpenLoop

TWO_PI = 2.0 * math.pi
PHASE_TOL = 1e-8
CLOSURE_TOL = 1e-9
DEFAULT_SAMPLES = 64


def _as_integer(value, what: str) -> int:
    try:
        as_float = float(value)
    except (TypeError, ValueError) as exc:
        raise NonIntegerWinding(f"{what} must be an integer, got {value!r}") from exc
    if not math.isfinite(as_float) or as_float != round(as_float):
        raise NonIntegerWinding(f"{what} must be an integer, got {value!r}")
    return int(round(as_float))


@dataclass(frozen=True)
class LambdaTerm:
    """``coeff * trig(freq*theta) * P(y - y0) * exp(-(y - y0)^2 / (2 width^2))``.

    ``width=None`` drops the Gaussian factor.
    """

    coeff: float
    freq: int
    trig: str = "cos"
    poly: tuple[float, ...] = (1.0,)
    y0: float = 0.0
    width: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "freq", _as_integer(self.freq, "angular frequency"))
        if self.trig not in ("cos", "sin"):
            raise ValueError(f"trig must be 'cos' or 'sin', got {self.trig!r}")
        object.__setattr__(self, "poly", tuple(float(c) for c in self.poly))
        if self.width is not None and not self.width > 0:
            raise ValueError("width must be positive")

    def _angular(self, theta):
        x = self.freq * theta
        if self.trig == "cos":
            return np.cos(x), -self.freq * np.sin(x)
        return np.sin(x), self.freq * np.cos(x)

    def _axial(self, y):
        u = y - self.y0
        p = Polynomial(self.poly)
        if self.width is None:
            return p(u), p.deriv()(u)
        g = np.exp(-0.5 * u**2 / self.width**2)
        return p(u) * g, (p.deriv()(u) - p(u) * u / self.width**2) * g

    def value(self, theta, y):
        t, _ = self._angular(theta)
        a, _ = self._axial(y)
        return self.coeff * t * a

    def d_theta(self, theta, y):
        _, dt = self._angular(theta)
        a, _ = self._axial(y)
        return self.coeff * dt * a

    def d_y(self, theta, y):
        t, _ = self._angular(theta)
        _, da = self._axial(y)
        return self.coeff * t * da

    def translated(self, ell: float) -> "LambdaTerm":
        """The term evaluated at ``y - ell``."""
        return replace(self, y0=self.y0 + ell)

    def to_dict(self) -> dict:
        return {
            "coeff": self.coeff,
            "freq": self.freq,
            "trig": self.trig,
            "poly": list(self.poly),
            "y0": self.y0,
            "width": self.width,
        }


def _coerce_terms(terms) -> tuple[LambdaTerm, ...]:
    out = []
    for t in terms or ():
        out.append(t if isinstance(t, LambdaTerm) else LambdaTerm(**t))
    return tuple(out)


@dataclass(frozen=True)
class GaugePotential:
    zeta: float
    terms: tuple[LambdaTerm, ...]
    config: CylinderConfig

    @property
    def BR(self) -> float:
        return self.config.B * self.config.R

    def lam(self, theta, y):
        return sum((t.value(theta, y) for t in self.terms), np.zeros(np.broadcast(theta, y).shape))

    def A_theta(self, theta, y):
        theta = np.asarray(theta, dtype=float)
        y = np.asarray(y, dtype=float)
        out = self.zeta - self.BR * y + np.zeros(np.broadcast(theta, y).shape)
        for t in self.terms:
            out = out + t.d_theta(theta, y)
        return out

    def A_y(self, theta, y):
        theta = np.asarray(theta, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(theta, y).shape)
        for t in self.terms:
            out = out + t.d_y(theta, y)
        return out

    def to_dict(self) -> dict:
        return {"zeta": self.zeta, "lambda": [t.to_dict() for t in self.terms]}


def make_potential(config: CylinderConfig, zeta: float = 0.0, lambda_coeffs=()) -> GaugePotential:
    return GaugePotential(float(zeta), _coerce_terms(lambda_coeffs), config)


def potential_for_config(config: CylinderConfig) -> GaugePotential:
    """The Lambda = 0 representative of the class labelled by ``config.rho``."""
    return make_potential(config, config.zeta)


def potential_from_dict(config: CylinderConfig, data: dict) -> GaugePotential:
    return make_potential(config, data.get("zeta", config.zeta), data.get("lambda", ()))


def apply_gauge_transformation(A: GaugePotential, m: int, lambda_coeffs=()) -> GaugePotential:
    """Transform by ``g = exp(i m theta) exp(i (e/hbar) Lambda)``.

    The winding part shifts ``zeta`` by ``m hbar/e``; the exact part is
    appended to the potential's Lambda.
    """
    m = _as_integer(m, "winding number m")
    cfg = A.config
    return GaugePotential(
        A.zeta + m * cfg.hbar / cfg.e,
        A.terms + _coerce_terms(lambda_coeffs),
        cfg,
    )


def translate_potential(A: GaugePotential, ell: float) -> GaugePotential:
    """Pull back along y -> y + ell, i.e. ``A'(theta, y) = A(theta, y - ell)``."""
    return GaugePotential(
        A.zeta + A.BR * ell,
        tuple(t.translated(ell) for t in A.terms),
        A.config,
    )


def field_strength(A: GaugePotential, theta, y, step: float = 1e-4):
    """``d_theta A_y - d_y A_theta`` by central differences."""
    d_theta_Ay = (A.A_y(theta + step, y) - A.A_y(theta - step, y)) / (2 * step)
    d_y_Atheta = (A.A_theta(theta, y + step) - A.A_theta(theta, y - step)) / (2 * step)
    return d_theta_Ay - d_y_Atheta


@dataclass(frozen=True)
class Loop:
    """Piecewise-linear path in the universal cover (theta not reduced)."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float, copy=True)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 2:
            raise ValueError("loop vertices must be an (k >= 2, 2) array of (theta, y)")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def _turns(self) -> float:
        return (self.vertices[-1, 0] - self.vertices[0, 0]) / TWO_PI

    @property
    def is_closed(self) -> bool:
        dy = abs(self.vertices[-1, 1] - self.vertices[0, 1])
        turns = self._turns
        return dy <= CLOSURE_TOL and abs(turns - round(turns)) <= CLOSURE_TOL

    @property
    def winding(self) -> int:
        if not self.is_closed:
            raise OpenLoop(
                f"loop does not close: start {self.vertices[0].tolist()}, end {self.vertices[-1].tolist()}"
            )
        return int(round(self._turns))

    def __matmul__(self, other: "Loop") -> "Loop":
        """Concatenate ``self`` then ``other`` (both must share a base point)."""
        end = self.vertices[-1]
        start = other.vertices[0]
        turns = (end[0] - start[0]) / TWO_PI
        if abs(end[1] - start[1]) > CLOSURE_TOL or abs(turns - round(turns)) > CLOSURE_TOL:
            raise OpenLoop("loops do not share a base point")
        moved = other.vertices + np.array([end[0] - start[0], 0.0])
        return Loop(np.vstack([self.vertices, moved[1:]]))

    def to_dict(self) -> dict:
        d = {"vertices": self.vertices.tolist()}
        if self.is_closed:
            d["winding"] = self.winding
        return d


def loop_from_dict(data) -> Loop:
    verts = data["vertices"] if isinstance(data, dict) else data
    loop = Loop(verts)
    if isinstance(data, dict) and "winding" in data and loop.is_closed:
        if int(data["winding"]) != loop.winding:
            raise OpenLoop(f"declared winding {data['winding']} disagrees with vertices ({loop.winding})")
    return loop


def rectangle_loop(theta0: float, y0: float, d_theta: float, d_y: float) -> Loop:
    """Counter-clockwise rectangle in the (theta, y) chart."""
    return Loop(
        [
            (theta0, y0),
            (theta0 + d_theta, y0),
            (theta0 + d_theta, y0 + d_y),
            (theta0, y0 + d_y),
            (theta0, y0),
        ]
    )


def circle_loop(y: float, winding: int = 1, theta0: float = 0.0, segments_per_turn: int = 4) -> Loop:
    k = max(1, abs(winding) * segments_per_turn)
    thetas = theta0 + np.linspace(0.0, TWO_PI * winding, k + 1)
    return Loop(np.column_stack([thetas, np.full(k + 1, y)]))


def default_loop_suite() -> list[Loop]:
    return [
        rectangle_loop(0.0, 0.0, 1.0, 1.0),
        circle_loop(0.0, 1),
        circle_loop(0.0, 2),
        circle_loop(0.37, 1),
        circle_loop(0.37, 2),
    ]


def line_integral(A: GaugePotential, loop: Loop, samples_per_segment: int = DEFAULT_SAMPLES, rule: str = "gauss") -> float:
    """Numerical ``oint A`` along the piecewise-linear path."""
    if samples_per_segment < 2:
        raise ValueError("samples_per_segment must be >= 2")
    if rule == "gauss":
        nodes, weights = leggauss(samples_per_segment)
        t = 0.5 * (nodes + 1.0)
        w = 0.5 * weights
    elif rule == "simpson":
        n = samples_per_segment + (1 - samples_per_segment % 2)  # odd count
        t = np.linspace(0.0, 1.0, n)
        w = None
    else:
        raise ValueError(f"unknown quadrature rule {rule!r}")
    total = 0.0
    v = loop.vertices
    for p0, p1 in zip(v[:-1], v[1:]):
        d = p1 - p0
        th = p0[0] + t * d[0]
        yy = p0[1] + t * d[1]
        integrand = A.A_theta(th, yy) * d[0] + A.A_y(th, yy) * d[1]
        total += float(np.dot(w, integrand)) if w is not None else float(simpson(integrand, x=t))
    return total


def holonomy(A: GaugePotential, loop: Loop, samples_per_segment: int = DEFAULT_SAMPLES, rule: str = "gauss") -> complex:
    """``exp(i (e/hbar) oint A)`` along a closed loop."""
    if not loop.is_closed:
        loop.winding  # raises OpenLoop with a description
    cfg = A.config
    return complex(np.exp(1j * cfg.e / cfg.hbar * line_integral(A, loop, samples_per_segment, rule)))


def enclosed_flux(A: GaugePotential, loop: Loop) -> float:
    """``B R oint y dtheta``, exact for piecewise-linear loops."""
    v = loop.vertices
    return A.BR * float(np.sum(0.5 * (v[1:, 1] + v[:-1, 1]) * np.diff(v[:, 0])))


def holonomy_closed_form(A: GaugePotential, loop: Loop) -> complex:
    """``exp(i e/hbar zeta 2 pi w) exp(-i e/hbar Phi)``; Lambda drops out."""
    cfg = A.config
    w = loop.winding
    return complex(np.exp(1j * cfg.e / cfg.hbar * (A.zeta * TWO_PI * w - enclosed_flux(A, loop))))


@dataclass(frozen=True, eq=False)
class GaugeClass:
    """``zeta`` reduced modulo ``hbar/e``.  Equality is tolerant on the circle."""

    zeta_mod: float
    period: float
    B: float
    R: float
    tol: float = field(default=1e-9, repr=False)

    def distance(self, other: "GaugeClass") -> float:
        d = (self.zeta_mod - other.zeta_mod) % self.period
        return min(d, self.period - d)

    def __eq__(self, other):
        if not isinstance(other, GaugeClass):
            return NotImplemented
        return abs(self.period - other.period) <= self.tol * self.period and \
            self.distance(other) <= self.tol * self.period

    def __hash__(self):
        return hash(round(self.period, 9))

    @property
    def rho(self) -> float:
        """Class label in rho units (zeta = B R rho)."""
        return self.zeta_mod / (self.B * self.R)

    def to_dict(self) -> dict:
        return {"zeta_mod": self.zeta_mod, "period": self.period, "rho_mod": self.rho}


def classify(A: GaugePotential) -> GaugeClass:
    cfg = A.config
    period = cfg.hbar / cfg.e
    z = A.zeta % period
    if z >= period:
        z = 0.0
    return GaugeClass(z, period, cfg.B, cfg.R)


@dataclass
class HolonomyComparison:
    equivalent: bool
    tolerance: float
    loops: list[dict]

    @property
    def max_deviation(self) -> float:
        return max(r["deviation"] for r in self.loops)

    def to_dict(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "tolerance": self.tolerance,
            "max_deviation": self.max_deviation,
            "loops": self.loops,
        }


def holonomically_equivalent(
    A: GaugePotential,
    A2: GaugePotential,
    loop_suite: Sequence[Loop] | None = None,
    tol: float = PHASE_TOL,
    samples_per_segment: int = DEFAULT_SAMPLES,
) -> tuple[bool, HolonomyComparison]:
    """Compare holonomies loop by loop.

    Contractible loops cannot tell classes apart, so the suite must contain
    at least one winding loop.
    """
    suite = list(default_loop_suite() if loop_suite is None else loop_suite)
    windings = [lp.winding for lp in suite]
    if not any(w != 0 for w in windings):
        raise InsufficientLoopSuite("loop suite has no winding loop; zeta is invisible to it")
    rows = []
    for lp, w in zip(suite, windings):
        h1 = holonomy(A, lp, samples_per_segment)
        h2 = holonomy(A2, lp, samples_per_segment)
        dev = abs(h1 - h2)
        rows.append(
            {
                "winding": w,
                "h1": [h1.real, h1.imag],
                "h2": [h2.real, h2.imag],
                "deviation": dev,
                "agree": dev <= tol,
            }
        )
    equivalent = all(r["agree"] for r in rows)
    return equivalent, HolonomyComparison(equivalent, tol, rows)


def is_symmetry_translation(config: CylinderConfig, ell: float, tol: float = 1e-9) -> bool:
    """True iff the axial translation by ``ell`` maps the gauge class to itself."""
    x = ell * config.mu
    return abs(x - round(x)) <= tol


def nearest_admissible_shifts(config: CylinderConfig, ell: float) -> list[float]:
    """Admissible lengths k/mu bracketing ``ell`` (one value if ``ell`` is admissible)."""
    x = ell * config.mu
    if abs(x - round(x)) <= 1e-9:
        return [round(x) / config.mu]
    return [math.floor(x) / config.mu, math.ceil(x) / config.mu]
