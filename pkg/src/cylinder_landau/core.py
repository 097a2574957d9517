"""Configuration, constants and derived quantities.

Default units are hbar = e = m = R = 1.  In these units the flux per unit
axial length measured in flux quanta is ``mu = e*B*R/hbar = B`` and the
admissible axial translation step is ``1/mu``.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

from scipy import constants as _sc

from .errors import ConfigError, NonPositiveParameter

# Gaussian-unit constants derived from CODATA (SI) values.
HBAR_CGS = _sc.hbar * 1e7                    # erg s
C_CGS = _sc.c * 1e2                          # cm / s
E_ESU = _sc.e * _sc.c * 10.0                 # statcoulomb (1 C = 10 c statC)


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (value > 0 and math.isfinite(value)):
            raise NonPositiveParameter(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class CylinderConfig:
    """Physical setup of the cylinder problem.

    ``q`` is reduced into [0, 1).  ``rho`` labels the gauge class through
    ``zeta = B*R*rho`` and is kept as given.  ``mu`` is always derived.
    """

    B: float = 1.0
    R: float = 1.0
    q: float = 0.0
    rho: float = 0.0
    hbar: float = 1.0
    e: float = 1.0
    m: float = 1.0
    mu: float = field(init=False)

    def __post_init__(self):
        _require_positive(B=self.B, R=self.R, hbar=self.hbar, e=self.e, m=self.m)
        if not math.isfinite(self.q) or not math.isfinite(self.rho):
            raise ConfigError("q and rho must be finite")
        q = float(self.q) % 1.0
        if q >= 1.0:  # e.g. -1e-17 % 1.0 rounds to 1.0
            q = 0.0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "mu", self.e * self.B * self.R / self.hbar)

    @property
    def zeta(self) -> float:
        """Offset of A_theta for the gauge class labelled by ``rho``."""
        return self.B * self.R * self.rho

    @property
    def magnetic_length(self) -> float:
        """Oscillator length sqrt(hbar/(eB)) = sqrt(R/mu)."""
        return math.sqrt(self.hbar / (self.e * self.B))

    @property
    def cyclotron_energy(self) -> float:
        """Landau level spacing hbar*e*B/m."""
        return self.hbar * self.e * self.B / self.m

    def replace(self, **changes) -> "CylinderConfig":
        values = self.to_dict()
        values.update(changes)
        return CylinderConfig(**values)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.pop("mu")
        return d


def new_config(B=1.0, R=1.0, q=0.0, rho=None, hbar=1.0, e=1.0, m=1.0) -> CylinderConfig:
    """Build a validated config.

    When ``rho`` is omitted the gauge class ``rho = q/mu`` is used, which
    puts the n = 0 ground state at y = 0.
    """
    _require_positive(B=B, R=R, hbar=hbar, e=e, m=m)
    if rho is None:
        mu = e * B * R / hbar
        rho = (float(q) % 1.0) / mu
    return CylinderConfig(B=B, R=R, q=q, rho=rho, hbar=hbar, e=e, m=m)


def translation_step(config: CylinderConfig) -> float:
    """Smallest admissible axial translation, hbar/(e*B*R) = 1/mu."""
    return 1.0 / config.mu


@dataclass(frozen=True)
class PhysicalInput:
    B_gauss: float
    R_cm: float

    def __post_init__(self):
        _require_positive(B_gauss=self.B_gauss, R_cm=self.R_cm)


def physical_step_size(inp: PhysicalInput) -> float:
    """Axial step hbar*c/(e*B*R) in centimetres (Gaussian units)."""
    return HBAR_CGS * C_CGS / (E_ESU * inp.B_gauss * inp.R_cm)


_CONFIG_KEYS = ("B", "R", "q", "rho", "hbar", "e", "m")


def config_from_mapping(data: dict) -> CylinderConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - set(_CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        values = {k: float(v) for k, v in data.items() if v is not None}
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"non-numeric config value: {exc}") from exc
    return new_config(**values)


def load_config(path: str | Path | None) -> CylinderConfig:
    """Read a JSON config file; ``None`` gives the default config."""
    if path is None:
        return new_config()
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_mapping(data)
