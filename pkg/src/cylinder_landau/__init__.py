"""Charged particle on a cylinder in a uniform radial magnetic field.

Submodules: ``core`` (config and units), ``gauge`` (potentials, holonomies,
gauge classes), ``grouprep`` (commutator functions, central extensions,
truncated representations), ``hilbert`` (quasi-periodic states),
``spectral`` (Landau spectrum and ground states), ``symmetry`` (magnetic
translations) and ``cli``.
"""
from .core import CylinderConfig, PhysicalInput, new_config, physical_step_size, translation_step
from .errors import CylinderError

__all__ = [
    "CylinderConfig",
    "CylinderError",
    "PhysicalInput",
    "new_config",
    "physical_step_size",
    "translation_step",
]

__version__ = "0.1.0"
