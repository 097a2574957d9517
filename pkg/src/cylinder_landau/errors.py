"""Exception hierarchy.

Every error raised by the package derives from :class:`CylinderError`, so
callers (the CLI in particular) can catch one type and report it.
"""


class CylinderError(Exception):
    """Base class for all package errors."""


class NonPositiveParameter(CylinderError, ValueError):
    pass


class ConfigError(CylinderError, ValueError):
    """Malformed or unreadable configuration input."""


class NonIntegerWinding(CylinderError, ValueError):
    """A gauge function with a non-integer angular frequency (multivalued)."""


class OpenLoop(CylinderError, ValueError):
    pass


class InsufficientLoopSuite(CylinderError, ValueError):
    pass


class KindMismatch(CylinderError, TypeError):
    pass


class WindowOverflow(CylinderError, IndexError):
    """An index shift leaves the truncated mode window."""


class GridOverflow(CylinderError, ValueError):
    """A y-shift pushes non-negligible weight off the grid."""


class TooFewPoints(CylinderError, ValueError):
    pass


class IncompatibleStates(CylinderError, ValueError):
    pass


class OutOfGrid(CylinderError, ValueError):
    pass


class ZeroState(CylinderError, ValueError):
    pass


class GridTooNarrow(CylinderError, ValueError):
    pass


class ConvergenceFailure(CylinderError, RuntimeError):
    pass


class NonAdmissibleTranslation(CylinderError, ValueError):
    """Axial shift whose length is not an integer multiple of 1/mu."""


class WindowTooSmall(CylinderError, ValueError):
    pass
