"""Exception types shared by every module.

Each class carries the CLI exit code it maps to: 2 for inputs that fail a
precondition, 3 for violations of a mathematical contract.
"""


class ParaheckeError(Exception):
    exit_code = 3


class ShapeError(ParaheckeError, ValueError):
    """Dimensions, compositions or indices do not fit together."""

    exit_code = 2


class ConventionError(ParaheckeError, ValueError):
    """Input violates a fixed convention (e.g. non-monic resultant input)."""

    exit_code = 2


class UnitError(ParaheckeError, ArithmeticError):
    """Division by, or inversion of, a non-unit."""

    exit_code = 2


class CoprimalityError(ParaheckeError, ValueError):
    exit_code = 2


class FactorError(ParaheckeError, ValueError):
    exit_code = 2


class NoSplitError(ParaheckeError):
    """The level-by-level splitting system is inconsistent."""


class ConvergenceError(ParaheckeError):
    pass


class InternalError(ParaheckeError):
    pass
