"""Exception hierarchy.

Two branches matter for the CLI exit codes: ``ValidationError`` (bad input,
exit 1) and ``ToleranceError`` (a numerical tolerance was not met, exit 2).
"""


class QradonError(Exception):
    pass


class ValidationError(QradonError):
    """Input violates a structural precondition."""


class ToleranceError(QradonError):
    """A numerical tolerance was exceeded during computation."""


# dense linear algebra
class NotSquare(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class NotUnitary(ValidationError):
    pass


class ConvergenceFailure(ToleranceError):
    pass


# states
class TraceNotOne(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass


# tomographic pairs and frames
class NotUnitaryElement(ValidationError):
    pass


class DegenerateFrame(ValidationError):
    pass


class NotHomomorphism(ValidationError):
    pass


# finite groups
class BadParameter(ValidationError):
    pass


class NotIrreducible(ValidationError):
    pass


class ReconstructionNotState(ToleranceError):
    pass


class NotSubgroup(ValidationError):
    pass


# spin tomography
class ZeroAxis(ValidationError):
    pass


class NotSpecialUnitary(ValidationError):
    pass


class QuadratureTooCoarse(ToleranceError):
    pass


# Fock space / Weyl-Heisenberg
class BadCutoff(ValidationError):
    pass


class BadDirection(ValidationError):
    pass


class GridTooNarrow(ToleranceError):
    pass


class NegativityBeyondTolerance(ToleranceError):
    pass


class CutoffTooSmall(ToleranceError):
    pass


# classical Radon
class EmptyGrid(ValidationError):
    pass


# I/O
class FileFormatError(ValidationError):
    pass


class TooFewAngles(UserWarning):
    """Fewer projection angles than needed for quantitative reconstruction."""


class BoundaryMassWarning(UserWarning):
    """Image carries non-negligible mass at the grid boundary."""
