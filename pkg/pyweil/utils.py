"""Exceptions and warnings raised throughout pyweil."""

__all__ = [
    "PrimeMismatchError",
    "PrecisionExhaustedError",
    "PrecisionWarning",
    "NotAPadicIntegerError",
    "NotAWeilAlgebraError",
    "UnitLawError",
    "CommutativityError",
    "AssociativityError",
    "NilpotencyError",
    "AlgebraMismatchError",
    "ConvergenceError",
    "ShapeError",
    "FormIndexError",
    "DegenerateCurveError",
    "FormalGroupDomainError",
    "NotASolutionError",
    "SingularJacobianError",
    "NotAnApproximateRootError",
]


class PrimeMismatchError(ValueError):
    pass


class PrecisionExhaustedError(ArithmeticError):
    pass


class PrecisionWarning(RuntimeWarning):
    pass


class NotAPadicIntegerError(ValueError):
    pass


class NotAWeilAlgebraError(ValueError):
    def __init__(self, message: str, witness: tuple = ()):
        """Raised when structure constants do not describe a Weil algebra.

        Parameters
        ----------
        message : str

        witness : tuple of int
            1-based basis indices exhibiting the violation.

        """
        super().__init__(message)
        self.witness = tuple(witness)


class UnitLawError(NotAWeilAlgebraError):
    pass


class CommutativityError(NotAWeilAlgebraError):
    pass


class AssociativityError(NotAWeilAlgebraError):
    pass


class NilpotencyError(NotAWeilAlgebraError):
    pass


class AlgebraMismatchError(ValueError):
    pass


class ConvergenceError(ValueError):
    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class ShapeError(ValueError):
    pass


class FormIndexError(IndexError):
    pass


class DegenerateCurveError(ValueError):
    pass


class FormalGroupDomainError(ValueError):
    pass


class NotASolutionError(ValueError):
    pass


class SingularJacobianError(ValueError):
    pass


class NotAnApproximateRootError(ValueError):
    pass
