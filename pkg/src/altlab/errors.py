"""Exception types raised across altlab."""


class AltLabError(Exception):
    """Base class for all altlab errors."""


class DomainError(AltLabError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConvergenceError(AltLabError, ArithmeticError):
    """The Jacobi eigensolver did not reach its tolerance.

    The off-diagonal Frobenius mass left after the last sweep is kept on
    ``residual`` so callers can judge how far off the result was.
    """

    def __init__(self, message, residual, sweeps):
        super().__init__(f"{message} (residual={residual:.3e}, sweeps={sweeps})")
        self.residual = residual
        self.sweeps = sweeps


class RangeError(AltLabError, OverflowError):
    """A power or norm left the finite double-precision range."""


class MatrixFormatError(AltLabError, ValueError):
    """A matrix document could not be parsed; ``offset`` is a byte offset."""

    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
