"""Exception types shared across the package."""


class CournotError(Exception):
    """Base class for all errors raised by :mod:`cournot_energy`."""


class SingularMatrix(CournotError, ArithmeticError):
    """Gaussian elimination found no usable pivot.

    Attributes:
        column: elimination step at which the pivot vanished.
        pivot: magnitude of the largest available pivot at that step.
        tolerance: threshold the pivot was compared against.
    """

    def __init__(self, column: int, pivot: float, tolerance: float):
        self.column = column
        self.pivot = pivot
        self.tolerance = tolerance
        super().__init__(
            f"matrix is singular: pivot {pivot:.3e} at column {column} "
            f"is below tolerance {tolerance:.3e}"
        )


class DegenerateDenominator(CournotError, ArithmeticError):
    """A closed-form expression has a (numerically) vanishing denominator."""

    def __init__(self, stage: str, value: float, scale: float):
        self.stage = stage
        self.value = value
        self.scale = scale
        super().__init__(
            f"degenerate denominator in stage '{stage}': value {value:.3e} "
            f"against term scale {scale:.3e}"
        )


class DomainError(CournotError, ValueError):
    """An argument lies outside the domain of an energy or hardware model.

    ``which`` names the offending quantity (e.g. ``"q_q"``) when known.
    """

    def __init__(self, message: str, which: str | None = None):
        self.which = which
        super().__init__(message)


class InvalidBracket(CournotError, ValueError):
    """A root bracket is malformed (``lo >= hi`` or non-finite ends)."""


class NoSignChange(InvalidBracket):
    """The function has the same sign at both bracket ends."""

    def __init__(self, lo: float, hi: float, f_lo: float, f_hi: float):
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi
        super().__init__(
            f"no sign change on [{lo:.6g}, {hi:.6g}]: "
            f"f(lo)={f_lo:.6g}, f(hi)={f_hi:.6g}"
        )


class NoConvergence(CournotError, RuntimeError):
    """An iterative method hit its iteration limit."""

    def __init__(self, method: str, iterations: int, detail: str = ""):
        self.method = method
        self.iterations = iterations
        msg = f"{method} did not converge after {iterations} iterations"
        super().__init__(f"{msg}: {detail}" if detail else msg)
