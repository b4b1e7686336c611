"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` string; the CLI
prints it on stderr and maps the class to an exit status (validation
errors exit 1, numerical failures exit 2).
"""


class SpinpointError(Exception):
    """Base class for all package-specific errors."""

    code = "error"


class DimensionError(SpinpointError, ValueError):
    """Operands have incompatible shapes."""

    code = "dimension-mismatch"


class NonFiniteError(SpinpointError, ValueError):
    """A matrix would contain NaN or Inf entries."""

    code = "non-finite"


class ConvergenceError(SpinpointError, RuntimeError):
    """QR iteration exhausted its sweep budget.

    ``block_index`` is the trailing index of the active block that failed
    to deflate.
    """

    code = "no-convergence"

    def __init__(self, message, block_index=None):
        super().__init__(message)
        self.block_index = block_index


class ZeroDiscriminantError(SpinpointError, ArithmeticError):
    """The pencil's discriminant vanishes identically: every parameter
    value is degenerate, so there is no finite root list to report."""

    code = "zero-discriminant"


class SheetTrackingError(SpinpointError, RuntimeError):
    """Eigenvalue continuation could not resolve a step even after the
    maximum number of bisections (path too close to an exceptional point).

    ``step_index`` is the index of the requested step that failed.
    """

    code = "sheet-tracking"

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index
