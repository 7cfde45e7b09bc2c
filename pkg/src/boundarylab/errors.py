"""Exception types shared across the package.

The CLI maps these onto process exit codes, so library code should raise
the most specific one that applies.
"""


class ValidationError(ValueError):
    """Malformed or out-of-contract input (exit code 2)."""


class NumericalError(RuntimeError):
    """An iterative routine failed to converge (exit code 3)."""


class ClaimViolationError(AssertionError):
    """A mathematically guaranteed inequality failed numerically (exit code 4).

    Raised when a quantity the theory pins down (for example a scan that
    must stay nonnegative) comes out on the wrong side of its tolerance.
    This is a test-grade signal, never silent output.
    """


class BoundNotImprovableError(Exception):
    """The witness construction cannot beat the minimal-eigenvalue bound.

    Not a failure: it signals that the probe vector sits inside the minimal
    eigenspace, in which case the trivial decomposition is already optimal
    and the boundariness may equal the minimal eigenvalue.
    """
