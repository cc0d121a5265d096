"""Exception types shared by all modules."""


class KernelError(Exception):
    """Base class for numerical failures in this package."""


class DomainError(KernelError, ValueError):
    """Argument outside the region where an operation is defined."""


class NonConvergence(KernelError, ArithmeticError):
    """A series did not reach its certified tail bound within the term budget."""


class QuadratureFailure(KernelError, ArithmeticError):
    """A quadrature rule did not reach its tolerance within the refinement budget."""


class DegenerateRoots(KernelError, ArithmeticError):
    """Two denominator roots coincide, so simple-pole residues are undefined."""


class TailUnbounded(KernelError, ArithmeticError):
    """No exponential decay of a Laplace integrand could be detected."""


class EnvelopeMissing(KernelError, ValueError):
    """A transform was requested without a decay envelope for the input."""


class NonFiniteResult(KernelError, ArithmeticError):
    """A computation produced NaN or infinity."""


class PrecisionWarning(UserWarning):
    """Result is finite but carries a large rounding error."""
