"""Exception types shared across the package.

The CLI maps :class:`DomainError` to exit status 2 and
:class:`AccuracyError` to exit status 3.
"""


class DomainError(ValueError):
    """An argument lies outside the region where the computation is defined."""


class AccuracyError(ArithmeticError):
    """A numerical procedure could not reach its accuracy target."""


class HypergeometricAccuracyError(AccuracyError):
    """Series summation for 2F1 hit its term cap without converging.

    Attributes:
        partial_sum: value of the truncated series when summation stopped.
        n_terms: number of terms that were summed.
    """

    def __init__(self, message, partial_sum, n_terms):
        super().__init__(message)
        self.partial_sum = partial_sum
        self.n_terms = n_terms


class DegenerateExtractionError(DomainError):
    """G_k(r, alpha) vanishes, so c_{+-k} cannot be recovered from the derivatives."""


class AliasingError(DomainError):
    """Too few quadrature nodes to separate the requested Fourier mode."""


class RootBoundaryError(AccuracyError):
    """No sign change of phi was found below the bracket ceiling."""

    def __init__(self, message, bracket):
        super().__init__(message)
        self.bracket = bracket


class InvariantViolation(RuntimeError):
    """An internal invariant that the theory guarantees was observed to fail."""


class ConstructionError(RuntimeError):
    """A random admissible map could not be built within the attempt budget."""
