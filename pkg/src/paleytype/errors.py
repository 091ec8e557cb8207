"""Exception hierarchy shared by all modules."""


class PaleyError(Exception):
    """Base class for every error raised by this package."""


class PrimeSetError(PaleyError, ValueError):
    """Raised when a list of primes cannot form a valid modulus."""

    def __init__(self, message: str, value: int | None = None):
        super().__init__(message)
        self.value = value


class NotPrime(PrimeSetError):
    pass


class NotPythagorean(PrimeSetError):
    pass


class Duplicate(PrimeSetError):
    pass


class NotAscending(PrimeSetError):
    pass


class CoordOutOfRange(PaleyError, ValueError):
    pass


class TooLarge(PaleyError):
    """An operation was asked to run beyond its size guard."""


class VerificationFailed(PaleyError):
    """A constructed certificate did not survive its exhaustive check."""


class Inconclusive(PaleyError):
    """No invariant certificate could settle the question."""


class NoConvergence(PaleyError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SpectrumMismatch(PaleyError):
    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


class MismatchedMultiplicity(SpectrumMismatch):
    pass


class ValueGap(SpectrumMismatch):
    pass


class BudgetExceeded(PaleyError):
    def __init__(self, message: str, nodes: int):
        super().__init__(message)
        self.nodes = nodes


class PreconditionFailed(PaleyError):
    def __init__(self, message: str, hypothesis: str):
        super().__init__(message)
        self.hypothesis = hypothesis
