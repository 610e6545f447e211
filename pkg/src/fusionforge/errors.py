class FusionForgeError(Exception):
    pass


class DomainError(FusionForgeError, ValueError):
    pass


class CapacityError(FusionForgeError):
    """A request is too large for desk-scale computation."""


class NumericalError(FusionForgeError):
    """A floating point result failed a post-hoc consistency check."""


class IntegralityError(NumericalError):
    pass


class AxiomError(FusionForgeError, ValueError):
    """An explicit fusion table violates a ring axiom."""


class RingMismatchError(FusionForgeError, ValueError):
    pass


class FactorizationError(FusionForgeError):
    """No non-negative integer factorization of an induction Gram block exists."""


class AmbiguityError(FusionForgeError):
    def __init__(self, message, solutions=()):
        super().__init__(message)
        self.solutions = list(solutions)


class LocalityError(FusionForgeError):
    pass


class ClosureError(FusionForgeError):
    pass


class IdentityError(FusionForgeError):
    """A bookkeeping identity (index, mu) is violated beyond tolerance."""
