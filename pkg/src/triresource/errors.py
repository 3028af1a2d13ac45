"""Exception hierarchy. Every error is also a ``ValueError``."""


class TriresourceError(ValueError):
    pass


class NormalizationError(TriresourceError):
    """State norm deviates from 1 beyond the structural tolerance."""

    def __init__(self, deviation: float, tol: float = 1e-12):
        self.deviation = deviation
        super().__init__(f"state not normalized: |norm^2 - 1| = {deviation:.3e} > {tol:g}")


class DegenerateStateError(TriresourceError):
    """All-zero amplitude vector."""


class PositivityError(TriresourceError):
    """A density matrix determinant or eigenvalue is negative beyond tolerance."""


class HermiticityError(TriresourceError):
    """A matrix that should be Hermitian is not, or a Pauli trace has an imaginary part."""


class ParameterRangeError(TriresourceError):
    """A family parameter lies outside its allowed domain."""


class TriangleInequalityError(TriresourceError):
    """The squared one-vs-rest concurrences fail to form a triangle."""
