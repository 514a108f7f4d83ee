"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ComputationError(RuntimeError):
    """A numerical procedure failed to meet its contract (bracket, fit, quadrature)."""


class IntegrationError(ComputationError):
    """An ODE integration failed or violated a monitored invariant.

    Carries the similarity-velocity value ``u_offending`` at which the
    violation was detected, when applicable.
    """

    def __init__(self, message, u_offending=None):
        super().__init__(message)
        self.u_offending = u_offending


class SolverError(ComputationError):
    """The finite-volume solver produced an invalid state (NaN, negative pressure)."""
