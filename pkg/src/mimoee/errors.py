"""Exception types shared across the package."""


class MimoeeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(MimoeeError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(MimoeeError, ValueError):
    """A value type violates one of its invariants."""


class ConfigError(MimoeeError):
    """Scenario configuration could not be parsed or validated."""


class UnboundedDesignError(MimoeeError):
    """The EE objective has no finite optimum over the requested space."""


class InfeasibleError(MimoeeError):
    """No feasible candidate exists for the requested optimization."""


class NumericalError(MimoeeError):
    """A numerical routine failed to converge to its stated tolerance."""
