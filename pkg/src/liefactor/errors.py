"""Exception types shared across the package."""


class LieFactorError(Exception):
    """Base class for errors raised by this package."""


class PluginMismatchError(LieFactorError):
    """Operands belong to different algebra plugins or incompatible truncations."""


class DomainError(LieFactorError):
    """An input violates a documented precondition."""


class ConvergenceError(LieFactorError):
    """A formal-series operation would need infinitely many terms."""


class ResidualError(LieFactorError):
    """A solver or consistency assertion finished with a nonzero residual.

    The recursion is guaranteed to terminate with residual zero, so this
    always indicates an implementation bug; `diagnostics` carries a dump of
    the offending terms.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics if diagnostics is not None else {}


class ConfigError(LieFactorError):
    """Invalid command-line or configuration input."""
