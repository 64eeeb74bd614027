"""Exception hierarchy shared by all ineqprove modules."""


class IneqproveError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(IneqproveError):
    """Malformed inputs or settings (bad interval, precision too low, ...)."""


class ExpressionSyntaxError(IneqproveError):
    """Source text could not be parsed; carries the 0-based character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownIdentifierError(ExpressionSyntaxError):
    """An identifier that is neither a variable, constant nor known function."""

    def __init__(self, name, position):
        super().__init__(f"unknown identifier '{name}'", position)
        self.name = name


class DomainError(IneqproveError):
    """Evaluation outside the natural domain of a sub-expression."""


class PrecisionUnreachableError(IneqproveError):
    """Quadrature node budget exhausted before the error target was met."""


class RootBracketError(IneqproveError):
    """A bracketing root search found no sign change over its interval."""


class LimitError(IneqproveError):
    """Base class for endpoint-limit extrapolation failures.

    ``hint_exponent`` is the observed growth/decay exponent of the quotient
    sequence; it suggests how far off the supplied exponent is.
    """

    def __init__(self, message, hint_exponent=None, endpoint=None):
        if hint_exponent is not None:
            message = f"{message} (observed exponent hint: {hint_exponent})"
        if endpoint is not None:
            message = f"{message} [endpoint {endpoint}]"
        super().__init__(message)
        self.hint_exponent = hint_exponent
        self.endpoint = endpoint


class DivergentLimitError(LimitError):
    """Quotient grows without bound: the supplied exponent is too large."""


class ZeroLimitError(LimitError):
    """Quotient tends to zero: the supplied exponent is too small."""


class UnstableLimitError(LimitError):
    """Accelerated quotient sequence failed to stabilize."""


class MultiplicityError(IneqproveError):
    """A derivative of order below the supplied one does not vanish."""

    def __init__(self, endpoint, order, value):
        super().__init__(
            f"derivative of order {order} does not vanish at {endpoint} "
            f"(value {value}); supplied root multiplicity is inconsistent"
        )
        self.endpoint = endpoint
        self.order = order
        self.value = value


class SingularSystemError(IneqproveError):
    """The levelled interpolation system is singular (coincident nodes)."""


class AlternationError(IneqproveError):
    """The exchange step found fewer alternating extrema than required."""

    def __init__(self, message, found=None, required=None):
        super().__init__(message)
        self.found = found
        self.required = required


class ConvergenceError(IneqproveError):
    """Remez iteration exhausted its budget without converging."""

    def __init__(self, message, history=()):
        super().__init__(message)
        self.history = tuple(history)


class CertificationError(IneqproveError):
    """Positivity could not be certified; carries the deepest failing leaf."""

    def __init__(self, message, left=None, right=None, bound=None):
        super().__init__(message)
        self.left = left
        self.right = right
        self.bound = bound
