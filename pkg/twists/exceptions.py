class TwistError(Exception):
    """Base class for every error raised by this package."""


class TruncationMismatchError(TwistError, ValueError):
    """Operands live in different truncations (order, legs or dimension)."""


class LegMismatchError(TruncationMismatchError):
    pass


class DimensionMismatchError(TruncationMismatchError):
    pass


class NotInvertibleError(TwistError, ZeroDivisionError):
    pass


class SeriesDomainError(TwistError, ValueError):
    """exp/log called outside the region where the truncated series is exact."""


class SingularInputError(TwistError, ValueError):
    """
    A denominator vanished or a log argument left the positive axis.
    ``expression`` names the offending factor.
    """

    def __init__(self, expression: str, value=None):
        self.expression = expression
        self.value = value
        msg = f"Singular input: {expression} is not admissible"
        if value is not None:
            msg += f" (value {value})"
        super().__init__(msg + ".")


class UnsupportedMethodError(TwistError, ValueError):
    pass


class ConfigurationError(TwistError):
    pass
