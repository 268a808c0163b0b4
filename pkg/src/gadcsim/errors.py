"""Exception types raised across the package."""


class ValidationError(ValueError):
    """Input violates a documented precondition (shape, range, Hermiticity...)."""


class SingularParameterError(ValidationError):
    """Parameter values at which a closed-form expression is genuinely singular."""


class NumericalError(ArithmeticError):
    """A numerical routine produced a result outside its tolerance envelope."""


class NullOutcomeError(ArithmeticError):
    """A selective measurement branch has (numerically) zero probability."""
