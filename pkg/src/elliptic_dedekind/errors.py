"""Exception types shared across the package."""


class DomainError(ValueError):
    """Arguments violate an operation's preconditions."""


class CoprimalityError(DomainError):
    """gcd(a, b) != 1 where coprimality is required."""


class UndefinedRationalPartError(DomainError):
    """(a; b) has a + b even, so the rational part does not exist."""


class NonConvergentError(ArithmeticError):
    """A series cannot converge (or did not converge) for the given inputs."""


class PoleError(ArithmeticError):
    """Evaluation point is too close to a lattice pole."""


class ScaleFactorError(ArithmeticError):
    """The rationality scale factor is too close to zero to divide by."""
