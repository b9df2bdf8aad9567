"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An input violates an operation's documented precondition."""


class DomainError(PreconditionError):
    """A value lies outside the domain the operation is defined on."""


class PoleError(ZeroDivisionError):
    """A Moebius map was evaluated at its pole."""


class FieldMismatchError(ValueError):
    """Arithmetic mixed two different real quadratic fields."""


class DegenerateOrbitError(RuntimeError):
    """A floating-point orbit kept landing on the singularity at 0."""
