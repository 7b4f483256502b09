"""Exception types raised across the package."""


class ModCollatzError(ValueError):
    """Base class; subclasses ValueError so callers can catch either."""


class NotInvertible(ModCollatzError):
    pass


class NotCoprime(ModCollatzError):
    pass


class NotCoprime3(NotCoprime):
    pass


class NotCoprime6(NotCoprime):
    pass


class EvenModulus(ModCollatzError):
    pass


class SizeMismatch(ModCollatzError):
    pass


class DivisionByZeroPoly(ModCollatzError, ZeroDivisionError):
    pass
