"""Exception types shared across the library."""


class ZeroInverse(ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class ZeroPolynomial(ValueError):
    """Leading data, degree or division of/by the zero polynomial requested."""


class BothZero(ValueError):
    """gcd of two zero polynomials requested."""


class ZeroInput(ValueError):
    """Squarefree part of the zero polynomial requested."""


class PrefixTooShort(ValueError):
    """Analysis window N exceeds the available sequence prefix."""


class ZeroPrefix(ValueError):
    """Operation undefined on an all-zero prefix."""


class InvalidParam(ValueError):
    """Parameter outside the documented domain."""


class BudgetExceeded(RuntimeError):
    """Exhaustive search would exceed the configured work budget."""
