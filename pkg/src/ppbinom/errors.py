"""Exception types shared across the package."""


def describe_int(n: int) -> str:
    """Render a value for an error message; huge numbers abbreviate to
    their scale so messages never trip the int-to-str conversion limit."""
    if -(10**24) < n < 10**24:
        return str(n)
    return f"~10^{int(n.bit_length() * 0.30103)}"


class EmptyInput(ValueError):
    """An empty string or sequence was given where content is required."""


class InvalidDigit(ValueError):
    """A character in a number string is not a valid digit for the radix."""


class DigitOutOfRange(ValueError):
    """A digit value lies outside 0..base-1."""


class MixedBase(ValueError):
    """Digit strings with different bases were combined."""


class NotPrime(ValueError):
    """The base fails the primality check, or is too large to certify."""


class NegativeResult(ArithmeticError):
    """Subtraction was asked to produce a negative value."""


class OrderViolation(ValueError):
    """A pair (a, b) with a < b was given where a >= b is required."""


class EmptyBlock(ValueError):
    """A zero-width pseudo-digit block was requested."""


class NegativeValuation(ArithmeticError):
    """A quotient came out with more p-content below the line than above."""


class PrecisionMismatch(ValueError):
    """Valued units with different precision or different prime were combined."""


class LengthMismatch(ValueError):
    """Digit windows of unequal length were given to the bracket recursion."""


class TooLarge(ValueError):
    """An exact computation would exceed its configured size guard."""
