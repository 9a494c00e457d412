"""Independent brute-force ground truth.

Deliberately naive and auditable: exact binomials by the multiplicative
formula, the Pascal recurrence modulo an arbitrary modulus, and the
borrow-count valuation.  Nothing here touches the pseudo-digit machinery;
the only dependency is plain digit arithmetic.
"""

from __future__ import annotations

import math
from typing import Iterator

from .digits import subtract_with_borrows, to_base_p
from .errors import OrderViolation, TooLarge, describe_int

__all__ = [
    "binom_exact",
    "binom_mod_pascal",
    "kummer_valuation",
    "pascal_rows",
    "DEFAULT_MAX_DIGITS",
]

DEFAULT_MAX_DIGITS = 10**6
PASCAL_LIMIT = 10**4


def _check_pair(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise ValueError("naturals are nonnegative")
    if a < b:
        raise OrderViolation(
            f"need a >= b, got a={describe_int(a)} < b={describe_int(b)}"
        )


def _result_digits_estimate(a: int, b: int) -> int:
    """Upper estimate of the decimal digit count of C(a, b)."""
    k = min(b, a - b)
    if k == 0:
        return 1
    try:
        return int(
            (math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1))
            / math.log(10)
        ) + 1
    except OverflowError:
        # a too large for float; C(a, b) <= a**k is bound enough, and
        # bit_length avoids the int-to-str conversion limit on huge a
        digits_a = int(a.bit_length() * 0.30103) + 1
        return k * digits_a


def binom_exact(a: int, b: int, max_digits: int = DEFAULT_MAX_DIGITS) -> int:
    """Exact C(a, b) by the multiplicative formula, one exact division per step.

    Refuses (TooLarge) when the result would exceed ``max_digits`` decimal
    digits; the default guard keeps this a desk-scale tool.
    """
    _check_pair(a, b)
    estimate = _result_digits_estimate(a, b)
    if estimate > max_digits:
        raise TooLarge(
            f"C({describe_int(a)}, {describe_int(b)}) would have about "
            f"{describe_int(estimate)} digits, over the {max_digits} digit guard"
        )
    if b > a - b:
        b = a - b
    result = 1
    for i in range(1, b + 1):
        result = result * (a - b + i) // i
    return result


def pascal_rows(modulus: int, limit: int = PASCAL_LIMIT) -> Iterator[list[int]]:
    """Yield row A = [C(A, 0..A) mod modulus] for A = 0, 1, ... up to limit.

    Each yielded list is freshly allocated and safe to keep.
    """
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    row = [1 % modulus]
    a = 0
    while a <= limit:
        yield row
        one = 1 % modulus
        nxt = [one] * (a + 2)
        for b in range(1, a + 1):
            nxt[b] = (row[b - 1] + row[b]) % modulus
        row = nxt
        a += 1


def binom_mod_pascal(a: int, b: int, modulus: int) -> int:
    """C(a, b) mod modulus by running the Pascal recurrence row by row.

    Cost O(a**2); guarded at a <= 10**4.
    """
    _check_pair(a, b)
    if a > PASCAL_LIMIT:
        raise TooLarge(f"Pascal recurrence is guarded at a <= {PASCAL_LIMIT}")
    for i, row in enumerate(pascal_rows(modulus, a)):
        if i == a:
            return row[b]
    raise AssertionError("unreachable")


def kummer_valuation(a: int, b: int, p: int) -> int:
    """v_p C(a, b) as the borrow count of the base-p subtraction a - b."""
    _check_pair(a, b)
    return subtract_with_borrows(to_base_p(a, p), to_base_p(b, p), p)[1]
