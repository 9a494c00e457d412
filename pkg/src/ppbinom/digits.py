"""Base-p digit arithmetic on arbitrary-precision nonnegative integers.

Naturals are plain Python ints (always >= 0).  Digit strings are stored
little-endian, so index ``i`` carries weight ``p**i``; the text form is
most-significant digit first, using the characters 0-9 then a-z, matching
the way numbers are normally written out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import (
    DigitOutOfRange,
    EmptyInput,
    InvalidDigit,
    MixedBase,
    NegativeResult,
    NotPrime,
    describe_int,
)

__all__ = [
    "DigitString",
    "parse_natural",
    "parse_digits",
    "to_base_p",
    "from_base_p",
    "subtract_with_borrows",
    "concat_value",
    "is_prime",
    "ensure_prime",
]

_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"
_DIGIT_VALUE = {c: i for i, c in enumerate(_ALPHABET)}
_DIGIT_VALUE.update({c.upper(): i for i, c in enumerate(_ALPHABET) if c.isalpha()})

# Deterministic Miller-Rabin witness set, valid for every n < 2**64.
_MR_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_PRIME_LIMIT = 1 << 64


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2**64.

    Raises NotPrime for n >= 2**64: such bases are rejected rather than
    certified probabilistically.
    """
    if n >= _PRIME_LIMIT:
        raise NotPrime(
            f"base {describe_int(n)} is too large to certify prime (limit 2**64)"
        )
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % small == 0:
            return n == small
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def ensure_prime(p: int) -> int:
    """Return p if prime, otherwise raise NotPrime."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


@dataclass(frozen=True, slots=True)
class DigitString:
    """Little-endian digit sequence in a fixed base.

    ``padded`` marks strings whose most-significant zeros are significant
    (fixed-width blocks); canonical strings carry no leading zeros unless
    the value itself is zero.  Constructors assume digits already lie in
    0..base-1; use the parse/convert functions for untrusted input, or
    call :meth:`validate`.
    """

    digits: tuple[int, ...]
    base: int
    padded: bool = False

    def __post_init__(self) -> None:
        if not self.digits:
            raise EmptyInput("a digit string needs at least one digit")
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")

    def validate(self) -> "DigitString":
        """Check the full type invariants; returns self for chaining."""
        for d in self.digits:
            if d < 0 or d >= self.base:
                raise DigitOutOfRange(f"digit {d} out of range for base {self.base}")
        if not self.padded and len(self.digits) > 1 and self.digits[-1] == 0:
            raise ValueError("unpadded digit string has a leading zero")
        return self

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join(_ALPHABET[d] for d in reversed(self.digits))

    @property
    def value(self) -> int:
        return _value_of(self.digits, self.base)

    def pad_to(self, length: int) -> "DigitString":
        """Extend with most-significant zeros up to ``length``."""
        if length <= len(self.digits):
            return self
        return DigitString(
            self.digits + (0,) * (length - len(self.digits)), self.base, padded=True
        )

    def trimmed(self) -> "DigitString":
        """Canonical form: leading zeros stripped (value 0 keeps one digit)."""
        digits = self.digits
        n = len(digits)
        while n > 1 and digits[n - 1] == 0:
            n -= 1
        return DigitString(digits[:n], self.base)


@lru_cache(maxsize=64)
def _chunk_for(base: int) -> tuple[int, int]:
    # Digit count per ~1024-bit chunk; keeps radix conversion of very long
    # numbers from doing one big divmod per digit.
    k = max(1, int(1024 / math.log2(base)))
    return base**k, k


def _digits_of(n: int, base: int) -> tuple[int, ...]:
    """Little-endian digits of n >= 0 (no primality requirement)."""
    if n < 0:
        raise ValueError("naturals are nonnegative")
    if n == 0:
        return (0,)
    chunk, k = _chunk_for(base)
    out: list[int] = []
    if n >= chunk:
        parts = []
        while n >= chunk:
            n, low = divmod(n, chunk)
            parts.append(low)
        last = n
        for part in parts:
            for _ in range(k):
                part, r = divmod(part, base)
                out.append(r)
        n = last
    while n:
        n, r = divmod(n, base)
        out.append(r)
    return tuple(out)


def _value_of(digits: Sequence[int], base: int) -> int:
    """Positional value of little-endian digits (no range check)."""
    chunk, k = _chunk_for(base)
    n = len(digits)
    if n <= k:
        v = 0
        for d in reversed(digits):
            v = v * base + d
        return v
    total = 0
    for lo in range(((n - 1) // k) * k, -1, -k):
        group = digits[lo : lo + k]
        gv = 0
        for d in reversed(group):
            gv = gv * base + d
        total = total * base ** len(group) + gv
    return total


def parse_natural(text: str, radix: int) -> int:
    """Parse a most-significant-first number string into a natural.

    Accepts digits 0-9 and letters a-z (case-insensitive) up to the radix.
    """
    if not 2 <= radix <= 36:
        raise ValueError(f"radix must be in 2..36, got {radix}")
    if not text:
        raise EmptyInput("empty number string")
    value = 0
    for ch in text:
        d = _DIGIT_VALUE.get(ch)
        if d is None or d >= radix:
            raise InvalidDigit(f"{ch!r} is not a base-{radix} digit")
        value = value * radix + d
    return value


def parse_digits(text: str, base: int) -> DigitString:
    """Parse a digit string literally, keeping significant leading zeros."""
    if not 2 <= base <= 36:
        raise ValueError(f"base must be in 2..36 for text digits, got {base}")
    if not text:
        raise EmptyInput("empty digit string")
    digits = []
    for ch in reversed(text):
        d = _DIGIT_VALUE.get(ch)
        if d is None or d >= base:
            raise InvalidDigit(f"{ch!r} is not a base-{base} digit")
        digits.append(d)
    padded = len(text) > 1 and text[0] == "0"
    return DigitString(tuple(digits), base, padded=padded)


def to_base_p(n: int, p: int) -> DigitString:
    """Canonical base-p digit string of n; p must be prime."""
    ensure_prime(p)
    return DigitString(_digits_of(n, p), p)


def from_base_p(s: DigitString, p: int) -> int:
    """Positional value of a digit string; inverse of to_base_p."""
    ensure_prime(p)
    if s.base != p:
        raise MixedBase(f"digit string has base {s.base}, expected {p}")
    for d in s.digits:
        if d < 0 or d >= p:
            raise DigitOutOfRange(f"digit {d} out of range for base {p}")
    return _value_of(s.digits, p)


def subtract_with_borrows(
    a: DigitString, b: DigitString, p: int
) -> tuple[DigitString, int]:
    """Schoolbook base-p subtraction a - b with a count of borrow positions.

    The borrow count equals the p-adic valuation of C(value(a), value(b)).
    Raises NegativeResult when a < b.
    """
    if a.base != p or b.base != p:
        raise MixedBase(f"operands must both be base {p}")
    da, db = a.digits, b.digits
    la, lb = len(da), len(db)
    out = []
    borrow = 0
    borrows = 0
    for i in range(max(la, lb)):
        x = (da[i] if i < la else 0) - borrow - (db[i] if i < lb else 0)
        if x < 0:
            x += p
            borrow = 1
            borrows += 1
        else:
            borrow = 0
        out.append(x)
    if borrow:
        raise NegativeResult("subtrahend exceeds minuend")
    n = len(out)
    while n > 1 and out[n - 1] == 0:
        n -= 1
    return DigitString(tuple(out[:n]), p), borrows


def concat_value(blocks: Iterable[DigitString]) -> DigitString:
    """Concatenate digit strings, block 0 least significant.

    Every block contributes its full (possibly padded) width, so leading
    zeros inside a block stay significant.
    """
    blocks = list(blocks)
    if not blocks:
        raise EmptyInput("no blocks to concatenate")
    base = blocks[0].base
    digits: list[int] = []
    for blk in blocks:
        if blk.base != base:
            raise MixedBase(f"block base {blk.base} differs from {base}")
        digits.extend(blk.digits)
    padded = len(digits) > 1 and digits[-1] == 0
    return DigitString(tuple(digits), base, padded=padded)
