"""Pseudo-digit decomposition of a pair A >= B in base p.

Digits of the two numbers are grouped from the low end: a group keeps
growing until the grouped value on the A side is >= the grouped value on
the B side, so every proper low prefix of a multi-digit group fails that
test.  The grouping depends on the pair, not on either number alone.
The count (total digits) - (number of groups) equals the p-adic valuation
of C(A, B), which makes the groups the natural unit for prime-power
congruences.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digits import _ALPHABET, DigitString, _digits_of, _value_of, ensure_prime
from .errors import EmptyBlock, OrderViolation, describe_int

__all__ = [
    "PseudoPair",
    "PseudoExpansion",
    "decompose",
    "pseudo_valuation",
    "block",
    "block_valuation",
]


@dataclass(frozen=True, slots=True)
class PseudoPair:
    """One group: fixed-width digit strings of both sides plus their values.

    The strings are authoritative (their width is the group length);
    the values are stored because the decomposition already computed them.
    """

    a: DigitString
    b: DigitString
    value_a: int
    value_b: int

    @property
    def length(self) -> int:
        return len(self.a.digits)


class PseudoExpansion:
    """Pseudo-digit segmentation of a pair (A, B) in base p.

    Stores the digit tuples of both numbers (B padded to A's width) and the
    segment boundaries; ``bounds[i]`` is the digit offset where group ``i``
    starts and ``bounds[-1]`` the total digit count.  PseudoPair views are
    materialized on demand.
    """

    __slots__ = ("p", "value_a", "value_b", "a_digits", "b_digits", "bounds", "_pairs")

    def __init__(
        self,
        p: int,
        value_a: int,
        value_b: int,
        a_digits: tuple[int, ...],
        b_digits: tuple[int, ...],
        bounds: tuple[int, ...],
    ) -> None:
        self.p = p
        self.value_a = value_a
        self.value_b = value_b
        self.a_digits = a_digits
        self.b_digits = b_digits
        self.bounds = bounds
        self._pairs: tuple[PseudoPair, ...] | None = None

    @property
    def num_pairs(self) -> int:
        return len(self.bounds) - 1

    @property
    def d(self) -> int:
        """Index of the most significant pair."""
        return len(self.bounds) - 2

    def pair(self, i: int) -> PseudoPair:
        """Group i; indices above d are single zero groups (padding)."""
        if i < 0:
            raise IndexError(f"pair index {i} is negative")
        if i > self.d:
            zero = DigitString((0,), self.p, padded=True)
            return PseudoPair(zero, zero, 0, 0)
        lo, hi = self.bounds[i], self.bounds[i + 1]
        a = DigitString(self.a_digits[lo:hi], self.p, padded=True)
        b = DigitString(self.b_digits[lo:hi], self.p, padded=True)
        return PseudoPair(a, b, _value_of(a.digits, self.p), _value_of(b.digits, self.p))

    @property
    def pairs(self) -> tuple[PseudoPair, ...]:
        if self._pairs is None:
            self._pairs = tuple(self.pair(i) for i in range(self.num_pairs))
        return self._pairs

    def a_groups(self) -> str:
        """Parenthesized big-endian groups, e.g. ``(4)(323)(2)(1)(433)(0)(12)``."""
        return self._groups(self.a_digits)

    def b_groups(self) -> str:
        return self._groups(self.b_digits)

    def _groups(self, digits: tuple[int, ...]) -> str:
        parts = []
        bounds = self.bounds
        for i in range(self.num_pairs - 1, -1, -1):
            lo, hi = bounds[i], bounds[i + 1]
            parts.append("(" + "".join(_ALPHABET[digits[j]] for j in range(hi - 1, lo - 1, -1)) + ")")
        return "".join(parts)

    def __repr__(self) -> str:
        return (
            f"PseudoExpansion(p={self.p}, a={self.a_groups()}, b={self.b_groups()})"
        )


def decompose(A: int, B: int, p: int) -> PseudoExpansion:
    """Segment the pair (A, B) into pseudo-digits, least significant first.

    Grows each group one digit at a time until the A-side group value is
    >= the B-side group value, then starts the next group.  Raises
    OrderViolation when A < B.
    """
    if A < 0 or B < 0:
        raise ValueError("naturals are nonnegative")
    if A < B:
        raise OrderViolation(
            f"need A >= B, got A={describe_int(A)} < B={describe_int(B)}"
        )
    ensure_prime(p)
    da = _digits_of(A, p)
    total = len(da)
    db = _digits_of(B, p)
    if len(db) < total:
        db = db + (0,) * (total - len(db))
    bounds = [0]
    i = 0
    while i < total:
        av = bv = 0
        w = 1
        c = 0
        while True:
            av += da[i + c] * w
            bv += db[i + c] * w
            w *= p
            c += 1
            if av >= bv:
                break
            # A >= B guarantees the test passes before the digits run out,
            # so a group never needs more digits than A has left.
            assert i + c < total, "pseudo-digit group ran past the available digits"
        i += c
        bounds.append(i)
    return PseudoExpansion(p, A, B, da, db, tuple(bounds))


def pseudo_valuation(e: PseudoExpansion) -> int:
    """Total digits minus group count: the p-adic valuation of C(A, B)."""
    return len(e.a_digits) - e.num_pairs


def block(e: PseudoExpansion, i: int, length: int) -> tuple[DigitString, DigitString]:
    """Concatenation of groups i .. i+length-1 on both sides.

    Groups above the top index contribute a single zero digit each, which
    is the padding the leading block of a short expansion needs.
    """
    if length < 1:
        raise EmptyBlock("blocks span at least one pseudo-digit")
    if i < 0:
        raise IndexError(f"block start {i} is negative")
    np = e.num_pairs
    lo = e.bounds[min(i, np)]
    hi = e.bounds[min(i + length, np)]
    pad = (0,) * max(0, i + length - max(i, np))
    a = e.a_digits[lo:hi] + pad
    b = e.b_digits[lo:hi] + pad
    return (
        DigitString(a, e.p, padded=True),
        DigitString(b, e.p, padded=True),
    )


def block_valuation(e: PseudoExpansion, i: int, length: int) -> int:
    """Digit count of the block minus its group count.

    Equals the p-adic valuation of the block binomial C(a-block, b-block);
    padded zero groups above the top contribute nothing.
    """
    if length < 1:
        raise EmptyBlock("blocks span at least one pseudo-digit")
    if i < 0:
        raise IndexError(f"block start {i} is negative")
    np = e.num_pairs
    lo = e.bounds[min(i, np)]
    hi = e.bounds[min(i + length, np)]
    in_range = min(i + length, np) - min(i, np)
    return (hi - lo) - in_range
