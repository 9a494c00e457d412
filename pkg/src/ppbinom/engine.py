"""Evaluate C(A, B) modulo p**N three ways.

* ``theorem_evaluate``: the pseudo-digit block-quotient product.  With
  m = v_p C(A,B) and n = N - m, the binomial is congruent mod p**(n+m) to
  the binomial of the top n pseudo-digit blocks times, for each lower
  position, the quotient of an n-block binomial by the (n-1)-block
  binomial above it.  Every quotient is p-integral and its valuation is
  exactly the valuation contributed by its lowest pseudo-digit.
* ``davis_webb_evaluate``: the digit-window bracket recursion, which
  keeps the window a fixed width N and pays a factor p each time the top
  window comparison fails.
* ``lucas_evaluate``: the classic single-digit product mod p.

All three track values as ``p**valuation * unit`` with the unit held at a
fixed precision, so nothing ever materializes the exact binomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .digits import DigitString, _value_of, _digits_of, ensure_prime, subtract_with_borrows
from .errors import (
    LengthMismatch,
    MixedBase,
    NegativeValuation,
    OrderViolation,
    PrecisionMismatch,
    describe_int,
)
from .pseudo import PseudoExpansion, block, decompose, pseudo_valuation

__all__ = [
    "ValuedUnit",
    "Factor",
    "EvalTrace",
    "exact_binom_mod",
    "vu_mul",
    "vu_div",
    "theorem_factors",
    "theorem_evaluate",
    "lucas_evaluate",
    "dw_bracket",
    "davis_webb_evaluate",
    "format_trace_text",
    "format_trace_records",
]


@dataclass(frozen=True, slots=True)
class ValuedUnit:
    """p**valuation times a unit residue known modulo p**precision.

    The represented quantity is congruent to ``p**valuation * unit``
    modulo ``p**(valuation + precision)``.  Exact zero is a distinct flag,
    not a sentinel valuation.
    """

    p: int
    valuation: int
    unit: int
    precision: int
    zero: bool = False

    def __post_init__(self) -> None:
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        if self.valuation < 0:
            raise NegativeValuation("valuation must be >= 0")
        if self.zero:
            if self.unit != 0:
                raise ValueError("exact zero carries unit 0")
        elif self.unit % self.p == 0:
            raise ValueError(f"unit {self.unit} is divisible by {self.p}")

    def value_mod(self) -> int:
        """The represented value as an integer mod p**(valuation+precision)."""
        if self.zero:
            return 0
        pv = self.p**self.valuation
        return pv * self.unit % (pv * self.p**self.precision)

    def __str__(self) -> str:
        if self.zero:
            return "0"
        if self.valuation == 0:
            return str(self.unit)
        return f"{self.p}^{self.valuation} {self.unit}"

    def __mul__(self, other: "ValuedUnit") -> "ValuedUnit":
        return vu_mul(self, other)

    def __truediv__(self, other: "ValuedUnit") -> "ValuedUnit":
        return vu_div(self, other)


def _check_compatible(x: ValuedUnit, y: ValuedUnit) -> None:
    if x.p != y.p or x.precision != y.precision:
        raise PrecisionMismatch(
            f"cannot combine units at {x.p}**{x.precision} and {y.p}**{y.precision}"
        )


def vu_mul(x: ValuedUnit, y: ValuedUnit) -> ValuedUnit:
    """Multiply: valuations add, units multiply mod p**precision."""
    _check_compatible(x, y)
    if x.zero or y.zero:
        return ValuedUnit(x.p, 0, 0, x.precision, zero=True)
    pe = x.p**x.precision
    return ValuedUnit(x.p, x.valuation + y.valuation, x.unit * y.unit % pe, x.precision)


def vu_div(x: ValuedUnit, y: ValuedUnit) -> ValuedUnit:
    """Divide: valuations subtract, units divide via the modular inverse.

    Raises NegativeValuation when the quotient would have more p-content
    below the line than above, i.e. is not p-integral.
    """
    _check_compatible(x, y)
    if y.zero:
        raise ZeroDivisionError("division by exact zero")
    if x.zero:
        return ValuedUnit(x.p, 0, 0, x.precision, zero=True)
    v = x.valuation - y.valuation
    if v < 0:
        raise NegativeValuation(
            f"quotient valuation {x.valuation} - {y.valuation} is negative"
        )
    pe = x.p**x.precision
    unit = x.unit * pow(y.unit, -1, pe) % pe
    return ValuedUnit(x.p, v, unit, x.precision)


def _check_pair(a: int, b: int) -> None:
    if a < 0 or b < 0:
        raise ValueError("naturals are nonnegative")
    if a < b:
        raise OrderViolation(
            f"need a >= b, got a={describe_int(a)} < b={describe_int(b)}"
        )


def exact_binom_mod(a: int, b: int, p: int, e: int) -> ValuedUnit:
    """C(a, b) as p**v times a unit known mod p**e.

    Runs the multiplicative formula prod_{i=1..b} (a-b+i)/i, stripping
    p-powers from every term and accumulating the unit parts mod p**e;
    cost is O(min(b, a-b)) multiplications.
    """
    _check_pair(a, b)
    ensure_prime(p)
    if e < 1:
        raise ValueError("precision e must be >= 1")
    if b > a - b:
        b = a - b
    pe = p**e
    v = 0
    num = 1
    den = 1
    for i in range(1, b + 1):
        t = a - b + i
        while t % p == 0:
            t //= p
            v += 1
        num = num * (t % pe) % pe
        s = i
        while s % p == 0:
            s //= p
            v -= 1
        den = den * (s % pe) % pe
    unit = num * pow(den, -1, pe) % pe
    return ValuedUnit(p, v, unit, e)


@lru_cache(maxsize=1 << 18)
def _binom_vu(a: int, b: int, p: int, e: int) -> ValuedUnit:
    # Block binomials repeat heavily across sweeps; ValuedUnit is immutable
    # so sharing cached instances is safe.
    return exact_binom_mod(a, b, p, e)


@dataclass(frozen=True, slots=True)
class Factor:
    """One factor of an evaluation product.

    ``index`` is the start position of the numerator block and ``width``
    its span; the denominator is absent on the leading factor and when
    the span is 1.
    """

    index: int
    width: int
    num_a: DigitString
    num_b: DigitString
    den_a: DigitString | None
    den_b: DigitString | None
    num_value: ValuedUnit
    den_value: ValuedUnit | None
    value: ValuedUnit


@dataclass(frozen=True, slots=True)
class EvalTrace:
    """Ordered factors plus the bookkeeping that turns them into a residue."""

    method: str
    p: int
    mod_exp: int
    n: int
    m: int
    residue: int
    factors: tuple[Factor, ...]


def theorem_factors(e: PseudoExpansion, n: int) -> list[Factor]:
    """The block-quotient factors at width n, most significant first.

    The leading factor is the binomial of the top n pseudo-digit blocks
    (zero-padded when the expansion is shorter than n); each further
    position i contributes C(block(i, n)) / C(block(i+1, n-1)).  For
    n = 1 the denominators are empty products and are omitted.
    """
    if n < 1:
        raise ValueError("block width n must be >= 1")
    p = e.p
    d = e.d
    out = []
    lead_start = max(d - n + 1, 0)
    na, nb = block(e, lead_start, n)
    nv = _binom_vu(na.value, nb.value, p, n)
    out.append(Factor(lead_start, n, na, nb, None, None, nv, None, nv))
    for i in range(d - n, -1, -1):
        na, nb = block(e, i, n)
        nv = _binom_vu(na.value, nb.value, p, n)
        if n == 1:
            out.append(Factor(i, n, na, nb, None, None, nv, None, nv))
        else:
            da, db = block(e, i + 1, n - 1)
            dv = _binom_vu(da.value, db.value, p, n)
            out.append(Factor(i, n, na, nb, da, db, nv, dv, vu_div(nv, dv)))
    return out


def _block_values(e: PseudoExpansion, i: int, length: int) -> tuple[int, int]:
    # Raw block values; top padding contributes nothing to the value.
    np_ = e.num_pairs
    lo = e.bounds[min(i, np_)]
    hi = e.bounds[min(i + length, np_)]
    return _value_of(e.a_digits[lo:hi], e.p), _value_of(e.b_digits[lo:hi], e.p)


def _theorem_unit(e: PseudoExpansion, n: int) -> tuple[int, int]:
    """(total valuation, combined unit mod p**n) of the factor product."""
    p = e.p
    d = e.d
    pe = p**n
    nav, nbv = _block_values(e, max(d - n + 1, 0), n)
    acc = _binom_vu(nav, nbv, p, n)
    total = acc.valuation
    unit = acc.unit
    for i in range(d - n, -1, -1):
        nav, nbv = _block_values(e, i, n)
        nv = _binom_vu(nav, nbv, p, n)
        if n == 1:
            total += nv.valuation
            unit = unit * nv.unit % pe
        else:
            dav, dbv = _block_values(e, i + 1, n - 1)
            dv = _binom_vu(dav, dbv, p, n)
            total += nv.valuation - dv.valuation
            unit = unit * nv.unit * pow(dv.unit, -1, pe) % pe
    return total, unit


def theorem_evaluate(
    A: int,
    B: int,
    p: int,
    N: int,
    expansion: PseudoExpansion | None = None,
    trace: bool = True,
) -> tuple[int, EvalTrace | None]:
    """C(A, B) mod p**N via the pseudo-digit block-quotient product.

    The caller supplies only the modulus exponent N; the split N = n + m
    is derived from the valuation m, short-circuiting to 0 when m >= N.
    Pass a precomputed ``expansion`` to amortize decomposition across
    several N, and ``trace=False`` to skip building the factor table.
    """
    _check_pair(A, B)
    ensure_prime(p)
    if N < 1:
        raise ValueError("modulus exponent N must be >= 1")
    if expansion is None:
        expansion = decompose(A, B, p)
    m = pseudo_valuation(expansion)
    if m >= N:
        tr = EvalTrace("theorem", p, N, 0, m, 0, ()) if trace else None
        return 0, tr
    n = N - m
    if trace:
        factors = theorem_factors(expansion, n)
        total = 0
        unit = 1
        pe = p**n
        for f in factors:
            total += f.value.valuation
            unit = unit * f.value.unit % pe
    else:
        factors = None
        total, unit = _theorem_unit(expansion, n)
    assert total == m, "factor valuations must sum to the borrow count"
    if __debug__:
        sa = DigitString(expansion.a_digits, p, padded=True)
        sb = DigitString(expansion.b_digits, p, padded=True)
        assert subtract_with_borrows(sa, sb, p)[1] == m, "valuation disagrees with borrows"
    residue = p**m * unit % p**N
    tr = EvalTrace("theorem", p, N, n, m, residue, tuple(factors)) if trace else None
    return residue, tr


def lucas_evaluate(A: int, B: int, p: int) -> int:
    """C(A, B) mod p as the digitwise product of single-digit binomials.

    Zero as soon as any digit of B exceeds the matching digit of A.
    """
    _check_pair(A, B)
    ensure_prime(p)
    result = 1
    a, b = A, B
    while b:
        da = a % p
        db = b % p
        if da < db:
            return 0
        result = result * _binom_vu(da, db, p, 1).unit % p
        a //= p
        b //= p
    return result


@lru_cache(maxsize=1 << 18)
def _dw_bracket(adigits: tuple[int, ...], bdigits: tuple[int, ...], p: int, e: int) -> ValuedUnit:
    av = _value_of(adigits, p)
    bv = _value_of(bdigits, p)
    if av >= bv:
        # Equal blocks take the binomial branch too: they produce no
        # borrows, so paying a factor p here would break the congruence.
        return _binom_vu(av, bv, p, e)
    if len(adigits) == 1:
        return ValuedUnit(p, 1, 1, e)
    inner = _dw_bracket(adigits[:-1], bdigits[:-1], p, e)
    return ValuedUnit(p, inner.valuation + 1, inner.unit, e)


def dw_bracket(ablock: DigitString, bblock: DigitString, p: int, e: int) -> ValuedUnit:
    """The digit-window bracket of two equal-length blocks.

    Binomial of the block values when the top block dominates (or ties),
    otherwise a factor p times the bracket of the blocks with their top
    digit removed; a lone digit pair with a < b is a bare p.
    """
    ensure_prime(p)
    if e < 1:
        raise ValueError("precision e must be >= 1")
    if ablock.base != p or bblock.base != p:
        raise MixedBase(f"blocks must both be base {p}")
    if len(ablock) != len(bblock):
        raise LengthMismatch(
            f"blocks must have equal length, got {len(ablock)} and {len(bblock)}"
        )
    return _dw_bracket(ablock.digits, bblock.digits, p, e)


def davis_webb_evaluate(
    A: int,
    B: int,
    p: int,
    N: int,
    trace: bool = True,
) -> tuple[int, EvalTrace | None]:
    """C(A, B) mod p**N via the width-N digit-window bracket product.

    Works on plain base-p digits padded to a common length: the leading
    bracket covers the top N digits, and each lower position contributes
    the bracket of its N-digit window over the bracket of the (N-1)-digit
    window above it.
    """
    _check_pair(A, B)
    ensure_prime(p)
    if N < 1:
        raise ValueError("modulus exponent N must be >= 1")
    adig = _digits_of(A, p)
    L = max(len(adig), N)
    a = adig + (0,) * (L - len(adig))
    bdig = _digits_of(B, p)
    b = bdig + (0,) * (L - len(bdig))

    factors: list[Factor] | None = [] if trace else None
    lead = _dw_bracket(a[L - N :], b[L - N :], p, N)
    num_val, den_val = lead.valuation, 0
    pe = p**N
    num_unit, den_unit = lead.unit, 1
    if trace:
        factors.append(
            Factor(
                L - N,
                N,
                DigitString(a[L - N :], p, padded=True),
                DigitString(b[L - N :], p, padded=True),
                None,
                None,
                lead,
                None,
                lead,
            )
        )
    for i in range(L - 1 - N, -1, -1):
        nv = _dw_bracket(a[i : i + N], b[i : i + N], p, N)
        num_val += nv.valuation
        num_unit = num_unit * nv.unit % pe
        if N == 1:
            dv = None
        else:
            dv = _dw_bracket(a[i + 1 : i + N], b[i + 1 : i + N], p, N)
            den_val += dv.valuation
            den_unit = den_unit * dv.unit % pe
        if trace:
            has_den = dv is not None
            factors.append(
                Factor(
                    i,
                    N,
                    DigitString(a[i : i + N], p, padded=True),
                    DigitString(b[i : i + N], p, padded=True),
                    DigitString(a[i + 1 : i + N], p, padded=True) if has_den else None,
                    DigitString(b[i + 1 : i + N], p, padded=True) if has_den else None,
                    nv,
                    dv,
                    vu_div(nv, dv) if has_den else nv,
                )
            )
    m = num_val - den_val
    if m < 0:
        raise NegativeValuation("bracket product is not p-integral")
    residue = 0 if m >= N else p**m * (num_unit * pow(den_unit, -1, pe)) % pe
    tr = EvalTrace("davis-webb", p, N, N, m, residue, tuple(factors)) if trace else None
    return residue, tr


def _factor_sides(f: Factor, method: str) -> tuple[str, str]:
    wrap = "<{}/{}>" if method == "davis-webb" else "C({}/{})"
    num = wrap.format(f.num_a, f.num_b)
    den = wrap.format(f.den_a, f.den_b) if f.den_a is not None else ""
    return num, den


def format_trace_text(trace: EvalTrace) -> str:
    """Human-readable factor table: blocks, integer values, factored forms."""
    p, N = trace.p, trace.mod_exp
    lines = [f"method={trace.method} p={p} N={N} (m={trace.m}, n={trace.n})"]
    if not trace.factors:
        lines.append(f"  {p}^{trace.m} divides the binomial; residue is 0")
    cap = p**N if trace.method == "davis-webb" else None
    for f in trace.factors:
        num, den = _factor_sides(f, trace.method)
        head = f"{num}/{den}" if den else num
        nv = f.num_value.value_mod()
        ints = str(nv % cap if cap else nv)
        if f.den_value is not None:
            dv = f.den_value.value_mod()
            ints += f"/{dv % cap if cap else dv}"
        line = f"  {head} = {ints}"
        if f.num_value.valuation or (f.den_value is not None and f.den_value.valuation):
            factored = str(f.num_value)
            if f.den_value is not None:
                factored += f"/{f.den_value}"
            line += f" = {factored}"
        lines.append(line)
    if trace.factors:
        unit = 1
        pe = p**trace.n
        total = 0
        for f in trace.factors:
            total += f.value.valuation
            unit = unit * f.value.unit % pe
        if trace.method == "davis-webb":
            # Bracket quotients are combined as one division overall.
            num_u = den_u = 1
            total = 0
            for f in trace.factors:
                total += f.num_value.valuation
                num_u = num_u * f.num_value.unit % pe
                if f.den_value is not None:
                    total -= f.den_value.valuation
                    den_u = den_u * f.den_value.unit % pe
            unit = num_u * pow(den_u, -1, pe) % pe
        lines.append(f"  combined: {p}^{total} * {unit} (unit mod {pe})")
    lines.append(f"  result: {trace.residue} (mod {p**N})")
    return "\n".join(lines)


def format_trace_records(trace: EvalTrace) -> list[str]:
    """Machine-readable lines: one factor per line, then the result line."""
    lines = []
    for f in trace.factors:
        num = f"{f.num_a}/{f.num_b}"
        den = f"{f.den_a}/{f.den_b}" if f.den_a is not None else "-"
        v = f.value
        lines.append(
            f"index={f.index} num_block={num} den_block={den} "
            f"val={v.valuation} unit={v.unit} prec={v.precision}"
        )
    lines.append(f"result={trace.residue} modulus={trace.p ** trace.mod_exp}")
    return lines
