"""Binomial coefficients modulo prime powers via pseudo-digit blocks.

The package splits C(A, B) mod p**N into a product of small block
binomials read off base-p digit groups, tracks every factor as a power of
p times a unit at fixed precision, and cross-checks the result against a
digit-window bracket method and naive oracles.
"""

from . import errors
from .digits import (
    DigitString,
    concat_value,
    ensure_prime,
    from_base_p,
    is_prime,
    parse_digits,
    parse_natural,
    subtract_with_borrows,
    to_base_p,
)
from .engine import (
    EvalTrace,
    Factor,
    ValuedUnit,
    davis_webb_evaluate,
    dw_bracket,
    exact_binom_mod,
    format_trace_records,
    format_trace_text,
    lucas_evaluate,
    theorem_evaluate,
    theorem_factors,
    vu_div,
    vu_mul,
)
from .oracle import binom_exact, binom_mod_pascal, kummer_valuation, pascal_rows
from .pseudo import (
    PseudoExpansion,
    PseudoPair,
    block,
    block_valuation,
    decompose,
    pseudo_valuation,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "DigitString",
    "parse_natural",
    "parse_digits",
    "to_base_p",
    "from_base_p",
    "subtract_with_borrows",
    "concat_value",
    "is_prime",
    "ensure_prime",
    "PseudoPair",
    "PseudoExpansion",
    "decompose",
    "pseudo_valuation",
    "block",
    "block_valuation",
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
    "binom_exact",
    "binom_mod_pascal",
    "kummer_valuation",
    "pascal_rows",
    "__version__",
]
