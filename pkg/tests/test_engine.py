"""Evaluator correctness: valued units, block products, brackets, Lucas."""

import math

import pytest

from ppbinom.digits import parse_digits, parse_natural
from ppbinom.engine import (
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
from ppbinom.errors import (
    LengthMismatch,
    NegativeValuation,
    NotPrime,
    OrderViolation,
    PrecisionMismatch,
)
from ppbinom.oracle import binom_exact
from ppbinom.pseudo import block_valuation, decompose

A3 = parse_natural("1221121202", 3)
B3 = parse_natural("1011012021", 3)
A8 = parse_natural("21202112", 3)
B8 = parse_natural("12021110", 3)


def xgcd(a, b):
    s, old_s, t, old_t, r, old_r = 0, 1, 1, 0, b, a
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


class TestValuedUnit:
    def test_value_mod_and_str(self):
        x = ValuedUnit(3, 2, 5, 3)
        assert x.value_mod() == 45
        assert str(x) == "3^2 5"
        assert str(ValuedUnit(3, 0, 8, 3)) == "8"

    def test_unit_must_be_coprime(self):
        with pytest.raises(ValueError):
            ValuedUnit(3, 1, 6, 3)

    def test_zero_flag(self):
        z = ValuedUnit(3, 0, 0, 3, zero=True)
        x = ValuedUnit(3, 1, 2, 3)
        assert z.value_mod() == 0
        assert str(z) == "0"
        assert vu_mul(z, x).zero
        assert vu_div(z, x).zero
        with pytest.raises(ZeroDivisionError):
            vu_div(x, z)

    def test_negative_valuation_rejected(self):
        with pytest.raises(NegativeValuation):
            ValuedUnit(3, -1, 2, 3)


class TestVuArithmetic:
    def test_worked_ratio(self):
        num = ValuedUnit(3, 2, 5, 3)  # 45 = 3^2 * 5
        den = ValuedUnit(3, 1, 25, 3)  # 75 = 3^1 * 25
        q = vu_div(num, den)
        assert (q.valuation, q.unit) == (1, 11)

    def test_self_division(self):
        x = ValuedUnit(5, 3, 17, 4)
        q = x / x
        assert (q.valuation, q.unit) == (0, 1)

    def test_inverse_against_xgcd(self):
        num = ValuedUnit(3, 2, 10, 3)
        den = ValuedUnit(3, 2, 23, 3)
        g, inv, _ = xgcd(23, 27)
        assert g == 1
        expected = 10 * inv % 27
        assert vu_div(num, den).unit == expected == 11

    def test_mul(self):
        x = ValuedUnit(3, 1, 2, 3)
        y = ValuedUnit(3, 2, 14, 3)
        z = vu_mul(x, y)
        assert (z.valuation, z.unit) == (3, 28 % 27)
        assert x * y == z

    def test_precision_mismatch(self):
        with pytest.raises(PrecisionMismatch):
            vu_mul(ValuedUnit(3, 0, 2, 3), ValuedUnit(3, 0, 2, 4))
        with pytest.raises(PrecisionMismatch):
            vu_div(ValuedUnit(3, 0, 2, 3), ValuedUnit(5, 0, 2, 3))

    def test_negative_valuation_quotient(self):
        with pytest.raises(NegativeValuation):
            vu_div(ValuedUnit(3, 0, 2, 3), ValuedUnit(3, 1, 2, 3))


class TestExactBinomMod:
    def test_two_borrow_block(self):
        # C(12120_3, 01202_3) = C(150, 47), divisible by 9
        vu = exact_binom_mod(150, 47, 3, 3)
        assert (vu.valuation, vu.unit) == (2, 5)
        assert math.comb(150, 47) % 3**5 == vu.value_mod() == 45

    def test_one_borrow_block(self):
        # C(121_3, 012_3) = C(16, 5), evaluated mod 81 = 3**(1+3)
        vu = exact_binom_mod(16, 5, 3, 3)
        assert (vu.valuation, vu.unit) == (1, 25)
        assert math.comb(16, 5) % 81 == 75 == vu.value_mod()

    def test_choose_zero(self):
        vu = exact_binom_mod(912, 0, 7, 2)
        assert (vu.valuation, vu.unit) == (0, 1)

    def test_against_comb_sweep(self):
        for p, e in ((2, 3), (3, 2), (5, 1), (7, 4)):
            pe = p**e
            for a in range(40):
                for b in range(a + 1):
                    vu = exact_binom_mod(a, b, p, e)
                    c = math.comb(a, b)
                    v = 0
                    while c % p == 0:
                        c //= p
                        v += 1
                    assert vu.valuation == v
                    assert vu.unit == c % pe

    def test_large_symmetric(self):
        vu = exact_binom_mod(10**6, 10**6 - 3, 5, 4)
        c = math.comb(10**6, 3)
        v = 0
        while c % 5 == 0:
            c //= 5
            v += 1
        assert (vu.valuation, vu.unit) == (v, c % 5**4)

    def test_errors(self):
        with pytest.raises(OrderViolation):
            exact_binom_mod(3, 4, 5, 2)
        with pytest.raises(NotPrime):
            exact_binom_mod(5, 2, 6, 2)
        with pytest.raises(ValueError):
            exact_binom_mod(5, 2, 3, 0)


class TestTheoremFactors:
    def test_worked_factor_blocks(self):
        e = decompose(A3, B3, 3)
        factors = theorem_factors(e, 3)
        blocks = [
            (str(f.num_a), str(f.num_b), str(f.den_a) if f.den_a else None)
            for f in factors
        ]
        assert blocks == [
            ("122", "101", None),
            ("221", "011", "22"),
            ("211", "110", "21"),
            ("1121", "1012", "11"),
            ("12120", "01202", "121"),
            ("21202", "12021", "2120"),
        ]

    def test_worked_factor_values(self):
        e = decompose(A3, B3, 3)
        factors = theorem_factors(e, 3)
        nums = [f.num_value.value_mod() for f in factors]
        dens = [f.den_value.value_mod() if f.den_value else None for f in factors]
        assert nums == [8, 14, 23, 30, 45, 90]
        assert dens == [None, 8, 8, 4, 75, 207]
        assert [f.value.valuation for f in factors] == [0, 0, 0, 1, 1, 0]

    def test_base_case_single_factor(self):
        e = decompose(10, 5, 2)
        factors = theorem_factors(e, 2)
        assert len(factors) == 1
        f = factors[0]
        assert (str(f.num_a), str(f.num_b)) == ("1010", "0101")
        assert f.den_a is None

    def test_width_one_has_empty_denominators(self):
        e = decompose(10, 5, 2)
        factors = theorem_factors(e, 1)
        assert [(str(f.num_a), str(f.num_b)) for f in factors] == [
            ("10", "01"),
            ("10", "01"),
        ]
        assert all(f.den_a is None for f in factors)
        prod = 1
        for f in factors:
            prod *= f.value.value_mod()
        assert prod % 2**3 == 252 % 2**3  # mod p**(n+m) with n=1, m=2

    def test_quotient_valuation_is_pair_valuation(self):
        e = decompose(A3, B3, 3)
        for n in (1, 2, 3, 4):
            factors = theorem_factors(e, n)
            lead, rest = factors[0], factors[1:]
            assert lead.value.valuation == block_valuation(e, lead.index, n)
            for f in rest:
                assert f.value.valuation == block_valuation(e, f.index, 1)


class TestTheoremEvaluate:
    def test_worked_example(self):
        res, tr = theorem_evaluate(A3, B3, 3, 5)
        assert res == 18
        assert (tr.m, tr.n) == (2, 3)
        assert tr.residue == 18

    def test_high_valuation_short_circuit(self):
        res, tr = theorem_evaluate(A3, B3, 3, 2)  # m = 2 >= N
        assert res == 0
        assert tr.factors == ()
        assert tr.m == 2

    def test_binary_base_case(self):
        res, tr = theorem_evaluate(10, 5, 2, 4)
        assert res == 252 % 16 == 12
        assert (tr.m, tr.n) == (2, 2)
        assert len(tr.factors) == 1

    def test_base_case_with_zero_padding(self):
        # a single group but a width-3 product: leading zeros pad the block
        res, tr = theorem_evaluate(2, 1, 2, 4)
        assert res == 2
        assert (tr.m, tr.n) == (1, 3)
        assert len(tr.factors) == 1
        f = tr.factors[0]
        assert (str(f.num_a), str(f.num_b)) == ("0010", "0001")

    def test_trace_false_matches(self):
        for N in range(1, 7):
            full, tr = theorem_evaluate(A8, B8, 3, N)
            fast, none = theorem_evaluate(A8, B8, 3, N, trace=False)
            assert full == fast
            assert none is None
            assert tr.residue == full

    def test_expansion_reuse(self):
        e = decompose(A3, B3, 3)
        assert theorem_evaluate(A3, B3, 3, 5, expansion=e)[0] == 18

    def test_errors(self):
        with pytest.raises(OrderViolation):
            theorem_evaluate(5, 6, 3, 2)
        with pytest.raises(NotPrime):
            theorem_evaluate(6, 5, 4, 2)
        with pytest.raises(ValueError):
            theorem_evaluate(6, 5, 3, 0)

    def test_against_exact_sweep(self):
        for p, N in ((2, 5), (3, 3), (5, 2)):
            mod = p**N
            for a in range(90):
                for b in range(a + 1):
                    want = math.comb(a, b) % mod
                    assert theorem_evaluate(a, b, p, N, trace=False)[0] == want


class TestLucas:
    def test_digit_blocked(self):
        assert lucas_evaluate(7, 3, 5) == 0  # 35 is divisible by 5

    def test_trivial(self):
        assert lucas_evaluate(38360, 0, 7) == 1
        assert lucas_evaluate(38360, 38360, 7) == 1

    def test_against_exact(self):
        for p in (2, 3, 5, 7):
            for a in range(p**3 + 5):
                for b in range(0, a + 1, 3):
                    assert lucas_evaluate(a, b, p) == math.comb(a, b) % p


class TestDwBracket:
    def test_recursive_descent(self):
        a = parse_digits("12021", 3)
        b = parse_digits("20211", 3)
        vu = dw_bracket(a, b, 3, 5)
        inner = exact_binom_mod(int("2021", 3), int("0211", 3), 3, 5)
        assert vu.valuation == inner.valuation + 1
        assert vu.unit == inner.unit

    def test_denominator_path(self):
        a = parse_digits("0211", 3)
        b = parse_digits("2111", 3)
        vu = dw_bracket(a, b, 3, 5)
        inner = exact_binom_mod(int("211", 3), int("111", 3), 3, 5)
        assert (vu.valuation, vu.unit) == (inner.valuation + 1, inner.unit)

    def test_single_digits(self):
        ge = dw_bracket(parse_digits("4", 5), parse_digits("2", 5), 5, 2)
        assert (ge.valuation, ge.unit) == (0, 6)
        lt = dw_bracket(parse_digits("1", 5), parse_digits("3", 5), 5, 2)
        assert (lt.valuation, lt.unit) == (1, 1)

    def test_equal_blocks_take_binomial_branch(self):
        a = parse_digits("102", 3)
        vu = dw_bracket(a, a, 3, 4)
        assert (vu.valuation, vu.unit) == (0, 1)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            dw_bracket(parse_digits("10", 3), parse_digits("102", 3), 3, 2)


class TestDavisWebbEvaluate:
    def test_worked_example(self):
        res, tr = davis_webb_evaluate(A8, B8, 3, 5)
        assert res == 117
        assert tr.m == 2

    def test_trivial_b_zero(self):
        assert davis_webb_evaluate(38360, 0, 5, 3)[0] == 1
        assert davis_webb_evaluate(0, 0, 5, 3)[0] == 1

    def test_equal_pair(self):
        assert davis_webb_evaluate(987654, 987654, 3, 4)[0] == 1

    def test_short_number_padding(self):
        # fewer digits than the window width
        assert davis_webb_evaluate(10, 5, 2, 6)[0] == 252 % 64

    def test_trace_false_matches(self):
        for N in range(1, 7):
            full, _ = davis_webb_evaluate(A8, B8, 3, N)
            fast, none = davis_webb_evaluate(A8, B8, 3, N, trace=False)
            assert full == fast and none is None

    def test_against_exact_sweep(self):
        for p, N in ((2, 4), (3, 3), (5, 2)):
            mod = p**N
            for a in range(90):
                for b in range(a + 1):
                    want = math.comb(a, b) % mod
                    assert davis_webb_evaluate(a, b, p, N, trace=False)[0] == want

    def test_methods_and_oracle_agree(self):
        res_t, _ = theorem_evaluate(A8, B8, 3, 5, trace=False)
        res_d, _ = davis_webb_evaluate(A8, B8, 3, 5, trace=False)
        assert res_t == res_d == binom_exact(A8, B8) % 243 == 117


class TestTraceFormatting:
    def test_worked_text_table(self):
        _, tr = theorem_evaluate(A3, B3, 3, 5)
        text = format_trace_text(tr)
        assert text == "\n".join(
            [
                "method=theorem p=3 N=5 (m=2, n=3)",
                "  C(122/101) = 8",
                "  C(221/011)/C(22/01) = 14/8",
                "  C(211/110)/C(21/11) = 23/8",
                "  C(1121/1012)/C(11/10) = 30/4 = 3^1 10/4",
                "  C(12120/01202)/C(121/012) = 45/75 = 3^2 5/3^1 25",
                "  C(21202/12021)/C(2120/1202) = 90/207 = 3^2 10/3^2 23",
                "  combined: 3^2 * 2 (unit mod 27)",
                "  result: 18 (mod 243)",
            ]
        )

    def test_records(self):
        _, tr = theorem_evaluate(A3, B3, 3, 5)
        lines = format_trace_records(tr)
        assert lines[0] == "index=5 num_block=122/101 den_block=- val=0 unit=8 prec=3"
        assert lines[-1] == "result=18 modulus=243"
        assert len(lines) == 7
        for line in lines[:-1]:
            keys = [kv.split("=")[0] for kv in line.split()]
            assert keys == ["index", "num_block", "den_block", "val", "unit", "prec"]

    def test_degenerate_trace_text(self):
        _, tr = theorem_evaluate(A3, B3, 3, 2)
        text = format_trace_text(tr)
        assert "residue is 0" in text
        assert "result: 0 (mod 9)" in text

    def test_davis_webb_text_renders_mod_pn(self):
        _, tr = davis_webb_evaluate(A8, B8, 3, 5)
        text = format_trace_text(tr)
        assert "<21202/12021> = 90" in text
        assert "result: 117 (mod 243)" in text
