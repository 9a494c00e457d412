"""Command-line front-end: eval, decompose, compare, bench.

Inputs are read in base p by default (pass ``--radix 10`` for decimal
entry).  Exit codes: 0 success, 1 method disagreement, 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass

from . import engine, oracle
from .digits import ensure_prime, parse_natural
from .errors import TooLarge
from .pseudo import decompose, pseudo_valuation

__all__ = ["CliConfig", "build_parser", "main"]

_METHODS = ("theorem", "davis-webb", "lucas", "exact", "all")


@dataclass(frozen=True)
class CliConfig:
    """Validated invocation settings shared by all subcommands."""

    prime: int
    mod_exp: int
    radix: int
    method: str = "theorem"
    trace: bool = False
    fmt: str = "text"
    seed: int = 0
    trials: int = 20
    digits: int = 12

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        ensure_prime(args.prime)
        if args.mod_exp < 1:
            raise ValueError("--mod-exp must be >= 1")
        radix = args.radix
        if radix is None:
            if args.prime > 36:
                raise ValueError(
                    "base-p text entry needs p <= 36; pass --radix explicitly"
                )
            radix = args.prime
        if not 2 <= radix <= 36:
            raise ValueError(f"--radix must be in 2..36, got {radix}")
        return cls(
            prime=args.prime,
            mod_exp=args.mod_exp,
            radix=radix,
            method=getattr(args, "method", "theorem"),
            trace=getattr(args, "trace", False),
            fmt=getattr(args, "format", "text"),
            seed=getattr(args, "seed", 0),
            trials=getattr(args, "trials", 20),
            digits=getattr(args, "digits", 12),
        )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", "-p", type=int, required=True, help="prime base p")
    common.add_argument(
        "--mod-exp", "-N", type=int, default=1, help="modulus exponent N (modulus p**N)"
    )
    common.add_argument(
        "--radix",
        type=int,
        default=None,
        help="radix of the A/B text inputs (default: p)",
    )

    parser = argparse.ArgumentParser(
        prog="ppbinom",
        description="binomial coefficients modulo prime powers via pseudo-digit blocks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common], help="evaluate C(A, B) mod p**N")
    p_eval.add_argument("--method", choices=_METHODS, default="theorem")
    p_eval.add_argument("--trace", action="store_true", help="print the factor table")
    p_eval.add_argument("--format", choices=("text", "records"), default="text")
    p_eval.add_argument("A")
    p_eval.add_argument("B")

    p_dec = sub.add_parser(
        "decompose", parents=[common], help="print the pseudo-digit groups of (A, B)"
    )
    p_dec.add_argument("A")
    p_dec.add_argument("B")

    p_cmp = sub.add_parser(
        "compare", parents=[common], help="run all methods and check agreement"
    )
    p_cmp.add_argument("A")
    p_cmp.add_argument("B")

    p_bench = sub.add_parser(
        "bench", parents=[common], help="time the block-product method on random pairs"
    )
    p_bench.add_argument("--digits", type=int, default=12, help="base-p digit count")
    p_bench.add_argument("--trials", type=int, default=20)
    p_bench.add_argument("--seed", type=int, default=0)

    return parser


def _parse_inputs(cfg: CliConfig, a_text: str, b_text: str) -> tuple[int, int]:
    return parse_natural(a_text, cfg.radix), parse_natural(b_text, cfg.radix)


def _eval_one(cfg: CliConfig, method: str, A: int, B: int, want_trace: bool):
    """(residue, modulus, trace-or-None) for a single method."""
    p, N = cfg.prime, cfg.mod_exp
    if method == "theorem":
        res, tr = engine.theorem_evaluate(A, B, p, N, trace=want_trace)
        return res, p**N, tr
    if method == "davis-webb":
        res, tr = engine.davis_webb_evaluate(A, B, p, N, trace=want_trace)
        return res, p**N, tr
    if method == "lucas":
        return engine.lucas_evaluate(A, B, p), p, None
    if method == "exact":
        return oracle.binom_exact(A, B) % p**N, p**N, None
    raise ValueError(f"unknown method {method!r}")


def run_eval(cfg: CliConfig, a_text: str, b_text: str) -> int:
    A, B = _parse_inputs(cfg, a_text, b_text)
    methods = ("theorem", "davis-webb", "lucas", "exact") if cfg.method == "all" else (cfg.method,)
    if cfg.fmt == "records" and len(methods) > 1:
        raise ValueError("records format requires a single method")
    for method in methods:
        want_trace = cfg.trace or cfg.fmt == "records"
        res, modulus, tr = _eval_one(cfg, method, A, B, want_trace)
        if cfg.fmt == "records":
            if tr is None:
                print(f"result={res} modulus={modulus}")
            else:
                print("\n".join(engine.format_trace_records(tr)))
            continue
        if cfg.trace and tr is not None:
            print(engine.format_trace_text(tr))
        prefix = f"{method}: " if len(methods) > 1 else ""
        print(f"{prefix}{res} (mod {modulus})")
    return 0


def run_decompose(cfg: CliConfig, a_text: str, b_text: str) -> int:
    A, B = _parse_inputs(cfg, a_text, b_text)
    e = decompose(A, B, cfg.prime)
    print(f"A = {e.a_groups()}")
    print(f"B = {e.b_groups()}")
    print(f"pseudo-digits = {e.num_pairs}")
    print(f"m = {pseudo_valuation(e)}")
    return 0


def run_compare(cfg: CliConfig, a_text: str, b_text: str) -> int:
    A, B = _parse_inputs(cfg, a_text, b_text)
    p, N = cfg.prime, cfg.mod_exp
    modulus = p**N
    results = {}
    results["theorem"] = engine.theorem_evaluate(A, B, p, N, trace=False)[0]
    results["davis-webb"] = engine.davis_webb_evaluate(A, B, p, N, trace=False)[0]
    try:
        results["exact"] = oracle.binom_exact(A, B) % modulus
    except TooLarge as exc:
        print(f"exact: skipped ({exc})")
    for name, res in results.items():
        print(f"{name}: {res} (mod {modulus})")
    if len(set(results.values())) == 1:
        print("AGREE")
        return 0
    print("DISAGREE")
    return 1


def run_bench(cfg: CliConfig) -> int:
    p, N, digits = cfg.prime, cfg.mod_exp, cfg.digits
    if digits < 1:
        raise ValueError("--digits must be >= 1")
    if cfg.trials < 1:
        raise ValueError("--trials must be >= 1")
    rng = random.Random(cfg.seed)
    lo = p ** (digits - 1)
    hi = p**digits
    print(f"bench p={p} N={N} digits={digits} trials={cfg.trials} seed={cfg.seed}")
    total = 0.0
    slowest = 0.0
    lengths: Counter[int] = Counter()
    oracle_checked = 0
    oracle_agreed = 0
    oracle_skips = 0
    for _ in range(cfg.trials):
        A = rng.randrange(lo, hi)
        B = rng.randrange(hi)
        while B > A:
            B = rng.randrange(hi)
        t0 = time.perf_counter()
        e = decompose(A, B, p)
        res, _ = engine.theorem_evaluate(A, B, p, N, expansion=e, trace=False)
        dt = time.perf_counter() - t0
        total += dt
        slowest = max(slowest, dt)
        bounds = e.bounds
        lengths.update(bounds[i + 1] - bounds[i] for i in range(e.num_pairs))
        try:
            oracle_checked += 1
            oracle_agreed += oracle.binom_exact(A, B) % p**N == res
        except TooLarge:
            oracle_checked -= 1
            oracle_skips += 1
    mean_ms = total / cfg.trials * 1000
    print(
        f"theorem: total {total:.3f}s, mean {mean_ms:.3f} ms/pair, "
        f"max {slowest * 1000:.3f} ms, {cfg.trials * digits / max(total, 1e-9):,.0f} digits/s"
    )
    if oracle_checked:
        print(f"oracle: agreed {oracle_agreed}/{oracle_checked}")
    if oracle_skips:
        print(f"oracle: skipped {oracle_skips} (exact result over the size guard)")
    dist = " ".join(f"{k}:{v}" for k, v in sorted(lengths.items()))
    print(f"pseudo-digit lengths: {dist}")
    return 0 if oracle_agreed == oracle_checked else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = CliConfig.from_args(args)
        if args.command == "eval":
            return run_eval(cfg, args.A, args.B)
        if args.command == "decompose":
            return run_decompose(cfg, args.A, args.B)
        if args.command == "compare":
            return run_compare(cfg, args.A, args.B)
        if args.command == "bench":
            return run_bench(cfg)
        raise ValueError(f"unknown command {args.command!r}")
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
