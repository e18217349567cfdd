"""Command-line front end.

Every subcommand maps onto one library call.  ``--format json`` writes a
single JSON document whose field order is fixed; it embeds the tool version
and seed, and leaves out timings, so identical arguments and an identical
prime cache give byte-identical output.

Exit status: 0 on success or when the check passes, 1 when a check fails,
2 on usage errors (bad flags, unparsable polynomials, budget overruns,
violated hypotheses).
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from fractions import Fraction
from typing import Callable

from . import __version__
from .classify import (
    SPORADICS,
    classify_perfect,
    catalogue_rows,
    is_complete,
    is_complete_in,
    is_mersenne,
    is_perfect,
    parity,
    square_decompose,
    trivial_perfect,
)
from .factor import CACHE_VERSION, DEFAULT_SEED, PrimeTable, default_cache_path, default_table, factor
from .lemmas import PARTS, check_canaday
from .poly import ParseError, Poly, format_poly, parse
from .search import MODES, gcd_condition_census, search_perfect
from .sigma import sigma
from .theorem import THEOREM_MODES, solve_structured, theorem_bruteforce

log = logging.getLogger("gf2perfect")

_TRIVIAL = re.compile(r"\s*T\(?(\d+)\)?\s*$")


class UsageError(Exception):
    pass


def read_poly(text: str) -> Poly:
    """Canonical text, factored text, ``0x`` hex, a sporadic name, or ``T(n)``."""
    if text in SPORADICS:
        return SPORADICS[text]
    m = _TRIVIAL.match(text)
    if m:
        try:
            return trivial_perfect(int(m.group(1)))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None


def _poly_dict(p: Poly) -> dict:
    return {"poly": format_poly(p), "hex": p.hex(), "degree": None if p.is_zero() else p.degree}


# ---------------------------------------------------------------------------
# commands; each returns (result dict, text, ok)
# ---------------------------------------------------------------------------

Outcome = tuple[dict, str, bool]


def cmd_parse(args, table) -> Outcome:
    p = read_poly(args.poly)
    return _poly_dict(p), format_poly(p), True


def cmd_factor(args, table) -> Outcome:
    p = read_poly(args.poly)
    if p.is_zero():
        raise UsageError("cannot factor 0")
    f = factor(p, seed=args.seed)
    result = {
        **_poly_dict(p),
        "factors": [{"prime": format_poly(q), "hex": q.hex(), "exponent": e} for q, e in f],
        "factored": str(f),
    }
    return result, str(f), True


def cmd_sigma(args, table) -> Outcome:
    p = read_poly(args.poly)
    if p.is_zero():
        raise UsageError("sigma(0) is undefined")
    s = sigma(p)
    return {**_poly_dict(p), "sigma": format_poly(s), "sigma_hex": s.hex()}, format_poly(s), True


def cmd_check_perfect(args, table) -> Outcome:
    p = read_poly(args.poly)
    ok = is_perfect(p)
    return {**_poly_dict(p), "perfect": ok}, "true" if ok else "false", ok


def cmd_classify(args, table) -> Outcome:
    p = read_poly(args.poly)
    if p.is_zero():
        raise UsageError("cannot classify 0")
    d = square_decompose(p)
    perfect = is_perfect(p)
    result = {
        **_poly_dict(p),
        "parity": parity(p).value,
        "mersenne": is_mersenne(p),
        "complete": is_complete(p),
        "perfect": perfect,
        "classification": classify_perfect(p) if perfect else None,
        "decomposition": {
            "b": format_poly(d.b),
            "s": format_poly(d.s),
            "coprime": d.coprime,
            "b_even": d.b_even,
        },
    }
    if args.complete_in is not None:
        b = read_poly(args.complete_in)
        if b.degree < 1:
            raise UsageError("--complete-in needs a polynomial of degree >= 1")
        result["complete_in"] = {"b": format_poly(b), "value": is_complete_in(p, b)}
    rows = [
        ("parity", result["parity"]),
        ("mersenne", result["mersenne"]),
        ("complete", result["complete"]),
        ("perfect", perfect),
    ]
    if perfect:
        rows.append(("classification", result["classification"]))
    rows += [
        ("B", format_poly(d.b)),
        ("S", format_poly(d.s)),
        ("gcd(B,S)=1", d.coprime),
        ("B even", d.b_even),
    ]
    if "complete_in" in result:
        rows.append((f"complete in {format_poly(b)}", result["complete_in"]["value"]))
    text = "\n".join(f"{k:<16} {str(v).lower() if isinstance(v, bool) else v}" for k, v in rows)
    return result, text, True


def cmd_catalogue(args, table) -> Outcome:
    rows = catalogue_rows()
    for row in rows:
        row["perfect"] = is_perfect(SPORADICS[row["name"]])
    ok = all(r["perfect"] for r in rows)
    lines = [f"{'name':<5} {'deg':>3} {'hex':<10} {'perfect':<7} factored"]
    for r in rows:
        lines.append(
            f"{r['name']:<5} {r['degree']:>3} {r['hex']:<10} {str(r['perfect']).lower():<7} {r['factored']}"
        )
    return {"sporadics": rows, "pass": ok}, "\n".join(lines), ok


def cmd_search(args, table) -> Outcome:
    rep = search_perfect(
        args.max_deg, args.mode, workers=args.workers, table=table,
        allow_over_budget=args.allow_over_budget,
    )
    return rep.to_dict(), rep.to_text(), rep.passed


def cmd_census(args, table) -> Outcome:
    rep = gcd_condition_census(
        args.max_deg, workers=args.workers, table=table,
        allow_over_budget=args.allow_over_budget,
    )
    threshold = args.threshold
    ok = rep.cumulative_fraction > threshold
    result = rep.to_dict()
    result["threshold"] = f"{threshold.numerator}/{threshold.denominator}"
    result["pass"] = ok
    text = rep.to_text() + f"\n  > {float(threshold):g}: {'PASS' if ok else 'FAIL'}"
    return result, text, ok


def _bound(text: str) -> tuple[str, int]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    try:
        return key.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound {key!r} needs an integer value") from None


def cmd_lemma(args, table) -> Outcome:
    parts = PARTS if args.part == "all" else (args.part,)
    if args.bound and len(parts) > 1:
        raise UsageError("--bound needs a single --part")
    reps = [
        check_canaday(p, dict(args.bound), table=table, allow_over_budget=args.allow_over_budget)
        for p in parts
    ]
    ok = all(r.passed for r in reps)
    text = "\n".join(r.to_text() for r in reps)
    if len(reps) == 1:
        return reps[0].to_dict(), text, ok
    return {"parts": [r.to_dict() for r in reps], "pass": ok}, text, ok


def cmd_verify_theorem(args, table) -> Outcome:
    rep = theorem_bruteforce(
        args.b_deg, args.p_deg, args.mode, workers=args.workers, table=table,
        allow_over_budget=args.allow_over_budget,
    )
    return rep.to_dict(), rep.to_text(), rep.passed


def cmd_solve(args, table) -> Outcome:
    b = read_poly(args.b)
    sols = solve_structured(b, args.r, args.mode, table=table)
    result = {
        "b": format_poly(b),
        "b_hex": b.hex(),
        "r_max": args.r,
        "mode": args.mode,
        "solutions": [s.to_dict() for s in sols],
    }
    lines = [f"solve b={format_poly(b)} r<={args.r} mode={args.mode}: {len(sols)} solution(s)"]
    for s in sols:
        primes = " ".join(f"({format_poly(p)})" for p in s.primes)
        lines.append(f"  {s.name:<8} {s.a.hex():<10} P={primes}")
    return result, "\n".join(lines), True


def cmd_primes(args, table) -> Outcome:
    if args.deg < 1:
        raise UsageError("--deg must be >= 1")
    ps = table.primes_of_degree(args.deg)
    result = {"degree": args.deg, "count": len(ps), "primes": [f"{p:#x}" for p in ps]}
    text = "\n".join(f"{p:#x}" if args.hex else format_poly(p) for p in ps)
    return result, text, True


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _seed(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache", default=None, help="prime cache file (default: $GF2PERFECT_CACHE/primes.txt)")
    common.add_argument("--workers", type=_positive, default=1)
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="factorization seed")
    common.add_argument("--allow-over-budget", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true", help="suppress the run log on stderr")

    parser = argparse.ArgumentParser(
        prog="gf2perfect", description="Perfect polynomials over GF(2)."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=fn)
        return p

    for name, fn, help in (
        ("parse", cmd_parse, "canonical form of a polynomial"),
        ("factor", cmd_factor, "factor into primes"),
        ("sigma", cmd_sigma, "sum of divisors"),
        ("check-perfect", cmd_check_perfect, "sigma(a) == a"),
    ):
        add(name, fn, help).add_argument("poly")

    p = add("classify", cmd_classify, "parity, Mersenne, complete, B^2 S decomposition")
    p.add_argument("poly")
    p.add_argument("--complete-in", default=None, metavar="B")

    add("catalogue", cmd_catalogue, "the eleven sporadic perfect polynomials")

    p = add("search", cmd_search, "exhaustive perfect search")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--mode", choices=MODES, default="full")

    p = add("census", cmd_census, "count even B with gcd(B^2, sigma(B^2)) = 1")
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--threshold", type=_fraction, default=Fraction(17, 25))

    p = add("lemma", cmd_lemma, "bounded lemma checks")
    p.add_argument("--part", choices=PARTS + ("all",), required=True)
    p.add_argument("--bound", type=_bound, action="append", default=[], metavar="KEY=VALUE")

    p = add("verify-theorem", cmd_verify_theorem, "brute-force B^2 P1..Pr scan")
    p.add_argument("--b-deg", type=int, default=8)
    p.add_argument("--p-deg", type=int, default=9)
    p.add_argument("--mode", choices=THEOREM_MODES, default="relaxed")

    p = add("solve", cmd_solve, "closed-form solver for a single B")
    p.add_argument("--b", required=True)
    p.add_argument("--r", type=int, default=3, choices=(1, 2, 3))
    p.add_argument("--mode", choices=THEOREM_MODES, default="relaxed")

    p = add("primes", cmd_primes, "irreducibles of one degree")
    p.add_argument("--deg", type=int, required=True)
    p.add_argument("--hex", action="store_true")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    handler = logging.StreamHandler(err)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root = logging.getLogger("gf2perfect")
    root.handlers[:] = [handler]
    root.setLevel(logging.WARNING if args.quiet else logging.INFO)
    root.propagate = False

    cache = args.cache if args.cache is not None else default_cache_path()
    log.info("version=%s seed=%#x cache=%s (%s)", __version__, args.seed, cache, CACHE_VERSION)

    try:
        table = PrimeTable(cache) if args.cache is not None else default_table()
        result, text, ok = args.func(args, table)
    except (UsageError, ValueError) as exc:
        # budget overruns, violated hypotheses and bad bounds are all ValueErrors
        print(f"gf2perfect {args.command}: error: {exc}", file=err)
        return 2

    if args.format == "json":
        doc = {
            "tool": "gf2perfect",
            "version": __version__,
            "command": args.command,
            "seed": args.seed,
            "cache_version": CACHE_VERSION,
            "result": result,
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(text + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())
