"""Bounded computational checks of classical facts about complete and Mersenne polynomials.

Each check enumerates a finite range, collects the witnesses the lemma talks
about, and compares them with the finite set the lemma asserts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .classify import is_complete, is_mersenne
from .factor import PrimeTable, _x1_valuation, default_table, factor_bits, is_irreducible_bits
from .poly import Poly, clmul, format_poly, ppow, sqrt_exact
from .sigma import geometric_sum_bits

PARTS = ("b", "c", "d", "e", "f")

DEFAULT_BOUNDS: dict[str, dict[str, int]] = {
    "b": {"h_max": 4096},
    "c": {"beta_max": 64},
    "d": {"degree_max": 24},
    "e": {"prime_degree_max": 8, "exponent_max": 16},
    "f": {"m_max": 12},
}

BUDGETS: dict[str, dict[str, int]] = {
    "b": {"h_max": 16384},
    "c": {"beta_max": 1024},
    "d": {"degree_max": 64},
    "e": {"prime_degree_max": 12, "exponent_max": 64},
    "f": {"m_max": 13},
}


@dataclass
class LemmaCheckReport:
    lemma_id: str
    bounds: dict[str, int]
    witnesses: list
    expected: list
    statement: str = ""
    checked: int = 0
    notes: dict = field(default_factory=dict)
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.witnesses == self.expected

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "statement": self.statement,
            "bounds": self.bounds,
            "checked": self.checked,
            "witnesses": self.witnesses,
            "expected": self.expected,
            "notes": self.notes,
            "pass": self.passed,
        }

    def to_text(self) -> str:
        bounds = " ".join(f"{k}={v}" for k, v in self.bounds.items())
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"lemma ({self.lemma_id}) {verdict}  {bounds}  checked={self.checked}\n"
            f"  {self.statement}\n"
            f"  witnesses: {self.witnesses}\n"
            f"  expected:  {self.expected}"
            + "".join(f"\n  {k}: {v}" for k, v in self.notes.items())
        )


class UnknownPart(ValueError):
    pass


def _complete(deg: int) -> int:
    return (1 << (deg + 1)) - 1


def _part_b(h_max: int) -> LemmaCheckReport:
    counterexamples = []
    for h in range(1, h_max + 1):
        a = _complete(h - 1)
        r, cof = _x1_valuation(a)
        n = (r + 1).bit_length() - 1
        ok = (r + 1) & r == 0
        if ok:
            try:
                for _ in range(n):
                    cof = sqrt_exact(cof)
            except ValueError:
                ok = False
        if not ok or cof & (cof + 1):
            counterexamples.append(h)
    return LemmaCheckReport(
        "b",
        {"h_max": h_max},
        counterexamples,
        [],
        "complete A of degree h-1 with (x+1)^r || A has r = 2^n - 1 and A = (x+1)^r K^(2^n), K complete",
        h_max,
    )


def _part_c(beta_max: int) -> LemmaCheckReport:
    hits = []
    for beta in range(1, beta_max + 1):
        p = clmul(0b10, ppow(0b11, beta)) ^ 1
        if is_complete(Poly(p)) and is_irreducible_bits(p):
            hits.append(beta)
    return LemmaCheckReport(
        "c",
        {"beta_max": beta_max},
        hits,
        [1, 3],
        "x(x+1)^beta + 1 is complete and irreducible only for x^2+x+1 and x^4+x^3+x^2+x+1",
        beta_max,
    )


def _part_d(degree_max: int) -> LemmaCheckReport:
    hits = []
    count = 0
    for d in range(2, degree_max + 1, 2):
        a = _complete(d)
        count += 1
        if all(is_mersenne(Poly(p)) for p in factor_bits(a)):
            hits.append(format_poly(a))
    expected = [format_poly(p) for p in (0b111, 0b11111, clmul(0b1011, 0b1101))]
    return LemmaCheckReport(
        "d",
        {"degree_max": degree_max},
        hits,
        expected,
        "complete A of even degree with only Mersenne prime factors are x^2+x+1, "
        "x^4+x^3+x^2+x+1, (x^3+x+1)(x^3+x^2+1)",
        count,
    )


def _part_e(prime_degree_max: int, exponent_max: int, table: PrimeTable) -> LemmaCheckReport:
    seen: dict[int, tuple[int, int]] = {}
    collisions = []
    count = 0
    for p in table.up_to(prime_degree_max):
        for two_m in range(2, exponent_max + 1, 2):
            count += 1
            s = geometric_sum_bits(p, two_m)
            prev = seen.setdefault(s, (p, two_m))
            if prev != (p, two_m):
                collisions.append(
                    [format_poly(prev[0]), prev[1], format_poly(p), two_m]
                )
    linear = {"x", "x+1"}
    odd_only = [c for c in collisions if c[0] not in linear and c[2] not in linear]
    return LemmaCheckReport(
        "e",
        {"prime_degree_max": prime_degree_max, "exponent_max": exponent_max},
        collisions,
        [],
        "sigma(Q^(2m)) = sigma(P^(2n)) forces (Q, m) = (P, n)",
        count,
        {"collisions_between_odd_primes": len(odd_only)},
    )


def _part_f(m_max: int) -> LemmaCheckReport:
    hits = []
    for m in range(1, m_max + 1):
        p = clmul(0b10, ppow(0b11, (1 << m) - 1)) ^ 1
        if is_irreducible_bits(p):
            hits.append(m)
    return LemmaCheckReport(
        "f",
        {"m_max": m_max},
        hits,
        [1, 2],
        "x(x+1)^(2^m - 1) + 1 is irreducible only for m = 1, 2",
        m_max,
    )


def check_canaday(
    part: str,
    bounds: dict[str, int] | None = None,
    *,
    table: PrimeTable | None = None,
    allow_over_budget: bool = False,
) -> LemmaCheckReport:
    """Run the bounded check for lemma part ``b``..``f``."""
    if part not in PARTS:
        raise UnknownPart(f"unknown lemma part {part!r}; expected one of {PARTS}")
    merged = dict(DEFAULT_BOUNDS[part])
    for key, value in (bounds or {}).items():
        if key not in merged:
            raise ValueError(f"part {part} has no bound {key!r}")
        merged[key] = int(value)
    if not allow_over_budget:
        for key, value in merged.items():
            if value > BUDGETS[part][key]:
                raise ValueError(f"{key}={value} exceeds the budget {BUDGETS[part][key]}")
    start = time.perf_counter()
    if part == "b":
        report = _part_b(**merged)
    elif part == "c":
        report = _part_c(**merged)
    elif part == "d":
        report = _part_d(**merged)
    elif part == "e":
        report = _part_e(table=table if table is not None else default_table(), **merged)
    else:
        report = _part_f(**merged)
    report.elapsed = time.perf_counter() - start
    return report
