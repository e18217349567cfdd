"""Exhaustive perfect-polynomial search and the gcd-condition census.

Both scans cut their candidate space into contiguous blocks (see
:mod:`gf2perfect.sieve`), hand contiguous runs of blocks to worker
processes, and merge the partial results.  Merging sorts and sums, so the
final report does not depend on the number of workers.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence, TypeVar

import numpy as np

from . import _vec
from .classify import classify_perfect, is_perfect
from .factor import PrimeTable, default_table
from .poly import Poly, format_poly
from .sieve import Block, block_sigma, blocks_for_degrees

log = logging.getLogger(__name__)

FULL_BUDGET = 20
PRUNED_BUDGET = 24
CENSUS_BUDGET = 21
UNKNOWN_GUARD_DEGREE = 24
MODES = ("full", "pruned-even")

T = TypeVar("T")
R = TypeVar("R")


class BudgetExceeded(ValueError):
    """A scan was asked to go past its configured budget without an override."""


def split_contiguous(items: Sequence[T], parts: int) -> list[Sequence[T]]:
    """Cut ``items`` into at most ``parts`` contiguous, nearly equal runs."""
    parts = max(1, min(parts, len(items)))
    n = len(items)
    bounds = [n * i // parts for i in range(parts + 1)]
    return [items[bounds[i]:bounds[i + 1]] for i in range(parts)]


def run_chunks(fn: Callable[[Sequence[T]], R], items: Sequence[T], workers: int) -> list[R]:
    """Apply ``fn`` to contiguous chunks of ``items``; results in chunk order."""
    chunks = split_contiguous(items, workers)
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, chunks))


# ---------------------------------------------------------------------------
# perfect search
# ---------------------------------------------------------------------------

@dataclass
class SearchReport:
    max_degree: int
    mode: str
    found: list[tuple[Poly, str]]
    candidates_scanned: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def unknown(self) -> list[Poly]:
        return [p for p, c in self.found if c == "UNKNOWN"]

    @property
    def passed(self) -> bool:
        return not self.unknown

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "mode": self.mode,
            "candidates_scanned": self.candidates_scanned,
            "found": [
                {"poly": format_poly(p), "hex": p.hex(), "degree": p.degree, "classification": c}
                for p, c in self.found
            ],
            "unknown_count": len(self.unknown),
            "pass": self.passed,
        }

    def to_text(self) -> str:
        lines = [
            f"search mode={self.mode} max_degree={self.max_degree} "
            f"scanned={self.candidates_scanned} found={len(self.found)} "
            f"elapsed={self.elapsed:.2f}s",
        ]
        for p, c in self.found:
            lines.append(f"  {c:<8} deg {p.degree:>3}  {p.hex():<12} {format_poly(p)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class _SearchJob:
    primes: tuple[int, ...]
    m0: int

    def __call__(self, blocks: Sequence[Block]) -> tuple[list[int], int]:
        found: list[int] = []
        scanned = 0
        for blk in blocks:
            a, f = block_sigma(blk, list(self.primes), self.m0, 1)
            hits = np.nonzero(a == f)[0]
            found.extend(int(a[i]) for i in hits)
            scanned += blk.size
        return found, scanned


def search_perfect(
    max_degree: int,
    mode: str = "full",
    *,
    workers: int = 1,
    table: PrimeTable | None = None,
    allow_over_budget: bool = False,
) -> SearchReport:
    """Find every perfect ``a`` with ``1 <= deg a <= max_degree``.

    ``pruned-even`` only looks at multiples of ``x(x+1)``, which contain
    every even perfect polynomial.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    budget = FULL_BUDGET if mode == "full" else PRUNED_BUDGET
    if max_degree > budget and not allow_over_budget:
        raise BudgetExceeded(f"{mode} search budget is degree {budget}, asked for {max_degree}")
    if max_degree > 30:
        raise BudgetExceeded("degrees above 30 overflow the 64-bit sieve")
    table = table if table is not None else default_table()
    start = time.perf_counter()

    if mode == "full":
        m0, lo, hi = 1, 1, max_degree
    else:
        m0, lo, hi = 0b110, 0, max_degree - 2
    if hi < lo:
        return SearchReport(max_degree, mode, [], 0, time.perf_counter() - start)
    blocks = blocks_for_degrees(lo, hi)
    primes = tuple(table.up_to(max(1, hi // 2)))
    job = _SearchJob(primes, m0)
    parts = run_chunks(job, blocks, workers)

    values = sorted(v for found, _ in parts for v in found)
    scanned = sum(s for _, s in parts)
    found = []
    for v in values:
        p = Poly(v)
        if not is_perfect(p):
            raise AssertionError(f"sieve reported {p!r} as perfect, scalar sigma disagrees")
        label = classify_perfect(p)
        if label == "UNKNOWN":
            log.warning("NEW PERFECT POLYNOMIAL: %s (%s)", format_poly(p), p.hex())
        found.append((p, label))
    return SearchReport(max_degree, mode, found, scanned, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# gcd(B^2, sigma(B^2)) = 1 census
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    max_degree: int
    per_degree: list[tuple[int, int, int]]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def even_total(self) -> int:
        return sum(e for _, e, _ in self.per_degree)

    @property
    def satisfying_total(self) -> int:
        return sum(s for _, _, s in self.per_degree)

    @property
    def cumulative_fraction(self) -> Fraction:
        if not self.even_total:
            return Fraction(0)
        return Fraction(self.satisfying_total, self.even_total)

    def to_dict(self) -> dict:
        frac = self.cumulative_fraction
        return {
            "max_degree": self.max_degree,
            "per_degree": [
                {
                    "degree": d,
                    "even_count": e,
                    "satisfying_count": s,
                    "fraction": f"{s}/{e}",
                    "fraction_float": round(s / e, 6) if e else 0.0,
                }
                for d, e, s in self.per_degree
            ],
            "even_total": self.even_total,
            "satisfying_total": self.satisfying_total,
            "cumulative_fraction": f"{frac.numerator}/{frac.denominator}",
            "cumulative_fraction_float": round(float(frac), 6),
        }

    def to_text(self) -> str:
        lines = [f"census max_degree={self.max_degree} elapsed={self.elapsed:.2f}s"]
        lines.append(f"  {'deg':>3} {'even':>9} {'gcd=1':>9} {'fraction':>9}")
        for d, e, s in self.per_degree:
            lines.append(f"  {d:>3} {e:>9} {s:>9} {s / e:>9.4f}")
        frac = self.cumulative_fraction
        lines.append(
            f"  cumulative {self.satisfying_total}/{self.even_total} = {float(frac):.6f}"
        )
        return "\n".join(lines)


@dataclass(frozen=True)
class _CensusJob:
    primes: tuple[int, ...]

    def __call__(self, blocks: Sequence[Block]) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for blk in blocks:
            b, f = block_sigma(blk, list(self.primes), 1, 2)
            even = ((b & np.uint64(1)) == 0) | ((np.bitwise_count(b) & 1) == 0)
            be, fe = b[even], f[even]
            ok = _vec.coprime(be, fe)
            row = out.setdefault(blk.nq, [0, 0])
            row[0] += int(be.size)
            row[1] += int(ok.sum())
        return out


def gcd_condition_census(
    max_degree: int,
    *,
    workers: int = 1,
    table: PrimeTable | None = None,
    allow_over_budget: bool = False,
) -> CensusReport:
    """Count even ``B`` (``1 <= deg B <= max_degree``) with ``gcd(B^2, sigma(B^2)) = 1``.

    ``B^2`` and ``B`` have the same prime support, so the test is run as
    ``gcd(B, sigma(B^2)) = 1``.
    """
    if max_degree > CENSUS_BUDGET and not allow_over_budget:
        raise BudgetExceeded(f"census budget is degree {CENSUS_BUDGET}, asked for {max_degree}")
    if max_degree > 26:
        raise BudgetExceeded("sigma(B^2) must stay below 2**53 for the vector gcd")
    table = table if table is not None else default_table()
    start = time.perf_counter()
    blocks = blocks_for_degrees(1, max_degree)
    primes = tuple(table.up_to(max(1, max_degree // 2)))
    parts = run_chunks(_CensusJob(primes), blocks, workers)
    totals: dict[int, list[int]] = {}
    for part in parts:
        for d, (e, s) in part.items():
            row = totals.setdefault(d, [0, 0])
            row[0] += e
            row[1] += s
    per_degree = [(d, totals[d][0], totals[d][1]) for d in sorted(totals)]
    return CensusReport(max_degree, per_degree, time.perf_counter() - start)
