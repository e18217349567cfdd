"""Two engines for perfect polynomials of the shape ``A = B^2 P_1 ... P_r``.

Here ``B`` is even, ``gcd(B^2, sigma(B^2)) = 1``, and ``r <= 3`` distinct
primes do not divide ``B``.  Then ``A`` is perfect iff

    sigma(B^2) (P_1+1) ... (P_r+1) = B^2 P_1 ... P_r.

``theorem_bruteforce`` tries every admissible prime set from a bounded table.
``solve_structured`` handles one ``B`` at a time with closed forms and no
degree bound on the primes.  The two share no search code, so their agreement
is a real check.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .classify import THEOREM_SET, classify_perfect, is_perfect
from .factor import PrimeTable, default_table, factor_bits, is_irreducible_bits
from .poly import Poly, PolyLike, _bits, clmul, format_poly, pdivmod, pgcd, square
from .search import BudgetExceeded, run_chunks
from .sigma import geometric_sum_bits

THEOREM_MODES = ("strict-odd", "relaxed")
B_BUDGET = 8
P_BUDGET = 9
R_MAX = 3

FAILURE_KEYS = (
    "b_odd",
    "gcd_condition",
    "prime_divides_b",
    "duplicate_prime",
    "sigma_prime_out_of_range",
    "too_many_primes",
)


class HypothesisError(ValueError):
    """``b`` is odd, constant, or fails ``gcd(b^2, sigma(b^2)) = 1``."""


def _odd(p: int) -> bool:
    return bool(p & 1 and p.bit_count() & 1)


def _check_mode(mode: str) -> None:
    if mode not in THEOREM_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {THEOREM_MODES}")


def sigma_square_bits(b: int) -> int:
    """``sigma(b^2)`` from the factorization of ``b``."""
    r = 1
    for p, e in factor_bits(b).items():
        r = clmul(r, geometric_sum_bits(p, 2 * e))
    return r


@dataclass(frozen=True, order=True)
class TheoremSolution:
    a: Poly
    b: Poly
    primes: tuple[Poly, ...]

    @property
    def name(self) -> str:
        return classify_perfect(self.a)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "a": format_poly(self.a),
            "a_hex": self.a.hex(),
            "b": format_poly(self.b),
            "primes": [format_poly(p) for p in self.primes],
        }


def _solution(b: int, primes: Sequence[int]) -> TheoremSolution:
    a = square(b)
    for p in primes:
        a = clmul(a, p)
    if not is_perfect(a):
        raise AssertionError(f"candidate {a:#x} solves the equation but is not perfect")
    return TheoremSolution(Poly(a), Poly(b), tuple(Poly(p) for p in sorted(primes)))


@dataclass
class TheoremReport:
    b_max_degree: int
    prime_max_degree: int
    mode: str
    solutions: list[TheoremSolution]
    hypothesis_failures: dict[str, int]
    b_scanned: int = 0
    combos_tested: int = 0
    combos_pruned: int = 0
    elapsed: float = field(default=0.0, compare=False)

    @property
    def names(self) -> list[str]:
        return [s.name for s in self.solutions]

    @property
    def passed(self) -> bool:
        """Every solution is one of the five named in the classification."""
        return all(n in THEOREM_SET for n in self.names)

    def to_dict(self) -> dict:
        return {
            "b_max_degree": self.b_max_degree,
            "prime_max_degree": self.prime_max_degree,
            "mode": self.mode,
            "b_scanned": self.b_scanned,
            "combos_tested": self.combos_tested,
            "combos_pruned": self.combos_pruned,
            "hypothesis_failures": {k: self.hypothesis_failures.get(k, 0) for k in FAILURE_KEYS},
            "solutions": [s.to_dict() for s in self.solutions],
            "pass": self.passed,
        }

    def to_text(self) -> str:
        lines = [
            f"theorem mode={self.mode} b_max_degree={self.b_max_degree} "
            f"prime_max_degree={self.prime_max_degree} B scanned={self.b_scanned} "
            f"tested={self.combos_tested} pruned={self.combos_pruned} "
            f"elapsed={self.elapsed:.2f}s",
        ]
        for k in FAILURE_KEYS:
            lines.append(f"  {k:<26} {self.hypothesis_failures.get(k, 0):>8}")
        for s in self.solutions:
            primes = " ".join(f"({format_poly(p)})" for p in s.primes)
            lines.append(
                f"  {s.name:<8} {s.a.hex():<10} B={format_poly(s.b):<16} P={primes}"
            )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _BruteJob:
    primes: tuple[int, ...]
    strict: bool

    def __call__(self, bs: Sequence[int]) -> tuple[list[TheoremSolution], dict[str, int], int, int]:
        fails = dict.fromkeys(FAILURE_KEYS, 0)
        sols: list[TheoremSolution] = []
        tested = pruned = 0
        for b in bs:
            if _odd(b):
                fails["b_odd"] += 1
                continue
            b2 = square(b)
            s = sigma_square_bits(b)
            if pgcd(b2, s) != 1:
                fails["gcd_condition"] += 1
                continue
            pool = []
            for p in self.primes:
                if self.strict and not _odd(p):
                    continue
                if pdivmod(b, p)[1] == 0:
                    fails["prime_divides_b"] += 1
                    continue
                pool.append(p)

            # sigma(B^2) must divide P_1...P_r; trial-divide it by the pool
            known = []
            rest = s
            for p in pool:
                q, r = pdivmod(rest, p)
                if r == 0:
                    known.append(p)
                    rest = q
            n_all = sum(math.comb(len(pool), r) for r in range(1, R_MAX + 1))
            if any(pdivmod(rest, p)[1] == 0 for p in known):
                fails["duplicate_prime"] += 1
                pruned += n_all
                continue
            if rest != 1:
                fails["sigma_prime_out_of_range"] += 1
                pruned += n_all
                continue
            if len(known) > R_MAX:
                fails["too_many_primes"] += 1
                pruned += n_all
                continue

            others = [p for p in pool if p not in known]
            lhs0 = s
            rhs0 = b2
            for p in known:
                lhs0 = clmul(lhs0, p ^ 1)
                rhs0 = clmul(rhs0, p)
            n_tried = 0
            for extra in range(0, R_MAX - len(known) + 1):
                for combo in itertools.combinations(others, extra):
                    n_tried += 1
                    lhs, rhs = lhs0, rhs0
                    for p in combo:
                        lhs = clmul(lhs, p ^ 1)
                        rhs = clmul(rhs, p)
                    if lhs == rhs:
                        sols.append(_solution(b, known + list(combo)))
            tested += n_tried
            pruned += n_all - n_tried
        return sols, fails, tested, pruned


def theorem_bruteforce(
    b_max_degree: int = B_BUDGET,
    prime_max_degree: int = P_BUDGET,
    mode: str = "relaxed",
    *,
    workers: int = 1,
    table: PrimeTable | None = None,
    allow_over_budget: bool = False,
) -> TheoremReport:
    """Scan every even ``B`` with ``1 <= deg B <= b_max_degree``.

    Prime sets come from the primes of degree ``<= prime_max_degree`` that do
    not divide ``B`` (odd ones only in ``strict-odd`` mode).  A set is only
    expanded when ``sigma(B^2)`` divides its product; all other sets are
    counted as pruned.
    """
    _check_mode(mode)
    if not allow_over_budget and (b_max_degree > B_BUDGET or prime_max_degree > P_BUDGET):
        raise BudgetExceeded(
            f"theorem budget is ({B_BUDGET}, {P_BUDGET}), asked for "
            f"({b_max_degree}, {prime_max_degree})"
        )
    table = table if table is not None else default_table()
    start = time.perf_counter()
    bs = list(range(2, 1 << (b_max_degree + 1)))
    job = _BruteJob(tuple(table.up_to(prime_max_degree)), mode == "strict-odd")
    parts = run_chunks(job, bs, workers)

    sols: list[TheoremSolution] = []
    fails = dict.fromkeys(FAILURE_KEYS, 0)
    tested = pruned = 0
    for s, f, t, p in parts:
        sols.extend(s)
        for k, v in f.items():
            fails[k] += v
        tested += t
        pruned += p
    return TheoremReport(
        b_max_degree,
        prime_max_degree,
        mode,
        sorted(sols),
        fails,
        len(bs),
        tested,
        pruned,
        time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------

def _forced_prime(c: int, e: int) -> int | None:
    """The ``Q`` with ``c (Q+1) = (c+e) Q``, i.e. ``Q = c / e``, if it is prime."""
    if e == 0:
        return None
    q, r = pdivmod(c, e)
    if r or q < 2 or not is_irreducible_bits(q):
        return None
    return q


def solve_structured(
    b: PolyLike,
    r_max: int = R_MAX,
    mode: str = "relaxed",
    *,
    r_only: int | None = None,
    table: PrimeTable | None = None,
) -> list[TheoremSolution]:
    """Every perfect ``b^2 P_1 ... P_r`` with ``r <= r_max``.

    The primes of ``sigma(b^2)`` are forced.  With ``C`` the product of
    ``P+1`` over them, one missing prime is ``C / (C + b^2)``; for two missing
    primes the smaller has degree at most ``deg C - deg(C + b^2)``, so it is
    enumerated and the other is forced.  ``r_only`` restricts to one ``r``.
    """
    _check_mode(mode)
    if not 1 <= r_max <= R_MAX:
        raise ValueError(f"r_max must be in 1..{R_MAX}")
    if r_only is not None and not 1 <= r_only <= r_max:
        raise ValueError(f"r_only must be in 1..{r_max}")
    v = _bits(b)
    if v < 2:
        raise HypothesisError("b must have degree >= 1")
    if _odd(v):
        raise HypothesisError(f"b = {format_poly(v)} is odd")
    b2 = square(v)
    s = sigma_square_bits(v)
    if pgcd(b2, s) != 1:
        raise HypothesisError(f"gcd(b^2, sigma(b^2)) != 1 for b = {format_poly(v)}")

    strict = mode == "strict-odd"

    def admissible(p: int) -> bool:
        return (not strict or _odd(p)) and pgcd(p, v) == 1

    fs = factor_bits(s)
    if any(e > 1 for e in fs.values()):
        return []
    known = sorted(fs)
    if len(known) > r_max or not all(admissible(p) for p in known):
        return []
    c = 1
    for p in known:
        c = clmul(c, p ^ 1)
    e = c ^ b2

    found: set[tuple[int, ...]] = set()
    rs = [r_only] if r_only is not None else range(1, r_max + 1)
    for r in rs:
        m = r - len(known)
        if m == 0 and e == 0:
            found.add(tuple(known))
        elif m == 1:
            q = _forced_prime(c, e)
            if q is not None and q not in known and admissible(q):
                found.add(tuple(sorted(known + [q])))
        elif m == 2:
            if e == 0:
                # Q1 + Q2 = 1 forces {x, x+1}
                pairs = [(0b10, 0b11)]
            else:
                d_star = (c.bit_length() - 1) - (e.bit_length() - 1)
                pairs = []
                if d_star >= 1:
                    tbl = table if table is not None else default_table()
                    for q1 in tbl.up_to(d_star):
                        if q1 in known or not admissible(q1):
                            continue
                        c1 = clmul(c, q1 ^ 1)
                        q2 = _forced_prime(c1, c1 ^ clmul(b2, q1))
                        if q2 is not None:
                            pairs.append((q1, q2))
            for q1, q2 in pairs:
                if q1 != q2 and q1 not in known and q2 not in known and admissible(q1) and admissible(q2):
                    found.add(tuple(sorted(known + [q1, q2])))
    return sorted(_solution(v, ps) for ps in found)


def structured_sweep(
    b_max_degree: int,
    mode: str = "relaxed",
    *,
    table: PrimeTable | None = None,
) -> dict[int, list[TheoremSolution]]:
    """``solve_structured`` on every qualifying ``b`` of degree ``<= b_max_degree``."""
    out = {}
    for b in range(2, 1 << (b_max_degree + 1)):
        if _odd(b):
            continue
        try:
            out[b] = solve_structured(b, R_MAX, mode, table=table)
        except HypothesisError:
            continue
    return out
