"""The divisor-sum map on binary polynomials.

``sigma(A)`` is the sum (in GF(2)[x]) of every divisor of ``A``, including 1
and ``A``.  It is multiplicative on coprime arguments, so it is computed from
the factorization; ``sigma_naive`` enumerates the divisors one by one and
exists only as an oracle for tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .factor import Factorization, factor, factor_bits
from .poly import Poly, PolyLike, _bits, clmul, ppow, square

NAIVE_MAX_DEGREE = 20


@dataclass(frozen=True)
class SigmaResult:
    value: Poly
    factored_input: Factorization


def geometric_sum_bits(a: int, r: int) -> int:
    """``1 + a + a^2 + ... + a^r`` by Horner accumulation."""
    if r < 0:
        raise ValueError("negative length")
    if a == 0b10:
        return (1 << (r + 1)) - 1
    acc = 1
    for _ in range(r):
        acc = clmul(acc, a) ^ 1
    return acc


def sigma_prime_power(p: PolyLike, e: int) -> Poly:
    """``1 + p + ... + p^e``; ``e = 0`` gives 1."""
    return Poly(geometric_sum_bits(_bits(p), e))


def sigma_from_factors(pairs) -> int:
    r = 1
    for p, e in pairs:
        r = clmul(r, geometric_sum_bits(int(p), e))
    return r


def sigma_bits(a: int) -> int:
    if a == 0:
        raise ValueError("sigma(0) is undefined")
    return sigma_from_factors(factor_bits(a).items())


def sigma(a: PolyLike) -> Poly:
    return Poly(sigma_bits(_bits(a)))


def sigma_with_factorization(a: PolyLike) -> SigmaResult:
    f = factor(a)
    return SigmaResult(Poly(sigma_from_factors(f)), f)


def sigma_naive(a: PolyLike, max_degree: int = NAIVE_MAX_DEGREE) -> Poly:
    """Sum of all divisors, listed one at a time from the exponent tuples."""
    v = _bits(a)
    if v == 0:
        raise ValueError("sigma(0) is undefined")
    if v.bit_length() - 1 > max_degree:
        raise ValueError(f"degree {v.bit_length() - 1} exceeds the oracle bound {max_degree}")
    pairs = sorted(factor_bits(v).items())
    powers = [[ppow(p, k) for k in range(e + 1)] for p, e in pairs]
    total = 0
    for combo in itertools.product(*powers):
        d = 1
        for q in combo:
            d = clmul(d, q)
        total ^= d
    return Poly(total)


def _two_adic(e: int) -> tuple[int, int]:
    n = 0
    while e % 2 == 0:
        e //= 2
        n += 1
    return n, e


def geometric_split(a: PolyLike, e: int) -> tuple[Poly, Poly]:
    """Both sides of ``S(a^e) + 1 = a (a+1)^(2^n - 1) S(a^(k-1))^(2^n)``.

    Here ``e = 2^n k`` with ``k`` odd and ``S(A^r) = 1 + A + ... + A^r``.
    The left side is summed directly; the right side is assembled from the
    factored form, so equality is a genuine check.
    """
    if e <= 0 or e % 2:
        raise ValueError("exponent must be a positive even integer")
    v = _bits(a)
    n, k = _two_adic(e)
    lhs = geometric_sum_bits(v, e) ^ 1
    tail = geometric_sum_bits(v, k - 1)
    for _ in range(n):
        tail = square(tail)
    rhs = clmul(clmul(v, ppow(v ^ 1, (1 << n) - 1)), tail)
    return Poly(lhs), Poly(rhs)
