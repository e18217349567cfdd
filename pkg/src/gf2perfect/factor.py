"""Irreducibility, square-free decomposition and complete factorization over GF(2).

Factorization strips the linear primes ``x`` and ``x+1`` first (both are
cheap: trailing zeros and parity), splits what remains into square-free
layers, then runs distinct-degree and equal-degree splitting on each layer.
Equal-degree splitting uses the GF(2) trace map with the deterministic
separators ``x, x^2, x^3, ...`` and only then a fixed-seed pseudorandom
sequence, so the output never depends on run-to-run randomness.
"""

from __future__ import annotations

import os
import random
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

import numpy as np

from . import _vec
from .poly import (
    Poly,
    PolyLike,
    _bits,
    clmul,
    derivative,
    format_poly,
    pdivmod,
    pgcd,
    pmod,
    ppow,
    sqrt_exact,
    square,
)

DEFAULT_SEED = 0x5EED
CACHE_ENV = "GF2PERFECT_CACHE"
CACHE_VERSION = "gf2-primes v1"

_X = 0b10
_X1 = 0b11


# ---------------------------------------------------------------------------
# Factorization value type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: ``(prime, exponent)`` pairs in (degree, hex) order."""

    factors: tuple[tuple[Poly, int], ...] = ()

    def __iter__(self) -> Iterator[tuple[Poly, int]]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    @property
    def primes(self) -> list[Poly]:
        return [p for p, _ in self.factors]

    def exponent(self, p: PolyLike) -> int:
        b = _bits(p)
        for q, e in self.factors:
            if q.bits == b:
                return e
        return 0

    def expand(self) -> Poly:
        r = 1
        for p, e in self.factors:
            r = clmul(r, ppow(p.bits, e))
        return Poly(r)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for p, e in self.factors:
            s = format_poly(p)
            if p.bits != _X:
                s = f"({s})"
            parts.append(s if e == 1 else f"{s}^{e}")
        return "".join(parts)


def _canonical(pairs: dict[int, int]) -> Factorization:
    return Factorization(tuple((Poly(p), e) for p, e in sorted(pairs.items())))


# ---------------------------------------------------------------------------
# irreducibility
# ---------------------------------------------------------------------------

def _prime_divisors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_powers(p: int, upto: int) -> list[int]:
    """``[x^(2^i) mod p for i in 0..upto]``."""
    h = pmod(_X, p)
    out = [h]
    for _ in range(upto):
        h = pmod(square(h), p)
        out.append(h)
    return out


def is_irreducible_bits(p: int) -> bool:
    d = p.bit_length() - 1
    if d < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if d == 1:
        return True
    if p & 1 == 0 or p.bit_count() % 2 == 0:  # divisible by x or x+1
        return False
    if derivative(p) == 0:
        return False
    frob = _frobenius_powers(p, d)
    if frob[d] != _X:
        return False
    for q in _prime_divisors(d):
        if pgcd(p, frob[d // q] ^ _X) != 1:
            return False
    return True


def is_irreducible(p: PolyLike) -> bool:
    """Rabin's test: ``x^(2^d) = x mod p`` and ``gcd(x^(2^(d/q)) - x, p) = 1``."""
    return is_irreducible_bits(_bits(p))


# ---------------------------------------------------------------------------
# square-free decomposition
# ---------------------------------------------------------------------------

def split_square(a: int) -> tuple[int, int]:
    """Return ``(b, s)`` with ``a = b^2 * s`` and ``s`` square-free.

    ``gcd(a, a')`` keeps every prime with its exponent rounded down to even,
    so it is ``b^2``, and the quotient is the product of odd-exponent primes.
    """
    if a == 0:
        raise ValueError("zero has no square-free decomposition")
    g = pgcd(a, derivative(a))
    s, r = pdivmod(a, g)
    assert r == 0
    return sqrt_exact(g), s


def squarefree_decompose(a: PolyLike) -> list[tuple[Poly, int]]:
    """Write ``a = s_0 * s_1^2 * s_2^4 * ...`` with every ``s_k`` square-free.

    Returns the nontrivial layers as ``(s_k, 2^k)``.  Layers need not be
    coprime to each other; the exponent of a prime in ``a`` is the sum of the
    multiplicities of the layers it divides (its binary expansion).
    """
    v = _bits(a)
    if v == 0:
        raise ValueError("zero has no square-free decomposition")
    out = []
    mult = 1
    while v != 1:
        v, s = split_square(v)
        if s != 1:
            out.append((Poly(s), mult))
        mult *= 2
    return out


# ---------------------------------------------------------------------------
# distinct- and equal-degree splitting
# ---------------------------------------------------------------------------

def _ddf(f: int) -> list[tuple[int, int]]:
    """Split square-free ``f`` into ``(product of all degree-d primes, d)``."""
    out = []
    h = _X
    d = 0
    while f.bit_length() - 1 >= 2 * (d + 1):
        d += 1
        h = pmod(square(h), f)
        g = pgcd(f, h ^ _X)
        if g != 1:
            out.append((g, d))
            f = pdivmod(f, g)[0]
            h = pmod(h, f)
    if f != 1:
        out.append((f, f.bit_length() - 1))
    return out


def _separators(g: int, rng: random.Random) -> Iterator[int]:
    n = g.bit_length() - 1
    for j in range(1, n):
        yield 1 << j
    while True:
        yield rng.getrandbits(n) | 2


def _edf(g: int, d: int, seed: int) -> list[int]:
    """Split a product of distinct degree-``d`` primes with the trace map."""
    if g.bit_length() - 1 == d:
        return [g]
    rng = random.Random(seed)
    for u in _separators(g, rng):
        t = u = pmod(u, g)
        acc = u
        for _ in range(d - 1):
            t = pmod(square(t), g)
            acc ^= t
        s = pgcd(g, acc)
        if s != 1 and s != g:
            return _edf(s, d, seed) + _edf(pdivmod(g, s)[0], d, seed)
    raise AssertionError("unreachable: separator sequence is infinite")


def _x1_valuation(a: int) -> tuple[int, int]:
    """Strip powers of ``x+1``; returns ``(exponent, cofactor)``."""
    e = 0
    while a > 1 and a.bit_count() % 2 == 0:
        # exact division by x+1: q_i = a_{i+1} ^ a_{i+2} ^ ...
        q = a >> 1
        sh = 1
        while q >> sh:
            q ^= q >> sh
            sh <<= 1
        a = q
        e += 1
    return e, a


def factor_bits(a: int, seed: int = DEFAULT_SEED) -> dict[int, int]:
    if a == 0:
        raise ValueError("cannot factor the zero polynomial")
    out: dict[int, int] = {}
    vx = (a & -a).bit_length() - 1
    if vx:
        out[_X] = vx
        a >>= vx
    v1, a = _x1_valuation(a)
    if v1:
        out[_X1] = v1
    mult = 1
    while a != 1:
        a, s = split_square(a)
        if s != 1:
            for g, d in _ddf(s):
                for p in _edf(g, d, seed):
                    out[p] = out.get(p, 0) + mult
        mult *= 2
    return out


def factor(a: PolyLike, seed: int = DEFAULT_SEED) -> Factorization:
    """Complete canonical factorization; ``factor(1)`` is empty."""
    return _canonical(factor_bits(_bits(a), seed))


def omega(a: PolyLike) -> int:
    """Number of distinct prime factors."""
    return len(factor_bits(_bits(a)))


def valuation(p: PolyLike, a: PolyLike) -> int:
    """Exponent of the prime ``p`` in ``a``."""
    pb, ab = _bits(p), _bits(a)
    if ab == 0:
        raise ValueError("valuation of zero is infinite")
    if pb < 2:
        raise ValueError("valuation needs a prime of degree >= 1")
    if pb == _X:
        return (ab & -ab).bit_length() - 1
    if pb == _X1:
        return _x1_valuation(ab)[0]
    # p, p^2, p^4, ... then back down
    powers = [pb]
    e = 0
    while True:
        q, r = pdivmod(ab, powers[-1])
        if r:
            break
        ab = q
        e += 1 << (len(powers) - 1)
        powers.append(square(powers[-1]))
    for i in range(len(powers) - 2, -1, -1):
        q, r = pdivmod(ab, powers[i])
        if r == 0:
            ab = q
            e += 1 << i
    return e


# ---------------------------------------------------------------------------
# prime tables
# ---------------------------------------------------------------------------

def necklace_count(d: int) -> int:
    """Number of irreducible binary polynomials of degree ``d``."""
    total = 0
    for e in range(1, d + 1):
        if d % e == 0:
            total += _mobius(e) * (1 << (d // e))
    return total // d


def _mobius(n: int) -> int:
    sign = 1
    q = 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            sign = -sign
        q += 1
    return -sign if n > 1 else sign


def default_cache_path() -> Path:
    base = os.environ.get(CACHE_ENV)
    root = Path(base) if base else Path.home() / ".cache" / "gf2perfect"
    return root / "primes.txt"


class PrimeTable:
    """All irreducibles of each degree up to ``max_degree``, optionally backed by a file.

    Degrees are filled in order and never rewritten.  Degrees up to
    ``sieve_max`` are enumerated by crossing out products of smaller primes;
    higher degrees by an irreducibility scan.
    """

    def __init__(self, path: str | Path | None = None, sieve_max: int = 16) -> None:
        self.path = Path(path) if path is not None else None
        self.sieve_max = sieve_max
        self.by_degree: dict[int, list[int]] = {}
        self.max_degree = 0
        if self.path is not None and self.path.exists():
            self._load()

    # file I/O -------------------------------------------------------------

    def _load(self) -> None:
        with open(self.path, encoding="ascii") as fh:
            header = fh.readline().strip()
            prefix = f"# {CACHE_VERSION} max_degree="
            if not header.startswith(prefix):
                raise ValueError(f"{self.path}: not a prime cache ({header!r})")
            max_degree = int(header[len(prefix):])
            table: dict[int, list[int]] = {d: [] for d in range(1, max_degree + 1)}
            for line in fh:
                d, h = line.split()
                table[int(d)].append(int(h, 16))
        for d, ps in table.items():
            if len(ps) != necklace_count(d):
                raise ValueError(f"{self.path}: degree {d} has {len(ps)} primes")
        self.by_degree = table
        self.max_degree = max_degree

    def dumps(self) -> str:
        lines = [f"# {CACHE_VERSION} max_degree={self.max_degree}"]
        for d in range(1, self.max_degree + 1):
            lines.extend(f"{d} {p:#x}" for p in self.by_degree[d])
        return "\n".join(lines) + "\n"

    def save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".primes-")
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(self.dumps())
        os.replace(tmp, self.path)

    # enumeration ----------------------------------------------------------

    def ensure(self, d: int) -> None:
        if d <= self.max_degree:
            return
        for k in range(self.max_degree + 1, d + 1):
            self.by_degree[k] = self._enumerate(k)
            self.max_degree = k
        self.save()

    def _enumerate(self, d: int) -> list[int]:
        if d <= self.sieve_max:
            alive = np.ones(1 << d, dtype=bool)
            for g in range(1, d // 2 + 1):
                for p in self.by_degree[g]:
                    alive[_vec.block_multiples(p, 1, d).astype(np.int64)] = False
            base = 1 << d
            return [base | int(i) for i in np.nonzero(alive)[0]]
        return [p for p in range(1 << d, 1 << (d + 1)) if is_irreducible_bits(p)]

    def primes_of_degree(self, d: int) -> list[int]:
        if d < 1:
            raise ValueError("degree must be >= 1")
        self.ensure(d)
        return self.by_degree[d]

    def up_to(self, d: int) -> list[int]:
        self.ensure(d)
        return [p for k in range(1, d + 1) for p in self.by_degree[k]]


_DEFAULT_TABLE: PrimeTable | None = None


def default_table() -> PrimeTable:
    """Process-wide table backed by the on-disk cache (see ``GF2PERFECT_CACHE``)."""
    global _DEFAULT_TABLE
    path = default_cache_path()
    if _DEFAULT_TABLE is None or _DEFAULT_TABLE.path != path:
        _DEFAULT_TABLE = PrimeTable(path)
    return _DEFAULT_TABLE


def primes_of_degree(d: int, table: PrimeTable | None = None) -> list[Poly]:
    """Sorted irreducibles of degree exactly ``d``."""
    table = table if table is not None else default_table()
    return [Poly(p) for p in table.primes_of_degree(d)]
