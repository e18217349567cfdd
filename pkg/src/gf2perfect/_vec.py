"""numpy kernels over arrays of bit-packed binary polynomials.

All arrays are ``uint64``.  Degree helpers go through float64 and are exact
only below 2**53, which bounds every caller in this package (degree <= 48).
"""

from __future__ import annotations

import numpy as np

from .poly import pdivmod, pmod

U64 = np.uint64
_MAX_EXACT_BITS = 53


def clmul_const(a: np.ndarray, c: int) -> np.ndarray:
    """Multiply every element of ``a`` by the fixed polynomial ``c``."""
    out = np.zeros_like(a)
    s = 0
    while c:
        if c & 1:
            out ^= a << U64(s)
        c >>= 1
        s += 1
    return out


def clmul_vec(a: np.ndarray, b: np.ndarray, b_bits: int) -> np.ndarray:
    """Elementwise product; every ``b`` is below ``2**b_bits``."""
    out = np.zeros_like(a)
    one = U64(1)
    for s in range(b_bits):
        sel = ((b >> U64(s)) & one).astype(bool)
        out[sel] ^= a[sel] << U64(s)
    return out


def degree(a: np.ndarray) -> np.ndarray:
    """Degree of each nonzero element (garbage for zeros)."""
    _, e = np.frexp(a.astype(np.float64))
    return (e - 1).astype(np.int64)


def ctz(a: np.ndarray) -> np.ndarray:
    """Number of trailing zero bits of each nonzero element."""
    low = a & (~a + U64(1))
    return degree(low)


def strip_x(a: np.ndarray) -> np.ndarray:
    return a >> ctz(a).astype(U64)


def square(a: np.ndarray) -> np.ndarray:
    """Frobenius square of elements below ``2**32`` (bit interleave)."""
    x = a & U64(0xFFFFFFFF)
    x = (x | (x << U64(16))) & U64(0x0000FFFF0000FFFF)
    x = (x | (x << U64(8))) & U64(0x00FF00FF00FF00FF)
    x = (x | (x << U64(4))) & U64(0x0F0F0F0F0F0F0F0F)
    x = (x | (x << U64(2))) & U64(0x3333333333333333)
    x = (x | (x << U64(1))) & U64(0x5555555555555555)
    return x


def divexact(a: np.ndarray, b: np.ndarray, a_bits: int) -> np.ndarray:
    """Elementwise quotient ``a // b`` (remainder discarded); ``a < 2**a_bits``."""
    rem = a.copy()
    quo = np.zeros_like(a)
    db = degree(b)
    one = U64(1)
    for i in range(a_bits - 1, -1, -1):
        shift = i - db
        sel = (shift >= 0) & (((rem >> U64(i)) & one) == one)
        if not sel.any():
            continue
        sh = shift[sel].astype(U64)
        rem[sel] ^= b[sel] << sh
        quo[sel] |= one << sh
    return quo


def coprime(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Boolean mask ``gcd(a, b) == 1`` for nonzero elements (binary gcd)."""
    result = np.zeros(a.shape, dtype=bool)
    common_x = ((a | b) & U64(1)) == 0
    a = strip_x(a)
    b = strip_x(b)
    active = ~common_x
    idx = np.nonzero(active)[0]
    a = a[idx]
    b = b[idx]
    while idx.size:
        done = a == b
        if done.any():
            result[idx[done]] = a[done] == U64(1)
            keep = ~done
            idx, a, b = idx[keep], a[keep], b[keep]
            if not idx.size:
                break
        swap = degree(a) < degree(b)
        a2 = np.where(swap, b, a)
        b = np.where(swap, a, b)
        a = strip_x(a2 ^ b)
    return result


def block_multiples(d: int, t: int, k: int) -> np.ndarray:
    """Offsets of the multiples of ``d`` inside the block ``[t*2^k, (t+1)*2^k)``.

    For ``deg d <= k`` the multiples are ``d*(Q0 + j)`` with ``Q0 = t*x^k div d``
    and ``deg j < k - deg d``; their low parts are ``r0 + d*j``.
    """
    g = d.bit_length() - 1
    base = t << k
    if g <= k:
        _, r0 = pdivmod(base, d)
        j = np.arange(1 << (k - g), dtype=U64)
        return clmul_const(j, d) ^ U64(r0)
    hits = [off for off in range(1 << k) if pmod(base | off, d) == 0]
    return np.array(hits, dtype=U64)

