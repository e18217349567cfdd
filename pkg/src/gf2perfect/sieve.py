"""Block sieve for ``sigma`` over every polynomial in a range.

The scans work on blocks of cofactors ``q`` sharing their top bits,
``q in [t*2^k, (t+1)*2^k)``, and evaluate the multiplicative function

    F(m0 * q) = prod over p^e || m0*q of sigma(p^(power*e))

for a fixed multiplier ``m0`` (1, or ``x(x+1)`` for the even-pruned search).
``power=1`` gives ``sigma(a)``; ``power=2`` gives ``sigma(a^2)``.

Every prime of degree at most ``deg q // 2`` is sieved over the block; what
is left of ``q`` afterwards is 1 or a single large prime, which is recovered
by exact division.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _vec
from .factor import _x1_valuation
from .poly import clmul, pdivmod, ppow
from .sigma import geometric_sum_bits

U64 = np.uint64
BLOCK_BITS = 16


@dataclass(frozen=True)
class Block:
    """Cofactors ``q = t*2^k + j`` for ``0 <= j < 2^k``, all of degree ``nq``."""

    nq: int
    t: int
    k: int

    @property
    def start(self) -> int:
        return self.t << self.k

    @property
    def size(self) -> int:
        return 1 << self.k


def blocks_for_degrees(lo: int, hi: int, block_bits: int = BLOCK_BITS) -> list[Block]:
    """Blocks covering every ``q`` with ``lo <= deg q <= hi``, in increasing ``q`` order."""
    out = []
    for nq in range(lo, hi + 1):
        if nq <= block_bits:
            out.append(Block(nq, 1, nq))
        else:
            k = block_bits
            for t in range(1 << (nq - k), 1 << (nq - k + 1)):
                out.append(Block(nq, t, k))
    return out


def _multiples(d: int, blk: Block) -> np.ndarray:
    g = d.bit_length() - 1
    if g <= blk.k:
        return _vec.block_multiples(d, blk.t, blk.k).astype(np.int64)
    # every element of the block has the same quotient by d
    r0 = pdivmod(blk.start, d)[1]
    if r0 >> blk.k == 0:
        return np.array([r0], dtype=np.int64)
    return np.empty(0, dtype=np.int64)


def _mult_valuations(m0: int) -> dict[int, int]:
    out = {}
    vx = (m0 & -m0).bit_length() - 1
    if vx:
        out[0b10] = vx
        m0 >>= vx
    e, m0 = _x1_valuation(m0)
    if e:
        out[0b11] = e
    if m0 != 1:
        raise ValueError("block multiplier must be a product of x and x+1")
    return out


def block_sigma(
    blk: Block,
    primes: list[int],
    m0: int = 1,
    power: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(a, F)`` over the block, where ``a = m0*q``.

    ``primes`` must contain every irreducible of degree ``<= blk.nq // 2``
    (plus ``x`` and ``x+1`` if they divide ``m0``), in increasing order.
    """
    size = blk.size
    q = np.arange(size, dtype=U64) | U64(blk.start)
    a = _vec.clmul_const(q, m0)
    f = np.ones(size, dtype=U64)
    smooth = np.ones(size, dtype=U64)
    offsets = _mult_valuations(m0)
    val = np.zeros(size, dtype=np.int64)
    half = blk.nq // 2

    todo = [p for p in primes if p.bit_length() - 1 <= half]
    for p in offsets:
        if p not in todo:
            todo.insert(0, p)

    for p in todo:
        off = offsets.get(p, 0)
        if off:
            val[:] = 0
        first = None
        pe = p
        e = 1
        while pe.bit_length() - 1 <= blk.nq:
            idx = _multiples(pe, blk)
            if e == 1:
                first = idx
            val[idx] = e
            e += 1
            pe = clmul(pe, p)
        if off:
            groups = [(np.nonzero(val == ee)[0], ee) for ee in range(e)]
        else:
            if first is None or first.size == 0:
                continue
            vals = val[first]
            groups = [(first[vals == ee], ee) for ee in range(1, e)]
        for sel, ee in groups:
            if sel.size == 0:
                continue
            f[sel] = _vec.clmul_const(f[sel], geometric_sum_bits(p, power * (ee + off)))
            if ee:
                smooth[sel] = _vec.clmul_const(smooth[sel], ppow(p, ee))

    # leftover large prime
    big = np.nonzero(_vec.degree(smooth) < blk.nq)[0]
    if big.size:
        lp = _vec.divexact(q[big], smooth[big], blk.nq + 1)
        if power == 1:
            fl = lp ^ U64(1)
        elif power == 2:
            fl = _vec.square(lp) ^ lp ^ U64(1)
        else:
            raise ValueError("power must be 1 or 2")
        f[big] = _vec.clmul_vec(f[big], fl, power * blk.nq + 1)
    return a, f
