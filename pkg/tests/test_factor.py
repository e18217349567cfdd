from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from gf2perfect.factor import (
    PrimeTable,
    factor,
    factor_bits,
    is_irreducible,
    is_irreducible_bits,
    necklace_count,
    omega,
    primes_of_degree,
    squarefree_decompose,
    valuation,
)
from gf2perfect.poly import Poly, clmul, parse, pdivmod, ppow

P = parse


def test_is_irreducible_examples():
    assert is_irreducible(P("x^2+x+1"))
    assert not is_irreducible(P("x^4+x^2+1"))
    assert is_irreducible(P("x^4+x^3+x^2+x+1"))
    for bad in (0, 1):
        with pytest.raises(ValueError):
            is_irreducible(bad)


def _irreducible_by_trial(p: int) -> bool:
    d = p.bit_length() - 1
    for q in range(2, 1 << (d // 2 + 1)):
        if pdivmod(p, q)[1] == 0:
            return False
    return True


def test_is_irreducible_exhaustive_against_trial_division():
    for p in range(2, 1 << 13):
        assert is_irreducible_bits(p) == _irreducible_by_trial(p), hex(p)


def test_squarefree_decompose_examples():
    assert squarefree_decompose(P("x^4+x^2+1")) == [(P("x^2+x+1"), 2)]
    assert squarefree_decompose(P("x^2+x")) == [(P("x^2+x"), 1)]
    assert squarefree_decompose(P("x^3(x+1)")) == [(P("x(x+1)"), 1), (P("x"), 2)]
    with pytest.raises(ValueError):
        squarefree_decompose(0)


def test_factor_examples():
    assert list(factor(P("x^4+x"))) == [(P("x"), 1), (P("x+1"), 1), (P("x^2+x+1"), 1)]
    m16 = P("x^4(x+1)^4(x^4+x^3+1)(x^4+x^3+x^2+x+1)")
    assert list(factor(m16)) == [
        (P("x"), 4), (P("x+1"), 4), (P("x^4+x^3+1"), 1), (P("x^4+x^3+x^2+x+1"), 1)
    ]
    assert list(factor(P("x^2+x+1"))) == [(P("x^2+x+1"), 1)]
    assert list(factor(1)) == []
    assert str(factor(m16)) == "x^4(x+1)^4(x^4+x^3+1)(x^4+x^3+x^2+x+1)"
    with pytest.raises(ValueError):
        factor(0)


def test_omega_and_valuation():
    m20a = P("x^4(x+1)^6(x^3+x+1)(x^3+x^2+1)(x^4+x^3+x^2+x+1)")
    assert omega(m20a) == 5
    assert valuation(P("x"), P("x^3(x+1)")) == 3
    assert valuation(P("x^2+x+1"), P("x+1")) == 0
    assert valuation(P("x^2+x+1"), P("(x^2+x+1)^5 x")) == 5
    with pytest.raises(ValueError):
        omega(0)


def test_factor_reconstruction_random():
    r = random.Random(99)
    for _ in range(100_000):
        a = r.getrandbits(r.randint(1, 65)) or 1
        f = factor_bits(a)
        prod = 1
        for p, e in f.items():
            prod = clmul(prod, ppow(p, e))
        assert prod == a


@settings(max_examples=300)
@given(st.integers(min_value=1, max_value=(1 << 65) - 1))
def test_factor_canonical(a):
    f = factor(a)
    assert f.expand() == Poly(a)
    primes = f.primes
    assert primes == sorted(set(primes))
    assert all(is_irreducible(p) and e >= 1 for p, e in f)


def test_factor_is_seed_independent():
    r = random.Random(3)
    for _ in range(200):
        a = r.getrandbits(60) | 1
        assert factor(a, seed=1) == factor(a, seed=12345)


def test_squarefree_multiplicities_match_factor():
    r = random.Random(5)
    for _ in range(10_000):
        a = r.getrandbits(r.randint(1, 49)) or 1
        got: dict[int, int] = {}
        for s, m in squarefree_decompose(a):
            for p, e in factor_bits(s.bits).items():
                assert e == 1
                got[p] = got.get(p, 0) + m
        assert got == factor_bits(a)


def test_necklace_counts():
    assert [necklace_count(d) for d in range(1, 11)] == [2, 1, 2, 3, 6, 9, 18, 30, 56, 99]


def test_primes_of_degree_examples(tmp_path):
    t = PrimeTable(tmp_path / "p.txt")
    assert primes_of_degree(2, t) == [P("x^2+x+1")]
    assert primes_of_degree(3, t) == [P("x^3+x+1"), P("x^3+x^2+1")]
    assert primes_of_degree(4, t) == [P("x^4+x+1"), P("x^4+x^3+1"), P("x^4+x^3+x^2+x+1")]


def test_prime_table_counts_and_sieve_agrees_with_scan(tmp_path):
    sieve = PrimeTable(tmp_path / "a.txt", sieve_max=16)
    scan = PrimeTable(tmp_path / "b.txt", sieve_max=0)
    for d in range(1, 13):
        ps = sieve.primes_of_degree(d)
        assert len(ps) == necklace_count(d)
        assert ps == sorted(ps)
        assert ps == scan.primes_of_degree(d)


def test_prime_cache_round_trip_is_byte_identical(tmp_path):
    a = PrimeTable(tmp_path / "a.txt")
    a.ensure(14)
    first = (tmp_path / "a.txt").read_bytes()
    assert first.startswith(b"# gf2-primes v1 max_degree=14\n")
    assert b"\n4 0x13\n" in first
    b = PrimeTable(tmp_path / "b.txt")
    b.ensure(7)
    b.ensure(14)
    assert (tmp_path / "b.txt").read_bytes() == first
    reloaded = PrimeTable(tmp_path / "a.txt")
    assert reloaded.max_degree == 14
    assert reloaded.dumps().encode() == first


def test_corrupt_cache_is_rejected(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("# gf2-primes v1 max_degree=3\n1 0x2\n1 0x3\n2 0x7\n3 0xb\n")
    with pytest.raises(ValueError):
        PrimeTable(path)
    path.write_text("garbage\n")
    with pytest.raises(ValueError):
        PrimeTable(path)
