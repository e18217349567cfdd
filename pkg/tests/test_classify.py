from __future__ import annotations

import random

import pytest

from gf2perfect.classify import (
    PRIMES,
    SPORADICS,
    Parity,
    catalogue_rows,
    classify_perfect,
    is_complete,
    is_complete_in,
    is_even,
    is_mersenne,
    is_odd,
    is_perfect,
    parity,
    square_decompose,
    trivial_index,
    trivial_perfect,
)
from gf2perfect.factor import factor, factor_bits, squarefree_decompose
from gf2perfect.poly import ONE, Poly, clmul, parse, square

P = parse


def test_parity_examples():
    assert parity(P("x^2+x+1")) is Parity.ODD
    assert parity(P("x")) is Parity.EVEN
    assert parity(P("x^2+1")) is Parity.EVEN
    assert is_odd(1) and is_even(P("x+1"))
    with pytest.raises(ValueError):
        parity(0)


def test_parity_is_multiplicative():
    r = random.Random(21)
    for _ in range(10_000):
        a = r.getrandbits(40) or 1
        b = r.getrandbits(40) or 1
        assert is_odd(clmul(a, b)) == (is_odd(a) and is_odd(b))


def test_mersenne_examples():
    assert is_mersenne(P("x^2+x+1"))
    assert is_mersenne(P("x^4+x^3+1"))
    assert not is_mersenne(P("x^4+x+1"))
    with pytest.raises(ValueError):
        is_mersenne(0)


def test_mersenne_cross_check():
    for a in range(2, 1 << 12):
        linear_only = set(factor_bits(a ^ 1)) <= {0b10, 0b11}
        assert is_mersenne(a) == linear_only, hex(a)


def test_complete_examples():
    assert is_complete(P("x^2+x+1"))
    assert not is_complete(P("x^2+1"))
    assert is_complete(P("(x^3+x+1)(x^3+x^2+1)"))
    assert is_complete_in(P("x^4+x^2+1"), P("x^2"))
    assert is_complete_in(P("(x+1)^2+x+1+1"), P("x+1"))
    assert not is_complete_in(P("x^3+x+1"), P("x^2"))
    with pytest.raises(ValueError):
        is_complete_in(P("x"), ONE)


def test_perfect_examples():
    assert is_perfect(0) and is_perfect(1)
    assert is_perfect(P("x(x+1)"))
    assert not is_perfect(P("x"))
    assert is_perfect(P("x^3(x+1)^4(x^4+x^3+1)"))


def test_trivial_family():
    assert trivial_perfect(1) == P("x^2+x")
    assert trivial_perfect(0) == ONE
    assert trivial_perfect(3).degree == 14 and is_perfect(trivial_perfect(3))
    assert trivial_index(trivial_perfect(5)) == 5
    assert trivial_index(P("x^2")) is None
    with pytest.raises(ValueError):
        trivial_perfect(20)


def test_catalogue():
    assert len(SPORADICS) == 11
    assert sorted(p.degree for p in SPORADICS.values()) == [5, 5, 11, 11, 11, 11, 15, 15, 16, 20, 20]
    assert all(is_perfect(p) for p in SPORADICS.values())
    assert all(len(factor(p)) == 1 for p in PRIMES.values())
    assert classify_perfect(SPORADICS["M16"]) == "M16"
    assert classify_perfect(trivial_perfect(2)) == "T(2)"
    assert classify_perfect(P("x^3")) == "UNKNOWN"
    rows = catalogue_rows()
    assert rows[0] == {"name": "M5a", "hex": "0x36", "factored": "x(x+1)^2(x^2+x+1)", "degree": 5}


Q2, Q4a, Q4b, Q4c = PRIMES["Q2"], PRIMES["Q4a"], PRIMES["Q4b"], PRIMES["Q4c"]


@pytest.mark.parametrize(
    "name, b, s",
    [
        ("M5a", P("x+1"), P("x") * Q2),
        ("M5b", P("x"), P("x+1") * Q2),
        ("M11a", P("x+1") * Q2, P("x") * Q4c),
        ("M11b", P("x") * Q2, P("x+1") * Q4c),
        ("M16", P("x^2(x+1)^2"), Q4a * Q4b),
    ],
)
def test_square_decompose_rows(name, b, s):
    d = square_decompose(SPORADICS[name])
    assert (d.b, d.s, d.coprime) == (b, s, True)
    assert d.b_even


def test_square_decompose_not_coprime():
    d = square_decompose(P("x^3"))
    assert (d.b, d.s, d.coprime) == (P("x"), P("x"), False)


def test_square_decompose_random():
    r = random.Random(22)
    for _ in range(100_000):
        a = r.getrandbits(r.randint(1, 49)) or 1
        d = square_decompose(a)
        assert clmul(square(d.b.bits), d.s.bits) == a
    for _ in range(2_000):
        a = r.getrandbits(r.randint(1, 49)) or 1
        d = square_decompose(a)
        f = factor_bits(a)
        assert all(m == 1 for _, m in squarefree_decompose(d.s))
        want_b = Poly(1)
        want_s = Poly(1)
        for p, e in f.items():
            want_b = want_b * Poly(p) ** (e // 2)
            if e % 2:
                want_s = want_s * Poly(p)
        assert (d.b, d.s) == (want_b, want_s)
