from __future__ import annotations

from fractions import Fraction

import pytest

from gf2perfect.classify import is_perfect
from gf2perfect.poly import parse
from gf2perfect.search import (
    BudgetExceeded,
    gcd_condition_census,
    run_chunks,
    search_perfect,
    split_contiguous,
)
from gf2perfect.sigma import sigma_bits
from gf2perfect.poly import pgcd, square


def _labels(rep):
    return [c for _, c in rep.found]


def test_split_contiguous():
    items = list(range(10))
    parts = split_contiguous(items, 3)
    assert [list(p) for p in parts] == [[0, 1, 2], [3, 4, 5], [6, 7, 8, 9]]
    assert len(split_contiguous(items, 50)) == 10
    assert run_chunks(sum, items, 1) == [45]


def test_search_small_examples():
    rep = search_perfect(6, "full")
    assert _labels(rep) == ["T(1)", "M5b", "M5a", "T(2)"]
    assert rep.candidates_scanned == 2**7 - 2
    assert _labels(search_perfect(4, "full")) == ["T(1)"]


def test_search_matches_brute_force_scan():
    rep = search_perfect(12, "full")
    want = [a for a in range(2, 1 << 13) if is_perfect(a)]
    assert [p.bits for p, _ in rep.found] == want


def test_full_and_pruned_agree_on_even_domain():
    full = search_perfect(16, "full")
    pruned = search_perfect(16, "pruned-even")
    div = [p for p, _ in full.found if p.bits & 1 == 0 and p.bits.bit_count() % 2 == 0]
    assert [p for p, _ in pruned.found] == div
    assert pruned.candidates_scanned == 2**15 - 1


def test_search_workers_do_not_change_result():
    a = search_perfect(14, "full", workers=1)
    b = search_perfect(14, "full", workers=3)
    assert a.to_dict() == b.to_dict()


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        search_perfect(21, "full")
    with pytest.raises(BudgetExceeded):
        search_perfect(25, "pruned-even")
    with pytest.raises(ValueError):
        search_perfect(5, "sideways")


def test_census_small():
    rep = gcd_condition_census(2)
    assert rep.per_degree == [(1, 2, 2), (2, 3, 3)]
    assert rep.even_total == 5 and rep.cumulative_fraction == 1
    assert rep.to_dict()["cumulative_fraction"] == "1/1"


def test_census_matches_scalar():
    rep = gcd_condition_census(9, workers=2)
    for d, even, ok in rep.per_degree:
        bs = [b for b in range(1 << d, 1 << (d + 1)) if not (b & 1 and b.bit_count() & 1)]
        assert even == len(bs)
        assert ok == sum(pgcd(b, sigma_bits(square(b))) == 1 for b in bs)
        assert 0 <= ok <= even
    assert isinstance(rep.cumulative_fraction, Fraction)


def test_census_single_b():
    b = parse("x(x+1)")
    assert pgcd(square(b.bits), sigma_bits(square(b.bits))) == 1


def test_census_budget():
    with pytest.raises(BudgetExceeded):
        gcd_condition_census(22)
