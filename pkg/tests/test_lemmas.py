from __future__ import annotations

import pytest

from gf2perfect.lemmas import UnknownPart, check_canaday


def test_part_c_and_f():
    assert check_canaday("c").witnesses == [1, 3]
    assert check_canaday("f", {"m_max": 10}).witnesses == [1, 2]
    assert check_canaday("f", {"m_max": 10}).passed


def test_part_b_small():
    rep = check_canaday("b", {"h_max": 300})
    assert rep.witnesses == [] and rep.passed


def test_part_d_small():
    rep = check_canaday("d", {"degree_max": 12})
    assert rep.witnesses == ["x^2+x+1", "x^4+x^3+x^2+x+1", "x^6+x^5+x^4+x^3+x^2+x+1"]


def test_part_e_linear_pairs():
    # sigma(x^2m) and sigma((x+1)^2m) coincide when 2m+1 is a power of two
    rep = check_canaday("e", {"prime_degree_max": 5, "exponent_max": 16})
    assert rep.witnesses == [["x", 2, "x+1", 2], ["x", 6, "x+1", 6], ["x", 14, "x+1", 14]]
    assert rep.notes["collisions_between_odd_primes"] == 0


def test_errors():
    with pytest.raises(UnknownPart):
        check_canaday("a")
    with pytest.raises(ValueError):
        check_canaday("b", {"h_max": 10**6})
    with pytest.raises(ValueError):
        check_canaday("b", {"beta_max": 3})


def test_report_serializes():
    d = check_canaday("c", {"beta_max": 8}).to_dict()
    assert list(d) == ["lemma_id", "statement", "bounds", "checked", "witnesses", "expected", "notes", "pass"]
