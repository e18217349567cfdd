from __future__ import annotations

import io
import json

import pytest

from gf2perfect.cli import run


def call(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_sigma():
    assert call("sigma", "x(x+1)")[:2] == (0, "x^2+x\n")
    assert call("sigma", "0x6")[:2] == (0, "x^2+x\n")


def test_check_perfect():
    assert call("check-perfect", "0x1f")[:2] == (1, "false\n")
    assert call("check-perfect", "M20b")[:2] == (0, "true\n")
    assert call("check-perfect", "T(4)")[:2] == (0, "true\n")


def test_parse_and_factor():
    assert call("parse", "x^2+x+x+1")[1] == "x^2+1\n"
    code, out, _ = call("factor", "0x10670", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["factored"] == "x^4(x+1)^4(x^4+x^3+1)(x^4+x^3+x^2+x+1)"
    assert list(doc) == ["tool", "version", "command", "seed", "cache_version", "result"]


def test_run_log_names_seed_and_cache():
    _, _, err = call("parse", "x", "--seed", "7")
    assert "seed=0x7" in err and "gf2-primes v1" in err
    assert call("parse", "x", "-q")[2] == ""


def test_classify():
    code, out, _ = call("classify", "M5a", "--format", "json")
    r = json.loads(out)["result"]
    assert r["parity"] == "even" and r["classification"] == "M5a"
    assert r["decomposition"] == {"b": "x+1", "s": "x^3+x^2+x", "coprime": True, "b_even": True}
    code, out, _ = call("classify", "x^4+x^2+1", "--complete-in", "x^2")
    assert "complete in x^2  true" in out


def test_catalogue():
    code, out, _ = call("catalogue", "--format", "json")
    assert code == 0
    assert [r["name"] for r in json.loads(out)["result"]["sporadics"]][:2] == ["M5a", "M5b"]


def test_search_and_census():
    code, out, _ = call("search", "--max-deg", "6", "--format", "json")
    assert code == 0
    assert [f["classification"] for f in json.loads(out)["result"]["found"]] == ["T(1)", "M5b", "M5a", "T(2)"]
    code, out, _ = call("census", "--max-deg", "2")
    assert code == 0 and "5/5" in out


def test_lemma():
    assert call("lemma", "--part", "f", "--bound", "m_max=8")[0] == 0
    assert call("lemma", "--part", "e", "--bound", "prime_degree_max=3")[0] == 1
    assert call("lemma", "--part", "b", "--bound", "nope=3")[0] == 2


def test_verify_theorem_and_solve():
    code, out, _ = call("verify-theorem", "--b-deg", "4", "--p-deg", "4", "--format", "json")
    assert code == 0
    assert len(json.loads(out)["result"]["solutions"]) == 3
    code, out, _ = call("solve", "--b", "x^2(x+1)^2", "--format", "json")
    assert [s["name"] for s in json.loads(out)["result"]["solutions"]] == ["M16"]
    assert call("solve", "--b", "x^2+x+1")[0] == 2


def test_primes(tmp_path):
    cache = str(tmp_path / "p.txt")
    code, out, _ = call("primes", "--deg", "4", "--hex", "--cache", cache)
    assert out.split() == ["0x13", "0x19", "0x1f"]
    assert (tmp_path / "p.txt").read_text().startswith("# gf2-primes v1 max_degree=4\n")


@pytest.mark.parametrize(
    "argv",
    [
        ("parse", "x^^2"),
        ("bogus",),
        ("sigma", "x", "--nope"),
        ("search", "--max-deg", "40"),
        ("sigma", "0"),
        ("verify-theorem", "--mode", "wide"),
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_json_is_byte_identical():
    a = call("verify-theorem", "--b-deg", "5", "--p-deg", "6", "--format", "json", "-q")[1]
    b = call("verify-theorem", "--b-deg", "5", "--p-deg", "6", "--format", "json", "-q", "--workers", "3")[1]
    assert a == b
