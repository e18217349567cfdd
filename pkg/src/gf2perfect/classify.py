"""Predicates and named constants: parity, Mersenne, complete, perfect.

Also holds the catalogue of the eleven known sporadic perfect polynomials
and the ``A = B^2 * S`` decomposition used by the theorem verifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .factor import _x1_valuation, factor, split_square
from .poly import Poly, PolyLike, _bits, clmul, parse, pgcd, ppow
from .sigma import geometric_sum_bits, sigma_bits

TRIVIAL_MAX_DEGREE = 1 << 16


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


def parity(a: PolyLike) -> Parity:
    """Odd iff ``a(0) = a(1) = 1``: constant bit set and odd popcount."""
    v = _bits(a)
    if v == 0:
        raise ValueError("parity of zero is undefined")
    return Parity.ODD if v & 1 and v.bit_count() & 1 else Parity.EVEN


def is_odd(a: PolyLike) -> bool:
    return parity(a) is Parity.ODD


def is_even(a: PolyLike) -> bool:
    return parity(a) is Parity.EVEN


def is_mersenne(a: PolyLike) -> bool:
    """True iff ``a + 1 = x^alpha (x+1)^beta`` for some ``alpha, beta >= 0``."""
    v = _bits(a)
    if v == 0:
        raise ValueError("zero is not a Mersenne candidate")
    w = v ^ 1
    if w == 0:
        return False
    w >>= (w & -w).bit_length() - 1
    _, rest = _x1_valuation(w)
    return rest == 1


def is_complete(a: PolyLike) -> bool:
    v = _bits(a)
    if v == 0:
        raise ValueError("zero is not a completeness candidate")
    return v & (v + 1) == 0


def is_complete_in(a: PolyLike, b: PolyLike) -> bool:
    """True iff ``a = 1 + b + ... + b^k``."""
    va, vb = _bits(a), _bits(b)
    if va == 0 or vb == 0:
        raise ValueError("zero inputs are not allowed")
    db = vb.bit_length() - 1
    if db < 1:
        raise ValueError("b must have degree >= 1")
    da = va.bit_length() - 1
    if da % db:
        return False
    return geometric_sum_bits(vb, da // db) == va


def is_perfect(a: PolyLike) -> bool:
    """``sigma(a) == a``; 0 and 1 count as perfect by convention."""
    v = _bits(a)
    if v < 2:
        return True
    return sigma_bits(v) == v


def trivial_perfect(n: int, max_degree: int = TRIVIAL_MAX_DEGREE) -> Poly:
    """``T(n) = (x(x+1))^(2^n - 1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    e = (1 << n) - 1
    if 2 * e > max_degree:
        raise ValueError(f"T({n}) has degree {2 * e}, above the budget {max_degree}")
    return Poly(ppow(0b110, e))


def trivial_index(a: PolyLike) -> int | None:
    """``n`` if ``a == T(n)`` for some ``n >= 1``, else None."""
    v = _bits(a)
    d = v.bit_length() - 1
    if d < 2 or d % 2:
        return None
    e = d // 2
    if (e + 1) & e:
        return None
    return (e + 1).bit_length() - 1 if ppow(0b110, e) == v else None


# ---------------------------------------------------------------------------
# A = B^2 * S
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SquareDecomposition:
    b: Poly
    s: Poly
    coprime: bool
    b_even: bool


def square_decompose(a: PolyLike) -> SquareDecomposition:
    """The unique ``(b, s)`` with ``a = b^2 s`` and ``s`` square-free.

    Hypotheses are reported as flags rather than raised, so callers can count
    near misses.
    """
    v = _bits(a)
    if v == 0:
        raise ValueError("zero has no square decomposition")
    b, s = split_square(v)
    b_even = b != 0 and not (b & 1 and b.bit_count() & 1)
    return SquareDecomposition(Poly(b), Poly(s), pgcd(b, s) == 1, b_even)


# ---------------------------------------------------------------------------
# the sporadic catalogue
# ---------------------------------------------------------------------------

PRIME_FORMS: dict[str, str] = {
    "Q2": "x^2+x+1",
    "Q3a": "x^3+x+1",
    "Q3b": "x^3+x^2+1",
    "Q4a": "x^4+x^3+1",
    "Q4b": "x^4+x^3+x^2+x+1",
    "Q4c": "x^4+x+1",
}

# name -> (factored form over the named primes, hex literal)
SPORADIC_FORMS: dict[str, tuple[str, int]] = {
    "M5a": ("x(x+1)^2 Q2", 0x36),
    "M5b": ("(x+1)x^2 Q2", 0x24),
    "M11a": ("x(x+1)^2 Q2^2 Q4c", 0x9A6),
    "M11b": ("x^2(x+1) Q2^2 Q4c", 0xEC4),
    "M11c": ("x^3(x+1)^4 Q4a", 0xC48),
    "M11d": ("x^4(x+1)^3 Q4b", 0xA50),
    "M15a": ("x^3(x+1)^6 Q3a Q3b", 0xCD98),
    "M15b": ("x^6(x+1)^3 Q3a Q3b", 0xA140),
    "M16": ("x^4(x+1)^4 Q4a Q4b", 0x10670),
    "M20a": ("x^4(x+1)^6 Q3a Q3b Q4b", 0x11AB10),
    "M20b": ("x^6(x+1)^4 Q3a Q3b Q4a", 0x10C1C0),
}

THEOREM_SET = ("M5a", "M5b", "M16", "M20a", "M20b")
THEOREM_STRICT_SET = ("M16", "M20a", "M20b")


class CatalogueError(RuntimeError):
    pass


def _expand_named(form: str) -> Poly:
    text = form
    for name in sorted(PRIME_FORMS, key=len, reverse=True):
        text = text.replace(name, f"({PRIME_FORMS[name]})")
    return parse(text)


def _build_catalogue() -> tuple[dict[str, Poly], dict[str, Poly]]:
    primes = {name: parse(text) for name, text in PRIME_FORMS.items()}
    sporadics = {}
    for name, (form, literal) in SPORADIC_FORMS.items():
        p = _expand_named(form)
        if p.bits != literal:
            raise CatalogueError(f"{name}: factored form gives {p.hex()}, literal is {literal:#x}")
        sporadics[name] = p
    return primes, sporadics


PRIMES, SPORADICS = _build_catalogue()
_BY_BITS = {p.bits: name for name, p in SPORADICS.items()}


def sporadic_name(a: PolyLike) -> str | None:
    return _BY_BITS.get(_bits(a))


def classify_perfect(a: PolyLike) -> str:
    """Label for a perfect polynomial: ``T(n)``, a sporadic name, or ``UNKNOWN``."""
    name = sporadic_name(a)
    if name is not None:
        return name
    n = trivial_index(a)
    if n is not None:
        return f"T({n})"
    return "UNKNOWN"


def catalogue_rows() -> list[dict]:
    """One row per sporadic: name, hex, factored string, degree."""
    return [
        {"name": name, "hex": p.hex(), "factored": str(factor(p)), "degree": p.degree}
        for name, p in SPORADICS.items()
    ]


def product(*polys: PolyLike) -> Poly:
    r = 1
    for p in polys:
        r = clmul(r, _bits(p))
    return Poly(r)
