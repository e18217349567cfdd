"""Arithmetic, factorization and the divisor sum over GF(2)[x], and perfect polynomials."""

from __future__ import annotations

__version__ = "0.1.0"

from .poly import ONE, X, X1, ZERO, ParseError, Poly, add, divrem, format_poly, gcd, mul, parse, pow_mod
from .factor import (
    Factorization,
    PrimeTable,
    factor,
    is_irreducible,
    omega,
    primes_of_degree,
    squarefree_decompose,
    valuation,
)
from .sigma import geometric_split, sigma, sigma_naive, sigma_prime_power
from .classify import (
    Parity,
    SPORADICS,
    classify_perfect,
    is_complete,
    is_complete_in,
    is_even,
    is_mersenne,
    is_odd,
    is_perfect,
    parity,
    square_decompose,
    trivial_perfect,
)
from .search import gcd_condition_census, search_perfect
from .lemmas import check_canaday
from .theorem import HypothesisError, solve_structured, theorem_bruteforce

__all__ = [
    "ONE", "X", "X1", "ZERO", "ParseError", "Poly", "add", "divrem", "format_poly", "gcd",
    "mul", "parse", "pow_mod",
    "Factorization", "PrimeTable", "factor", "is_irreducible", "omega", "primes_of_degree",
    "squarefree_decompose", "valuation",
    "geometric_split", "sigma", "sigma_naive", "sigma_prime_power",
    "Parity", "SPORADICS", "classify_perfect", "is_complete", "is_complete_in", "is_even",
    "is_mersenne", "is_odd", "is_perfect", "parity", "square_decompose", "trivial_perfect",
    "gcd_condition_census", "search_perfect", "check_canaday",
    "HypothesisError", "solve_structured", "theorem_bruteforce",
]
