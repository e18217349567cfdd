"""Binary polynomials, i.e. elements of GF(2)[x].

A polynomial is stored as a nonnegative Python integer whose bit ``i`` is
the coefficient of ``x^i``.  Addition is exclusive-or and multiplication by
``x`` is a left shift.  Every nonzero polynomial over GF(2) is monic, so no
normalization step exists anywhere in this package.

The module has two layers.  The underscore-free integer kernels (``clmul``,
``pdivmod``, ...) work on raw ``int`` bit patterns and are what the hot
loops call.  :class:`Poly` is an immutable value type wrapping one such
integer, with operator overloading and text/hex conversion.
"""

from __future__ import annotations

import re
from typing import Final, Union

NEG_INF: Final = float("-inf")
"""Degree of the zero polynomial.  Arithmetic on it never wraps around."""


# ---------------------------------------------------------------------------
# integer kernels
# ---------------------------------------------------------------------------

def deg(a: int) -> int:
    """Degree of bit pattern ``a``; -1 for zero (internal use only)."""
    return a.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit patterns."""
    if a.bit_count() < b.bit_count():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def square(a: int) -> int:
    """Frobenius square: spread the bits of ``a`` to the even positions."""
    if a < 2:
        return a
    return int("0".join(bin(a)[2:]), 2)


def sqrt_exact(a: int) -> int:
    """Gather the even-position bits of ``a``, which must be a perfect square."""
    if a < 2:
        return a
    rev = bin(a)[:1:-1]
    if "1" in rev[1::2]:
        raise ValueError("not a perfect square")
    return int(rev[::2][::-1], 2)


def derivative(a: int) -> int:
    """Formal derivative: odd-index coefficients move down one place."""
    if a < 2:
        return 0
    return (a >> 1) & int("01" * ((a.bit_length() + 1) // 2), 2)


def pdivmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    if a.bit_length() < db:
        return 0, a
    if b & (b - 1) == 0:  # monomial divisor
        s = db - 1
        return a >> s, a & (b - 1)
    q = 0
    while True:
        s = a.bit_length() - db
        if s < 0:
            return q, a
        a ^= b << s
        q ^= 1 << s


def pmod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    while True:
        s = a.bit_length() - db
        if s < 0:
            return a
        a ^= b << s


def pgcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, pmod(a, b)
    return a


def ppow(a: int, e: int) -> int:
    if e < 0:
        raise ValueError("negative exponent")
    r = 1
    while e:
        if e & 1:
            r = clmul(r, a)
        e >>= 1
        if e:
            a = square(a)
    return r


def powmod(a: int, e: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must have degree >= 1")
    if e < 0:
        raise ValueError("negative exponent")
    a = pmod(a, m)
    r = 1
    for bit in bin(e)[2:]:
        r = pmod(square(r), m)
        if bit == "1":
            r = pmod(clmul(r, a), m)
    return r


# ---------------------------------------------------------------------------
# value type
# ---------------------------------------------------------------------------

PolyLike = Union["Poly", int]


def _bits(v: PolyLike) -> int:
    if isinstance(v, Poly):
        return v._bits
    if isinstance(v, int) and not isinstance(v, bool) and v >= 0:
        return v
    raise TypeError(f"expected Poly or nonnegative int, got {v!r}")


class Poly:
    """Immutable binary polynomial.

    Plain nonnegative integers are accepted wherever a ``Poly`` is, and are
    read as bit patterns (so ``p + 1`` adds the constant polynomial 1).
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0) -> None:
        if isinstance(bits, Poly):
            bits = bits._bits
        if not isinstance(bits, int) or bits < 0:
            raise ValueError(f"bit pattern must be a nonnegative int, got {bits!r}")
        object.__setattr__(self, "_bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> int | float:
        return self._bits.bit_length() - 1 if self._bits else NEG_INF

    @classmethod
    def monomial(cls, k: int) -> Poly:
        return cls(1 << k)

    @classmethod
    def parse(cls, text: str) -> Poly:
        return parse(text)

    @classmethod
    def from_hex(cls, text: str) -> Poly:
        return cls(int(text, 16))

    def hex(self) -> str:
        return hex(self._bits)

    def coeffs(self) -> list[int]:
        """Coefficients from ``x^0`` upward."""
        return [int(c) for c in bin(self._bits)[:1:-1]] if self._bits else []

    def at0(self) -> int:
        return self._bits & 1

    def at1(self) -> int:
        return self._bits.bit_count() & 1

    def is_zero(self) -> bool:
        return self._bits == 0

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: PolyLike) -> Poly:
        return Poly(self._bits ^ _bits(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self) -> Poly:
        return self

    def __mul__(self, other: PolyLike) -> Poly:
        return Poly(clmul(self._bits, _bits(other)))

    __rmul__ = __mul__

    def __divmod__(self, other: PolyLike) -> tuple[Poly, Poly]:
        q, r = pdivmod(self._bits, _bits(other))
        return Poly(q), Poly(r)

    def __floordiv__(self, other: PolyLike) -> Poly:
        return Poly(pdivmod(self._bits, _bits(other))[0])

    def __mod__(self, other: PolyLike) -> Poly:
        return Poly(pmod(self._bits, _bits(other)))

    def __pow__(self, e: int) -> Poly:
        return Poly(ppow(self._bits, e))

    def divides(self, other: PolyLike) -> bool:
        return pmod(_bits(other), self._bits) == 0

    # comparison / hashing -------------------------------------------------
    # Integer order on bit patterns is (degree, hex value) order.

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self._bits))

    def __lt__(self, other: Poly) -> bool:
        return self._bits < other._bits

    def __le__(self, other: Poly) -> bool:
        return self._bits <= other._bits

    def __gt__(self, other: Poly) -> bool:
        return self._bits > other._bits

    def __ge__(self, other: Poly) -> bool:
        return self._bits >= other._bits

    def __bool__(self) -> bool:
        return self._bits != 0

    def __int__(self) -> int:
        return self._bits

    def __index__(self) -> int:
        return self._bits

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly('{format_poly(self)}')"

    def __reduce__(self):
        return (Poly, (self._bits,))


ZERO: Final = Poly(0)
ONE: Final = Poly(1)
X: Final = Poly(0b10)
X1: Final = Poly(0b11)  # x + 1


# ---------------------------------------------------------------------------
# functional API
# ---------------------------------------------------------------------------

def add(a: PolyLike, b: PolyLike) -> Poly:
    return Poly(_bits(a) ^ _bits(b))


def mul(a: PolyLike, b: PolyLike) -> Poly:
    return Poly(clmul(_bits(a), _bits(b)))


def divrem(a: PolyLike, d: PolyLike) -> tuple[Poly, Poly]:
    """Return ``(q, r)`` with ``a = q*d + r`` and ``deg r < deg d``."""
    q, r = pdivmod(_bits(a), _bits(d))
    return Poly(q), Poly(r)


def gcd(a: PolyLike, b: PolyLike) -> Poly:
    return Poly(pgcd(_bits(a), _bits(b)))


def pow_mod(a: PolyLike, e: int, m: PolyLike) -> Poly:
    return Poly(powmod(_bits(a), e, _bits(m)))


# ---------------------------------------------------------------------------
# text and hex forms
# ---------------------------------------------------------------------------

class ParseError(ValueError):
    """Malformed polynomial text; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int) -> None:
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<op>[x+*^()]))")
_HEX = re.compile(r"\s*0[xX][0-9a-fA-F]+\s*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        else:
            tokens.append((m.group("op"), m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # expr    := product ('+' product)*
    # product := power (['*'] power)*
    # power   := atom ('^' uint)*
    # atom    := 'x' | '0' | '1' | '(' expr ')'

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, kind: str) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> int:
        v = self.product()
        while self.peek()[0] == "+":
            self.i += 1
            v ^= self.product()
        return v

    def product(self) -> int:
        v = self.power()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.i += 1
                v = clmul(v, self.power())
            elif kind in ("x", "(", "num"):
                v = clmul(v, self.power())
            else:
                return v

    def power(self) -> int:
        v = self.atom()
        while self.peek()[0] == "^":
            self.i += 1
            e = int(self.take("num")[1])
            v = ppow(v, e)
        return v

    def atom(self) -> int:
        kind, val, pos = self.peek()
        if kind == "x":
            self.i += 1
            return 0b10
        if kind == "num":
            if val not in ("0", "1"):
                raise ParseError(f"coefficient {val!r} is not in GF(2)", self.text, pos)
            self.i += 1
            return int(val)
        if kind == "(":
            self.i += 1
            v = self.expr()
            self.take(")")
            return v
        what = "end of input" if kind == "end" else repr(val)
        raise ParseError(f"expected a term, found {what}", self.text, pos)


def parse(text: str) -> Poly:
    """Parse polynomial text such as ``"x^4+x^3+1"``, ``"x(x+1)^2"`` or ``"0x1f"``.

    Repeated terms cancel (``"x+x"`` is zero).  Juxtaposition and ``*``
    multiply; ``^`` applies to ``x`` or to a parenthesized group.
    """
    if _HEX.fullmatch(text):
        return Poly(int(text.strip(), 16))
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty polynomial", text, 0)
    v = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", text, tok[2])
    return Poly(v)


def format_poly(p: PolyLike) -> str:
    """Canonical text: strictly descending exponents, ``1`` for the constant."""
    v = _bits(p)
    if v == 0:
        return "0"
    terms = []
    for i in range(v.bit_length() - 1, -1, -1):
        if (v >> i) & 1:
            terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
    return "+".join(terms)


def to_hex(p: PolyLike) -> str:
    return hex(_bits(p))
