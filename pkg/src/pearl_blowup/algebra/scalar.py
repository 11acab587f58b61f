"""Finite formal sums over GF(2) with rational exponents.

A scalar ``sum_i T^{e_i}`` is stored as a bitmask over a common denominator:
exponent ``(shift + k) / den`` is present iff bit ``k`` of ``mask`` is set.
The canonical form has ``mask`` odd (or zero) and ``den`` minimal, so equality
and hashing are structural.  With ``den == 1`` this is a Laurent polynomial in
``t`` and multiplication is a carry-less product of the masks.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Exponent = Union[int, Fraction]


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[t] polynomials encoded as ints."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out


def poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = b.bit_length()
    q = 0
    while a and a.bit_length() >= db:
        s = a.bit_length() - db
        q ^= 1 << s
        a ^= b << s
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return a


def _bits(mask: int):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def _stretch(mask: int, factor: int) -> int:
    if factor == 1:
        return mask
    out = 0
    for k in _bits(mask):
        out |= 1 << (k * factor)
    return out


def _compress(mask: int, factor: int) -> int:
    out = 0
    for k in _bits(mask):
        out |= 1 << (k // factor)
    return out


class NovikovScalar:
    __slots__ = ("_mask", "_shift", "_den", "_hash")

    def __init__(self, mask: int = 0, shift: int = 0, den: int = 1):
        if den <= 0:
            raise ValueError("denominator must be positive")
        if mask < 0:
            raise ValueError("mask must be non-negative")
        if mask == 0:
            shift, den = 0, 1
        else:
            tz = (mask & -mask).bit_length() - 1
            mask >>= tz
            shift += tz
            if den > 1:
                g = gcd(den, shift)
                if g > 1:
                    for k in _bits(mask):
                        if k:
                            g = gcd(g, k)
                            if g == 1:
                                break
                if g > 1:
                    mask = _compress(mask, g)
                    shift //= g
                    den //= g
        self._mask = mask
        self._shift = shift
        self._den = den
        self._hash = hash((mask, shift, den))

    # construction

    @classmethod
    def zero(cls) -> "NovikovScalar":
        return _ZERO

    @classmethod
    def one(cls) -> "NovikovScalar":
        return _ONE

    @classmethod
    def monomial(cls, exponent: Exponent) -> "NovikovScalar":
        e = Fraction(exponent)
        return cls(1, e.numerator, e.denominator)

    @classmethod
    def from_exponents(cls, exponents: Iterable[Exponent]) -> "NovikovScalar":
        """Sum of monomials; repeated exponents cancel in pairs."""
        total = _ZERO
        for e in exponents:
            total = total + cls.monomial(e)
        return total

    @classmethod
    def from_mask(cls, mask: int, shift: int = 0) -> "NovikovScalar":
        return cls(mask, shift, 1)

    # inspection

    @property
    def terms(self) -> frozenset[Fraction]:
        return frozenset(self.exponents)

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(self._shift + k, self._den) for k in _bits(self._mask))

    @property
    def mask(self) -> int:
        return self._mask

    @property
    def shift(self) -> int:
        return self._shift

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return self._mask == 0

    def is_monomial(self) -> bool:
        return self._mask == 1

    is_unit = is_monomial

    def is_integral(self) -> bool:
        return self._den == 1

    def min_exponent(self) -> Fraction:
        if not self._mask:
            raise ValueError("zero has no exponents")
        return Fraction(self._shift, self._den)

    def max_exponent(self) -> Fraction:
        if not self._mask:
            raise ValueError("zero has no exponents")
        return Fraction(self._shift + self._mask.bit_length() - 1, self._den)

    def span(self) -> int:
        """Degree span in units of 1/den; for Laurent polynomials the t-degree span."""
        if not self._mask:
            raise ValueError("zero has no span")
        return self._mask.bit_length() - 1

    def coefficient(self, exponent: Exponent) -> int:
        return int(Fraction(exponent) in self.terms)

    def __len__(self) -> int:
        return self._mask.bit_count()

    def __bool__(self) -> bool:
        return self._mask != 0

    # arithmetic

    def _aligned(self, other: "NovikovScalar"):
        den = self._den * other._den // gcd(self._den, other._den)
        fa, fb = den // self._den, den // other._den
        return (_stretch(self._mask, fa), self._shift * fa,
                _stretch(other._mask, fb), other._shift * fb, den)

    def __add__(self, other: "NovikovScalar") -> "NovikovScalar":
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        if not other._mask:
            return self
        if not self._mask:
            return other
        ma, sa, mb, sb, den = self._aligned(other)
        s = min(sa, sb)
        return NovikovScalar((ma << (sa - s)) ^ (mb << (sb - s)), s, den)

    __sub__ = __add__

    def __neg__(self) -> "NovikovScalar":
        return self

    def __mul__(self, other: "NovikovScalar") -> "NovikovScalar":
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        if not self._mask or not other._mask:
            return _ZERO
        if self._den == other._den == 1:
            return NovikovScalar(clmul(self._mask, other._mask), self._shift + other._shift, 1)
        ma, sa, mb, sb, den = self._aligned(other)
        return NovikovScalar(clmul(ma, mb), sa + sb, den)

    def __pow__(self, k: int) -> "NovikovScalar":
        if k < 0:
            if not self.is_monomial():
                raise ZeroDivisionError("only monomials are invertible")
            return NovikovScalar(1, -self._shift * (-k), self._den)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "NovikovScalar":
        return self ** -1

    def scaled(self, factor: Exponent) -> "NovikovScalar":
        """Substitute T -> T^factor (multiplies every exponent by ``factor``)."""
        f = Fraction(factor)
        if f <= 0:
            raise ValueError("exponent scale factor must be positive")
        return NovikovScalar.from_exponents(e * f for e in self.exponents)

    def normalized(self) -> "NovikovScalar":
        """The same element divided by its lowest monomial (lowest exponent 0)."""
        return NovikovScalar(self._mask, 0, self._den)

    # comparison / display

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NovikovScalar):
            return NotImplemented
        return (self._mask, self._shift, self._den) == (other._mask, other._shift, other._den)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"NovikovScalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def _format_exponent(e: Fraction, var: str) -> str:
    if e == 0:
        return "1"
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({e})"


def format_scalar(x: NovikovScalar, var: str = "t") -> str:
    if x.is_zero():
        return "0"
    return " + ".join(_format_exponent(e, var) for e in x.exponents)


def parse_scalar(text: str) -> NovikovScalar:
    """Inverse of :func:`format_scalar` for any single-letter variable."""
    text = text.strip()
    if text == "0":
        return _ZERO
    exps = []
    for term in text.split("+"):
        term = term.strip()
        if term == "1":
            exps.append(Fraction(0))
        elif len(term) == 1:
            exps.append(Fraction(1))
        elif term[1] == "^":
            exps.append(Fraction(term[2:].strip("()")))
        else:
            raise ValueError(f"cannot parse term {term!r}")
    return NovikovScalar.from_exponents(exps)


_ZERO = NovikovScalar.__new__(NovikovScalar)
_ZERO._mask, _ZERO._shift, _ZERO._den, _ZERO._hash = 0, 0, 1, hash((0, 0, 1))
_ONE = NovikovScalar(1, 0, 1)
