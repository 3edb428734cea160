"""Gaussian rationals: exact complex numbers (a + b i) / d with integer a, b, d."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

_RAT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussRat:
    """Immutable element of Q(i), stored as (a + b*i) / d with d > 0 and gcd(a, b, d) = 1."""

    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        re = Fraction(re)
        im = Fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        self._set(re.numerator * (d // re.denominator), im.numerator * (d // im.denominator), d)

    def _set(self, a: int, b: int, d: int) -> None:
        g = gcd(gcd(a, b), d)
        if g != 1:
            a //= g
            b //= g
            d //= g
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> GaussRat:
        obj = cls.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        obj._set(a, b, d)
        return obj

    @classmethod
    def coerce(cls, x) -> GaussRat:
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        if isinstance(x, str):
            return cls.from_str(x)
        return cls(x)

    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def conj(self) -> GaussRat:
        return GaussRat._raw(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    def __add__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        d1, d2 = self._d, other._d
        if d1 == d2:
            return GaussRat._raw(self._a + other._a, self._b + other._b, d1)
        return GaussRat._raw(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._raw(-self._a, -self._b, self._d)

    def __sub__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        return self + (-other)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        a, b, c, e = self._a, self._b, other._a, other._b
        return GaussRat._raw(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def inverse(self) -> GaussRat:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i)")
        a, b, d = self._a, self._b, self._d
        n = a * a + b * b
        return GaussRat._raw(a * d, -b * d, n)

    def __truediv__(self, other):
        if not isinstance(other, GaussRat):
            other = GaussRat.coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, GaussRat):
            try:
                other = GaussRat.coerce(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def __hash__(self):
        return hash((self._a, self._b, self._d))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        # arbitrary but total: real part first, then imaginary part
        return (self.re, self.im)

    def __lt__(self, other: GaussRat) -> bool:
        return self.sort_key() < other.sort_key()

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, obj) -> GaussRat:
        if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
            raise ValueError(f"expected {{'re', 'im'}} object, got {obj!r}")
        if not isinstance(obj["re"], str) or not isinstance(obj["im"], str):
            raise ValueError("re/im must be strings")
        return cls(parse_rational(obj["re"]), parse_rational(obj["im"]))

    def to_str(self) -> str:
        """Compact text form used inside canonical encodings: ``"3/2"`` or ``"3/2-1i"``."""
        re_s = format_rational(self.re)
        if self._b == 0:
            return re_s
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{format_rational(abs(im))}i"

    @classmethod
    def from_str(cls, text: str) -> GaussRat:
        text = text.strip()
        if not text.endswith("i"):
            return cls(parse_rational(text))
        body = text[:-1]
        # split at the last sign that is not the leading one; "2i" and "-i" have no real part
        pos = next((p for p in range(len(body) - 1, 0, -1) if body[p] in "+-"), 0)
        re_s, im_s = body[:pos] or "0", body[pos:]
        if im_s in ("", "+", "-"):
            im_s += "1"
        try:
            return cls(parse_rational(re_s), parse_rational(im_s))
        except ValueError:
            raise ValueError(f"bad Gaussian rational {text!r}") from None

    def __repr__(self):
        return f"GaussRat({self.to_str()})"


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)
