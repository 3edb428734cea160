"""Univariate polynomials over Q(i)."""

from __future__ import annotations

from collections.abc import Sequence

from slocc2mn.exactmath.gaussrat import ONE, ZERO, GaussRat
from slocc2mn.exactmath.matrix import ExactMatrix


class UniPoly:
    """Immutable polynomial; ``coeffs[k]`` multiplies t**k. The zero polynomial has no coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [c if isinstance(c, GaussRat) else GaussRat.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> UniPoly:
        return cls([ZERO, ONE])

    @classmethod
    def const(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence) -> UniPoly:
        out = cls([ONE])
        for r in roots:
            out = out * cls([-GaussRat.coerce(r), ONE])
        return out

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> GaussRat:
        return self.coeffs[-1] if self.coeffs else ZERO

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = self.coeffs[-1].inverse()
        return UniPoly([c * inv for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return UniPoly([(a[k] if k < len(a) else ZERO) + (b[k] if k < len(b) else ZERO) for k in range(n)])

    def __neg__(self) -> UniPoly:
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            c = GaussRat.coerce(other)
            return UniPoly([c * x for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        out = UniPoly([ONE])
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lead().inverse()
        if len(rem) - 1 < dq:
            return UniPoly(), self
        quot = [ZERO] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            f = c * inv
            quot[k - dq] = f
            for j, oc in enumerate(other.coeffs):
                rem[k - dq + j] = rem[k - dq + j] - f * oc
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def divides(self, other: UniPoly) -> bool:
        return (other % self).is_zero()

    def __call__(self, x) -> GaussRat:
        x = GaussRat.coerce(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return UniPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def shift(self, a) -> UniPoly:
        """p(t + a)."""
        out = UniPoly()
        lin = UniPoly([GaussRat.coerce(a), ONE])
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly([c])
        return out

    def __repr__(self):
        if not self.coeffs:
            return "UniPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            terms.append(f"({c.to_str()})t^{k}" if k else f"({c.to_str()})")
        return "UniPoly(" + " + ".join(terms) + ")"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def charpoly(m: ExactMatrix) -> UniPoly:
    """det(t I - m) by the Faddeev-LeVerrier recursion."""
    if m.rows != m.cols:
        raise ValueError("charpoly needs a square matrix")
    n = m.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    if n == 0:
        return UniPoly(coeffs)
    ident = ExactMatrix.identity(n)
    mk = ExactMatrix.zeros(n, n)
    c_prev = ONE
    for k in range(1, n + 1):
        mk = m @ mk + ident.scale(c_prev)
        c_k = -(m @ mk).trace() / k
        coeffs[n - k] = c_k
        c_prev = c_k
    return UniPoly(coeffs)
