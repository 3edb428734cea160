"""Rank behaviour of the pencil alpha*gamma1 + beta*gamma2 over the projective line."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from slocc2mn.exactmath import GaussRat, rank
from slocc2mn.state import MatrixPair


@dataclass(frozen=True)
class ProjectivePoint:
    """Finite(v) is (alpha:beta) = (1:v); ``value is None`` is the point (0:1)."""

    value: GaussRat | None

    @classmethod
    def finite(cls, v) -> ProjectivePoint:
        return cls(GaussRat.coerce(v))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def sort_key(self):
        return (1, 0, 0) if self.value is None else (0, *self.value.sort_key())

    def __lt__(self, other: ProjectivePoint) -> bool:
        return self.sort_key() < other.sort_key()

    def to_str(self) -> str:
        return "inf" if self.value is None else self.value.to_str()

    @classmethod
    def from_str(cls, text: str) -> ProjectivePoint:
        return INF if text == "inf" else cls(GaussRat.from_str(text))

    def __repr__(self):
        return f"P({self.to_str()})"


INF = ProjectivePoint(None)


@dataclass(frozen=True)
class PencilSignature:
    n: int  # maximal rank over the pencil
    l: int  # minimal rank over nonzero combinations

    def __post_init__(self):
        if not 0 <= self.l <= self.n:
            raise ValueError(f"invalid signature ({self.n}, {self.l})")


def rank_at(s: MatrixPair, p: ProjectivePoint) -> int:
    if p.is_infinite:
        return rank(s.gamma2)
    return rank(s.gamma1 + s.gamma2.scale(p.value))


def probe_points(m: int) -> list[ProjectivePoint]:
    """The fixed probe grid 0, inf, 1, 2, ..., m+1."""
    return [ProjectivePoint.finite(0), INF] + [ProjectivePoint.finite(k) for k in range(1, m + 2)]


def generic_rank(s: MatrixPair) -> tuple[int, ProjectivePoint]:
    best, witness = -1, None
    for p in probe_points(s.m):
        r = rank_at(s, p)
        if r > best:
            best, witness = r, p
    return best, witness


def eigen_to_probe(lam: ProjectivePoint) -> ProjectivePoint:
    """Pencil eigenvalue (gamma2 - lam*gamma1 singular; inf: gamma1 singular) as a probe point."""
    if lam.is_infinite:
        return ProjectivePoint.finite(0)
    if lam.value.is_zero():
        return INF
    return ProjectivePoint(-lam.value.inverse())


def signature(s: MatrixPair, eigenvalues: Iterable[ProjectivePoint]) -> PencilSignature:
    """(n, l) given the pencil eigenvalues of ``s`` in its own coordinates.

    The minimal rank is only attained at eigenvalues, so probing them is exact.
    """
    n, _ = generic_rank(s)
    l = n
    for lam in eigenvalues:
        l = min(l, rank_at(s, eigen_to_probe(lam)))
    return PencilSignature(n, l)
