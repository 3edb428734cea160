"""Enumeration of the genuine class families for fixed dimensions."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from slocc2mn.errors import ConstraintViolation, DimensionOutOfRange
from slocc2mn.exactmath import ONE, ZERO, GaussRat
from slocc2mn.jordan import SegreSymbol, jordan_matrix, make_finite
from slocc2mn.pencil import INF, PencilSignature, ProjectivePoint
from slocc2mn.reduction import DeficiencyInfo, conjugate, deficiency_of, normal_pair
from slocc2mn.state import MatrixPair

Shape = tuple[tuple[int, ...], ...]

# eigenvalue points fixed by the projective normalization, in assignment order
PINNED = (ProjectivePoint(ZERO), INF, ProjectivePoint(ONE))


def partitions(k: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of k in descending parts, largest partitions first."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def partitions_exact(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into exactly ``parts`` positive parts."""
    for p in partitions(total):
        if len(p) == parts:
            yield p


def _shape_key(part: tuple[int, ...]):
    return (-sum(part), tuple(-b for b in part))


def segre_shapes(k: int) -> list[Shape]:
    """Multisets of partitions of total degree k, each in canonical entry order."""
    pool = sorted({p for d in range(1, k + 1) for p in partitions(d)}, key=_shape_key)
    out: list[Shape] = []

    def rec(remaining: int, start: int, acc: list[tuple[int, ...]]):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for idx in range(start, len(pool)):
            part = pool[idx]
            if sum(part) <= remaining:
                acc.append(part)
                rec(remaining - sum(part), idx, acc)
                acc.pop()

    rec(k, 0, [])
    return out


def _is_scalar(shape: Shape) -> bool:
    return len(shape) == 1 and all(b == 1 for b in shape[0])


@dataclass(frozen=True)
class ClassFamily:
    m: int
    n: int
    epsilons: tuple[int, ...]  # column chain lengths, descending
    etas: tuple[int, ...]  # row chain lengths, descending
    shape: Shape  # Jordan partitions per eigenvalue point, canonical order

    @property
    def k(self) -> int:
        return sum(sum(p) for p in self.shape)

    @property
    def param_count(self) -> int:
        return max(0, len(self.shape) - len(PINNED))

    @property
    def constraints(self) -> str:
        if not self.param_count:
            return "none"
        return "parameters pairwise distinct and different from 0 and 1"

    @property
    def staircase(self) -> tuple[int, ...]:
        return conjugate(self.epsilons)

    @property
    def deficiency(self) -> DeficiencyInfo:
        return deficiency_of(self.epsilons, self.etas)

    @property
    def genuine(self) -> bool:
        return self.m != self.n or not _is_scalar(self.shape)

    @property
    def signature(self) -> PencilSignature:
        n = sum(self.epsilons) + sum(self.etas) + self.k
        return PencilSignature(n, n - max((len(p) for p in self.shape), default=0))

    def skeleton(self):
        return (self.m, self.n, self.m, self.n, self.genuine, self.signature,
                self.staircase, self.deficiency, self.shape)

    def default_params(self) -> list[GaussRat]:
        return [GaussRat(2 + i) for i in range(self.param_count)]


def _check_dims(m: int, n: int) -> None:
    if not (1 <= m <= n <= 2 * m):
        raise DimensionOutOfRange(f"need 1 <= m <= n <= 2m, got m={m}, n={n}")


def enumerate_families(m: int, n: int, genuine_only: bool = True) -> list[ClassFamily]:
    """All families for 2 x m x n.

    Square dimensions carry only a regular pencil (full generic rank); the
    scalar shape, a product state, is reported only when ``genuine_only`` is
    false. Otherwise the column chains outnumber the row chains by n - m.
    """
    _check_dims(m, n)
    out: list[ClassFamily] = []
    if m == n:
        for shape in segre_shapes(m):
            if genuine_only and _is_scalar(shape):
                continue
            out.append(ClassFamily(m, n, (), (), shape))
        return out
    d = n - m
    for b in range(0, m + 1):
        a = b + d
        # rows: sum(eps) + sum(eta) + b + k = m with sum(eps) >= a, sum(eta) >= b
        for e_total in range(a, m + 1):
            for h_total in range(b, m - e_total - b + 1):
                k = m - e_total - h_total - b
                for eps in partitions_exact(e_total, a):
                    for eta in partitions_exact(h_total, b):
                        for shape in segre_shapes(k):
                            out.append(ClassFamily(m, n, eps, eta, shape))
    return out


def instantiate(f: ClassFamily, params: Sequence | None = None) -> MatrixPair:
    """The literal normal pair of ``f`` with the free eigenvalues set to ``params``."""
    params = f.default_params() if params is None else [GaussRat.coerce(p) for p in params]
    if len(params) != f.param_count:
        raise ConstraintViolation(f"family takes {f.param_count} parameters, got {len(params)}")
    points = list(PINNED[:min(len(f.shape), len(PINNED))]) + [ProjectivePoint(p) for p in params]
    if len(set(points)) != len(points):
        raise ConstraintViolation("parameters must be distinct and avoid the pinned points 0 and 1")
    segre, _ = make_finite(SegreSymbol(tuple(zip(points, f.shape))))
    return normal_pair(f.staircase, 0, f.etas, jordan_matrix(segre))


def count_table(max_m: int, max_n: int) -> dict[tuple[int, int], int]:
    table = {}
    for m in range(1, max_m + 1):
        for n in range(m, min(2 * m, max_n) + 1):
            table[(m, n)] = len(enumerate_families(m, n))
    return table
