"""Jordan structure of the regular part and its normalization under projective maps."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import permutations

from slocc2mn.errors import EigenvalueOutsideField
from slocc2mn.exactmath import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussRat,
    charpoly,
    column_matrix,
    nullspace,
    rank,
    roots_in_field,
)
from slocc2mn.pencil import INF, ProjectivePoint

Entry = tuple[ProjectivePoint, tuple[int, ...]]


def _entry_key(entry: Entry):
    point, blocks = entry
    return (-sum(blocks), tuple(-b for b in blocks), point.sort_key())


@dataclass(frozen=True)
class SegreSymbol:
    """Eigenvalue points of a pencil with the Jordan block sizes at each point.

    Entries are kept in canonical order: larger total multiplicity first, then
    larger partitions, then by point.
    """

    entries: tuple[Entry, ...] = ()

    def __post_init__(self):
        norm = []
        for point, blocks in self.entries:
            blocks = tuple(sorted((int(b) for b in blocks), reverse=True))
            if not blocks or blocks[-1] < 1:
                raise ValueError("every point needs at least one positive block")
            norm.append((point, blocks))
        if len({p for p, _ in norm}) != len(norm):
            raise ValueError("segre points must be distinct")
        object.__setattr__(self, "entries", tuple(sorted(norm, key=_entry_key)))

    @classmethod
    def from_dict(cls, data: dict) -> SegreSymbol:
        return cls(tuple(data.items()))

    @property
    def degree(self) -> int:
        return sum(sum(b) for _, b in self.entries)

    @property
    def points(self) -> tuple[ProjectivePoint, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def shape(self) -> tuple[tuple[int, ...], ...]:
        """The partitions alone, in canonical order."""
        return tuple(b for _, b in self.entries)

    def max_blocks(self) -> int:
        """Largest number of Jordan blocks at a single point (0 if empty)."""
        return max((len(b) for _, b in self.entries), default=0)

    def encode(self):
        return tuple(_entry_key(e) for e in self.entries)

    def to_json(self) -> list:
        return [[p.to_str(), list(b)] for p, b in self.entries]

    @classmethod
    def from_json(cls, data) -> SegreSymbol:
        return cls(tuple((ProjectivePoint.from_str(p), tuple(b)) for p, b in data))

    def mapped(self, mu: Moebius) -> SegreSymbol:
        return SegreSymbol(tuple((mu(p), b) for p, b in self.entries))


def jordan_matrix(segre: SegreSymbol) -> ExactMatrix:
    """Upper bidiagonal Jordan matrix with blocks in the symbol's order."""
    n = segre.degree
    rows = [[ZERO] * n for _ in range(n)]
    at = 0
    for point, blocks in segre.entries:
        if point.is_infinite:
            raise ValueError("the point at infinity has no single-matrix Jordan block")
        for b in blocks:
            for k in range(b):
                rows[at + k][at + k] = point.value
                if k + 1 < b:
                    rows[at + k][at + k + 1] = ONE
            at += b
    return ExactMatrix(rows, n)


def _power(a: ExactMatrix, k: int) -> ExactMatrix:
    out = ExactMatrix.identity(a.rows)
    for _ in range(k):
        out = out @ a
    return out


def _apply(a: ExactMatrix, v: Sequence[GaussRat]) -> list[GaussRat]:
    return [sum((a[i, j] * v[j] for j in range(a.cols) if not v[j].is_zero()), ZERO) for i in range(a.rows)]


def _chains(nil: ExactMatrix, mult: int) -> list[list[list[GaussRat]]]:
    """Jordan chains of the nilpotent-on-its-root-space map ``nil``, longest first.

    Each chain is [N^(k-1) v, ..., N v, v] so that columns give an upper Jordan block.
    """
    n = nil.rows
    kernels = [[]]
    k = 0
    while len(kernels[-1]) < mult:
        k += 1
        kernels.append(nullspace(_power(nil, k)))
    top = k
    chains: list[list[list[GaussRat]]] = []
    for size in range(top, 0, -1):
        # span of ker N^(size-1) plus the height-`size` vectors of longer chains
        basis = [list(v) for v in kernels[size - 1]]
        for ch in chains:
            basis.append(ch[size - 1])
        current = rank(column_matrix(basis, n)) if basis else 0
        for cand in kernels[size]:
            trial = basis + [list(cand)]
            r = rank(column_matrix(trial, n))
            if r == current:
                continue
            basis, current = trial, r
            chain = [list(cand)]
            for _ in range(size - 1):
                chain.append(_apply(nil, chain[-1]))
            chains.append(chain[::-1])
    return chains


def jordan_form(a: ExactMatrix) -> tuple[SegreSymbol, ExactMatrix]:
    """(segre, s) with inv(s) @ a @ s == jordan_matrix(segre)."""
    if a.rows != a.cols:
        raise ValueError("jordan_form needs a square matrix")
    n = a.rows
    if n == 0:
        return SegreSymbol(), ExactMatrix.zeros(0, 0)
    roots, split = roots_in_field(charpoly(a))
    if not split:
        raise EigenvalueOutsideField(f"characteristic polynomial of a {n}x{n} block does not split over Q(i)")
    by_point: dict[ProjectivePoint, list[list[list[GaussRat]]]] = {}
    for lam, mult in roots.items():
        nil = a - ExactMatrix.identity(n).scale(lam)
        by_point[ProjectivePoint(lam)] = _chains(nil, mult)
    segre = SegreSymbol(tuple((p, tuple(len(c) for c in chs)) for p, chs in by_point.items()))
    cols = []
    for point, _ in segre.entries:
        for ch in sorted(by_point[point], key=len, reverse=True):
            cols.extend(ch)
    return segre, column_matrix(cols, n)


@dataclass(frozen=True)
class Moebius:
    """x -> (a x + b) / (c x + d) on the projective line."""

    a: GaussRat
    b: GaussRat
    c: GaussRat
    d: GaussRat

    def __post_init__(self):
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("degenerate Moebius map")

    @classmethod
    def of(cls, a, b, c, d) -> Moebius:
        return cls(*(GaussRat.coerce(x) for x in (a, b, c, d)))

    @classmethod
    def identity(cls) -> Moebius:
        return cls(ONE, ZERO, ZERO, ONE)

    def __call__(self, p: ProjectivePoint) -> ProjectivePoint:
        x, y = (ONE, ZERO) if p.is_infinite else (p.value, ONE)
        num = self.a * x + self.b * y
        den = self.c * x + self.d * y
        return INF if den.is_zero() else ProjectivePoint(num / den)

    def compose(self, inner: Moebius) -> Moebius:
        """self after inner."""
        return Moebius(
            self.a * inner.a + self.b * inner.c,
            self.a * inner.b + self.b * inner.d,
            self.c * inner.a + self.d * inner.c,
            self.c * inner.b + self.d * inner.d,
        )

    def inverse(self) -> Moebius:
        return Moebius(self.d, -self.b, -self.c, self.a)


def _coords(p: ProjectivePoint) -> tuple[GaussRat, GaussRat]:
    return (ONE, ZERO) if p.is_infinite else (p.value, ONE)


def _vanishing(p: ProjectivePoint, q: ProjectivePoint) -> GaussRat:
    """Linear form that is zero exactly at p, evaluated at q."""
    (p0, p1), (q0, q1) = _coords(p), _coords(q)
    return p1 * q0 - p0 * q1


def to_standard(p: ProjectivePoint, q: ProjectivePoint, r: ProjectivePoint) -> Moebius:
    """The unique map sending p, q, r to 0, 1, inf."""
    (p0, p1), (r0, r1) = _coords(p), _coords(r)
    lr, lp = _vanishing(r, q), _vanishing(p, q)
    return Moebius(lr * p1, -lr * p0, lp * r1, -lp * r0)


def _pin_two(p: ProjectivePoint, q: ProjectivePoint) -> Moebius:
    """A map sending p to 0 and q to inf."""
    (p0, p1), (q0, q1) = _coords(p), _coords(q)
    return Moebius(p1, -p0, q1, -q0)


def _pin_one(p: ProjectivePoint) -> Moebius:
    if p.is_infinite:
        return Moebius(ZERO, ONE, ONE, ZERO)
    return Moebius(ONE, -p.value, ZERO, ONE)


def canonicalizing_map(raw: SegreSymbol) -> Moebius:
    """The map taking ``raw`` to its canonical representative."""
    pts = raw.points
    if not pts:
        return Moebius.identity()
    if len(pts) == 1:
        return _pin_one(pts[0])
    if len(pts) == 2:
        candidates: Iterable[Moebius] = (_pin_two(p, q) for p, q in permutations(pts, 2))
    else:
        candidates = (to_standard(p, q, r) for p, q, r in permutations(pts, 3))
    best, best_key = None, None
    for mu in candidates:
        key = raw.mapped(mu).encode()
        if best_key is None or key < best_key:
            best, best_key = mu, key
    return best


def moebius_canonicalize(raw: SegreSymbol) -> SegreSymbol:
    return raw.mapped(canonicalizing_map(raw))


def make_finite(segre: SegreSymbol) -> tuple[SegreSymbol, Moebius]:
    """Move the point at infinity (if present) to a finite one by x -> x / (x + k).

    k is the least positive integer with -k not already a point, so 0 stays at 0
    and infinity lands on 1.
    """
    if INF not in segre.points:
        return segre, Moebius.identity()
    k = 1
    while ProjectivePoint.finite(-k) in segre.points:
        k += 1
    mu = Moebius.of(1, 0, 1, k)
    return segre.mapped(mu), mu
