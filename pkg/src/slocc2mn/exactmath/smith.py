"""Polynomial matrices over Q(i)[t] and their Smith normal form."""

from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations

from slocc2mn.exactmath.matrix import ExactMatrix
from slocc2mn.exactmath.poly import UniPoly, poly_gcd


class UniPolyMatrix:
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[UniPoly]]):
        self.entries = tuple(tuple(e for e in row) for row in entries)
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def pencil(cls, a: ExactMatrix, b: ExactMatrix) -> UniPolyMatrix:
        """The pencil a + t*b."""
        if a.shape != b.shape:
            raise ValueError("pencil halves must have equal shape")
        return cls([[UniPoly([a[i, j], b[i, j]]) for j in range(a.cols)] for i in range(a.rows)])

    def tolist(self) -> list[list[UniPoly]]:
        return [list(r) for r in self.entries]


def smith_form(pm: UniPolyMatrix) -> list[UniPoly]:
    """Monic invariant factors d_1 | d_2 | ... | d_r of ``pm``; r is its rank over Q(i)(t)."""
    a = pm.tolist()
    nr, nc = pm.rows, pm.cols
    factors: list[UniPoly] = []
    k = 0
    while k < min(nr, nc):
        # pivot: nonzero entry of least degree in the trailing block
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                e = a[i][j]
                if not e.is_zero() and (best is None or e.degree < best[0]):
                    best = (e.degree, i, j)
        if best is None:
            break
        _, i, j = best
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        while True:
            piv = a[k][k]
            dirty = False
            for i in range(k + 1, nr):
                if a[i][k].is_zero():
                    continue
                q, r = divmod(a[i][k], piv)
                a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                if not r.is_zero():
                    dirty = True
            for j in range(k + 1, nc):
                if a[k][j].is_zero():
                    continue
                q, r = divmod(a[k][j], piv)
                for row in a:
                    row[j] = row[j] - q * row[k]
                if not r.is_zero():
                    dirty = True
            if dirty:
                # a remainder of smaller degree appeared: move it to the pivot and repeat
                best = None
                for i in range(k, nr):
                    for j in ([k] if i > k else range(k, nc)):
                        e = a[i][j]
                        if not e.is_zero() and (best is None or e.degree < best[0]):
                            best = (e.degree, i, j)
                _, i, j = best
                a[k], a[i] = a[i], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
                continue
            # pivot row/column are clear; enforce divisibility of the trailing block
            bad = next(((i, j) for i in range(k + 1, nr) for j in range(k + 1, nc)
                        if not piv.divides(a[i][j])), None)
            if bad is None:
                break
            i = bad[0]
            a[k] = [x + y for x, y in zip(a[k], a[i])]
        factors.append(a[k][k].monic())
        k += 1
    return factors


def determinantal_divisors(pm: UniPolyMatrix) -> list[UniPoly]:
    """gcd of all k x k minors for k = 1..rank, by direct expansion (small matrices only)."""
    def det(mat):
        n = len(mat)
        if n == 1:
            return mat[0][0]
        acc = UniPoly()
        for j in range(n):
            if mat[0][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            term = mat[0][j] * det(minor)
            acc = acc + term if j % 2 == 0 else acc - term
        return acc

    out = []
    for k in range(1, min(pm.rows, pm.cols) + 1):
        g = UniPoly()
        for rs in combinations(range(pm.rows), k):
            for cs in combinations(range(pm.cols), k):
                g = poly_gcd(g, det([[pm.entries[i][j] for j in cs] for i in rs]))
        if g.is_zero():
            break
        out.append(g)
    return out

