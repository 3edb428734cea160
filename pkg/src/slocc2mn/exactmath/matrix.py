"""Dense matrices over Q(i) with exact elimination."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from math import gcd

from slocc2mn.errors import Singular
from slocc2mn.exactmath.gaussrat import ONE, ZERO, GaussRat


def _coerce(x) -> GaussRat:
    return x if isinstance(x, GaussRat) else GaussRat.coerce(x)


class ExactMatrix:
    """Immutable rows x cols matrix of GaussRat, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(_coerce(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _wrap(cls, rows: list[list[GaussRat]], nrows: int, ncols: int) -> ExactMatrix:
        obj = cls.__new__(cls)
        obj.rows = nrows
        obj.cols = ncols
        obj._data = tuple(tuple(r) for r in rows)
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls._wrap([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def diag(cls, values: Sequence) -> ExactMatrix:
        n = len(values)
        vals = [_coerce(v) for v in values]
        return cls._wrap([[vals[i] if i == j else ZERO for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence) -> ExactMatrix:
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        e = [_coerce(x) for x in entries]
        return cls._wrap([e[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def entries(self) -> tuple[GaussRat, ...]:
        return tuple(x for row in self._data for x in row)

    def tolist(self) -> list[list[GaussRat]]:
        return [list(r) for r in self._data]

    def row(self, i: int) -> tuple[GaussRat, ...]:
        return self._data[i]

    def col(self, j: int) -> tuple[GaussRat, ...]:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(x.to_str() for x in r) for r in self._data)
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self._data for x in r)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix._wrap(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], self.rows, self.cols
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return self + (-other)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._wrap([[-a for a in r] for r in self._data], self.rows, self.cols)

    def scale(self, c) -> ExactMatrix:
        c = _coerce(c)
        return ExactMatrix._wrap([[c * a for a in r] for r in self._data], self.rows, self.cols)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.cols
        odata = other._data
        out = []
        for r in self._data:
            acc = [ZERO] * ocols
            for k, a in enumerate(r):
                if a.is_zero():
                    continue
                orow = odata[k]
                for j in range(ocols):
                    b = orow[j]
                    if not b.is_zero():
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return ExactMatrix._wrap(out, self.rows, ocols)

    @property
    def T(self) -> ExactMatrix:
        if self.rows == 0 or self.cols == 0:
            return ExactMatrix.zeros(self.cols, self.rows)
        return ExactMatrix._wrap([list(c) for c in zip(*self._data)], self.cols, self.rows)

    @property
    def H(self) -> ExactMatrix:
        """Conjugate transpose."""
        t = self.T
        return ExactMatrix._wrap([[x.conj() for x in r] for r in t._data], t.rows, t.cols)

    def submatrix(self, rows: Sequence[int] | range, cols: Sequence[int] | range) -> ExactMatrix:
        rows = list(rows)
        cols = list(cols)
        return ExactMatrix._wrap([[self._data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def with_block(self, r0: int, c0: int, block: ExactMatrix) -> ExactMatrix:
        data = self.tolist()
        for i in range(block.rows):
            for j in range(block.cols):
                data[r0 + i][c0 + j] = block._data[i][j]
        return ExactMatrix._wrap(data, self.rows, self.cols)

    def trace(self) -> GaussRat:
        acc = ZERO
        for i in range(min(self.rows, self.cols)):
            acc = acc + self._data[i][i]
        return acc


def hstack(*ms: ExactMatrix) -> ExactMatrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("row count mismatch in hstack")
    data = [[x for m in ms for x in m.row(i)] for i in range(rows)]
    return ExactMatrix._wrap(data, rows, sum(m.cols for m in ms))


def vstack(*ms: ExactMatrix) -> ExactMatrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("column count mismatch in vstack")
    data = [list(m.row(i)) for m in ms for i in range(m.rows)]
    return ExactMatrix._wrap(data, sum(m.rows for m in ms), cols)


def block_diag(*ms: ExactMatrix) -> ExactMatrix:
    out = ExactMatrix.zeros(sum(m.rows for m in ms), sum(m.cols for m in ms))
    r = c = 0
    for m in ms:
        out = out.with_block(r, c, m)
        r += m.rows
        c += m.cols
    return out


def permutation(order: Sequence[int]) -> ExactMatrix:
    """Matrix P with (P @ X) row i equal to X row order[i]."""
    n = len(order)
    return ExactMatrix._wrap([[ONE if j == order[i] else ZERO for j in range(n)] for i in range(n)], n, n)


def _eliminate(data: list[list[GaussRat]], ncols: int, track: list[list[GaussRat]] | None = None,
               limit: int | None = None) -> list[int]:
    """In-place Gauss-Jordan to reduced row echelon form on the first ``limit`` columns.

    Pivot choice: lowest-index nonzero row. Row operations are mirrored on ``track``.
    """
    nrows = len(data)
    limit = ncols if limit is None else limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if not data[i][c].is_zero()), None)
        if piv is None:
            continue
        if piv != r:
            data[r], data[piv] = data[piv], data[r]
            if track is not None:
                track[r], track[piv] = track[piv], track[r]
        inv = data[r][c].inverse()
        if inv != ONE:
            data[r] = [x * inv for x in data[r]]
            if track is not None:
                track[r] = [x * inv for x in track[r]]
        prow = data[r]
        trow = track[r] if track is not None else None
        for i in range(nrows):
            if i == r:
                continue
            f = data[i][c]
            if f.is_zero():
                continue
            row = data[i]
            data[i] = [a - f * b if not b.is_zero() else a for a, b in zip(row, prow)]
            if trow is not None:
                track[i] = [a - f * b if not b.is_zero() else a for a, b in zip(track[i], trow)]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate on the smaller orientation
    data = m.tolist() if m.rows <= m.cols else m.T.tolist()
    return _forward_rank(data)


def _gauss_int_rows(data: list[list[GaussRat]]) -> list[list[tuple[int, int]]]:
    """Scale each row by its common denominator; entries become Gaussian integers (re, im)."""
    out = []
    for row in data:
        d = 1
        for x in row:
            d = d * x._d // gcd(d, x._d)
        out.append([(x._a * (d // x._d), x._b * (d // x._d)) for x in row])
    return out


def _forward_rank(data: list[list[GaussRat]]) -> int:
    """Fraction-free (Bareiss) elimination over Z[i]; every division is exact."""
    rows = _gauss_int_rows(data)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    qa, qb, qn = 1, 0, 1  # previous pivot and its norm
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != (0, 0)), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pa, pb = prow[c]
        tail = prow[c + 1:]
        unit = qa == 1 and qb == 0
        for i in range(r + 1, nrows):
            row = rows[i]
            fa, fb = row[c]
            new = [(0, 0)] * (c + 1)
            for (xa, xb), (ya, yb) in zip(row[c + 1:], tail):
                # (p*x - f*y) / prev
                na = pa * xa - pb * xb - fa * ya + fb * yb
                nb = pa * xb + pb * xa - fa * yb - fb * ya
                if not unit:
                    na, nb = (na * qa + nb * qb) // qn, (nb * qa - na * qb) // qn
                new.append((na, nb))
            rows[i] = new
        qa, qb, qn = pa, pb, pa * pa + pb * pb
        r += 1
    return r


def rref_with_transform(m: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix, list[int]]:
    """Return (reduced, row_ops, pivots) with row_ops @ m == reduced."""
    data = m.tolist()
    track = ExactMatrix.identity(m.rows).tolist()
    pivots = _eliminate(data, m.cols, track)
    return ExactMatrix._wrap(data, m.rows, m.cols), ExactMatrix._wrap(track, m.rows, m.rows), pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    data = m.tolist()
    pivots = _eliminate(data, m.cols)
    return ExactMatrix._wrap(data, m.rows, m.cols), pivots


def invert(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ValueError("invert needs a square matrix")
    data = m.tolist()
    track = ExactMatrix.identity(m.rows).tolist()
    pivots = _eliminate(data, m.cols, track)
    if len(pivots) != m.rows:
        raise Singular(f"matrix of size {m.rows} has rank {len(pivots)}")
    return ExactMatrix._wrap(track, m.rows, m.rows)


def det(m: ExactMatrix) -> GaussRat:
    if m.rows != m.cols:
        raise ValueError("det needs a square matrix")
    data = m.tolist()
    n = m.rows
    acc = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if not data[i][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            data[c], data[piv] = data[piv], data[c]
            acc = -acc
        p = data[c][c]
        acc = acc * p
        inv = p.inverse()
        for i in range(c + 1, n):
            f = data[i][c]
            if f.is_zero():
                continue
            f = f * inv
            data[i] = [a - f * b for a, b in zip(data[i], data[c])]
    return acc


def nullspace(m: ExactMatrix) -> list[list[GaussRat]]:
    """Basis of {x : m x = 0}, one vector per free column."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -red[r, f]
        basis.append(v)
    return basis


def column_matrix(vectors: Sequence[Sequence[GaussRat]], n: int) -> ExactMatrix:
    """Matrix whose columns are the given length-n vectors."""
    if not vectors:
        return ExactMatrix.zeros(n, 0)
    return ExactMatrix._wrap([[v[i] for v in vectors] for i in range(n)], n, len(vectors))


def complete_basis(vectors: Sequence[Sequence[GaussRat]], n: int) -> list[list[GaussRat]]:
    """Unit vectors extending independent ``vectors`` to a basis of Q(i)^n."""
    if not vectors:
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    red, pivots = rref(ExactMatrix([list(v) for v in vectors], n))
    used = set(pivots)
    return [[ONE if i == j else ZERO for i in range(n)] for j in range(n) if j not in used]


def sparse_rank(rows: Iterable[dict[int, GaussRat]]) -> int:
    """Rank of a matrix given as {column: nonzero entry} rows.

    Gaussian elimination with Markowitz pivoting, which keeps fill-in low on
    the structured systems built by the stabilizer computation.
    """
    rows = [dict(r) for r in rows]
    where: dict[int, set[int]] = {}
    for i, r in enumerate(rows):
        for c in r:
            where.setdefault(c, set()).add(i)
    alive = {i for i, r in enumerate(rows) if r}
    out = 0
    while alive:
        best = None
        for i in alive:
            r = rows[i]
            for c in r:
                cost = (len(r) - 1) * (len(where[c]) - 1)
                if best is None or cost < best[0]:
                    best = (cost, i, c)
            if best[0] == 0:
                break
        _, i, c = best
        prow = rows[i]
        alive.discard(i)
        for cc in prow:
            where[cc].discard(i)
        inv = prow[c].inverse()
        for j in list(where[c]):
            r = rows[j]
            f = r[c] * inv
            for cc, v in prow.items():
                old = r.get(cc)
                nv = -(f * v) if old is None else old - f * v
                if nv.is_zero():
                    del r[cc]
                    where[cc].discard(j)
                else:
                    if old is None:
                        where[cc].add(j)
                    r[cc] = nv
            if not r:
                alive.discard(j)
        out += 1
    return out
