"""2 x M x N pure states as matrix pairs (gamma1, gamma2)."""

from __future__ import annotations

import json
from dataclasses import dataclass

from slocc2mn.errors import DimensionMismatch, MalformedInput
from slocc2mn.exactmath import ExactMatrix, GaussRat, hstack, rank, rref_with_transform, vstack


@dataclass(frozen=True)
class MatrixPair:
    gamma1: ExactMatrix
    gamma2: ExactMatrix

    def __post_init__(self):
        if self.gamma1.shape != self.gamma2.shape:
            raise DimensionMismatch(f"gamma1 is {self.gamma1.shape} but gamma2 is {self.gamma2.shape}")

    @classmethod
    def of(cls, g1, g2) -> MatrixPair:
        """Build from nested lists (anything GaussRat.coerce accepts)."""
        return cls(ExactMatrix(g1), ExactMatrix(g2))

    @property
    def m(self) -> int:
        return self.gamma1.rows

    @property
    def n(self) -> int:
        return self.gamma1.cols

    def transform(self, t: ExactMatrix, p: ExactMatrix, q: ExactMatrix) -> MatrixPair:
        """Action of T (x) P (x) Q: gamma_i -> sum_j t[i, j] * P gamma_j Q."""
        a = p @ self.gamma1 @ q
        b = p @ self.gamma2 @ q
        return MatrixPair(a.scale(t[0, 0]) + b.scale(t[0, 1]), a.scale(t[1, 0]) + b.scale(t[1, 1]))

    def transpose(self) -> MatrixPair:
        return MatrixPair(self.gamma1.T, self.gamma2.T)

    def is_zero(self) -> bool:
        return self.gamma1.is_zero() and self.gamma2.is_zero()


@dataclass(frozen=True)
class ReducedRanks:
    r0: int
    r1: int
    r2: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r0, self.r1, self.r2)


def reduced_ranks(s: MatrixPair) -> ReducedRanks:
    g1, g2 = s.gamma1, s.gamma2
    r2 = rank(g1.H @ g1 + g2.H @ g2)
    r1 = rank(g1 @ g1.H + g2 @ g2.H)

    def inner(x: ExactMatrix, y: ExactMatrix) -> GaussRat:
        return (x @ y.H).trace()

    gram = ExactMatrix([[inner(g1, g1), inner(g1, g2)], [inner(g2, g1), inner(g2, g2)]])
    return ReducedRanks(rank(gram), r1, r2)


def is_genuine(s: MatrixPair) -> bool:
    return reduced_ranks(s).as_tuple() == (2, s.m, s.n)


@dataclass(frozen=True)
class TrimResult:
    pair: MatrixPair
    m: int
    n: int
    bipartite: bool
    p: ExactMatrix  # M x M, rows beyond m of p @ gamma_i vanish
    q: ExactMatrix  # N x N, columns beyond n of gamma_i @ q vanish


def trim(s: MatrixPair) -> TrimResult:
    """Move the state onto its row and column supports and drop the empty planes."""
    _, p, piv = rref_with_transform(hstack(s.gamma1, s.gamma2))
    m = len(piv)
    if m == s.m:
        p = ExactMatrix.identity(s.m)
    left = MatrixPair(p @ s.gamma1, p @ s.gamma2)
    _, qt, piv = rref_with_transform(vstack(left.gamma1, left.gamma2).T)
    n = len(piv)
    q = ExactMatrix.identity(s.n) if n == s.n else qt.T
    full = MatrixPair(left.gamma1 @ q, left.gamma2 @ q)
    rows, cols = range(m), range(n)
    out = MatrixPair(full.gamma1.submatrix(rows, cols), full.gamma2.submatrix(rows, cols))
    bipartite = reduced_ranks(out).r0 == 1 if m else False
    return TrimResult(out, m, n, bipartite, p, q)


def transpose_orient(s: MatrixPair) -> tuple[MatrixPair, bool]:
    if s.m > s.n:
        return s.transpose(), True
    return s, False


def _matrix_from_json(obj, m: int, n: int, field: str) -> ExactMatrix:
    if not isinstance(obj, list):
        raise MalformedInput(f"{field}: expected a list of rows")
    if len(obj) != m:
        raise DimensionMismatch(f"{field}: expected {m} rows, got {len(obj)}")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list):
            raise MalformedInput(f"{field}[{i}]: expected a list")
        if len(row) != n:
            raise DimensionMismatch(f"{field}[{i}]: expected {n} entries, got {len(row)}")
        out = []
        for j, x in enumerate(row):
            try:
                out.append(GaussRat.from_json(x))
            except ValueError as exc:
                raise MalformedInput(f"{field}[{i}][{j}]: {exc}") from None
        rows.append(out)
    return ExactMatrix(rows, n)


def parse_state(data: bytes | str) -> MatrixPair:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except UnicodeDecodeError as exc:
        raise MalformedInput(f"input is not UTF-8: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("top level must be an object")
    keys = set(doc)
    expected = {"m", "n", "gamma1", "gamma2"}
    if keys != expected:
        missing, extra = expected - keys, keys - expected
        raise MalformedInput(f"state fields: missing {sorted(missing)}, unexpected {sorted(extra)}")
    m, n = doc["m"], doc["n"]
    for name, v in (("m", m), ("n", n)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise MalformedInput(f"{name}: expected a positive integer")
    return MatrixPair(_matrix_from_json(doc["gamma1"], m, n, "gamma1"),
                      _matrix_from_json(doc["gamma2"], m, n, "gamma2"))


def state_to_json(s: MatrixPair) -> dict:
    def mat(x: ExactMatrix):
        return [[e.to_json() for e in x.row(i)] for i in range(x.rows)]

    return {"m": s.m, "n": s.n, "gamma1": mat(s.gamma1), "gamma2": mat(s.gamma2)}


def serialize_state(s: MatrixPair) -> bytes:
    return json.dumps(state_to_json(s), separators=(",", ":")).encode("utf-8")
