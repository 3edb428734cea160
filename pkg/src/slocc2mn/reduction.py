"""Staircase reduction of a matrix pair to block normal form.

After ``normalize_leading`` the first matrix is [[I_n, 0], [0, 0]] where n is
the generic rank. The staircase then runs in two passes. The first pass
repeatedly compresses the B block of the working pair (step i) and shrinks
the working pair (step ii), peeling off the column chains. The second pass
does the same on the transposed remainder and peels off the row chains that
carry the zero rows. What is left is a square pair (I, X) whose Jordan form
gives the eigenvalue data.

Every local operation is lifted to a full invertible triple. A final
correction triple, found by solving a linear intertwining system, carries the
lifted result onto the literal block normal pair.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from slocc2mn.errors import Singular, UnsupportedStructure
from slocc2mn.exactmath import (
    ONE,
    ZERO,
    ExactMatrix,
    GaussRat,
    block_diag,
    complete_basis,
    det,
    hstack,
    invert,
    nullspace,
    permutation,
    rank,
    rref_with_transform,
    vstack,
)
from slocc2mn.jordan import SegreSymbol, jordan_form, jordan_matrix
from slocc2mn.pencil import ProjectivePoint
from slocc2mn.state import MatrixPair


@dataclass(frozen=True)
class IloTriple:
    """Invertible local operators: gamma_i -> sum_j t[i, j] * p @ gamma_j @ q."""

    t: ExactMatrix
    p: ExactMatrix
    q: ExactMatrix

    def __post_init__(self):
        if self.t.shape != (2, 2):
            raise ValueError("t must be 2x2")
        for name, x in (("t", self.t), ("p", self.p), ("q", self.q)):
            if x.rows != x.cols:
                raise ValueError(f"{name} must be square")
            if det(x).is_zero():
                raise Singular(f"{name} is not invertible")

    @classmethod
    def identity(cls, m: int, n: int) -> IloTriple:
        return cls(ExactMatrix.identity(2), ExactMatrix.identity(m), ExactMatrix.identity(n))

    def apply(self, s: MatrixPair) -> MatrixPair:
        return s.transform(self.t, self.p, self.q)

    def then(self, other: IloTriple) -> IloTriple:
        """The triple acting as ``self`` followed by ``other``."""
        return IloTriple(other.t @ self.t, other.p @ self.p, self.q @ other.q)

    def inverse(self) -> IloTriple:
        return IloTriple(invert(self.t), invert(self.p), invert(self.q))

    def for_transpose(self) -> IloTriple:
        """The same action seen on transposed pairs."""
        return IloTriple(self.t, self.q.T, self.p.T)


@dataclass(frozen=True)
class ReductionTranscript:
    steps: tuple[IloTriple, ...]
    composite: IloTriple

    @classmethod
    def of(cls, steps, m: int, n: int) -> ReductionTranscript:
        steps = tuple(steps)
        comp = IloTriple.identity(m, n)
        for st in steps:
            comp = comp.then(st)
        return cls(steps, comp)

    def extended(self, more: ReductionTranscript) -> ReductionTranscript:
        return ReductionTranscript(self.steps + more.steps, self.composite.then(more.composite))


@dataclass(frozen=True)
class DeficiencyInfo:
    zero_rows: int
    c_rank: int  # rank of the c block: column chains of length >= 2 next to zero rows
    r_rank: int  # rank of the r block: row chains of length >= 2
    row_staircase: tuple[int, ...] = ()

    def __post_init__(self):
        if self.zero_rows == 0 and (self.c_rank or self.r_rank):
            raise ValueError("c and r blocks exist only with zero rows")

    @property
    def c_case(self) -> str:
        return "nonzero" if self.c_rank else "zero"

    @property
    def r_case(self) -> str:
        return "nonzero" if self.r_rank else "zero"

    def to_json(self) -> dict:
        return {
            "zero_rows": self.zero_rows,
            "c": self.c_case,
            "r": self.r_case,
            "c_rank": self.c_rank,
            "r_rank": self.r_rank,
            "row_staircase": list(self.row_staircase),
        }

    @classmethod
    def from_json(cls, data: dict) -> DeficiencyInfo:
        return cls(data["zero_rows"], data["c_rank"], data["r_rank"], tuple(data["row_staircase"]))


@dataclass(frozen=True)
class BlockNormalPair:
    pair: MatrixPair
    square_block_dim: int
    staircase: tuple[int, ...]
    deficiency: DeficiencyInfo
    zero_cols: int = 0
    segre: SegreSymbol = field(default_factory=SegreSymbol)  # in the coordinates of ``pair``

    @property
    def epsilons(self) -> tuple[int, ...]:
        return conjugate(self.staircase) + (0,) * self.zero_cols

    @property
    def etas(self) -> tuple[int, ...]:
        d = self.deficiency
        nonzero = conjugate(d.row_staircase)
        return nonzero + (0,) * (d.zero_rows - len(nonzero))


def conjugate(parts) -> tuple[int, ...]:
    """Conjugate partition; input in any order, zeros ignored."""
    parts = sorted((p for p in parts if p > 0), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(parts[0]))


def deficiency_of(epsilons, etas) -> DeficiencyInfo:
    zero_rows = len(etas)
    c_rank = sum(1 for e in epsilons if e >= 2) if zero_rows else 0
    r_rank = sum(1 for e in etas if e >= 2)
    return DeficiencyInfo(zero_rows, c_rank, r_rank, conjugate(etas))


# ---------------------------------------------------------------- normalization


def _column_completion(top: ExactMatrix) -> ExactMatrix:
    """Invertible Z whose first rows are ``top`` (in rref) and the rest unit rows."""
    n = top.cols
    rows = [list(top.row(i)) for i in range(top.rows)]
    rows += complete_basis(rows, n)
    return ExactMatrix(rows, n)


def normalize_leading(s: MatrixPair, witness: ProjectivePoint) -> tuple[MatrixPair, ReductionTranscript]:
    """Bring the witness combination into the first slot as [[I_n, 0], [0, 0]]."""
    if witness.is_infinite:
        t = ExactMatrix([[0, 1], [1, 0]])
    else:
        t = ExactMatrix([[ONE, witness.value], [ZERO, ONE]])
    g1 = s.gamma1.scale(t[0, 0]) + s.gamma2.scale(t[0, 1])
    red, p, piv = rref_with_transform(g1)
    n = len(piv)
    q = invert(_column_completion(red.submatrix(range(n), range(s.n))))
    step = IloTriple(t, p, q)
    if step == IloTriple.identity(s.m, s.n):
        return s, ReductionTranscript((), step)
    return step.apply(s), ReductionTranscript.of([step], s.m, s.n)


# ---------------------------------------------------------------- staircase steps


@dataclass(frozen=True)
class WorkingBlock:
    """Index sets of the part still being reduced.

    On ``rows`` the first matrix is (I | 0) over ``cols_t + cols_b``; it vanishes on
    ``zero_rows``. The B block is gamma2 on rows x cols_b.
    """

    rows: tuple[int, ...]
    zero_rows: tuple[int, ...]
    cols_t: tuple[int, ...]
    cols_b: tuple[int, ...]

    @classmethod
    def leading(cls, m: int, n: int, rank: int) -> WorkingBlock:
        return cls(tuple(range(rank)), tuple(range(rank, m)), tuple(range(rank)), tuple(range(rank, n)))


def _embed(size: int, blocks) -> ExactMatrix:
    """Identity of ``size`` with square ``blocks`` [(indices, matrix)] written in place."""
    rows = ExactMatrix.identity(size).tolist()
    for idx, mat in blocks:
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                rows[i][j] = mat[a, b]
    return ExactMatrix(rows, size)


def step_i(s: MatrixPair, block: WorkingBlock | int) -> tuple[MatrixPair, ReductionTranscript, int]:
    """Compress B to [[0, 0], [0, I_rB]] and clear the rows of A beside the identity.

    An integer ``block`` means the whole pair with gamma1 = (I_m | 0).
    """
    if isinstance(block, int):
        block = WorkingBlock.leading(s.m, s.n, block)
    b = s.gamma2.submatrix(block.rows, block.cols_b)
    if block.zero_rows and not s.gamma2.submatrix(block.zero_rows, block.cols_b).is_zero():
        raise UnsupportedStructure("gamma2 is nonzero beside the zero rows; the leading rank is not maximal")
    red, u, piv = rref_with_transform(b)
    rho = len(piv)
    if rho == 0:
        return s, ReductionTranscript((), IloTriple.identity(s.m, s.n)), 0
    nrow = len(block.rows)
    pt = permutation(list(range(rho, nrow)) + list(range(rho))) @ u
    z = ExactMatrix(complete_basis([red.row(i) for i in range(rho)], b.cols)
                    + [list(red.row(i)) for i in range(rho)], b.cols)
    y = invert(z)
    first = IloTriple(ExactMatrix.identity(2), _embed(s.m, [(block.rows, pt)]),
                      _embed(s.n, [(block.cols_t, invert(pt)), (block.cols_b, y)]))
    s1 = first.apply(s)
    # feedback from the pivot columns of B into cols_t
    q2 = ExactMatrix.identity(s.n).tolist()
    pivot_rows = block.rows[nrow - rho:]
    pivot_cols = block.cols_b[len(block.cols_b) - rho:]
    for r, kc in zip(pivot_rows, pivot_cols):
        for c in block.cols_t:
            q2[kc][c] = -s1.gamma2[r, c]
    second = IloTriple(ExactMatrix.identity(2), ExactMatrix.identity(s.m), ExactMatrix(q2, s.n))
    out = second.apply(s1)
    return out, ReductionTranscript.of([first, second], s.m, s.n), rho


def step_ii(block: WorkingBlock, rb: int) -> WorkingBlock | None:
    """The next working block after a step i of rank ``rb``; None when finished."""
    if rb == 0 or not block.cols_b:
        return None
    keep = len(block.rows) - rb
    return WorkingBlock(block.rows[:keep], block.zero_rows, block.cols_t[:keep], block.cols_t[keep:])


def _run_pass(s: MatrixPair, block: WorkingBlock, record: bool):
    """Alternate step i / step ii; return (pair, steps, ranks, first-level leftovers, final block)."""
    steps: list[IloTriple] = []
    ranks: list[int] = []
    leftover = None
    while True:
        if not block.cols_b:
            if leftover is None:
                leftover = 0
            break
        s, tr, rb = step_i(s, block)
        if record:
            steps.extend(tr.steps)
        if leftover is None:
            leftover = len(block.cols_b) - rb
        nxt = step_ii(block, rb)
        if nxt is None:
            break
        ranks.append(rb)
        block = nxt
    return s, steps, ranks, leftover, block


@dataclass(frozen=True)
class KroneckerData:
    """Chains and regular block read off by the two staircase passes."""

    staircase: tuple[int, ...]
    empty_cols: int
    row_staircase: tuple[int, ...]
    empty_rows: int
    regular: ExactMatrix  # X in the final square pair (I, X)


def _two_pass(s: MatrixPair, n: int, record: bool):
    block = WorkingBlock.leading(s.m, s.n, n)
    s, steps, ranks, empty_cols, fin = _run_pass(s, block, record)
    # the remainder lives on rows fin.rows + fin.zero_rows and columns fin.cols_t
    tblock = WorkingBlock(fin.cols_t, (), fin.rows, fin.zero_rows)
    st, tsteps, tranks, empty_rows, tfin = _run_pass(s.transpose(), tblock, record)
    s = st.transpose()
    steps.extend(x.for_transpose() for x in tsteps)
    regular = st.gamma2.submatrix(tfin.rows, tfin.cols_t).T
    data = KroneckerData(tuple(ranks), empty_cols, tuple(tranks), empty_rows, regular)
    return s, steps, data


def kronecker_data(s: MatrixPair, n: int) -> KroneckerData:
    """Staircase data of a pair already in leading normal form with generic rank n."""
    return _two_pass(s, n, record=False)[2]


# ---------------------------------------------------------------- literal normal pair


def _staircase_gamma2(m: int, n: int, stairs: tuple[int, ...], j: ExactMatrix) -> ExactMatrix:
    if not stairs:
        return hstack(j, ExactMatrix.zeros(m, n - m))
    r = stairs[0]
    inner = _staircase_gamma2(m - r, m, stairs[1:], j)
    top = hstack(inner, ExactMatrix.zeros(m - r, n - m))
    bottom = hstack(ExactMatrix.zeros(r, n - r), ExactMatrix.identity(r))
    return vstack(top, bottom)


def normal_pair(staircase, zero_cols: int, etas, j: ExactMatrix) -> MatrixPair:
    """Literal block normal pair.

    Column chains follow the staircase with J in the innermost corner; row
    chains and empty rows/columns are appended as direct summands. Rows where
    gamma1 vanishes are then moved to the bottom and such columns to the right.
    """
    staircase = tuple(staircase)
    k = j.rows
    m0 = sum(staircase) + k
    n0 = m0 + (staircase[0] if staircase else 0)
    g1_parts = [hstack(ExactMatrix.identity(m0), ExactMatrix.zeros(m0, n0 - m0))]
    g2_parts = [_staircase_gamma2(m0, n0, staircase, j)]
    for _ in range(zero_cols):
        g1_parts.append(ExactMatrix.zeros(0, 1))
        g2_parts.append(ExactMatrix.zeros(0, 1))
    for e in sorted(etas, reverse=True):
        g1_parts.append(vstack(ExactMatrix.identity(e), ExactMatrix.zeros(1, e)))
        g2_parts.append(vstack(ExactMatrix.zeros(1, e), ExactMatrix.identity(e)))
    g1 = block_diag(*g1_parts)
    g2 = block_diag(*g2_parts)
    live_r = [i for i in range(g1.rows) if any(not x.is_zero() for x in g1.row(i))]
    dead_r = [i for i in range(g1.rows) if i not in set(live_r)]
    live_c = [j for j in range(g1.cols) if any(not x.is_zero() for x in g1.col(j))]
    dead_c = [j for j in range(g1.cols) if j not in set(live_c)]
    p = permutation(live_r + dead_r)
    q = permutation(live_c + dead_c).T
    return MatrixPair(p @ g1 @ q, p @ g2 @ q)


# ---------------------------------------------------------------- correction


def intertwiner(src: MatrixPair, dst: MatrixPair, seed: int = 0, attempts: int = 64) -> IloTriple:
    """Some (I, P, Q) with P src_i Q = dst_i, or Singular if none was found."""
    m, n = src.m, src.n
    if dst.m != m or dst.n != n:
        raise ValueError("pairs must have equal dimensions")
    # unknowns: P (m*m, row-major) then R (n*n) with P src_i = dst_i R
    nvar = m * m + n * n
    eqs = []
    for a_src, a_dst in ((src.gamma1, dst.gamma1), (src.gamma2, dst.gamma2)):
        for a in range(m):
            for b in range(n):
                row = [ZERO] * nvar
                for c in range(m):
                    row[a * m + c] = a_src[c, b]
                for c in range(n):
                    row[m * m + c * n + b] = row[m * m + c * n + b] - a_dst[a, c]
                eqs.append(row)
    basis = nullspace(ExactMatrix(eqs, nvar))
    rng = random.Random(seed)
    for _ in range(attempts):
        coef = [rng.randint(-50, 50) for _ in basis]
        x = [sum((GaussRat(c) * v[k] for c, v in zip(coef, basis) if c), ZERO) for k in range(nvar)]
        p = ExactMatrix.from_flat(m, m, x[:m * m])
        r = ExactMatrix.from_flat(n, n, x[m * m:])
        if det(p).is_zero() or det(r).is_zero():
            continue
        return IloTriple(ExactMatrix.identity(2), p, invert(r))
    raise Singular("no invertible intertwiner found; the pairs look inequivalent")


# ---------------------------------------------------------------- drivers


def _assemble(s: MatrixPair, n: int, record: bool) -> tuple[BlockNormalPair, list[IloTriple], MatrixPair]:
    lifted, steps, data = _two_pass(s, n, record)
    segre, basis = jordan_form(data.regular)
    j = jordan_matrix(segre)
    etas = conjugate(data.row_staircase) + (0,) * data.empty_rows
    eps = conjugate(data.staircase) + (0,) * data.empty_cols
    pair = normal_pair(data.staircase, data.empty_cols, etas, j)
    deficiency = deficiency_of(eps, etas)
    out = BlockNormalPair(pair, j.rows, data.staircase, deficiency, data.empty_cols, segre)
    return out, steps, lifted


def staircase_reduce(s: MatrixPair, n: int | None = None) -> tuple[BlockNormalPair, ReductionTranscript]:
    """Reduce a pair in leading normal form; n defaults to the rank of gamma1."""
    if n is None:
        n = rank(s.gamma1)
    out, steps, lifted = _assemble(s, n, record=True)
    fix = intertwiner(lifted, out.pair)
    if fix.p != ExactMatrix.identity(s.m) or fix.q != ExactMatrix.identity(s.n):
        steps.append(fix)
    return out, ReductionTranscript.of(steps, s.m, s.n)


def reduce_deficient(s: MatrixPair, n: int) -> tuple[BlockNormalPair, ReductionTranscript]:
    """As staircase_reduce, for a leading form with M - n > 0 zero rows."""
    if n >= s.m:
        raise ValueError("reduce_deficient needs zero rows (n < M)")
    return staircase_reduce(s, n)
