"""Independent oracles and randomized property harnesses."""

from __future__ import annotations

import random
from dataclasses import dataclass

from slocc2mn.canonical import CanonicalForm, classify
from slocc2mn.errors import EigenvalueOutsideField
from slocc2mn.exactmath import ExactMatrix, GaussRat, UniPoly, UniPolyMatrix, det, rank, roots_in_field, smith_form, sparse_rank
from slocc2mn.jordan import SegreSymbol, moebius_canonicalize
from slocc2mn.pencil import INF, ProjectivePoint
from slocc2mn.reduction import IloTriple
from slocc2mn.state import MatrixPair

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


@dataclass(frozen=True)
class Seed:
    value: int

    def __post_init__(self):
        if not 0 <= self.value <= _MASK:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def child(self, index: int) -> Seed:
        """Independent substream for trial ``index``."""
        return Seed((self.value + (index + 1) * _GOLDEN) & _MASK)

    def rng(self) -> random.Random:
        return random.Random(self.value)


def _random_invertible(rng: random.Random, size: int) -> ExactMatrix:
    while True:
        m = ExactMatrix([[GaussRat(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(size)]
                         for _ in range(size)], size)
        if not det(m).is_zero():
            return m


def random_ilo(m: int, n: int, seed: Seed) -> IloTriple:
    rng = seed.rng()
    t = _random_invertible(rng, 2)
    p = _random_invertible(rng, m)
    q = _random_invertible(rng, n)
    return IloTriple(t, p, q)


def orbit_invariance(s: MatrixPair, trials: int, seed: Seed) -> dict:
    expected = classify(s).encoding
    failures = []
    for i in range(trials):
        sub = seed.child(i)
        got = classify(random_ilo(s.m, s.n, sub).apply(s)).encoding
        if got != expected:
            failures.append({"seed": sub.value, "expected": expected, "got": got})
    return {"trials": trials, "failures": failures}


# ---------------------------------------------------------------- pencil oracle


def _block_toeplitz(f: ExactMatrix, g: ExactMatrix, k: int) -> ExactMatrix:
    """Coefficient matrix of (f + t g) x(t) = 0 for x of degree k."""
    m, n = f.rows, f.cols
    rows = [[GaussRat(0)] * ((k + 1) * n) for _ in range((k + 2) * m)]
    for j in range(k + 1):
        for a in range(m):
            for b in range(n):
                rows[j * m + a][j * n + b] = f[a, b]
                rows[(j + 1) * m + a][j * n + b] = g[a, b]
    return ExactMatrix(rows, (k + 1) * n)


def minimal_indices(f: ExactMatrix, g: ExactMatrix) -> tuple[int, ...]:
    """Right minimal indices of f + t g, descending, from kernel dimensions."""
    n = f.cols
    generic = max(rank(f + g.scale(c)) for c in range(f.rows + 2))
    total = n - generic
    counts: list[int] = []  # counts[k] = #{eps <= k}
    prev_dim = 0
    k = 0
    while not counts or counts[-1] < total:
        mat = _block_toeplitz(f, g, k)
        dim = mat.cols - rank(mat)
        counts.append(dim - prev_dim)
        prev_dim = dim
        k += 1
    out = []
    for k, c in enumerate(counts):
        out.extend([k] * (c - (counts[k - 1] if k else 0)))
    return tuple(sorted(out, reverse=True))


def _elementary_divisors(factors: list[UniPoly]) -> dict[GaussRat, list[int]]:
    out: dict[GaussRat, list[int]] = {}
    for d in factors:
        if d.degree <= 0:
            continue
        roots, split = roots_in_field(d)
        if not split:
            raise EigenvalueOutsideField("an invariant factor does not split over Q(i)")
        for r, mult in roots.items():
            out.setdefault(r, []).append(mult)
    return out


@dataclass(frozen=True)
class PencilOracle:
    invariant_factors: tuple[UniPoly, ...]  # of gamma1 + t gamma2
    infinite_blocks: tuple[int, ...]  # elementary divisor degrees of gamma2 + u gamma1 at u = 0
    epsilons: tuple[int, ...]
    etas: tuple[int, ...]

    def raw_segre(self) -> SegreSymbol:
        """Eigenvalue data in the convention gamma2 - lam gamma1 singular."""
        entries = {}
        for t, blocks in _elementary_divisors(list(self.invariant_factors)).items():
            lam = INF if t.is_zero() else ProjectivePoint(-t.inverse())
            entries[lam] = tuple(blocks)
        if self.infinite_blocks:
            entries[ProjectivePoint(GaussRat(0))] = self.infinite_blocks
        return SegreSymbol.from_dict(entries)


def pencil_invariants_oracle(s: MatrixPair) -> PencilOracle:
    g1, g2 = s.gamma1, s.gamma2
    factors = smith_form(UniPolyMatrix.pencil(g1, g2))
    at_inf = smith_form(UniPolyMatrix.pencil(g2, g1))
    inf_blocks = []
    for d in at_inf:
        e = 0
        while e < len(d.coeffs) and d.coeffs[e].is_zero():
            e += 1
        if e:
            inf_blocks.append(e)
    eps = minimal_indices(g1, g2)
    etas = minimal_indices(g1.T, g2.T)
    return PencilOracle(tuple(factors), tuple(sorted(inf_blocks, reverse=True)), eps, etas)


def _conjugate(parts) -> tuple[int, ...]:
    parts = sorted((p for p in parts if p > 0), reverse=True)
    return tuple(sum(1 for p in parts if p > k) for k in range(parts[0])) if parts else ()


def oracle_disagreements(s: MatrixPair, cf: CanonicalForm | None = None) -> list[str]:
    """Differences between classify(s) and the oracle; empty when they agree."""
    cf = classify(s) if cf is None else cf
    orc = pencil_invariants_oracle(s)
    problems = []
    if moebius_canonicalize(orc.raw_segre()) != cf.segre:
        problems.append(f"segre: oracle {moebius_canonicalize(orc.raw_segre()).to_json()} vs {cf.segre.to_json()}")
    eps = tuple(e for e in orc.epsilons if e)
    etas = tuple(e for e in orc.etas if e)
    # replay the orientation choices of classify
    m, n = s.m, s.n
    swapped = m > n
    if swapped:
        m, n, eps, etas = n, m, etas, eps
        m_zero, n_zero = orc.epsilons.count(0), orc.etas.count(0)
    else:
        m_zero, n_zero = orc.etas.count(0), orc.epsilons.count(0)
    if m - m_zero > n - n_zero:
        eps, etas = etas, eps
    if _conjugate(eps) != cf.staircase:
        problems.append(f"column chains: oracle {eps} vs staircase {cf.staircase}")
    if _conjugate(etas) != cf.deficiency.row_staircase:
        problems.append(f"row chains: oracle {etas} vs {cf.deficiency.row_staircase}")
    return problems


# ---------------------------------------------------------------- stabilizer


def stabilizer_dimension(s: MatrixPair) -> int:
    """Nullity of (tau, p, q) -> (tau11 G1 + tau12 G2 + p G1 + G1 q, tau21 G1 + tau22 G2 + p G2 + G2 q)."""
    m, n = s.m, s.n
    g = (s.gamma1, s.gamma2)
    nvar = 4 + m * m + n * n
    rows = []
    for i in range(2):
        for a in range(m):
            for b in range(n):
                row: dict[int, GaussRat] = {}

                def put(idx: int, v: GaussRat) -> None:
                    if not v.is_zero():
                        row[idx] = row[idx] + v if idx in row else v

                put(2 * i, g[0][a, b])
                put(2 * i + 1, g[1][a, b])
                for c in range(m):
                    put(4 + a * m + c, g[i][c, b])
                for c in range(n):
                    put(4 + m * m + c * n + b, g[i][a, c])
                rows.append({k: v for k, v in row.items() if not v.is_zero()})
    return nvar - sparse_rank(rows)
