"""Acceptance criteria; each test prints one PASS/FAIL line.

The verdicts are repeated in the pytest terminal summary.
"""

from __future__ import annotations

import time
from itertools import permutations
from pathlib import Path

import pytest

from slocc2mn.canonical import classify
from slocc2mn.cli import EXIT_INEQUIVALENT, EXIT_OK, main, random_params
from slocc2mn.exactmath import ExactMatrix
from slocc2mn.families import count_table, enumerate_families, instantiate
from slocc2mn.state import MatrixPair, parse_state, serialize_state
from slocc2mn.verify import Seed, oracle_disagreements, random_ilo, stabilizer_dimension

pytestmark = pytest.mark.acceptance

DATA = Path(__file__).parent / "data"


def all_families(max_m: int, max_n: int):
    return [f for m in range(1, max_m + 1)
            for n in range(m, min(2 * m, max_n) + 1)
            for f in enumerate_families(m, n)]


def member(f, seed: Seed) -> MatrixPair:
    return instantiate(f, random_params(f, seed))


# [PAPER] counts from the class listings and the summed totals
EXPECTED_COUNTS = {(2, 2): 2, (3, 3): 5, (4, 4): 13, (5, 5): 26, (4, 6): 6, (6, 7): 61}


def test_criterion_1_class_counts(verdict):
    start = time.perf_counter()
    table = count_table(6, 7)
    elapsed = time.perf_counter() - start
    wrong = {k: table.get(k) for k, v in EXPECTED_COUNTS.items() if table.get(k) != v}
    verdict(1, "class counts", not wrong and elapsed < 10.0,
            f"mismatches {wrong}, {elapsed:.2f} s")


def test_criterion_2_orbit_invariance(verdict):
    fams = all_families(6, 7)
    trials = max(500, len(fams))
    seed = Seed(0x5EED)
    start = time.perf_counter()
    failures = []
    for i in range(trials):
        f = fams[i % len(fams)]
        sub = seed.child(i)
        base = member(f, sub.child(0))
        moved = random_ilo(f.m, f.n, sub.child(1)).apply(base)
        if classify(base).encoding != classify(moved).encoding:
            failures.append((f, sub.value))
    elapsed = time.perf_counter() - start
    verdict(2, "orbit invariance", not failures and elapsed < 60.0,
            f"{trials} trials over {len(fams)} families, {len(failures)} failures, {elapsed:.1f} s")


def test_criterion_3_distinctness_and_stabilizers(verdict):
    problems = []
    checked = 0
    for m in range(1, 7):
        for n in range(m, min(2 * m, 7) + 1):
            fams = enumerate_families(m, n)
            encodings = [classify(instantiate(f)).encoding for f in fams]
            if len(set(encodings)) != len(encodings):
                problems.append(f"duplicate encodings at ({m},{n})")
            for k, f in enumerate(fams):
                base = instantiate(f)
                dims = {stabilizer_dimension(random_ilo(m, n, Seed(1000 * k + j)).apply(base))
                        for j in range(20)}
                dims.add(stabilizer_dimension(base))
                checked += 1
                if len(dims) != 1:
                    problems.append(f"({m},{n}) family {k}: stabilizer dims {sorted(dims)}")
    verdict(3, "distinct encodings, constant stabilizer dimension", not problems,
            f"{checked} families x 20 samples, violations {problems[:3]}")


def test_criterion_4_oracle_agreement(verdict):
    fams = all_families(5, 7)
    seed = Seed(0x0AC1E)
    mismatches = []
    for i in range(200):
        f = fams[i % len(fams)]
        sub = seed.child(i)
        s = random_ilo(f.m, f.n, sub.child(1)).apply(member(f, sub.child(0)))
        problems = oracle_disagreements(s)
        if problems:
            mismatches.append((sub.value, problems))
    verdict(4, "oracle agreement", not mismatches, f"200 states, {len(mismatches)} mismatches")


def _rows(*ones):
    """4 x 6 zero matrix with a one at each (row, col) pair given."""
    rows = [[0] * 6 for _ in range(4)]
    for r, c in ones:
        rows[r][c] = 1
    return rows


GAMMA1_46 = [[1 if r == c else 0 for c in range(6)] for r in range(4)]
TAIL = ((2, 4), (3, 5))
# [PAPER] the six 2 x 4 x 6 forms of gamma2, gamma1 = (I_4 | 0) throughout; lambda = 1
LITERAL_FORMS_46 = {
    "(1.1)": _rows(*TAIL),
    "(1.2)": _rows((0, 0), *TAIL),
    "(1.3)": _rows((0, 1), *TAIL),
    "(2.1)": _rows((1, 3), *TAIL),
    "(2.2)": _rows((0, 1), (1, 3), *TAIL),
    "(3)": _rows((0, 2), (1, 3), *TAIL),
}


def _same_up_to_jordan_order(a: ExactMatrix, b: list[list[int]]) -> bool:
    """Equal after one simultaneous permutation of the two leading rows and columns."""
    target = ExactMatrix(b)
    for perm in permutations(range(2)):
        rows, cols = list(perm) + [2, 3], list(perm) + [2, 3, 4, 5]
        if ExactMatrix([[a[r, c] for c in cols] for r in rows]) == target:
            return True
    return False


def test_criterion_5_literal_2x4x6_forms(verdict):
    fams = enumerate_families(4, 6)
    pairs = [instantiate(f) for f in fams]
    unmatched = []
    used = set()
    for name, g2 in LITERAL_FORMS_46.items():
        hit = next((i for i, s in enumerate(pairs) if i not in used
                    and s.gamma1 == ExactMatrix(GAMMA1_46) and _same_up_to_jordan_order(s.gamma2, g2)), None)
        if hit is None:
            unmatched.append(name)
        else:
            used.add(hit)
    verdict(5, "2x4x6 literal forms", not unmatched and len(fams) == 6,
            f"{len(used)}/6 matched, unmatched {unmatched}")


def test_criterion_6_ghz_w_separation(verdict, tmp_path, capsys):
    ghz, w = DATA / "ghz.json", DATA / "w.json"
    codes = [main(["equiv", str(ghz), str(w)])]
    base = parse_state(ghz.read_bytes())
    for i in range(10):
        path = tmp_path / f"ghz_{i}.json"
        path.write_bytes(serialize_state(random_ilo(2, 2, Seed(77 + i)).apply(base)))
        codes.append(main(["equiv", str(ghz), str(path)]))
    capsys.readouterr()
    ok = codes[0] == EXIT_INEQUIVALENT and all(c == EXIT_OK for c in codes[1:])
    verdict(6, "GHZ/W separation", ok, f"exit codes {codes}")
