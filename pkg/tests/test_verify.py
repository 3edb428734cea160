from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc2mn.exactmath import ExactMatrix, UniPoly, det
from slocc2mn.families import enumerate_families, instantiate
from slocc2mn.state import MatrixPair
from slocc2mn.verify import (
    Seed,
    minimal_indices,
    oracle_disagreements,
    orbit_invariance,
    pencil_invariants_oracle,
    random_ilo,
    stabilizer_dimension,
)

GHZ = MatrixPair.of([[1, 0], [0, 0]], [[0, 0], [0, 1]])
W = MatrixPair.of([[0, 1], [1, 0]], [[1, 0], [0, 0]])
T = UniPoly.t()


def test_seed_determinism():
    assert random_ilo(3, 4, Seed(5)) == random_ilo(3, 4, Seed(5))
    assert random_ilo(3, 4, Seed(5)) != random_ilo(3, 4, Seed(6))
    assert Seed(5).child(0) != Seed(5).child(1)
    with pytest.raises(ValueError):
        Seed(-1)
    with pytest.raises(ValueError):
        Seed(2**64)


@given(st.integers(0, 2**64 - 1))
@settings(max_examples=20, deadline=None)
def test_random_ilo_invertible(seed):
    ilo = random_ilo(3, 5, Seed(seed))
    assert not det(ilo.t).is_zero()
    assert not det(ilo.p).is_zero()
    assert not det(ilo.q).is_zero()
    s = MatrixPair.of([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0]],
                      [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 2]])
    assert ilo.inverse().apply(ilo.apply(s)) == s


@pytest.mark.parametrize("s", [GHZ, W], ids=["ghz", "w"])
def test_orbit_invariance_two_qubit(s):
    report = orbit_invariance(s, 100, Seed(9))
    assert report == {"trials": 100, "failures": []}


@pytest.mark.parametrize("index", range(6))
def test_orbit_invariance_2x4x6(index):
    f = enumerate_families(4, 6)[index]
    assert orbit_invariance(instantiate(f), 50, Seed(index))["failures"] == []


# ---------------------------------------------------------------- oracle


def test_oracle_ghz():
    orc = pencil_invariants_oracle(GHZ)
    # gamma1 + t gamma2 = diag(1, t)
    assert orc.invariant_factors == (UniPoly.const(1), T)
    assert orc.infinite_blocks == (1,)
    assert (orc.epsilons, orc.etas) == ((), ())


def test_oracle_w():
    orc = pencil_invariants_oracle(W)
    # det(gamma1 + t gamma2) = -1, all the action is at infinity
    assert [f.degree for f in orc.invariant_factors] == [0, 0]
    assert orc.infinite_blocks == (2,)


def test_oracle_no_divisors():
    # 2 x 1 x 2 pencil (1, t): one column chain, nothing regular
    s = MatrixPair.of([[1, 0]], [[0, 1]])
    orc = pencil_invariants_oracle(s)
    assert orc.infinite_blocks == ()
    assert orc.epsilons == (1,)
    assert oracle_disagreements(s) == []


def test_minimal_indices():
    f = ExactMatrix([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    g = ExactMatrix([[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    assert minimal_indices(f, g) == (2, 2)
    assert minimal_indices(f.T, g.T) == ()
    # the zero column is an index 0
    assert minimal_indices(ExactMatrix([[1, 0]]), ExactMatrix([[0, 0]])) == (0,)


@pytest.mark.parametrize("m,n", [(3, 4), (3, 5), (4, 5), (4, 6)])
def test_oracle_agrees_on_families(m, n):
    for k, f in enumerate(enumerate_families(m, n)):
        s = random_ilo(m, n, Seed(k)).apply(instantiate(f))
        assert oracle_disagreements(s) == []
        assert oracle_disagreements(s.transpose()) == []


# ---------------------------------------------------------------- stabilizer


def test_stabilizer_examples():
    # every (tau, p, q) in gl(2)^3 fixes the zero state
    assert stabilizer_dimension(MatrixPair.of([[0, 0], [0, 0]], [[0, 0], [0, 0]])) == 12
    # [DERIVED] 12 minus orbit dimension: GHZ orbit is open (8), W orbit has codimension 1 (7)
    ghz, w = stabilizer_dimension(GHZ), stabilizer_dimension(W)
    assert (ghz, w) == (4, 5)


@given(st.integers(0, 2**32))
@settings(max_examples=10, deadline=None)
def test_stabilizer_is_orbit_constant(seed):
    for s in (GHZ, W):
        assert stabilizer_dimension(random_ilo(2, 2, Seed(seed)).apply(s)) == stabilizer_dimension(s)
