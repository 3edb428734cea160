from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc2mn.errors import DimensionMismatch, MalformedInput
from slocc2mn.exactmath import ExactMatrix, rank
from slocc2mn.state import (
    MatrixPair,
    is_genuine,
    parse_state,
    reduced_ranks,
    serialize_state,
    state_to_json,
    transpose_orient,
    trim,
)
from slocc2mn.verify import Seed, random_ilo

DATA = Path(__file__).parent / "data"
GHZ = MatrixPair.of([[1, 0], [0, 0]], [[0, 0], [0, 1]])
W = MatrixPair.of([[0, 1], [1, 0]], [[1, 0], [0, 0]])
ZERO2 = MatrixPair.of([[0, 0], [0, 0]], [[0, 0], [0, 0]])
PRODUCT = MatrixPair.of([[1, 0], [0, 0]], [[0, 0], [0, 0]])


def test_reduced_ranks():
    # Gram ranks of GHZ: all three parties fully entangled
    assert reduced_ranks(GHZ).as_tuple() == (2, 2, 2)
    assert reduced_ranks(PRODUCT).as_tuple() == (1, 1, 1)
    assert reduced_ranks(ZERO2).as_tuple() == (0, 0, 0)


def test_genuine():
    assert is_genuine(GHZ)
    assert is_genuine(W)
    assert not is_genuine(ZERO2)
    assert not is_genuine(PRODUCT)


def test_mismatched_shapes():
    with pytest.raises(DimensionMismatch):
        MatrixPair.of([[1, 0]], [[1], [0]])


def test_trim_explicit_zero_column():
    s = MatrixPair.of([[1, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0]])
    tr = trim(s)
    assert (tr.m, tr.n) == (2, 2)
    assert tr.pair == GHZ
    assert not tr.bipartite


def test_trim_empty_planes():
    # ((E|0|0), (0|0|E)) on 2 x 2 x 6 only uses four columns
    e = [[1, 0], [0, 1]]
    z = [[0, 0], [0, 0]]
    g1 = [a + b + c for a, b, c in zip(e, z, z)]
    g2 = [a + b + c for a, b, c in zip(z, z, e)]
    tr = trim(MatrixPair.of(g1, g2))
    assert (tr.m, tr.n) == (2, 4)
    assert rank(tr.pair.gamma1) == 2 and rank(tr.pair.gamma2) == 2


def test_trim_keeps_minimal_pair():
    s = MatrixPair.of([[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]],
                      [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    tr = trim(s)
    assert (tr.m, tr.n) == (4, 6)
    assert tr.pair == s


@given(st.integers(0, 2**64 - 1))
@settings(max_examples=15, deadline=None)
def test_trim_sees_through_ilo(seed):
    s = MatrixPair.of([[1, 0, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0]])
    moved = random_ilo(2, 3, Seed(seed)).apply(s)
    tr = trim(moved)
    assert (tr.m, tr.n) == (2, 2)
    # the dropped columns of gamma_i @ q really vanish
    for g in (moved.gamma1, moved.gamma2):
        assert (g @ tr.q).submatrix(range(2), range(2, 3)).is_zero()


def test_transpose_orient():
    tall = MatrixPair.of([[1, 0], [0, 1], [0, 0]], [[0, 0], [1, 0], [0, 1]])
    out, swapped = transpose_orient(tall)
    assert swapped and (out.m, out.n) == (2, 3)
    assert out.transpose() == tall
    wide = tall.transpose()
    assert transpose_orient(wide) == (wide, False)
    assert transpose_orient(GHZ) == (GHZ, False)


def test_parse_fixture():
    assert parse_state((DATA / "ghz.json").read_bytes()) == GHZ
    assert parse_state((DATA / "w.json").read_bytes()) == W


def test_serialize_round_trip():
    s = MatrixPair.of([["1/2", "0+1i"], ["-3", "2-1/3i"]], [[0, 1], [1, 0]])
    assert parse_state(serialize_state(s)) == s
    assert serialize_state(parse_state(serialize_state(s))) == serialize_state(s)


def test_ragged_rows():
    doc = state_to_json(GHZ)
    doc["gamma2"][1].pop()
    with pytest.raises(DimensionMismatch):
        parse_state(json.dumps(doc))


@pytest.mark.parametrize("mutate", [
    lambda d: d.pop("gamma2"),
    lambda d: d.update(extra=1),
    lambda d: d.update(m=0),
    lambda d: d.update(m=True),
    lambda d: d["gamma1"][0].__setitem__(0, {"re": 1, "im": "0"}),
    lambda d: d["gamma1"][0].__setitem__(0, {"re": "0.5", "im": "0"}),
])
def test_malformed(mutate):
    doc = state_to_json(GHZ)
    mutate(doc)
    with pytest.raises(MalformedInput):
        parse_state(json.dumps(doc))


def test_not_json():
    with pytest.raises(MalformedInput):
        parse_state(b'{"m": 2, "n"')
    with pytest.raises(MalformedInput):
        parse_state(b"\xff\xfe")


def test_transform_is_an_action():
    a, b = random_ilo(2, 3, Seed(1)), random_ilo(2, 3, Seed(2))
    s = MatrixPair.of([[1, 0, 0], [0, 1, 0]], [[0, 1, 0], [0, 0, 1]])
    assert b.apply(a.apply(s)) == a.then(b).apply(s)
    assert a.inverse().apply(a.apply(s)) == s
    assert ExactMatrix.identity(2) == a.t @ a.inverse().t
