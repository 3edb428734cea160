from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slocc2mn.canonical import (
    canonical_pair,
    classify,
    equivalent,
    parse_cf,
    render,
    signature_from_form,
)
from slocc2mn.errors import MalformedInput
from slocc2mn.pencil import PencilSignature
from slocc2mn.state import MatrixPair
from slocc2mn.verify import Seed, random_ilo

GHZ = MatrixPair.of([[1, 0], [0, 0]], [[0, 0], [0, 1]])
W = MatrixPair.of([[0, 1], [1, 0]], [[1, 0], [0, 0]])
FORM_3 = MatrixPair.of(
    [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]],
    [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
)
ZERO2 = MatrixPair.of([[0, 0], [0, 0]], [[0, 0], [0, 0]])


def diag(a, b):
    return MatrixPair.of([[1, 0], [0, 1]], [[a, 0], [0, b]])


def test_ghz_form():
    cf = classify(GHZ)
    assert cf.signature == PencilSignature(2, 1)
    assert cf.staircase == ()
    assert cf.segre.to_json() == [["0", [1]], ["inf", [1]]]
    assert cf.genuine


def test_w_form():
    cf = classify(W)
    assert cf.signature == PencilSignature(2, 1)
    assert cf.segre.to_json() == [["0", [2]]]


def test_pure_kronecker_form():
    cf = classify(FORM_3)
    assert (cf.staircase, cf.segre.to_json()) == ((2, 2), [])
    assert cf.deficiency.zero_rows == 0


def test_zero_state():
    cf = classify(ZERO2)
    assert (cf.m_trim, cf.n_trim, cf.genuine) == (0, 0, False)


def test_equivalence_examples():
    assert equivalent(diag(5, 7), diag(2, 11))
    assert equivalent(GHZ, diag(5, 7))
    assert not equivalent(GHZ, W)


def test_transpose_classifies_alike():
    assert classify(FORM_3.transpose()).staircase == classify(FORM_3).staircase


@given(st.integers(0, 2**32))
@settings(max_examples=20, deadline=None)
def test_orbit_constant(seed):
    for s in (GHZ, W, FORM_3):
        moved = random_ilo(s.m, s.n, Seed(seed)).apply(s)
        assert classify(moved) == classify(s)


@pytest.mark.parametrize("s", [GHZ, W, FORM_3, ZERO2], ids=["ghz", "w", "form3", "zero"])
def test_render_round_trip(s):
    cf = classify(s)
    assert parse_cf(render(cf)) == cf
    assert json.loads(render(cf))["encoding"] == cf.encoding


@pytest.mark.parametrize("s", [GHZ, W, FORM_3], ids=["ghz", "w", "form3"])
def test_signature_from_form(s):
    cf = classify(s)
    assert signature_from_form(cf) == cf.signature
    back = classify(canonical_pair(cf))
    assert (back.signature, back.staircase, back.deficiency, back.segre) == \
        (cf.signature, cf.staircase, cf.deficiency, cf.segre)


def _mutated(mutate) -> str:
    doc = json.loads(render(classify(GHZ)))
    mutate(doc)
    return json.dumps(doc)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d.pop("segre"),
    lambda d: d.update(encoding="{}"),
    lambda d: d["deficiency"].update(c="nonzero"),
    lambda d: d.update(sig=[2]),
    lambda d: d.update(m=-1),
    lambda d: d.update(genuine=1),
    lambda d: d.update(segre=[["x", [1]]]),
], ids=["extra", "missing", "encoding", "case-flag", "sig", "negative", "genuine", "segre"])
def test_parse_cf_rejects(mutate):
    with pytest.raises(MalformedInput):
        parse_cf(_mutated(mutate))


def test_parse_cf_not_json():
    with pytest.raises(MalformedInput):
        parse_cf(b"[1, 2")
    with pytest.raises(MalformedInput):
        parse_cf(b"[]")
