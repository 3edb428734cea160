from __future__ import annotations

import dataclasses
import json
from pathlib import Path

import pytest

from slocc2mn import cli
from slocc2mn.canonical import classify, parse_cf
from slocc2mn.cli import (
    EXIT_FIELD,
    EXIT_INEQUIVALENT,
    EXIT_INPUT,
    EXIT_OK,
    EXIT_RANGE,
    EXIT_VERIFY,
    main,
)
from slocc2mn.families import enumerate_families, instantiate
from slocc2mn.state import parse_state, serialize_state
from slocc2mn.verify import Seed, random_ilo

DATA = Path(__file__).parent / "data"
GHZ, W, SQRT2 = (str(DATA / f) for f in ("ghz.json", "w.json", "sqrt2.json"))


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_classify(capsys):
    code, out = run(capsys, "classify", GHZ)
    assert code == EXIT_OK
    cf = parse_cf(out)
    assert cf == classify(parse_state(Path(GHZ).read_bytes()))


def test_classify_truncated(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_bytes(Path(GHZ).read_bytes()[:-5])
    assert run(capsys, "classify", str(bad))[0] == EXIT_INPUT


def test_classify_outside_field(capsys):
    assert run(capsys, "classify", SQRT2)[0] == EXIT_FIELD


def test_equiv(capsys, tmp_path):
    moved = tmp_path / "moved.json"
    moved.write_bytes(serialize_state(random_ilo(2, 2, Seed(4)).apply(parse_state(Path(GHZ).read_bytes()))))
    code, out = run(capsys, "equiv", GHZ, str(moved))
    assert code == EXIT_OK and out.startswith("EQUIVALENT")
    code, out = run(capsys, "equiv", GHZ, W)
    assert code == EXIT_INEQUIVALENT and out.startswith("INEQUIVALENT")
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert run(capsys, "equiv", GHZ, str(bad))[0] == EXIT_INPUT


@pytest.mark.parametrize("m,n,count", [(4, 6, 6), (6, 7, 61), (2, 2, 2)])
def test_enumerate_footer(capsys, m, n, count):
    code, out = run(capsys, "enumerate", str(m), str(n))
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[-1] == f"count: {count}"
    assert len(lines) == count + 2


def test_enumerate_json(capsys):
    code, out = run(capsys, "enumerate", "3", "4", "--json")
    (doc,) = json.loads(out)
    assert code == EXIT_OK and doc["count"] == 5 == len(doc["families"])


def test_enumerate_out_of_range(capsys):
    assert run(capsys, "enumerate", "2", "5")[0] == EXIT_RANGE


def test_random(capsys):
    code, out = run(capsys, "random", "2", "2", "--class", "0", "--seed", "7")
    assert code == EXIT_OK
    f = enumerate_families(2, 2)[0]
    assert classify(parse_state(out)).encoding == classify(instantiate(f)).encoding
    assert run(capsys, "random", "2", "2", "--class", "0", "--seed", "7")[1] == out
    assert run(capsys, "random", "2", "2", "--class", "99")[0] == EXIT_RANGE


def test_bad_arguments(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["random", "2", "2", "--class", "0", "--seed", "-1"])
    assert exc.value.code == EXIT_INPUT
    capsys.readouterr()


def test_verify_zero_trials(capsys):
    code, out = run(capsys, "verify", "--trials", "0")
    assert code == EXIT_OK
    assert json.loads(out) == {"trials": 0, "failures": []}


def test_verify_small(capsys):
    code, out = run(capsys, "verify", "--trials", "40", "--seed", "3")
    assert code == EXIT_OK
    assert json.loads(out) == {"trials": 40, "failures": []}


def test_verify_catches_injected_bug(capsys, monkeypatch):
    calls = {"n": 0}

    def broken(s):
        cf = classify(s)
        calls["n"] += 1
        # every second call is a moved state
        if calls["n"] % 2 == 0:
            return dataclasses.replace(cf, staircase=cf.staircase + (9,))
        return cf

    monkeypatch.setattr(cli, "classify", broken)
    code, out = run(capsys, "verify", "--trials", "3")
    assert code == EXIT_VERIFY
    assert len(json.loads(out)["failures"]) == 3


def test_stab_dim(capsys):
    assert run(capsys, "stab-dim", GHZ) == (EXIT_OK, "4\n")
    assert run(capsys, "stab-dim", W) == (EXIT_OK, "5\n")
