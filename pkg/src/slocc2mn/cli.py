"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from slocc2mn.canonical import classify, render
from slocc2mn.errors import DimensionOutOfRange, EigenvalueOutsideField, MalformedInput
from slocc2mn.exactmath import GaussRat
from slocc2mn.families import ClassFamily, enumerate_families, instantiate
from slocc2mn.state import MatrixPair, parse_state, serialize_state
from slocc2mn.verify import Seed, oracle_disagreements, random_ilo, stabilizer_dimension

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_INPUT = 2
EXIT_FIELD = 3
EXIT_RANGE = 4
EXIT_VERIFY = 5

VERIFY_MAX_M, VERIFY_MAX_N, ORACLE_MAX_M = 6, 7, 5


@dataclass
class CliConfig:
    command: str
    input_paths: list[str] = field(default_factory=list)
    seed: Seed | None = None
    json_flag: bool = False
    trials: int | None = None
    m: int | None = None
    n: int | None = None
    class_index: int | None = None


def _read_state(path: str) -> MatrixPair:
    try:
        if path == "-":
            data = sys.stdin.buffer.read()
        else:
            with open(path, "rb") as fh:
                data = fh.read()
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None
    try:
        return parse_state(data)
    except MalformedInput as exc:
        raise MalformedInput(f"{path}: {exc}") from None


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_classify(cfg: CliConfig) -> int:
    cf = classify(_read_state(cfg.input_paths[0]))
    _out(render(cf).decode())
    return EXIT_OK


def cmd_equiv(cfg: CliConfig) -> int:
    a, b = (classify(_read_state(p)) for p in cfg.input_paths)
    same = a.encoding == b.encoding
    _out("EQUIVALENT" if same else "INEQUIVALENT")
    _out(a.encoding)
    _out(b.encoding)
    return EXIT_OK if same else EXIT_INEQUIVALENT


def _describe(f: ClassFamily) -> str:
    shape = " ".join("(" + ",".join(map(str, p)) + ")" for p in f.shape) or "-"
    return (f"chains {list(f.epsilons)} / {list(f.etas)}  staircase {list(f.staircase)}  "
            f"segre {shape}  params {f.param_count}")


def cmd_enumerate(cfg: CliConfig) -> int:
    fams = enumerate_families(cfg.m, cfg.n)
    if cfg.json_flag:
        forms = [classify(instantiate(f)).to_json() for f in fams]
        _out(json.dumps([{"m": cfg.m, "n": cfg.n, "count": len(fams), "families": forms}],
                        separators=(",", ":")))
        return EXIT_OK
    _out(f"2 x {cfg.m} x {cfg.n} genuine families")
    for i, f in enumerate(fams):
        _out(f"{i:4d}  {_describe(f)}")
    _out(f"count: {len(fams)}")
    return EXIT_OK


def random_params(f: ClassFamily, seed: Seed) -> list[GaussRat]:
    rng = seed.rng()
    taken = {GaussRat(0), GaussRat(1)}
    out = []
    while len(out) < f.param_count:
        x = GaussRat(rng.randint(-9, 9), rng.randint(-9, 9))
        if x not in taken:
            taken.add(x)
            out.append(x)
    return out


def random_member(f: ClassFamily, seed: Seed) -> MatrixPair:
    base = instantiate(f, random_params(f, seed.child(0)))
    return random_ilo(f.m, f.n, seed.child(1)).apply(base)


def cmd_random(cfg: CliConfig) -> int:
    fams = enumerate_families(cfg.m, cfg.n)
    if not 0 <= cfg.class_index < len(fams):
        raise DimensionOutOfRange(f"class index {cfg.class_index} outside 0..{len(fams) - 1}")
    _out(serialize_state(random_member(fams[cfg.class_index], cfg.seed)).decode())
    return EXIT_OK


def verify_report(trials: int | None, seed: Seed) -> dict:
    fams = [f for m in range(1, VERIFY_MAX_M + 1)
            for n in range(m, min(2 * m, VERIFY_MAX_N) + 1)
            for f in enumerate_families(m, n)]
    total = len(fams) if trials is None else trials
    failures = []
    for i in range(total):
        f = fams[i % len(fams)]
        sub = seed.child(i)
        base = instantiate(f, random_params(f, sub.child(0)))
        moved = random_ilo(f.m, f.n, sub.child(1)).apply(base)
        expected, got = classify(base), classify(moved)
        if expected.encoding != got.encoding:
            failures.append({"seed": sub.value, "expected": expected.encoding, "got": got.encoding})
        elif f.m <= ORACLE_MAX_M:
            problems = oracle_disagreements(moved, got)
            if problems:
                failures.append({"seed": sub.value, "expected": "oracle agreement", "got": "; ".join(problems)})
    return {"trials": total, "failures": failures}


def cmd_verify(cfg: CliConfig) -> int:
    report = verify_report(cfg.trials, cfg.seed)
    _out(json.dumps(report, separators=(",", ":")))
    return EXIT_VERIFY if report["failures"] else EXIT_OK


def cmd_stab_dim(cfg: CliConfig) -> int:
    _out(str(stabilizer_dimension(_read_state(cfg.input_paths[0]))))
    return EXIT_OK


def _seed(text: str) -> Seed:
    try:
        return Seed(int(text, 0))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a 64-bit unsigned integer: {text!r}") from None


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = -1
    if v < 0:
        raise argparse.ArgumentTypeError(f"not a non-negative integer: {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="slocc2mn", description="SLOCC classes of 2 x M x N states")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", help="print the canonical form of a state")
    p.add_argument("path")
    p = sub.add_parser("equiv", help="test two states for SLOCC equivalence")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p = sub.add_parser("enumerate", help="list the genuine class families of 2 x m x n")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("random", help="a random member of one family")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--class", dest="class_index", type=int, required=True)
    p.add_argument("--seed", type=_seed, default=Seed(0))
    p = sub.add_parser("verify", help="orbit invariance and oracle checks over all families")
    p.add_argument("--trials", type=_count, default=None)
    p.add_argument("--seed", type=_seed, default=Seed(0))
    p = sub.add_parser("stab-dim", help="stabilizer dimension of a state")
    p.add_argument("path")
    return parser


def parse_config(argv: list[str] | None) -> CliConfig:
    args = build_parser().parse_args(argv)
    cfg = CliConfig(args.command)
    if args.command in ("classify", "stab-dim"):
        cfg.input_paths = [args.path]
    elif args.command == "equiv":
        cfg.input_paths = [args.path_a, args.path_b]
    elif args.command == "enumerate":
        cfg.m, cfg.n, cfg.json_flag = args.m, args.n, args.json
    elif args.command == "random":
        cfg.m, cfg.n, cfg.class_index, cfg.seed = args.m, args.n, args.class_index, args.seed
    elif args.command == "verify":
        cfg.trials, cfg.seed = args.trials, args.seed
    return cfg


COMMANDS = {
    "classify": cmd_classify,
    "equiv": cmd_equiv,
    "enumerate": cmd_enumerate,
    "random": cmd_random,
    "verify": cmd_verify,
    "stab-dim": cmd_stab_dim,
}


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    try:
        return COMMANDS[cfg.command](cfg)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EigenvalueOutsideField as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIELD
    except DimensionOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RANGE


if __name__ == "__main__":
    sys.exit(main())
