"""Class labels: classification, comparison and JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass

from slocc2mn.errors import MalformedInput
from slocc2mn.jordan import SegreSymbol, jordan_form, jordan_matrix, make_finite, moebius_canonicalize
from slocc2mn.pencil import PencilSignature, generic_rank, signature
from slocc2mn.reduction import (
    DeficiencyInfo,
    conjugate,
    deficiency_of,
    kronecker_data,
    normal_pair,
    normalize_leading,
)
from slocc2mn.state import MatrixPair, is_genuine, transpose_orient, trim

_FIELDS = ("m", "n", "m_trim", "n_trim", "genuine", "sig", "staircase", "deficiency", "segre")


@dataclass(frozen=True)
class CanonicalForm:
    m: int
    n: int
    m_trim: int
    n_trim: int
    genuine: bool
    signature: PencilSignature
    staircase: tuple[int, ...]
    deficiency: DeficiencyInfo
    segre: SegreSymbol

    def fields_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "m_trim": self.m_trim,
            "n_trim": self.n_trim,
            "genuine": self.genuine,
            "sig": [self.signature.n, self.signature.l],
            "staircase": list(self.staircase),
            "deficiency": self.deficiency.to_json(),
            "segre": self.segre.to_json(),
        }

    @property
    def encoding(self) -> str:
        return json.dumps(self.fields_json(), sort_keys=True, separators=(",", ":"))

    def skeleton(self):
        """Everything except the concrete eigenvalue points."""
        return (self.m, self.n, self.m_trim, self.n_trim, self.genuine, self.signature,
                self.staircase, self.deficiency, self.segre.shape)

    def to_json(self) -> dict:
        out = self.fields_json()
        out["encoding"] = self.encoding
        return out

    @property
    def epsilons(self) -> tuple[int, ...]:
        return conjugate(self.staircase)

    @property
    def etas(self) -> tuple[int, ...]:
        return conjugate(self.deficiency.row_staircase)


def classify(s: MatrixPair) -> CanonicalForm:
    m, n = s.m, s.n
    genuine = is_genuine(s)
    oriented, _ = transpose_orient(s)
    tr = trim(oriented)
    work, _ = transpose_orient(tr.pair)
    if work.m == 0:
        return CanonicalForm(m, n, tr.m, tr.n, genuine, PencilSignature(0, 0), (),
                             DeficiencyInfo(0, 0, 0), SegreSymbol())
    rank, witness = generic_rank(work)
    lead, _ = normalize_leading(work, witness)
    data = kronecker_data(lead, rank)
    raw, _ = jordan_form(data.regular)
    segre = moebius_canonicalize(raw)
    etas = conjugate(data.row_staircase)
    deficiency = deficiency_of(conjugate(data.staircase), etas)
    sig = PencilSignature(rank, rank - segre.max_blocks())
    return CanonicalForm(m, n, tr.m, tr.n, genuine, sig, data.staircase, deficiency, segre)


def equivalent(a: MatrixPair, b: MatrixPair) -> bool:
    return classify(a).encoding == classify(b).encoding


def canonical_pair(cf: CanonicalForm) -> MatrixPair:
    """The trimmed block normal pair of a form; finite eigenvalues only after a shift."""
    return normal_pair(cf.staircase, 0, cf.etas, jordan_matrix(_finite_segre(cf.segre)))


def _finite_segre(segre: SegreSymbol) -> SegreSymbol:
    return make_finite(segre)[0]


def signature_from_form(cf: CanonicalForm) -> PencilSignature:
    """Probe the canonical pair at its eigenvalue points."""
    if cf.m_trim == 0:
        return PencilSignature(0, 0)
    return signature(canonical_pair(cf), _finite_segre(cf.segre).points)


def render(cf: CanonicalForm) -> bytes:
    return json.dumps(cf.to_json(), sort_keys=True, separators=(",", ":")).encode("utf-8")


def _require_int(doc: dict, key: str) -> int:
    v = doc[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise MalformedInput(f"{key}: expected a non-negative integer")
    return v


def _int_list(v, key: str) -> tuple[int, ...]:
    if not isinstance(v, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
        raise MalformedInput(f"{key}: expected a list of integers")
    return tuple(v)


def parse_cf(data: bytes | str) -> CanonicalForm:
    try:
        doc = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedInput("canonical form must be a JSON object")
    expected = set(_FIELDS) | {"encoding"}
    if set(doc) != expected:
        missing, extra = expected - set(doc), set(doc) - expected
        raise MalformedInput(f"canonical form fields: missing {sorted(missing)}, unexpected {sorted(extra)}")
    try:
        sig = _int_list(doc["sig"], "sig")
        if len(sig) != 2:
            raise MalformedInput("sig: expected [n, l]")
        dj = doc["deficiency"]
        dkeys = {"zero_rows", "c", "r", "c_rank", "r_rank", "row_staircase"}
        if not isinstance(dj, dict) or set(dj) != dkeys:
            raise MalformedInput(f"deficiency: expected fields {sorted(dkeys)}")
        deficiency = DeficiencyInfo(_require_int(dj, "zero_rows"), _require_int(dj, "c_rank"),
                                    _require_int(dj, "r_rank"), _int_list(dj["row_staircase"], "row_staircase"))
        if (dj["c"], dj["r"]) != (deficiency.c_case, deficiency.r_case):
            raise MalformedInput("deficiency: case flags disagree with ranks")
        if not isinstance(doc["genuine"], bool):
            raise MalformedInput("genuine: expected a boolean")
        cf = CanonicalForm(
            _require_int(doc, "m"), _require_int(doc, "n"),
            _require_int(doc, "m_trim"), _require_int(doc, "n_trim"),
            doc["genuine"], PencilSignature(*sig),
            _int_list(doc["staircase"], "staircase"), deficiency,
            SegreSymbol.from_json(doc["segre"]),
        )
    except MalformedInput:
        raise
    except (ValueError, TypeError, AttributeError, KeyError) as exc:
        raise MalformedInput(f"canonical form: {exc}") from None
    if doc["encoding"] != cf.encoding:
        raise MalformedInput("encoding does not match the other fields")
    return cf
