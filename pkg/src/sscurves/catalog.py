"""Embedded curve catalog, curve-file ingestion, and the closure partition.

The 30 F_11-isomorphism classes of nonhyperelliptic superspecial genus-4
curves are V(Q, P) with Q one of three quadrics and P a cubic.  Over the
algebraic closure they fall into 9 classes, each with a representative
chosen to have the largest F_11-automorphism group.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .errors import ParseError, PartitionMismatch
from .ff import GF11, prime_field
from .mpoly import CURVE_VARS, MultiPoly, parse_poly
from .ortho import QuadraticForm

N1_EQUATIONS = [
    "x^2y + x^2z + 2y^2z + 5y^2w + 9yz^2 + yzw + 4z^3 + 3z^2w + 10zw^2 + w^3",
    "x^2y + x^2z + y^3 + y^2z + 7yz^2 + 4yw^2 + 2z^3 + 9zw^2",
    "x^2y + x^2z + y^3 + 8y^2z + 3yz^2 + 10yw^2 + 10z^3 + 10zw^2",
    "x^2y + x^2z + y^3 + 9y^2z + 2y^2w + 3yz^2 + 3yzw + 4yw^2 + 10z^3 + 2z^2w + 6zw^2",
    "x^2y + x^2z + xz^2 + 10y^2w + 9yz^2 + 9yw^2 + 8z^3 + 8z^2w + 8zw^2 + 3w^3",
    "x^2y + x^2z + xz^2 + 9y^2z + 5y^2w + yzw + 8yw^2 + 3z^3 + 9z^2w + 2zw^2 + 5w^3",
    "x^2y + x^2z + xz^2 + 4y^3 + 2y^2z + 10y^2w + 3yz^2 + 8yzw + 8yw^2 + 8z^3"
    " + 7z^2w + 7zw^2 + 4w^3",
    "x^2y + x^2z + xz^2 + 9y^3 + 6y^2z + 5y^2w + 8yz^2 + 5yzw + 2yw^2 + z^3 + 2z^2w"
    " + 7zw^2 + w^3",
]

N2_EQUATIONS = [
    "x^2y + x^2z + xy^2 + 9xz^2 + 6y^3 + y^2z + 5y^2w + 3yz^2 + 9yw^2 + 8z^3 + z^2w"
    " + 9zw^2 + 6w^3",
    "x^2z + 5y^3 + 4zw^2",
    "x^2y + x^2z + 9y^3 + 8y^2z + 2yz^2 + 4yw^2 + 9z^3 + 4zw^2",
    "8x^2y + 2x^2z + y^3 + 8y^2z + 6y^2w + 9yz^2 + 2yzw + 5yw^2 + 9z^3 + z^2w"
    " + 4zw^2 + w^3",
    "6x^2y + 4x^2z + 6xy^2 + 10xz^2 + 10y^3 + 4y^2z + 3y^2w + 8yz^2 + 6yzw + 9yw^2"
    " + 10z^3 + z^2w + zw^2 + 9w^3",
]

DEGE_EQUATIONS = [
    "x^3 + y^3 + w^3",
    "x^3 + y^3 + 2w^3",
    "x^3 + y^3 + z^3 + 5w^3",
    "x^3 + xw^2 + y^3",
    "x^3 + 2xw^2 + y^3",
    "x^3 + xzw + y^3 + 7z^3 + w^3",
    "x^3 + xw^2 + xyz + y^3 + 5z^3 + 4w^3",
    "x^3 + 6xw^2 + xyz + y^3 + 8z^3 + 8w^3",
    "x^3 + 5y^3 + 2yz^2 + z^3 + zw^2 + 4w^3",
    "x^3 + y^3 + 8yz^2 + z^2w + 2w^3",
    "x^3 + 2y^3 + 2yz^2 + 4z^3 + z^2w + 3w^3",
    "x^3 + 2y^3 + 4yz^2 + z^2w + 10w^3",
    "x^3 + 2y^3 + 4yz^2 + z^3 + z^2w + zw^2 + 7w^3",
    "x^3 + xy^2 + 7xyz + 8xz^2 + 8xzw + 2xw^2 + 2y^3 + 4yz^2 + z^3 + z^2w + zw^2 + 7w^3",
    "x^3 + 5y^3 + 3yz^2 + 5z^3 + z^2w + zw^2 + 10w^3",
    "x^3 + 6y^3 + 2yz^2 + 6z^3 + z^2w + zw^2 + 6w^3",
    "x^3 + 10y^3 + 6yz^2 + 7z^3 + z^2w + zw^2",
]

# Representatives of the 9 classes over the algebraic closure.
CLOSURE_EQUATIONS = [
    ("N1", "x^2y + x^2z + xz^2 + 4y^3 + 2y^2z + 10y^2w + 3yz^2 + 8yzw + 8yw^2"
           " + 8z^3 + 7z^2w + 7zw^2 + 4w^3"),
    ("N1", "x^2y + x^2z + y^3 + y^2z + 7yz^2 + 4yw^2 + 2z^3 + 9zw^2"),
    ("N1", "x^2y + x^2z + xz^2 + 9y^3 + 6y^2z + 5y^2w + 8yz^2 + 5yzw + 2yw^2 + z^3"
           " + 2z^2w + 7zw^2 + w^3"),
    ("Dege", "x^3 + y^3 + 8yz^2 + z^2w + 2w^3"),
    ("Dege", "x^3 + 2y^3 + 4yz^2 + z^2w + 10w^3"),
    ("Dege", "x^3 + xw^2 + y^3"),
    ("Dege", "x^3 + xzw + y^3 + 7z^3 + w^3"),
    ("Dege", "x^3 + xyz + xw^2 + y^3 + 5z^3 + 4w^3"),
    ("Dege", "x^3 + xyz + 6xw^2 + y^3 + 8z^3 + 8w^3"),
]

# Closure class of each F_11 curve.
PARTITION = {
    1: ["N1:1", "N1:6", "N1:7", "N2:1", "N2:3", "N2:5"],
    2: ["N1:2", "N1:4"],
    3: ["N1:3", "N1:5", "N1:8", "N2:2", "N2:4"],
    4: ["Dege:1", "Dege:2", "Dege:9", "Dege:10", "Dege:11", "Dege:15"],
    5: ["Dege:3", "Dege:12", "Dege:13", "Dege:16", "Dege:17"],
    6: ["Dege:4", "Dege:5"],
    7: ["Dege:6"],
    8: ["Dege:7", "Dege:14"],
    9: ["Dege:8"],
}

# Reference values shipped for --check mode.
EXPECTED_RATIONAL = {
    "N1:1": (6, "C6"), "N1:2": (2, "C2"), "N1:3": (8, "D4"), "N1:4": (2, "C2"),
    "N1:5": (3, "C3"), "N1:6": (4, "C2xC2"), "N1:7": (12, "D6"), "N1:8": (24, "S4"),
    "N2:1": (12, "D6"), "N2:2": (4, "C2xC2"), "N2:3": (4, "C2xC2"), "N2:4": (4, "C4"),
    "N2:5": (6, "C6"),
    "Dege:1": (4, "C2xC2"), "Dege:2": (4, "C2xC2"), "Dege:3": (4, "C2xC2"),
    "Dege:4": (2, "C2"), "Dege:5": (2, "C2"), "Dege:6": (1, "1"), "Dege:7": (2, "C2"),
    "Dege:8": (1, "1"), "Dege:9": (6, "C6"), "Dege:10": (12, "D6"), "Dege:11": (12, "D6"),
    "Dege:12": (24, "S4"), "Dege:13": (4, "C4"), "Dege:14": (2, "C2"), "Dege:15": (6, "C6"),
    "Dege:16": (3, "C3"), "Dege:17": (8, "D4"),
}
EXPECTED_CLOSURE = {
    "alc:1": (12, "D6"), "alc:2": (4, "C2xC2"), "alc:3": (24, "S4"),
    "alc:4": (36, "D6xC3"), "alc:5": (72, "S4xC3"), "alc:6": (12, "C12"),
    "alc:7": (3, "C3"), "alc:8": (12, "A4"), "alc:9": (3, "C3"),
}


@dataclass
class CurveRecord:
    id: str
    kind: str
    Q: QuadraticForm
    P: MultiPoly
    closure_class: Optional[int]
    source: str = ""

    @property
    def is_closure(self):
        return self.id.startswith("alc:")

    def to_dict(self):
        d = {"id": self.id, "kind": self.kind,
             "P": [{"coef": c, "exps": list(e)} for e, c in sorted(self.P.terms.items(), reverse=True)]}
        if self.Q.epsilon is not None:
            d["epsilon"] = self.Q.epsilon
        return d


def class_of(curve_id):
    for k, members in PARTITION.items():
        if curve_id in members:
            return k
    return None


def load_catalog(source="embedded", epsilon=None):
    """Curve records: the embedded 30 + 9, or those in a JSON curve file."""
    if source != "embedded":
        return load_curve_file(source)
    out = []
    forms = {k: QuadraticForm(k, epsilon) if k == "N2" else QuadraticForm(k)
             for k in ("N1", "N2", "Dege")}
    for kind, eqs in (("N1", N1_EQUATIONS), ("N2", N2_EQUATIONS), ("Dege", DEGE_EQUATIONS)):
        for i, text in enumerate(eqs, 1):
            cid = f"{kind}:{i}"
            out.append(CurveRecord(cid, kind, forms[kind], parse_poly(text), class_of(cid), text))
    for i, (kind, text) in enumerate(CLOSURE_EQUATIONS, 1):
        out.append(CurveRecord(f"alc:{i}", kind, forms[kind], parse_poly(text), i, text))
    return out


def rational_records(records):
    return [r for r in records if not r.is_closure]


def closure_records(records):
    return [r for r in records if r.is_closure]


def get_record(curve_id, records=None):
    for r in records or load_catalog():
        if r.id == curve_id:
            return r
    raise KeyError(f"unknown curve {curve_id!r}")


def load_curve_file(path):
    """Parse a JSON curve file: a list (or {"curves": [...]}) of
    {id, kind, epsilon?, P: [{coef, exps: [i, j, k, l]}, ...]}."""
    with open(path) as fh:
        text = fh.read()
    return parse_curve_json(text)


def parse_curve_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if isinstance(data, dict):
        data = data.get("curves")
    if not isinstance(data, list):
        raise ParseError("expected a list of curves", field="curves")
    F = GF11
    out = []
    for n, item in enumerate(data):
        where = f"curves[{n}]"
        if not isinstance(item, dict):
            raise ParseError("curve entry must be an object", field=where)
        for key in ("id", "kind", "P"):
            if key not in item:
                raise ParseError(f"missing key {key!r}", field=f"{where}.{key}")
        kind = item["kind"]
        if kind not in ("N1", "N2", "Dege"):
            raise ParseError(f"unknown kind {kind!r}", field=f"{where}.kind")
        eps = item.get("epsilon")
        if eps is not None and kind != "N2":
            raise ParseError("epsilon only applies to N2", field=f"{where}.epsilon")
        try:
            Q = QuadraticForm(kind, eps) if kind == "N2" else QuadraticForm(kind)
        except ValueError as exc:
            raise ParseError(str(exc), field=f"{where}.epsilon") from None
        terms = {}
        if not isinstance(item["P"], list) or not item["P"]:
            raise ParseError("P must be a nonempty list of terms", field=f"{where}.P")
        for t, term in enumerate(item["P"]):
            tw = f"{where}.P[{t}]"
            if not isinstance(term, dict) or "coef" not in term or "exps" not in term:
                raise ParseError("term needs coef and exps", field=tw)
            exps = term["exps"]
            if (not isinstance(exps, list) or len(exps) != 4
                    or not all(isinstance(e, int) and e >= 0 for e in exps)):
                raise ParseError("exps must be four non-negative integers", field=f"{tw}.exps")
            if sum(exps) != 3:
                raise ParseError("P must be a cubic form", field=f"{tw}.exps")
            if not isinstance(term["coef"], int):
                raise ParseError("coef must be an integer", field=f"{tw}.coef")
            key = tuple(exps)
            terms[key] = (terms.get(key, 0) + term["coef"]) % F.p
        P = MultiPoly(F, CURVE_VARS, terms)
        if P.is_zero():
            raise ParseError("P is zero", field=f"{where}.P")
        cid = str(item["id"])
        out.append(CurveRecord(cid, kind, Q, P, class_of(cid), P.to_text()))
    return out


def verify_form_partition(orders: Dict[str, int], strict=True):
    """Per-class sums of 1/|Aut| over the F_11 members; each should be 1."""
    sums = {}
    for k, members in PARTITION.items():
        missing = [m for m in members if m not in orders]
        if missing:
            raise KeyError(f"missing results for {missing}")
        sums[k] = sum((Fraction(1, orders[m]) for m in members), Fraction(0))
    bad = {k: s for k, s in sums.items() if s != 1}
    if bad and strict:
        raise PartitionMismatch(f"reciprocal sums differ from 1: {bad}")
    return sums
