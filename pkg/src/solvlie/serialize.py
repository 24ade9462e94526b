"""Canonical JSON form of structure constants.

A document looks like::

    {"field": {"Fp": 2}, "dim": 2, "labels": ["x", "y"],
     "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "1"}}]}

Indices are 0-based, only ``i < j`` is listed, zero products are omitted.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import NotPrimeError, ParseError
from .exactlin import QQ, FieldSpec
from .liealg import LieAlgebra


def scalar_str(x) -> str:
    return str(x)


def field_doc(F: FieldSpec):
    return "Q" if F.p is None else {"Fp": F.p}


def to_doc(L: LieAlgebra) -> dict:
    entries = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            v = L.table[i][j]
            coeffs = {str(k): scalar_str(c) for k, c in enumerate(v) if c}
            if coeffs:
                entries.append({"i": i, "j": j, "coeffs": coeffs})
    return {"field": field_doc(L.field), "dim": L.dim, "labels": list(L.labels), "brackets": entries}


def dumps(L: LieAlgebra) -> str:
    """Byte-stable serialization: fixed key order, entries sorted by (i, j)."""
    return json.dumps(to_doc(L), ensure_ascii=False, indent=1) + "\n"


def _line_of(text: str, needle: str) -> int | None:
    for n, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return n
    return None


def parse_field(obj) -> FieldSpec:
    if obj == "Q" or obj == "QQ":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"Fp"}:
        p = obj["Fp"]
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError(f"modulus {p!r} is not an integer", field="field")
        return FieldSpec(p)
    if isinstance(obj, str):
        return FieldSpec.parse(obj)
    raise ParseError(f"cannot read field {obj!r}", field="field")


def _scalar(F: FieldSpec, raw: Any, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise ParseError(f"scalar {raw!r} must be a string or integer", field=where)
    try:
        return F(Fraction(raw) if isinstance(raw, str) else raw)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad scalar {raw!r}: {e}", field=where) from None


def from_doc(doc: dict, text: str = "") -> LieAlgebra:
    def fail(msg, key):
        raise ParseError(msg, line=_line_of(text, f'"{key}"') if text else None, field=key)

    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("field", "dim", "brackets"):
        if key not in doc:
            fail(f"missing required field {key!r}", key)
    unknown = set(doc) - {"field", "dim", "labels", "brackets", "name"}
    if unknown:
        fail(f"unknown fields {sorted(unknown)}", sorted(unknown)[0])
    try:
        F = parse_field(doc["field"])
    except NotPrimeError:
        raise
    except ParseError as e:
        raise ParseError(str(e), line=_line_of(text, '"field"') if text else None, field="field") from None
    n = doc["dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        fail(f"dim must be a non-negative integer, got {n!r}", "dim")
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n
                               or not all(isinstance(s, str) for s in labels) or len(set(labels)) != n):
        fail("labels must be a list of dim distinct strings", "labels")
    if not isinstance(doc["brackets"], list):
        fail("brackets must be a list", "brackets")
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    seen = set()
    for idx, entry in enumerate(doc["brackets"]):
        where = f"brackets[{idx}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "coeffs"}:
            fail(f"{where} must have exactly the keys i, j, coeffs", "brackets")
        i, j = entry["i"], entry["j"]
        if not all(isinstance(t, int) and not isinstance(t, bool) and 0 <= t < n for t in (i, j)):
            fail(f"{where}: indices out of range", "brackets")
        if (i, j) in seen:
            fail(f"{where}: duplicate entry for ({i}, {j})", "brackets")
        seen.add((i, j))
        coeffs = entry["coeffs"]
        if not isinstance(coeffs, dict):
            fail(f"{where}: coeffs must be an object", "brackets")
        vec = [0] * n
        for k, raw in coeffs.items():
            try:
                kk = int(k)
            except ValueError:
                fail(f"{where}: coefficient key {k!r} is not an index", "brackets")
            if not 0 <= kk < n:
                fail(f"{where}: coefficient index {kk} out of range", "brackets")
            vec[kk] = _scalar(F, raw, where)
        table[i][j] = vec
        if i != j:
            if j < i:
                fail(f"{where}: entries must have i < j", "brackets")
            table[j][i] = [F(-c) for c in vec]
    return LieAlgebra(F, table, labels=labels, name=doc.get("name"))


def loads(text: str) -> LieAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"syntax error: {e.msg}", line=e.lineno) from None
    return from_doc(doc, text)


def load(path) -> LieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(L: LieAlgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(L))


def fingerprint(L: LieAlgebra) -> str:
    """Short stable identifier derived from the canonical serialization."""
    import hashlib

    doc = to_doc(L)
    doc["labels"] = None
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]
