import json

import pytest
from hypothesis import given

from conftest import small_algebras
from solvlie.catalog import catalog
from solvlie.errors import AntisymmetryViolation, JacobiViolation, NotPrimeError, ParseError
from solvlie.serialize import dumps, fingerprint, load, loads, to_doc


@pytest.mark.parametrize("name", ["EX1", "EXP2", "X5", "EXT3", "SUP(5,3)"])
def test_catalog_roundtrip(name):
    L = catalog(name)
    text = dumps(L)
    M = loads(text)
    assert M.key == L.key
    assert dumps(M) == text


@given(small_algebras(max_dim=5))
def test_random_roundtrip(L):
    assert dumps(loads(dumps(L))) == dumps(L)
    assert fingerprint(loads(dumps(L))) == fingerprint(L)


def test_canonical_ordering():
    doc = to_doc(catalog("X5"))
    pairs = [(e["i"], e["j"]) for e in doc["brackets"]]
    assert pairs == sorted(pairs)
    for e in doc["brackets"]:
        keys = [int(k) for k in e["coeffs"]]
        assert keys == sorted(keys) and all(e["coeffs"].values())


def test_ex1_rational_scalars():
    doc = to_doc(catalog("EX1"))
    assert doc["field"] == "Q"
    assert all(isinstance(v, str) for e in doc["brackets"] for v in e["coeffs"].values())


def test_fraction_scalars_parse():
    L = loads(json.dumps({"field": "Q", "dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"1": "3/4"}}]}))
    assert L.bracket((1, 0), (0, 1)) == (0, L.field("3/4"))


def test_exp2_modulus():
    doc = to_doc(catalog("EXP2"))
    assert loads(json.dumps(doc)).field.p == 2
    doc["field"] = {"Fp": 4}
    with pytest.raises(NotPrimeError):
        loads(json.dumps(doc))


def test_alternating_entry_rejected():
    text = json.dumps({"field": {"Fp": 3}, "dim": 2, "brackets": [{"i": 0, "j": 0, "coeffs": {"1": "1"}}]})
    with pytest.raises(AntisymmetryViolation):
        loads(text)


def test_jacobi_error_forwarded():
    text = json.dumps({"field": "Q", "dim": 3, "brackets": [
        {"i": 0, "j": 1, "coeffs": {"2": "1"}},
        {"i": 0, "j": 2, "coeffs": {"0": "1"}},
        {"i": 1, "j": 2, "coeffs": {"0": "1"}},
    ]})
    with pytest.raises(JacobiViolation) as ei:
        loads(text)
    assert ei.value.triple == (0, 1, 2)


@pytest.mark.parametrize("text,field", [
    ('{"field": "Q", "dim": 2}', "brackets"),
    ('{"field": "Q", "dim": -1, "brackets": []}', "dim"),
    ('{"field": "R", "dim": 1, "brackets": []}', "field"),
    ('{"field": "Q", "dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": {}}]}', "brackets"),
    ('{"field": "Q", "dim": 2, "extra": 1, "brackets": []}', "extra"),
])
def test_parse_errors_name_the_field(text, field):
    with pytest.raises(ParseError) as ei:
        loads(text)
    assert ei.value.field == field


def test_syntax_error_reports_line():
    with pytest.raises(ParseError) as ei:
        loads('{\n "field": "Q",\n "dim": 2\n "brackets": []}')
    assert ei.value.line == 4


def test_parse_error_line_for_bad_dim():
    text = '{\n "field": "Q",\n "dim": "two",\n "brackets": []\n}'
    with pytest.raises(ParseError) as ei:
        loads(text)
    assert ei.value.line == 3


def test_load_from_file(tmp_path):
    p = tmp_path / "t2.json"
    p.write_text(dumps(catalog("T2")))
    assert load(p).key == catalog("T2").key
