"""Named example algebras."""
from __future__ import annotations

import re
from typing import Optional

from .errors import UnknownNameError
from .exactlin import QQ, FieldSpec
from .liealg import LieAlgebra, from_brackets

NAMES = ("EX1", "EXP2", "X5", "SUPα(p,α)", "EXT3", "T2", "H3", "UT2")

# default fields
_DEFAULT = {"EX1": QQ, "EXP2": FieldSpec(2), "X5": FieldSpec(2), "EXT3": FieldSpec(3),
            "T2": FieldSpec(2), "H3": FieldSpec(3), "UT2": FieldSpec(3)}

_SUP = re.compile(r"^SUP(?:α|A|ALPHA)?\(\s*(\d+)\s*,\s*(-?\d+)\s*\)$", re.IGNORECASE)

# derivation D of EXP2: x1 -> x2, x4 -> x3
EXP2_D = {"x1": "x2", "x4": "x3"}


def ex1(field: FieldSpec = QQ) -> LieAlgebra:
    return from_brackets(field, 4, {
        ("x1", "x2"): {"x3": 1},
        ("x1", "x3"): {"x3": 1},
        ("x1", "x4"): {"x4": 1},
        ("x2", "x3"): {"x4": 1},
    }, labels=("x1", "x2", "x3", "x4"), name="EX1")


def exp2(field: FieldSpec = FieldSpec(2)) -> LieAlgebra:
    # [x4,x2]=x1, [x3,x1]=x1, [x3,x2]=x2 written with i < j
    return from_brackets(field, 4, {
        ("x2", "x4"): {"x1": -1},
        ("x1", "x3"): {"x1": -1},
        ("x2", "x3"): {"x2": -1},
    }, labels=("x1", "x2", "x3", "x4"), name="EXP2")


def exp2_derivation(field: FieldSpec = FieldSpec(2)) -> tuple:
    """Matrix (rows, acting on columns) of the derivation ``D`` of EXP2."""
    labels = ("x1", "x2", "x3", "x4")
    m = [[0] * 4 for _ in range(4)]
    for src, dst in EXP2_D.items():
        m[labels.index(dst)][labels.index(src)] = 1
    return tuple(tuple(field(x) for x in r) for r in m)


def x5(field: FieldSpec = FieldSpec(2)) -> LieAlgebra:
    from .constructions import split_extension

    L = exp2(field)
    X = split_extension(L, exp2_derivation(field), label="d", name="X5")
    return X


def sup(p: int, alpha: int) -> LieAlgebra:
    F = FieldSpec(p)
    a = F(alpha)
    if a == 0:
        raise UnknownNameError(f"SUPα({p},{alpha}) needs α != 0 in F{p}")
    return from_brackets(F, 3, {("x", "y"): {"y": 1, "z": 1}, ("x", "z"): {"z": a}},
                         labels=("x", "y", "z"), name=f"SUPα({p},{a})")


def ext3(field: FieldSpec = FieldSpec(3)) -> LieAlgebra:
    return from_brackets(field, 3, {("x", "y"): {"y": 1, "z": 1}, ("x", "z"): {"z": 1}},
                         labels=("x", "y", "z"), name="EXT3")


def t2(field: FieldSpec = FieldSpec(2)) -> LieAlgebra:
    return from_brackets(field, 2, {("x", "y"): {"y": 1}}, labels=("x", "y"), name="T2")


def h3(field: FieldSpec = FieldSpec(3)) -> LieAlgebra:
    return from_brackets(field, 3, {("x", "y"): {"z": 1}}, labels=("x", "y", "z"), name="H3")


def ut2(field: FieldSpec = FieldSpec(3)) -> LieAlgebra:
    return from_brackets(field, 3, {("e11", "e12"): {"e12": 1}, ("e12", "e22"): {"e12": 1}},
                         labels=("e11", "e12", "e22"), name="UT2")


_BUILDERS = {"EX1": ex1, "EXP2": exp2, "X5": x5, "EXT3": ext3, "T2": t2, "H3": h3, "UT2": ut2}


def catalog(name: str, field: Optional[FieldSpec] = None) -> LieAlgebra:
    """Look up a named algebra, optionally over another field."""
    key = name.strip()
    m = _SUP.match(key.replace(" ", ""))
    if m:
        p, a = int(m.group(1)), int(m.group(2))
        if field is not None and field.p != p:
            raise UnknownNameError(f"{name} is defined over F{p}, not {field.name}")
        return sup(p, a)
    builder = _BUILDERS.get(key.upper())
    if builder is None:
        raise UnknownNameError(f"unknown catalog algebra {name!r}; known: {', '.join(NAMES)}")
    return builder(field or _DEFAULT[key.upper()])


def sup_family(p: int) -> list[LieAlgebra]:
    return [sup(p, a) for a in range(1, p)]
