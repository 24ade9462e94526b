"""Reference values for the named examples, evaluated against fresh computations."""
from __future__ import annotations

from dataclasses import dataclass

from .catalog import catalog, exp2_derivation, sup
from .chief import chief_series
from .classify import is_extreme, is_minimal_non_N, structure_flags
from .errors import UnknownNameError
from .liealg import LieAlgebra, Derivation, core, derivations, is_derivation, is_ideal, quotient
from .series import (
    compatibility_index,
    frattini,
    lower_series,
    maximal_spaces,
    nilpotent_length,
    nilpotent_length_of,
    nilradical,
    upper_nilpotent_series,
    upper_nilpotent_series_of,
)


@dataclass(frozen=True)
class GoldenCheck:
    label: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def as_dict(self) -> dict:
        return {"label": self.label, "expected": self.expected, "actual": self.actual, "ok": self.ok}


@dataclass(frozen=True)
class Golden:
    name: str
    citation: str
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {"name": self.name, "citation": self.citation, "ok": self.ok,
                "checks": [c.as_dict() for c in self.checks]}


def _sp(L: LieAlgebra, *labels):
    return L.spanned(*labels).pretty(L.labels)


def ex1_golden() -> Golden:
    L = catalog("EX1")
    N = upper_nilpotent_series(L)
    G = lower_series(L).lower_nilpotent
    pr = lambda S: S.pretty(L.labels)
    checks = (
        GoldenCheck("N_1", _sp(L, "x2", "x3", "x4"), pr(N[1])),
        GoldenCheck("N_2", _sp(L, "x1", "x2", "x3", "x4"), pr(N[2]) if len(N) > 2 else None),
        GoldenCheck("Gamma_1", _sp(L, "x3", "x4"), pr(G[1])),
        GoldenCheck("Gamma_2", "0", pr(G[2]) if len(G) > 2 else None),
        GoldenCheck("n(L)", 2, nilpotent_length(L)),
        GoldenCheck("Gamma_1 != N_1", True, G[1] != N[1]),
        GoldenCheck("derived length", 2, L.derived_length),
    )
    return Golden("EX1", "EX1 over Q: upper and lower nilpotent series differ", checks)


def exp2_golden() -> Golden:
    L = catalog("EXP2")
    X = catalog("X5")
    D = Derivation(L, exp2_derivation())
    N = nilradical(L)
    DN = D.image(N)
    pr = lambda S: S.pretty(L.labels)
    emb = lambda S: X.span([tuple(v) + (0,) for v in S.basis])
    checks = (
        GoldenCheck("N(L)", _sp(L, "x1", "x2", "x4"), pr(N)),
        GoldenCheck("phi(L)", _sp(L, "x1"), pr(frattini(L))),
        GoldenCheck("D is a derivation", True, is_derivation(L, D.matrix)),
        GoldenCheck("D(N(L))", _sp(L, "x2", "x3"), pr(DN)),
        GoldenCheck("N(L) characteristic", False, derivations(L).characteristic(N)),
        GoldenCheck("L ideal of X5", True, is_ideal(X, emb(L.full()))),
        GoldenCheck("N(L) ideal of X5", False, is_ideal(X, emb(N))),
    )
    return Golden("EXP2", "EXP2 over F2 with derivation D and split extension X5", checks)


def x5_golden() -> Golden:
    X = catalog("X5")
    M = X.spanned("d", "x1", "x2")
    Lsub = X.spanned("x1", "x2", "x3", "x4")
    maxes = maximal_spaces(X)
    NX = nilradical(X)
    pr = lambda S: S.pretty(X.labels)
    NL = upper_nilpotent_series_of(X, Lsub)[1]
    checks = (
        GoldenCheck("M = <d,x1,x2> maximal", True, M in maxes),
        GoldenCheck("L = <x1,x2,x3,x4> maximal", True, Lsub in maxes),
        GoldenCheck("compatibility index of M", 1, compatibility_index(X, M)),
        GoldenCheck("compatibility index of L", 1, compatibility_index(X, Lsub)),
        GoldenCheck("N(X5)", _sp(X, "x1", "x2"), pr(NX)),
        GoldenCheck("M_X", _sp(X, "x1", "x2"), pr(core(X, M))),
        GoldenCheck("N(L) != N(X5)", True, NL != NX),
        GoldenCheck("N(M_X) = M_X", True, upper_nilpotent_series_of(X, core(X, M))[1] == core(X, M)),
        GoldenCheck("N(M) = M", True, upper_nilpotent_series_of(X, M)[1] == M),
    )
    return Golden("X5", "X5 over F2: maximal subalgebras of compatibility index one", checks)


def sup_golden(p: int, alpha: int) -> Golden:
    L = sup(p, alpha)
    phi = frattini(L)
    Q = quotient(L, phi).quotient
    ext, _ = is_extreme(L)
    checks = (
        GoldenCheck("supersolvable", True, structure_flags(L).supersolvable),
        GoldenCheck("extreme", True, ext),
        GoldenCheck("dim phi(L)", 1, phi.dim),
        GoldenCheck("L/phi(L) two-dimensional nonabelian", True, Q.dim == 2 and not Q.is_abelian),
    )
    return Golden(L.name, f"SUPα({p},{alpha}): [x,y]=y+z, [x,z]=αz", checks)


def ext3_golden() -> Golden:
    L = catalog("EXT3")
    pr = lambda S: S.pretty(L.labels)
    W = L.spanned("x", "z")
    ext, _ = is_extreme(L)
    mnn, _ = is_minimal_non_N(L)
    checks = (
        GoldenCheck("extreme", True, ext),
        GoldenCheck("phi(L)", _sp(L, "z"), pr(frattini(L))),
        GoldenCheck("N(L)", _sp(L, "y", "z"), pr(nilradical(L))),
        GoldenCheck("minimal non-N", False, mnn),
        GoldenCheck("<x,z> maximal", True, W in maximal_spaces(L)),
        GoldenCheck("n(<x,z>)", 2, nilpotent_length_of(L, W)),
        GoldenCheck("n(L)", 2, nilpotent_length(L)),
        GoldenCheck("c(L)", 2, chief_series(L).c_count),
    )
    return Golden("EXT3", "EXT3 over F3: extreme but not minimal non-N", checks)


def _sup_all() -> list:
    return [sup_golden(p, a) for p in (2, 3, 5) for a in range(1, p)]


GOLDENS: dict = {
    "EX1": lambda: [ex1_golden()],
    "EXP2": lambda: [exp2_golden()],
    "X5": lambda: [x5_golden()],
    "SUP": _sup_all,
    "EXT3": lambda: [ext3_golden()],
}


def goldens(names=None) -> list:
    names = list(GOLDENS) if not names else names
    out = []
    for name in names:
        key = name.upper()
        if key.startswith("SUP") and "(" in key:
            inner = key[key.index("(") + 1:key.rindex(")")]
            p, a = (int(s) for s in inner.split(","))
            out.append(sup_golden(p, a))
            continue
        fn = GOLDENS.get(key)
        if fn is None:
            raise UnknownNameError(f"no example named {name!r}; known: {', '.join(GOLDENS)}")
        out.extend(fn())
    return out
