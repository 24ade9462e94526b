"""Randomized verification suites.

Each suite draws algebras (random, from the catalog, or from a specimen
search), filters them by the hypotheses of one result, and records every
conclusion it checked.  Reports are deterministic in the configuration;
only the ``elapsed`` field varies between runs.
"""
from __future__ import annotations

import json
import os
import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import serialize
from .catalog import catalog as catalog_algebra
from .chief import complement_of, complemented_minimal_ideals, is_chief_factor, minimal_ideals_over
from .classify import (
    NOT_MINIMAL_NAN,
    TYPE_I,
    a_algebra_conditions,
    a_algebra_parts,
    check_extreme_decomposition,
    classify_naN,
    decompose,
    decomposition_conditions,
    extreme_by_definition,
    extreme_crosscheck,
    is_A_algebra,
    is_minimal_non_N,
    module_irreducible,
    structure_flags,
)
from .constructions import random_solvable
from .errors import BudgetExceededError, RetryLimitExceeded, SolvLieError, UnknownNameError
from .exactlin import BUDGET, FieldSpec, Subspace
from .liealg import (
    LieAlgebra,
    acts_nilpotently,
    all_ideals,
    all_subalgebras,
    core,
    derivations,
    lower_central_of,
    product_space,
    quotient,
)
from .series import (
    compatibility_index,
    frattini,
    frattini_series,
    lower_series,
    maximal_spaces,
    nilpotent_length,
    nilpotent_length_of,
    nilradical,
    nilregularity,
    upper_nilpotent_series,
    upper_nilpotent_series_of,
)

CACHE_ENV = "SOLVLIE_CACHE_DIR"
THEOREM = "theorem"
OBSERVATION = "observation"


# ---------------------------------------------------------------------------
# configuration and reports

@dataclass(frozen=True)
class SuiteConfig:
    suite: str
    trials: int = 200
    dims: tuple = (2, 5)
    fields: tuple = (FieldSpec(2), FieldSpec(3))
    seed: int = 0
    retries: int = 20
    catalog: tuple = ()
    max_specimens: int = 40
    search_budget: int = 3000
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        lo, hi = self.dims
        if not 1 <= lo <= hi:
            raise ValueError(f"bad dimension range {self.dims}")

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "dims": list(self.dims),
            "fields": [F.name for F in self.fields],
            "seed": self.seed,
            "retries": self.retries,
            "catalog": list(self.catalog),
            "max_specimens": self.max_specimens,
            "search_budget": self.search_budget,
        }


@dataclass
class TrialRecord:
    index: int
    fingerprint: str
    field: str
    dim: int
    attempts: int
    hypotheses: list
    vacuous: bool
    claims: list
    source: str
    algebra: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(c["ok"] for c in self.claims)

    def as_dict(self) -> dict:
        d = {
            "index": self.index,
            "fingerprint": self.fingerprint,
            "field": self.field,
            "dim": self.dim,
            "source": self.source,
            "attempts": self.attempts,
            "hypotheses": self.hypotheses,
            "vacuous": self.vacuous,
            "passed": self.passed,
            "claims": self.claims,
        }
        if not self.passed:
            d["witness"] = self.algebra
        return d


@dataclass
class SuiteReport:
    suite: str
    kind: str
    config: SuiteConfig
    trials: list
    elapsed: float = 0.0
    search: Optional[dict] = None

    @property
    def failures(self) -> list:
        return [t for t in self.trials if not t.passed]

    @property
    def ok(self) -> bool:
        return self.kind == OBSERVATION or not self.failures

    @property
    def non_vacuous(self) -> int:
        return sum(1 for t in self.trials if not t.vacuous)

    @property
    def starved(self) -> bool:
        return bool(self.search and self.search.get("starved"))

    def totals(self) -> dict:
        fails = len(self.failures)
        return {
            "trials": len(self.trials),
            "passed": len(self.trials) - fails,
            "failed": fails if self.kind == THEOREM else 0,
            "findings": fails if self.kind == OBSERVATION else 0,
            "vacuous": len(self.trials) - self.non_vacuous,
            "non_vacuous": self.non_vacuous,
        }

    def as_dict(self, elapsed: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "kind": self.kind,
            "config": self.config.as_dict(),
            "totals": self.totals(),
            "ok": self.ok,
            "search": self.search,
            "trials": [t.as_dict() for t in self.trials],
        }
        if elapsed:
            d["elapsed"] = round(self.elapsed, 3)
        return d

    def to_json(self, elapsed: bool = True) -> str:
        return json.dumps(self.as_dict(elapsed), indent=1, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# trial bookkeeping

class Trial:
    """Collects hypotheses and claims while one algebra is examined."""

    def __init__(self, L: LieAlgebra):
        self.L = L
        self.hypotheses: list = []
        self.claims: list = []
        self.nonvacuous = False

    def hyp(self, text: str) -> None:
        self.hypotheses.append(text)

    def claim(self, text: str, ok: bool, witness=None) -> bool:
        rec = {"claim": text, "ok": bool(ok)}
        if not ok and witness is not None:
            rec["witness"] = _fmt(self.L, witness)
        self.claims.append(rec)
        return ok


def _fmt(L: LieAlgebra, w):
    if isinstance(w, Subspace):
        return w.pretty(L.labels)
    if isinstance(w, (list, tuple)):
        return [_fmt(L, x) for x in w]
    if isinstance(w, dict):
        return {k: _fmt(L, v) for k, v in w.items()}
    return w


def _term(series: Sequence[Subspace], i: int) -> Subspace:
    return series[min(i, len(series) - 1)]


def _qlen(L: LieAlgebra, B: Subspace) -> int:
    return nilpotent_length(quotient(L, B).quotient) if not B.is_full() else 0


def _minimal_non_N_quotient(L: LieAlgebra, B: Subspace) -> bool:
    if B.is_full():
        return False
    return is_minimal_non_N(quotient(L, B).quotient)[0]


def _phi_series_ext(L: LieAlgebra, i: int) -> Subspace:
    """``φ_i(L)`` with ``φ_{n+1}(L) = L``."""
    phis = frattini_series(L)
    return phis[i - 1] if i <= len(phis) else L.full()


def _all_cores_strongly_nilregular(L: LieAlgebra) -> bool:
    return all(nilregularity(L, core(L, M)).strongly_nilregular for M in maximal_spaces(L))


def _all_cores_nilregular(L: LieAlgebra) -> bool:
    return all(nilregularity(L, core(L, M)).nilregular for M in maximal_spaces(L))


# ---------------------------------------------------------------------------
# series suites

def _lemma_1_1(t: Trial, rng: random.Random) -> None:
    L = t.L
    N = upper_nilpotent_series(L)
    G = lower_series(L).lower_nilpotent
    r = len(N) - 1
    s = next(i for i, S in enumerate(G) if S.is_zero())
    t.nonvacuous = r >= 2
    for i in range(r + 1):
        if s - i >= 0:
            t.claim(f"Γ_{s - i} ⊆ N_{i}", G[s - i].issubset(N[i]), G[s - i])
    for i in range(s + 1):
        if r - i >= 0:
            t.claim(f"Γ_{i} ⊆ N_{r - i}", G[i].issubset(N[r - i]), G[i])
    t.claim("upper and lower nilpotent series have equal length", r == s, {"r": r, "s": s})


def _lemma_2_2(t: Trial, rng: random.Random) -> None:
    L = t.L
    phi = frattini(L)
    cands = [B for B in all_ideals(L) if B.issubset(phi) and not B.is_zero()]
    if not cands:
        return
    B = rng.choice(cands)
    t.hyp(f"B = {B.pretty(L.labels)} is an ideal inside φ(L)")
    t.nonvacuous = True
    q = quotient(L, B)
    NQ = upper_nilpotent_series(q.quotient)
    PQ = frattini_series(q.quotient)
    N = upper_nilpotent_series(L)
    P = frattini_series(L)
    t.claim("n(L/B) = n(L)", len(NQ) == len(N))
    for i in range(1, len(N)):
        t.claim(f"N_{i}(L/B) = N_{i}(L)/B", q.pullback(_term(NQ, i)) == N[i], N[i])
        got = q.pullback(PQ[i - 1]) if i - 1 < len(PQ) else L.full()
        t.claim(f"φ_{i}(L/B) = φ_{i}(L)/B", got == P[i - 1], P[i - 1])


def _lemma_2_3(t: Trial, rng: random.Random) -> None:
    L = t.L
    N = upper_nilpotent_series(L)
    n = len(N) - 1
    if n < 1:
        return
    r = rng.randint(1, n)
    lo, hi = N[r - 1].mask, N[r].mask
    cands = [A for A in all_ideals(L) if A.mask & lo == lo and A.mask & hi == A.mask]
    A = rng.choice(cands)
    t.hyp(f"N_{r - 1} ⊆ A = {A.pretty(L.labels)} ⊆ N_{r}")
    t.nonvacuous = n >= 2
    m = _qlen(L, A)
    t.claim(f"n(L/A) ∈ {{n(L)-{r}, n(L)-{r}+1}}", m in (n - r, n - r + 1), {"n(L/A)": m, "n(L)": n})


def _lemma_2_4(t: Trial, rng: random.Random) -> None:
    L = t.L
    maxes = list(maximal_spaces(L))
    if not maxes:
        return
    N = upper_nilpotent_series(L)
    n = len(N) - 1
    t.nonvacuous = n >= 2
    for M in rng.sample(maxes, min(3, len(maxes))):
        t.hyp(f"M = {M.pretty(L.labels)} maximal")
        NM = upper_nilpotent_series_of(L, M)
        k = next((i for i in range(1, n + 1) if not N[i].issubset(M)), None)
        for i in range(1, n + 1):
            Ni, NMi = N[i], _term(NM, i)
            t.claim(f"(i) N_{i}(L) ∩ M ⊆ N_{i}(M)", (Ni & M).issubset(NMi), M)
            c = core(L, NMi)
            t.claim(f"(ii) N_{i}(M)_L ⊆ N_{i}(L)", c.issubset(Ni), M)
            if Ni.issubset(M):
                t.claim(f"(iii) N_{i}(M)_L = N_{i}(L)", c == Ni, M)
            if i == k:
                t.claim(f"(iv) N_{k}(M)_L = N_{k}(L) ∩ M", c == (Ni & M), M)
        if N[1].issubset(M):
            t.claim("(v) N(M) acts nilpotently on L", acts_nilpotently(L, _term(NM, 1)), M)
        U = rng.choice([S for S in all_subalgebras(L) if S.issubset(M)])
        t.claim("n(U) ≤ n(M) ≤ n(L) for a subalgebra U ⊆ M",
                nilpotent_length_of(L, U) <= nilpotent_length_of(L, M) <= n, U)


def _lemma_2_5(t: Trial, rng: random.Random) -> None:
    L = t.L
    ab = [I for I in all_ideals(L) if not I.is_zero() and product_space(L, I, I).is_zero()]
    ders = derivations(L)
    if not ab or not ders.dim:
        return
    I = rng.choice(ab)
    D = ders.combination([rng.randrange(L.field.p) for _ in range(ders.dim)])
    t.hyp(f"I = {I.pretty(L.labels)} abelian ideal; p = {L.field.p} > 2")
    t.nonvacuous = not D.image(I).issubset(I)
    N = nilradical(L)
    t.claim("I + D(I) ⊆ N(L)", (I + D.image(I)).issubset(N), I + D.image(I))
    for B in ders.basis:
        t.claim("I + D_k(I) ⊆ N(L) for each derivation basis element", (I + B.image(I)).issubset(N), I)


def _prop_2_7(t: Trial, rng: random.Random) -> None:
    L = t.L
    ders = derivations(L)
    phi = frattini(L)
    if not ders.characteristic(phi):
        return
    t.hyp("φ(L) is characteristic" + (" (L is φ-free)" if phi.is_zero() else ""))
    N = nilradical(L)
    t.nonvacuous = not N.is_zero() and not N.is_full()
    D = ders.witness_not_characteristic(N)
    t.claim("N(L) is characteristic", D is None, None if D is None else D.image(N))


def _prop_2_11(t: Trial, rng: random.Random) -> None:
    L = t.L
    N = nilradical(L)
    for I in all_ideals(L):
        if I.is_zero() or not nilregularity(L, I).nilregular:
            continue
        t.hyp(f"I = {I.pretty(L.labels)} nilregular ideal")
        t.nonvacuous = True
        NI = upper_nilpotent_series_of(L, I)[1]
        t.claim("N(I) ⊆ N(L)", NI.issubset(N), I)


def _prop_2_12(t: Trial, rng: random.Random) -> None:
    L = t.L
    N = upper_nilpotent_series(L)
    for M in maximal_spaces(L):
        C = core(L, M)
        r = compatibility_index(L, M)
        if r < 1 or not nilregularity(L, C).strongly_nilregular:
            continue
        t.hyp(f"M = {M.pretty(L.labels)} maximal, index {r}, strongly nilregular core")
        t.nonvacuous = True
        NM = upper_nilpotent_series_of(L, M)
        NC = upper_nilpotent_series_of(L, C)
        for i in range(1, r + 1):
            t.claim(f"N_{i}(M) = N_{i}(M_L) = N_{i}(L)", _term(NM, i) == _term(NC, i) == N[i], M)


def _prop_2_14(t: Trial, rng: random.Random) -> None:
    L = t.L
    n = nilpotent_length(L)
    ideals = [I for I in all_ideals(L) if not I.is_full()]
    phi = frattini(L)
    incomparable = [(A, B) for A in ideals for B in ideals
                    if not A.issubset(B) and not B.issubset(A) and A.basis < B.basis]
    t.nonvacuous = bool(incomparable) or not phi.is_zero()
    B = rng.choice(ideals + [L.full()])
    t.claim("homomorph: n(L/B) ≤ n(L)", _qlen(L, B) <= n, B)
    for A, B in rng.sample(incomparable, min(4, len(incomparable))):
        t.hyp(f"A = {A.pretty(L.labels)}, B = {B.pretty(L.labels)}")
        k = max(_qlen(L, A), _qlen(L, B))
        t.claim("formation: n(L/(A∩B)) ≤ max(n(L/A), n(L/B))", _qlen(L, A & B) <= k, [A, B])
    t.claim("saturation: n(L/φ(L)) = n(L)", _qlen(L, phi) == n, phi)
    mins = minimal_ideals_over(L, L.zero())
    if len(mins) > 1:
        t.hyp("more than one minimal ideal")
        t.claim("some minimal ideal A has n(L/A) = n(L)", any(_qlen(L, A) == n for A in mins), list(mins))


def _prop_nmax(t: Trial, rng: random.Random) -> None:
    L = t.L
    n = nilpotent_length(L)
    for M in maximal_spaces(L):
        if not nilregularity(L, core(L, M)).strongly_nilregular:
            continue
        t.nonvacuous = True
        t.hyp(f"M = {M.pretty(L.labels)} has a strongly nilregular core")
        t.claim("n(M) ∈ {n(L), n(L)-1}", nilpotent_length_of(L, M) in (n, n - 1), M)


def _thm_2_17(t: Trial, rng: random.Random) -> None:
    L = t.L
    n = nilpotent_length(L)
    t.nonvacuous = n >= 2
    try:
        dec = decompose(L)
    except SolvLieError as e:
        t.claim("decomposition exists", False, str(e))
        return
    t.claim("decomposition exists", True)
    problems = decomposition_conditions(L, dec)
    t.claim("conditions (i)-(iv) hold and each B_i is nilpotent", not problems, problems)
    t.claim("number of pieces equals n(L)", dec.n == n, {"pieces": dec.n, "n": n})


# ---------------------------------------------------------------------------
# extreme algebras

def _lemma_3_1(t: Trial, rng: random.Random) -> None:
    L = t.L
    N = nilradical(L)
    phi = frattini(L)
    if not is_chief_factor(L, N, phi):
        return
    t.hyp("N(L)/φ(L) is a chief factor")
    t.nonvacuous = True
    comp = complemented_minimal_ideals(L)
    t.claim("at most one complemented minimal ideal", len(comp) <= 1, comp)
    for A in comp:
        got = quotient(L, A).pullback(frattini(quotient(L, A).quotient)) if not A.is_full() else L.full()
        t.claim("φ(L/A) = φ_2(L)/A", got == _phi_series_ext(L, 2), A)


def _lemma_3_2(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not extreme_by_definition(L):
        return
    t.hyp("L extreme")
    for B in all_ideals(L):
        if B.is_zero() or B.is_full():
            continue
        t.nonvacuous = True
        t.claim("L/B extreme", extreme_by_definition(quotient(L, B).quotient), B)


def _thm_3_3(t: Trial, rng: random.Random) -> None:
    L = t.L
    x = extreme_crosscheck(L)
    t.nonvacuous = True
    t.hyp(f"n={x.n} m={x.m} c={x.c} m_layered={x.m_layered}")
    votes = x.votes
    for name, v in sorted(votes.items()):
        t.claim(f"{name} agrees with the definition", v == x.definition,
                {"votes": votes, "m_layered": x.m_layered})


def _lemma_3_4(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not extreme_by_definition(L):
        return
    t.hyp("L extreme")
    N = upper_nilpotent_series(L)
    n = len(N) - 1
    t.nonvacuous = n >= 2
    if n == 1:
        t.claim("(i) nilpotent extreme algebras have dim 1", L.dim == 1)
        return
    G1 = lower_series(L).lower_nilpotent[1]
    lc = lower_central_of(L, L.full())
    t.claim("(ii) N_{n-1} = Γ_1", N[n - 1] == G1, G1)
    t.claim("(ii) Γ_1 = L^k for k ≥ 2", all(S == G1 for S in lc[1:]), list(lc))
    t.claim("(ii) codimension one", L.dim - G1.dim == 1, G1)


def _thm_3_5(t: Trial, rng: random.Random) -> None:
    L = t.L
    e = extreme_by_definition(L)
    t.nonvacuous = e
    t.hyp("L extreme" if e else "L not extreme")
    t.claim("decomposition criterion equals extremeness", check_extreme_decomposition(L) == e)
    if e:
        t.claim("dim B_n = 1", decompose(L).B[-1].dim == 1)


def _shape_3_6(L: LieAlgebra) -> bool:
    if L.dim == 1:
        return True
    phi = frattini(L)
    q = quotient(L, phi)
    Q = q.quotient
    NQ = nilradical(Q)
    mins = minimal_ideals_over(Q, Q.zero())
    if len(mins) != 1 or mins[0] != NQ or Q.dim - NQ.dim != 1:
        return False
    u = next(e for e in Q.full().basis if not NQ.contains(e))
    return module_irreducible(Q, Q.zero(), NQ, Q.span([u]))


def _cor_3_6(t: Trial, rng: random.Random) -> None:
    L = t.L
    if nilpotent_length(L) > 2:
        return
    t.hyp("n(L) ≤ 2")
    e = extreme_by_definition(L)
    t.nonvacuous = e
    t.claim("extreme ⇔ dim 1 or monolith plus irreducible line modulo φ", e == _shape_3_6(L))


def _cor_3_7(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not structure_flags(L).supersolvable:
        return
    t.hyp("L supersolvable")
    e = extreme_by_definition(L)
    t.nonvacuous = e
    phi = frattini(L)
    Q = quotient(L, phi).quotient
    shape = L.dim == 1 or (Q.dim == 2 and not Q.is_abelian)
    t.claim("extreme ⇔ dim 1 or L/φ(L) two-dimensional nonabelian", e == shape)


# ---------------------------------------------------------------------------
# minimal non-N

def _lemma_4_1(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_minimal_non_N(L)[0]:
        return
    N = upper_nilpotent_series(L)
    k = len(N) - 1
    t.hyp(f"minimal non-N(≤{k - 1})")
    t.nonvacuous = k >= 2
    L2 = product_space(L, L.full(), L.full())
    t.claim("(i) L² = N_{k-1}", L2 == N[k - 1], L2)
    t.claim("(i) codimension one", L.dim - L2.dim == 1, L2)
    for M in maximal_spaces(L):
        NM = upper_nilpotent_series_of(L, M)
        for i in range(1, k):
            S = _term(NM, i)
            if not S.issubset(N[k - 1]):
                t.claim(f"(ii) N_{k-1} ∩ N_{i}(M) has codimension one in N_{i}(M)",
                        S.dim - (S & N[k - 1]).dim == 1, M)
        if N[1].issubset(M):
            t.claim("(iii) N(M) ⊆ N_{k-1}", _term(NM, 1).issubset(N[k - 1]), M)


def _crit_conclusion(t: Trial) -> None:
    L = t.L
    t.claim("L extreme", extreme_by_definition(L))
    n = nilpotent_length(L)
    if n >= 2:
        t.claim("L/N(L) minimal non-N", _minimal_non_N_quotient(L, nilradical(L)))


def _thm_4_3(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_minimal_non_N(L)[0]:
        return
    tags = []
    if _all_cores_strongly_nilregular(L):
        tags.append("strongly nilregular cores")
    if is_A_algebra(L)[0]:
        tags.append("A-algebra")
    if nilpotent_length(L) == 3 and L.derived_length <= 3:
        tags.append("n(L)=3 and solvability index ≤ 3")
    if not tags:
        return
    t.hyp("minimal non-N; " + ", ".join(tags))
    t.nonvacuous = nilpotent_length(L) >= 2
    _crit_conclusion(t)


def _cor_4_4(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_minimal_non_N(L)[0] or not _all_cores_strongly_nilregular(L):
        return
    t.hyp("minimal non-N with strongly nilregular maximal cores")
    t.nonvacuous = nilpotent_length(L) >= 2
    _crit_conclusion(t)


def _cor_4_5(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_minimal_non_N(L)[0] or not is_A_algebra(L)[0]:
        return
    t.hyp("minimal non-N A-algebra")
    t.nonvacuous = nilpotent_length(L) >= 2
    _crit_conclusion(t)


def _cor_4_6(t: Trial, rng: random.Random) -> None:
    L = t.L
    if nilpotent_length(L) != 3 or L.derived_length > 3 or not is_minimal_non_N(L)[0]:
        return
    t.hyp("minimal non-N(≤2) with solvability index ≤ 3")
    t.nonvacuous = True
    _crit_conclusion(t)


def _thm_4_8(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_A_algebra(L)[0]:
        return
    t.hyp(f"A-algebra of derived length {L.derived_length}")
    mnn = is_minimal_non_N(L)[0]
    parts = a_algebra_parts(L)
    t.nonvacuous = mnn or parts is not None
    t.claim("minimal non-N ⇔ conditions (i)-(v) are realizable", mnn == (parts is not None),
            {"minimal_non_N": mnn, "parts_found": parts is not None})
    if parts is not None:
        t.claim("found parts re-verify", not a_algebra_conditions(L, list(parts.parts), parts.x))


def _thm_4_10(t: Trial, rng: random.Random) -> None:
    L = t.L
    if L.derived_length != 3:
        return
    t.hyp("solvability index 3")
    lhs = is_minimal_non_N(L)[0] and nilpotent_length(L) == 3
    kind = classify_naN(L)
    t.nonvacuous = lhs or kind != NOT_MINIMAL_NAN
    t.claim("minimal non-N(≤2) ⇔ minimal non-(nilpotent-by-abelian) of type I", lhs == (kind == TYPE_I),
            {"minimal_non_N2": lhs, "naN_type": kind})


def _thm_4_11(t: Trial, rng: random.Random) -> None:
    L = t.L
    if not is_minimal_non_N(L)[0] or not _all_cores_nilregular(L):
        return
    t.hyp("minimal non-N with nilregular maximal cores")
    for B in all_ideals(L):
        if B.is_full():
            continue
        for A in minimal_ideals_over(L, B):
            if complement_of(L, A, B) is None:
                continue
            t.nonvacuous = t.nonvacuous or not B.is_zero()
            if B.is_zero():
                continue
            t.claim("L/B minimal non-N for a complemented chief factor A/B",
                    _minimal_non_N_quotient(L, B), [A, B])


def _char2_phifree(t: Trial, rng: random.Random) -> None:
    L = t.L
    if L.field.p != 2 or not frattini(L).is_zero():
        return
    t.hyp("p = 2 and φ(L) = 0")
    N = nilradical(L)
    t.nonvacuous = not N.is_zero() and not N.is_full()
    D = derivations(L).witness_not_characteristic(N)
    t.claim("N(L) is characteristic", D is None, None if D is None else D.image(N))


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class Suite:
    name: str
    check: Callable
    kind: str = THEOREM
    odd_only: bool = False
    only_p: Optional[int] = None
    specimens: Optional[str] = None
    series: bool = False


SUITES = {s.name: s for s in [
    Suite("lemma-1.1", _lemma_1_1, series=True),
    Suite("lemma-2.2", _lemma_2_2, series=True),
    Suite("lemma-2.3", _lemma_2_3, series=True),
    Suite("lemma-2.4", _lemma_2_4, series=True),
    Suite("lemma-2.5", _lemma_2_5, odd_only=True, series=True),
    Suite("prop-2.7", _prop_2_7, odd_only=True),
    Suite("prop-2.11", _prop_2_11, series=True),
    Suite("prop-2.12", _prop_2_12, series=True),
    Suite("prop-2.14", _prop_2_14, series=True),
    Suite("prop-nmax-length", _prop_nmax, series=True),
    Suite("thm-2.17", _thm_2_17),
    Suite("lemma-3.1", _lemma_3_1),
    Suite("lemma-3.2", _lemma_3_2),
    Suite("thm-3.3", _thm_3_3),
    Suite("lemma-3.4", _lemma_3_4),
    Suite("thm-3.5", _thm_3_5),
    Suite("cor-3.6", _cor_3_6),
    Suite("cor-3.7", _cor_3_7),
    Suite("lemma-4.1", _lemma_4_1, specimens="minimal-non-N"),
    Suite("thm-4.3", _thm_4_3, specimens="minimal-non-N"),
    Suite("cor-4.4", _cor_4_4, specimens="strongly-nilregular-minimal-non-N"),
    Suite("cor-4.5", _cor_4_5, specimens="A-minimal-non-N"),
    Suite("cor-4.6", _cor_4_6, specimens="minimal-non-N-length-3"),
    Suite("thm-4.8", _thm_4_8),
    Suite("thm-4.10", _thm_4_10, specimens="solvability-index-3"),
    Suite("thm-4.11", _thm_4_11, specimens="minimal-non-N"),
    Suite("char2-phifree", _char2_phifree, kind=OBSERVATION, only_p=2),
]}

SERIES_SUITES = tuple(s.name for s in SUITES.values() if s.series)
SECTION4_SUITES = ("lemma-4.1", "thm-4.3", "cor-4.4", "cor-4.5", "cor-4.6", "thm-4.8", "thm-4.10", "thm-4.11")


def get_suite(name: str) -> Suite:
    try:
        return SUITES[name]
    except KeyError:
        raise UnknownNameError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None


# ---------------------------------------------------------------------------
# generation

def _fields_for(suite: Suite, cfg: SuiteConfig) -> list:
    fs = [F for F in cfg.fields if F.p is not None]
    if suite.odd_only:
        fs = [F for F in fs if F.p > 2] or [FieldSpec(3), FieldSpec(5)]
    if suite.only_p is not None:
        fs = [F for F in fs if F.p == suite.only_p] or [FieldSpec(suite.only_p)]
    return fs


def _dims_for(F: FieldSpec, cfg: SuiteConfig) -> list:
    lo, hi = cfg.dims
    return [d for d in range(lo, hi + 1) if BUDGET.admits(d, F.p)]


def draw_algebra(rng: random.Random, fields: Sequence[FieldSpec], cfg: SuiteConfig) -> LieAlgebra:
    F = rng.choice(list(fields))
    dims = _dims_for(F, cfg)
    if not dims:
        raise BudgetExceededError(f"no admissible dimension in {cfg.dims} over {F.name}")
    d = rng.choice(dims)
    return random_solvable(F, d, stages=rng.randint(1, 3), seed=rng.randrange(2 ** 32))


def _record(i: int, t: Trial, attempts: int, source: str) -> TrialRecord:
    L = t.L
    return TrialRecord(
        index=i,
        fingerprint=serialize.fingerprint(L),
        field=L.field.name,
        dim=L.dim,
        attempts=attempts,
        hypotheses=t.hypotheses,
        vacuous=not t.nonvacuous,
        claims=t.claims,
        source=source,
        algebra=serialize.to_doc(L),
    )


def _evaluate(suite: Suite, L: LieAlgebra, rng: random.Random) -> Trial:
    t = Trial(L)
    suite.check(t, rng)
    return t


# ---------------------------------------------------------------------------
# specimens

def _mnn(L: LieAlgebra) -> bool:
    """Minimal non-N, stopping at the first maximal subalgebra that is too long."""
    n = nilpotent_length(L)
    return all(nilpotent_length_of(L, M) < n for M in maximal_spaces(L))


SPECIMEN_PREDICATES: dict = {
    "minimal-non-N": _mnn,
    "A-minimal-non-N": lambda L: _mnn(L) and is_A_algebra(L)[0],
    "minimal-naN": lambda L: classify_naN(L) != NOT_MINIMAL_NAN,
    "extreme-non-minimal": lambda L: extreme_by_definition(L) and not _mnn(L),
    "strongly-nilregular-minimal-non-N": lambda L: _mnn(L) and _all_cores_strongly_nilregular(L),
    "minimal-non-N-length-3": lambda L: nilpotent_length(L) == 3 and _mnn(L),
    "solvability-index-3": lambda L: L.derived_length == 3,
}

# catalog members tried before any random search
_SEEDS = ("T2", "EXT3", "H3", "EXP2", "X5", "UT2")


@dataclass
class SpecimenSearch:
    predicate: str
    specimens: list
    attempts: int
    from_cache: bool = False

    @property
    def starved(self) -> bool:
        return not self.specimens

    def as_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "found": len(self.specimens),
            "fingerprints": [serialize.fingerprint(L) for L in self.specimens],
            "attempts": self.attempts,
            "starved": self.starved,
        }


def cache_dir(cfg: Optional[SuiteConfig] = None) -> Optional[Path]:
    raw = (cfg.cache_dir if cfg is not None else None) or os.environ.get(CACHE_ENV)
    return Path(raw) if raw else None


def _cache_key(predicate: str, cfg: SuiteConfig, count: int) -> str:
    fields = "-".join(F.name for F in cfg.fields)
    return f"{predicate}_{fields}_d{cfg.dims[0]}-{cfg.dims[1]}_s{cfg.seed}_n{count}_b{cfg.search_budget}.json"


def find_specimens(predicate: str, cfg: SuiteConfig, count: Optional[int] = None) -> SpecimenSearch:
    """Catalog members plus a seeded random search, deduplicated by fingerprint."""
    if predicate not in SPECIMEN_PREDICATES:
        raise UnknownNameError(f"unknown specimen predicate {predicate!r}")
    test = SPECIMEN_PREDICATES[predicate]
    count = cfg.max_specimens if count is None else count
    cdir = cache_dir(cfg)
    path = cdir / _cache_key(predicate, cfg, count) if cdir else None
    if path is not None and path.exists():
        doc = json.loads(path.read_text(encoding="utf-8"))
        algs = [serialize.from_doc(d) for d in doc["specimens"]]
        return SpecimenSearch(predicate, algs, doc["attempts"], from_cache=True)
    found, seen = [], set()

    def consider(L: LieAlgebra) -> None:
        fp = serialize.fingerprint(L)
        if fp not in seen and test(L):
            seen.add(fp)
            found.append(L)

    fields = [F for F in cfg.fields if F.p is not None]
    for name in _SEEDS:
        L = catalog_algebra(name)
        if L.field in fields and cfg.dims[0] <= L.dim <= cfg.dims[1]:
            consider(L)
    attempts = 0
    for j in range(cfg.search_budget):
        if len(found) >= count:
            break
        attempts += 1
        rng = random.Random(f"{cfg.seed}:specimens:{predicate}:{j}")
        try:
            L = draw_algebra(rng, fields, cfg)
        except (RetryLimitExceeded, BudgetExceededError):
            continue
        consider(L)
    found = found[:count]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        doc = {"predicate": predicate, "attempts": attempts,
               "specimens": [serialize.to_doc(L) for L in found]}
        path.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    return SpecimenSearch(predicate, found, attempts)


# ---------------------------------------------------------------------------
# running

def run_suite(cfg: SuiteConfig) -> SuiteReport:
    suite = get_suite(cfg.suite)
    start = time.perf_counter()
    records = []
    search = None
    if cfg.catalog:
        for i, name in enumerate(cfg.catalog):
            rng = random.Random(f"{cfg.seed}:{suite.name}:{i}")
            L = catalog_algebra(name)
            if L.field.p is None:
                continue  # lattice checks need a prime field
            records.append(_record(i, _evaluate(suite, L, rng), 1, f"catalog:{name}"))
    elif suite.specimens:
        res = find_specimens(suite.specimens, cfg)
        search = res.as_dict()
        for i, L in enumerate(res.specimens):
            rng = random.Random(f"{cfg.seed}:{suite.name}:{i}")
            records.append(_record(i, _evaluate(suite, L, rng), 1, f"specimen:{res.predicate}"))
    else:
        fields = _fields_for(suite, cfg)
        for i in range(cfg.trials):
            rng = random.Random(f"{cfg.seed}:{suite.name}:{i}")
            t = None
            attempts = 0
            for _ in range(cfg.retries):
                attempts += 1
                try:
                    L = draw_algebra(rng, fields, cfg)
                except RetryLimitExceeded:
                    continue
                t = _evaluate(suite, L, rng)
                if t.nonvacuous:
                    break
            if t is None:
                continue
            records.append(_record(i, t, attempts, "random"))
    return SuiteReport(suite.name, suite.kind, cfg, records, time.perf_counter() - start, search)


def summary_line(rep: SuiteReport) -> str:
    tot = rep.totals()
    status = "PASS" if rep.ok else "FAIL"
    if rep.kind == OBSERVATION:
        status = "OBSERVED"
    extra = ""
    if rep.search is not None:
        extra = f" specimens={rep.search['found']}" + (" STARVED" if rep.starved else "")
    return (f"{status} {rep.suite}: {tot['trials']} trials, {tot['failed']} failed, "
            f"{tot['non_vacuous']} non-vacuous{extra} ({rep.elapsed:.1f}s)")
