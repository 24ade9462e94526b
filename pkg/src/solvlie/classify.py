"""Extreme algebras, decompositions along the upper nilpotent series, and
the minimal non-nilpotent-length predicates."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .chief import (
    chief_series,
    complement_of,
    complemented_minimal_ideals,
    is_chief_factor,
    layered_conjugacy_classes,
    m_count,
    minimal_ideals_over,
    primitivity,
)
from .errors import PreconditionError, TheoremViolation
from .exactlin import Subspace, check_lattice_budget, enumerate_subspaces, lin_comb, span_all
from .liealg import (
    LieAlgebra,
    SubalgebraHandle,
    all_ideals,
    all_subalgebras,
    derived_series_of,
    induced,
    is_nilpotent_space,
    memoized,
    product_space,
    quotient,
    subalgebras_within,
)
from .series import (
    frattini,
    frattini_series,
    maximal_spaces,
    nilpotent_length,
    nilpotent_length_of,
    nilradical,
    upper_nilpotent_series,
)


# ---------------------------------------------------------------------------
# extreme algebras

@dataclass(frozen=True)
class ExtremeCrosscheck:
    definition: bool
    n: int
    m: int
    c: int
    one_complemented_minimal: bool
    m_layered: int
    offending_ideal: Optional[Subspace] = None

    @property
    def votes(self) -> dict:
        return {"definition": self.definition, "n=m": self.n == self.m,
                "n=c": self.n == self.c, "quotients": self.one_complemented_minimal}

    @property
    def agree(self) -> bool:
        return len(set(self.votes.values())) == 1

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "c": self.c,
                "one_complemented_minimal": self.one_complemented_minimal,
                "m_layered": self.m_layered, "agree": self.agree}


def extreme_by_definition(L: LieAlgebra) -> bool:
    """Every ``N_i/φ_i`` is a chief factor."""
    N = upper_nilpotent_series(L)
    phis = frattini_series(L)
    return all(is_chief_factor(L, N[i], phis[i - 1]) for i in range(1, len(N)))


def quotient_condition(L: LieAlgebra) -> tuple[bool, Optional[Subspace]]:
    """Every ``L/B`` has at most one complemented minimal ideal; returns a failing ``B``."""
    for B in all_ideals(L):
        if len(complemented_minimal_ideals(L, B)) > 1:
            return False, B
    return True, None


@memoized
def extreme_crosscheck(L: LieAlgebra) -> ExtremeCrosscheck:
    """All four extremeness criteria, evaluated independently and without raising."""
    q, bad = quotient_condition(L)
    return ExtremeCrosscheck(
        definition=extreme_by_definition(L),
        n=nilpotent_length(L),
        m=m_count(L),
        c=chief_series(L).c_count,
        one_complemented_minimal=q,
        m_layered=layered_conjugacy_classes(L).m_count,
        offending_ideal=bad,
    )


def is_extreme(L: LieAlgebra) -> tuple[bool, ExtremeCrosscheck]:
    """Decide extremeness four ways; raise ``TheoremViolation`` if they disagree."""
    cross = extreme_crosscheck(L)
    if not cross.agree:
        raise TheoremViolation(
            f"extreme criteria disagree on {L.describe()} over {L.field}: {cross.votes}")
    return cross.definition, cross


# ---------------------------------------------------------------------------
# minimal non-N, A-algebras, flags

def maximal_lengths(L: LieAlgebra) -> list[int]:
    return [nilpotent_length_of(L, M) for M in maximal_spaces(L)]


@memoized
def is_minimal_non_N(L: LieAlgebra) -> tuple[bool, tuple]:
    """``n(M) < n(L)`` for every maximal subalgebra ``M``."""
    n = nilpotent_length(L)
    lengths = tuple(maximal_lengths(L))
    return (L.dim > 0 and all(k <= n - 1 for k in lengths)), lengths


def minimal_non_N_witness(L: LieAlgebra) -> Optional[Subspace]:
    n = nilpotent_length(L)
    for M in maximal_spaces(L):
        if nilpotent_length_of(L, M) >= n:
            return M
    return None


def is_minimal_non_N_le(L: LieAlgebra, k: int) -> bool:
    """Minimal non-N(<=k): ``n(L) = k+1`` and every maximal has length ``<= k``."""
    flag, lengths = is_minimal_non_N(L)
    return flag and nilpotent_length(L) == k + 1


@memoized
def is_A_algebra(L: LieAlgebra) -> tuple[bool, Optional[Subspace]]:
    check_lattice_budget(L.dim, L.field)
    for S in all_subalgebras(L):
        if S.dim >= 2 and is_nilpotent_space(L, S) and not product_space(L, S, S).is_zero():
            return False, S
    return True, None


@dataclass(frozen=True)
class StructureFlags:
    supersolvable: Optional[bool]
    nilpotent_by_abelian: bool
    solvability_index: int


def derived_algebra(L: LieAlgebra) -> Subspace:
    return product_space(L, L.full(), L.full())


def is_nilpotent_by_abelian(L: LieAlgebra, U: Optional[Subspace] = None) -> bool:
    U = L.full() if U is None else U
    return is_nilpotent_space(L, product_space(L, U, U))


def structure_flags(L: LieAlgebra) -> StructureFlags:
    sup = None
    if L.field.p is not None:
        cs = chief_series(L)
        sup = all(A.dim - B.dim == 1 for B, A in cs.factors())
    return StructureFlags(sup, is_nilpotent_by_abelian(L), L.derived_length)


# ---------------------------------------------------------------------------
# decomposition along the upper nilpotent series

@dataclass(frozen=True)
class Decomposition:
    algebra: LieAlgebra
    B: tuple  # SubalgebraHandle B_1..B_n
    U: tuple  # SubalgebraHandle U_0..U_n

    @property
    def n(self) -> int:
        return len(self.B)


def _handle(L: LieAlgebra, S: Subspace) -> SubalgebraHandle:
    return induced(L, S)


def frattini_of(L: LieAlgebra, U: Subspace) -> Subspace:
    if U.is_zero():
        return U
    H = induced(L, U)
    return H.embed_space(frattini(H.induced))


def nilradical_within(L: LieAlgebra, U: Subspace) -> Subspace:
    if U.is_zero():
        return U
    H = induced(L, U)
    return H.embed_space(nilradical(H.induced))


@memoized
def decompose(L: LieAlgebra) -> Decomposition:
    """Supplements ``U_{k+1}`` of ``N_{k+1}(L) ∩ U_k`` in ``U_k`` of least dimension,
    then ``B_i = N(U_{i-1})``; all four defining conditions are checked."""
    check_lattice_budget(L.dim, L.field)
    N = upper_nilpotent_series(L)
    phis = frattini_series(L)
    n = len(N) - 1
    U = [L.full()]
    for k in range(n):
        Uk = U[-1]
        K = N[k + 1] & Uk
        cands = sorted((S for S in subalgebras_within(L, Uk) if (K + S) == Uk),
                       key=lambda S: (S.dim, S.basis))
        nxt = None
        for S in cands:
            if S.dim != cands[0].dim:
                break
            if k + 1 < n:
                phiS = frattini_of(L, S)
                if not (N[k + 1] & S).issubset(phiS) or phiS != (phis[k + 1] & S):
                    continue
            nxt = S
            break
        if nxt is None:
            raise TheoremViolation(f"no supplement with the Frattini property at step {k + 1}")
        U.append(nxt)
    B = [nilradical_within(L, U[i - 1]) for i in range(1, n + 1)]
    dec = Decomposition(L, tuple(_handle(L, S) for S in B), tuple(_handle(L, S) for S in U))
    problems = decomposition_conditions(L, dec)
    if problems:
        raise TheoremViolation("decomposition conditions fail: " + "; ".join(problems))
    return dec


def decomposition_conditions(L: LieAlgebra, dec: Decomposition) -> list[str]:
    """Return descriptions of every violated condition (empty when all hold)."""
    N = upper_nilpotent_series(L)
    phis = frattini_series(L)
    n = len(N) - 1
    B = [h.space for h in dec.B]
    out = []
    if len(B) != n:
        return [f"expected {n} pieces, got {len(B)}"]
    for i, Bi in enumerate(B, 1):
        if not is_nilpotent_space(L, Bi):
            out.append(f"B_{i} is not nilpotent")
    acc = L.zero()
    for i in range(1, n + 1):
        acc = acc + B[i - 1]
        if acc != N[i]:
            out.append(f"N_{i} != B_1+...+B_{i}")
    if n and acc != L.full():
        out.append("B_1+...+B_n != L")
    for i in range(n):
        for j in range(i, n):
            if not product_space(L, B[i], B[j]).issubset(B[i]):
                out.append(f"[B_{i + 1},B_{j + 1}] not in B_{i + 1}")
    for i in range(1, n):
        Ui = span_all(L.field, L.dim, B[i:])
        phiU = frattini_of(L, Ui)
        if not (N[i] & Ui).issubset(phiU):
            out.append(f"N_{i} ∩ U_{i} not in φ(U_{i})")
        if phiU != (phis[i] & Ui):
            out.append(f"φ(U_{i}) != φ_{i + 1} ∩ U_{i}")
    return out


def check_extreme_decomposition(L: LieAlgebra) -> bool:
    """``dim B_n = 1`` and each ``N(U_k)/φ(U_k)`` is a chief factor of ``U_k``."""
    dec = decompose(L)
    if dec.n == 0:
        return False
    if dec.B[-1].dim != 1:
        return False
    for k in range(dec.n):
        H = dec.U[k]
        A = H.induced
        if not is_chief_factor(A, nilradical(A), frattini(A)):
            return False
    return True


# ---------------------------------------------------------------------------
# irreducibility

def module_irreducible(L: LieAlgebra, ideal_context: Subspace, A: Subspace,
                       acting: Optional[Subspace] = None) -> bool:
    """No subspace strictly between ``B`` and ``A + B`` is stable under ``ad`` of ``acting``.

    ``B = ideal_context``; ``acting`` defaults to ``L``.
    """
    B = ideal_context
    K = L.full() if acting is None else acting
    top = A + B
    if not product_space(L, K, top).issubset(top) or not product_space(L, K, B).issubset(B):
        raise PreconditionError("A is not invariant modulo the ideal context")
    comp = []
    acc = B
    for r in top.basis:
        if not acc.contains(r):
            comp.append(r)
            acc = acc + L.span([r])
    d = len(comp)
    if d <= 1:
        return d == 1
    F = L.field
    check_lattice_budget(d, F)
    for k in range(1, d):
        for S in enumerate_subspaces(d, F, dim_filter=k):
            W = B + L.span([lin_comb(F, c, comp, L.dim) for c in S.basis])
            if product_space(L, K, W).issubset(W):
                return False
    return True


# ---------------------------------------------------------------------------
# A-algebras that are minimal non-N

@dataclass(frozen=True)
class AParts:
    parts: tuple  # A_n, ..., A_1 (Subspaces)
    x: tuple      # vector spanning A_0


def a_algebra_conditions(L: LieAlgebra, parts: list, x) -> list[str]:
    """Violated conditions among (i)-(v) for ``L = A_n ∔ ... ∔ A_1 ∔ Fx``."""
    n = len(parts)
    A = {n - t: S for t, S in enumerate(parts)}  # A[i]
    A[0] = L.span([x])
    D = derived_series_of(L, L.full())
    while len(D) < n + 2:
        D.append(D[-1])
    Nser = upper_nilpotent_series(L)
    out = []
    total = span_all(L.field, L.dim, A.values())
    if total != L.full() or sum(S.dim for S in A.values()) != L.dim or A[0].dim != 1:
        out.append("(i) not a direct decomposition with dim A_0 = 1")
    for i in range(1, n + 1):
        if not product_space(L, A[i], A[i]).is_zero():
            out.append(f"(i) A_{i} not abelian")
    for i in range(1, n + 1):
        if span_all(L.field, L.dim, (A[j] for j in range(i, n + 1))) != D[i]:
            out.append(f"(ii) L^({i}) mismatch")
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if not product_space(L, A[i], A[j]).issubset(A[j]):
                out.append(f"(iii) [A_{i},A_{j}] not in A_{j}")
    for i in range(n + 1):
        if not module_irreducible(L, D[i + 1], D[i]):
            out.append(f"(iv) A_{i} reducible")
    for i in range(n + 1):
        k = n - i + 1
        if k >= len(Nser) or Nser[k] != D[i]:
            out.append(f"(v) N_{k} != L^({i})")
    return out


def a_algebra_parts(L: LieAlgebra) -> Optional[AParts]:
    """Search abelian complements ``A_i`` of ``L^(i+1)`` in ``L^(i)``, top down.

    Returns ``None`` when no choice satisfies all five conditions.
    """
    check_lattice_budget(L.dim, L.field)
    D = derived_series_of(L, L.full())
    n = len(D) - 2
    if n < 0:
        return None
    abelian = [S for S in all_subalgebras(L) if product_space(L, S, S).is_zero()]

    def options(i):
        top, below = D[i], D[i + 1]
        tm, bm = top.mask, below.mask
        want = top.dim - below.dim
        return [S for S in abelian if S.dim == want and S.mask & tm == S.mask and S.mask & bm == 1]

    def dfs(i, chosen):
        if i < 0:
            parts = chosen[:-1]
            x = chosen[-1].basis[0]
            return AParts(tuple(parts), x) if not a_algebra_conditions(L, parts, x) else None
        for S in options(i):
            if all(product_space(L, S, T).issubset(T) for T in chosen):
                res = dfs(i - 1, chosen + [S])
                if res is not None:
                    return res
        return None

    return dfs(n, [])


def check_A_minimal_structure(L: LieAlgebra) -> tuple[bool, Optional[AParts]]:
    if not is_A_algebra(L)[0]:
        raise PreconditionError("not an A-algebra")
    if not is_minimal_non_N(L)[0]:
        raise PreconditionError("not minimal non-N")
    parts = a_algebra_parts(L)
    return parts is not None, parts


# ---------------------------------------------------------------------------
# minimal non-(nilpotent-by-abelian)

NOT_MINIMAL_NAN = "not-minimal-naN"
TYPE_I = "type-I"
TYPE_II = "type-II"


def is_minimal_non_nan(L: LieAlgebra) -> bool:
    if is_nilpotent_by_abelian(L):
        return False
    return all(is_nilpotent_by_abelian(L, M) for M in maximal_spaces(L))


def _is_heisenberg(H: LieAlgebra) -> bool:
    if H.dim != 3:
        return False
    D = product_space(H, H.full(), H.full())
    return D.dim == 1 and product_space(H, H.full(), D).is_zero()


def _is_type_one(H: LieAlgebra) -> bool:
    """``H = M ∔ Fx`` with ``M`` an abelian minimal ideal of ``H``."""
    if H.dim < 2:
        return False
    for M in minimal_ideals_over(H, H.zero()):
        if M.dim == H.dim - 1 and product_space(H, M, M).is_zero():
            return True
    return False


@memoized
def classify_naN(L: LieAlgebra) -> str:
    """Decide minimal non-(nilpotent-by-abelian) and match the type on ``L/φ(L)``."""
    if not is_minimal_non_nan(L):
        return NOT_MINIMAL_NAN
    phi = frattini(L)
    Q = quotient(L, phi).quotient
    mins = minimal_ideals_over(Q, Q.zero())
    if len(mins) != 1:
        raise TheoremViolation("φ-free minimal non-(nilpotent-by-abelian) algebra is not monolithic")
    A = mins[0]
    if A.dim < 2 or not product_space(Q, A, A).is_zero():
        raise TheoremViolation("monolith has the wrong shape")
    p = L.field.p
    if p is not None and p >= 3 and A.dim % p:
        raise TheoremViolation(f"monolith dimension {A.dim} not divisible by {p}")
    Bspace = complement_of(Q, A, Q.zero())
    if Bspace is None:
        raise TheoremViolation("monolith has no complement")
    Bh = induced(Q, Bspace).induced
    if _is_type_one(Bh):
        return TYPE_I
    if _is_heisenberg(Bh):
        return TYPE_II
    raise TheoremViolation("complement is neither of type I nor Heisenberg")


# ---------------------------------------------------------------------------
# report

@dataclass
class ClassificationReport:
    extreme: bool
    extreme_crosscheck: ExtremeCrosscheck
    minimal_non_N: bool
    maximal_lengths: tuple
    a_algebra: bool
    supersolvable: Optional[bool]
    nilpotent_by_abelian: bool
    solvability_index: int
    naN_type: str
    primitive: bool
    witnesses: dict = dc_field(default_factory=dict)

    def as_dict(self, labels) -> dict:
        w = {k: (v.pretty(labels) if isinstance(v, Subspace) else v) for k, v in sorted(self.witnesses.items())}
        return {
            "extreme": self.extreme,
            "extreme_crosscheck": self.extreme_crosscheck.as_dict(),
            "minimal_non_N": self.minimal_non_N,
            "maximal_lengths": list(self.maximal_lengths),
            "a_algebra": self.a_algebra,
            "supersolvable": self.supersolvable,
            "nilpotent_by_abelian": self.nilpotent_by_abelian,
            "solvability_index": self.solvability_index,
            "naN_type": self.naN_type,
            "primitive": self.primitive,
            "witnesses": w,
        }


def classify(L: LieAlgebra) -> ClassificationReport:
    ext, cross = is_extreme(L)
    mnn, lengths = is_minimal_non_N(L)
    aa, awit = is_A_algebra(L)
    flags = structure_flags(L)
    prim = primitivity(L)
    wit: dict = {}
    if not mnn:
        M = minimal_non_N_witness(L)
        if M is not None:
            wit["minimal_non_N"] = M
    if awit is not None:
        wit["a_algebra"] = awit
    if prim.core_free_maximal is not None:
        wit["primitive"] = prim.core_free_maximal.space
    if cross.offending_ideal is not None:
        wit["extreme"] = cross.offending_ideal
    return ClassificationReport(
        extreme=ext,
        extreme_crosscheck=cross,
        minimal_non_N=mnn,
        maximal_lengths=lengths,
        a_algebra=aa,
        supersolvable=flags.supersolvable,
        nilpotent_by_abelian=flags.nilpotent_by_abelian,
        solvability_index=flags.solvability_index,
        naN_type=classify_naN(L),
        primitive=prim.is_primitive,
        witnesses=wit,
    )
