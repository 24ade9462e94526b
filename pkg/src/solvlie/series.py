"""Nilradical, the derived/central/nilpotent/Frattini series, maximal subalgebras."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import PreconditionError, UnsupportedFieldError
from .exactlin import (
    Subspace,
    check_lattice_budget,
    identity_rows,
    intersect_all,
    mat_mul,
    solve_kernel,
    span_all,
)
from .liealg import (
    LieAlgebra,
    SubalgebraHandle,
    acts_nilpotently,
    all_ideals,
    all_subalgebras,
    core,
    derived_series_of,
    induced,
    is_nilpotent_space,
    is_subalgebra,
    lower_central_of,
    memoized,
    nilpotency_class,
    product_space,
    quotient,
)


# ---------------------------------------------------------------------------
# nilradical

def nilradical(L: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal.

    Over F_p: the sum of all nilpotent ideals in the ideal lattice.
    Over Q: ``{x : Tr(ad x . a) = 0}`` for ``a`` in the unital associative
    algebra generated by ``ad L``; in characteristic 0 this is the set of
    ad-nilpotent elements.
    """
    return _nilradical(L)


@memoized
def _nilradical(L: LieAlgebra) -> Subspace:
    if L.is_abelian:
        return L.full()
    if L.field.p is None:
        return _nilradical_trace(L)
    check_lattice_budget(L.dim, L.field)
    return span_all(L.field, L.dim, (I for I in all_ideals(L) if is_nilpotent_space(L, I)))


def _assoc_closure(L: LieAlgebra) -> list:
    F, n = L.field, L.dim
    flat = lambda m: sum(m, ())
    gens = list(L.ad_basis)
    from .exactlin import _reduce, _rref

    found = [identity_rows(n)]
    queue = [identity_rows(n)]
    rows, piv = _rref(F, [flat(identity_rows(n))], n * n)
    while queue:
        m = queue.pop()
        for g in gens:
            prod = mat_mul(F, m, g)
            r = _reduce(F, rows, piv, flat(prod))
            if any(r):
                rows, piv = _rref(F, list(rows) + [flat(prod)], n * n)
                found.append(prod)
                queue.append(prod)
    return found


def _nilradical_trace(L: LieAlgebra) -> Subspace:
    F, n = L.field, L.dim
    algebra = _assoc_closure(L)
    ads = L.ad_basis
    conditions = []
    for b in algebra:
        # Tr(ad x . b) is linear in x
        conditions.append(tuple(
            F(sum(ads[i][r][c] * b[c][r] for r in range(n) for c in range(n))) for i in range(n)))
    return L.span(solve_kernel(F, conditions, n))


def nilradical_oracle(L: LieAlgebra) -> Subspace:
    """Independent check: the largest-dimensional ideal on which every ad map is nilpotent."""
    check_lattice_budget(L.dim, L.field)
    best = L.zero()
    for I in all_ideals(L):
        if I.dim > best.dim and all(_ad_nilpotent_on(L, x, I) for x in I.basis):
            best = I
    return best


def _ad_nilpotent_on(L: LieAlgebra, x, I: Subspace) -> bool:
    """Engel test: ``ad x`` restricted to ``I`` is nilpotent."""
    cur = list(I.basis)
    for _ in range(I.dim + 1):
        cur = [L.bracket(x, v) for v in cur]
        if not any(any(v) for v in cur):
            return True
    return False


# ---------------------------------------------------------------------------
# series

@memoized
def upper_nilpotent_series(L: LieAlgebra) -> tuple[Subspace, ...]:
    """``0 = N_0 ⊂ N_1 ⊂ ... ⊂ N_n = L``."""
    out = [L.zero()]
    while not out[-1].is_full():
        q = quotient(L, out[-1])
        out.append(q.pullback(nilradical(q.quotient)))
    return tuple(out)


def nilpotent_length(L: LieAlgebra) -> int:
    return len(upper_nilpotent_series(L)) - 1


def upper_nilpotent_series_of(L: LieAlgebra, U: Subspace) -> list[Subspace]:
    """Upper nilpotent series of the subalgebra ``U``, in ``L``'s coordinates."""
    H = induced(L, U)
    return [H.embed_space(S) for S in upper_nilpotent_series(H.induced)]


def nilpotent_length_of(L: LieAlgebra, U: Subspace) -> int:
    if U.is_zero():
        return 0
    return nilpotent_length(induced(L, U).induced)


def nilradical_of(L: LieAlgebra, U: Subspace) -> Subspace:
    H = induced(L, U)
    return H.embed_space(nilradical(H.induced))


def residual(L: LieAlgebra, U: Optional[Subspace] = None) -> Subspace:
    """Nilpotent residual: the term where the lower central series of ``U`` stabilises."""
    U = L.full() if U is None else U
    return lower_central_of(L, U)[-1]


@dataclass(frozen=True)
class LowerSeries:
    derived: tuple
    lower_central: tuple
    nilpotent_residual: Subspace
    lower_nilpotent: tuple


@memoized
def lower_series(L: LieAlgebra) -> LowerSeries:
    derived = tuple(derived_series_of(L, L.full()))
    lc = lower_central_of(L, L.full())
    gammas = [L.full()]
    while not gammas[-1].is_zero():
        nxt = residual(L, gammas[-1])
        if nxt == gammas[-1]:
            raise PreconditionError("algebra is not solvable")
        gammas.append(nxt)
    return LowerSeries(derived, tuple(lc), lc[-1], tuple(gammas))


# ---------------------------------------------------------------------------
# maximal subalgebras and the Frattini subalgebra

@dataclass(frozen=True)
class MaximalSet:
    algebra: LieAlgebra
    maximals: tuple  # SubalgebraHandle
    cores: tuple
    compatibility: tuple
    frattini: Subspace

    @property
    def spaces(self) -> tuple:
        return tuple(H.space for H in self.maximals)

    def __len__(self) -> int:
        return len(self.maximals)


@memoized
def maximal_spaces(L: LieAlgebra) -> tuple[Subspace, ...]:
    """Maximal subalgebras as subspaces, largest dimension first.

    A proper subalgebra is maximal exactly when no maximal subalgebra of
    larger dimension contains it.
    """
    check_lattice_budget(L.dim, L.field)
    subs = [S for S in all_subalgebras(L) if not S.is_full()]
    subs.sort(key=lambda S: -S.dim)
    found: list = []
    masks: list = []
    for S in subs:
        m = S.mask
        if not any(m & big == m for big in masks):
            found.append(S)
            masks.append(m)
    return tuple(found)


def maximal_spaces_bruteforce(L: LieAlgebra) -> tuple[Subspace, ...]:
    """Maximals by pairwise comparison of all subalgebras, in reverse enumeration order."""
    check_lattice_budget(L.dim, L.field)
    subs = [S for S in reversed(all_subalgebras(L)) if not S.is_full()]
    out = []
    for S in subs:
        if not any(S.dim < T.dim and S.issubset(T) for T in subs):
            out.append(S)
    return tuple(out)


@memoized
def maximal_subalgebras(L: LieAlgebra) -> MaximalSet:
    spaces = maximal_spaces(L)
    handles = tuple(induced(L, M) for M in spaces)
    cores = tuple(core(L, M) for M in spaces)
    comp = tuple(compatibility_index(L, M) for M in spaces)
    return MaximalSet(L, handles, cores, comp, frattini(L))


@memoized
def frattini(L: LieAlgebra) -> Subspace:
    """Intersection of the maximal subalgebras (``L`` itself when there are none)."""
    spaces = maximal_spaces(L)
    return intersect_all(L.field, L.dim, spaces)


def frattini_oracle(L: LieAlgebra) -> Subspace:
    return intersect_all(L.field, L.dim, maximal_spaces_bruteforce(L))


@memoized
def frattini_series(L: LieAlgebra) -> tuple[Subspace, ...]:
    """``(φ_1, ..., φ_n)`` with ``φ_i / N_{i-1} = φ(L / N_{i-1})``."""
    N = upper_nilpotent_series(L)
    out = []
    for i in range(1, len(N)):
        q = quotient(L, N[i - 1])
        out.append(q.pullback(frattini(q.quotient)))
    return tuple(out)


def frattini_series_in_lattice(L: LieAlgebra) -> tuple[Subspace, ...]:
    """Same series read off the maximals of ``L`` containing ``N_{i-1}``."""
    N = upper_nilpotent_series(L)
    spaces = maximal_spaces(L)
    return tuple(intersect_all(L.field, L.dim, (M for M in spaces if N[i - 1].issubset(M)))
                 for i in range(1, len(N)))


# ---------------------------------------------------------------------------
# compatibility and nilregularity

def compatibility_index(L: LieAlgebra, U: Subspace) -> int:
    N = upper_nilpotent_series(L)
    r = 0
    while r + 1 < len(N) and N[r + 1].issubset(U):
        r += 1
    return r


def relative_class(L: LieAlgebra, A: Subspace, B: Subspace) -> Optional[int]:
    """Nilpotency class of ``A/B`` (``B`` an ideal of the subalgebra ``A``)."""
    if A.issubset(B):
        return 0
    cur = A
    c = 0
    while not cur.issubset(B):
        nxt = product_space(L, cur, A) + B
        c += 1
        if nxt == cur:
            return None
        cur = nxt
    return c


@dataclass(frozen=True)
class Nilregularity:
    nilregular: bool
    strongly_nilregular: bool
    witness_class: Optional[int]
    compatibility: int


def nilregularity(L: LieAlgebra, U) -> Nilregularity:
    """Nilregular: ``N(U)`` has class ``< p-1``; strongly: each ``N_k(U)/N_{k-1}(U)``
    does for ``k`` up to the compatibility index of ``U``.  Always true over Q."""
    space = U.space if isinstance(U, SubalgebraHandle) else U
    r = compatibility_index(L, space)
    p = L.field.p
    if p is None:
        return Nilregularity(True, True, None, r)
    if space.is_zero():
        return Nilregularity(True, True, None, r)
    NU = upper_nilpotent_series_of(L, space)
    cls1 = relative_class(L, NU[1], NU[0])
    nilreg = cls1 < p - 1
    witness = None if nilreg else cls1
    strong = True
    for k in range(1, r + 1):
        if k >= len(NU):
            break
        c = relative_class(L, NU[k], NU[k - 1])
        if not c < p - 1:
            strong = False
            if witness is None:
                witness = c
            break
    return Nilregularity(nilreg, strong, witness, r)


# ---------------------------------------------------------------------------
# report

@dataclass(frozen=True)
class SeriesReport:
    derived: tuple
    lower_central: tuple
    upper_nilpotent: tuple
    lower_nilpotent: tuple
    frattini_series: Optional[tuple]
    nilpotent_residual: Subspace
    nilpotent_length: int
    derived_length: int
    nilpotency_class: Optional[int]
    nilradical: Subspace = dc_field(default=None)

    def as_dict(self, labels: Sequence[str]) -> dict:
        fmt = lambda S: S.pretty(labels)
        seq = lambda xs: None if xs is None else [fmt(S) for S in xs]
        return {
            "derived": seq(self.derived),
            "lower_central": seq(self.lower_central),
            "upper_nilpotent": seq(self.upper_nilpotent),
            "lower_nilpotent": seq(self.lower_nilpotent),
            "frattini_series": seq(self.frattini_series),
            "nilradical": fmt(self.nilradical),
            "nilpotent_residual": fmt(self.nilpotent_residual),
            "nilpotent_length": self.nilpotent_length,
            "derived_length": self.derived_length,
            "nilpotency_class": self.nilpotency_class,
        }


def series_report(L: LieAlgebra) -> SeriesReport:
    low = lower_series(L)
    up = upper_nilpotent_series(L)
    try:
        phis = frattini_series(L)
    except UnsupportedFieldError:
        phis = None
    return SeriesReport(
        derived=low.derived,
        lower_central=low.lower_central,
        upper_nilpotent=up,
        lower_nilpotent=low.lower_nilpotent,
        frattini_series=phis,
        nilpotent_residual=low.nilpotent_residual,
        nilpotent_length=len(up) - 1,
        derived_length=L.derived_length,
        nilpotency_class=nilpotency_class(L),
        nilradical=up[1] if len(up) > 1 else L.zero(),
    )


def n_of_subalgebra_ok(L: LieAlgebra, U: Subspace) -> bool:
    """Monotonicity of nilpotent length under passing to a subalgebra."""
    if not is_subalgebra(L, U):
        raise PreconditionError("not a subalgebra")
    return nilpotent_length_of(L, U) <= nilpotent_length(L)


def acts_nilpotently_on_L(L: LieAlgebra, K: Subspace) -> bool:
    return acts_nilpotently(L, K)
