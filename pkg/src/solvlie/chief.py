"""Minimal ideals, chief series, inner automorphisms and conjugacy of maximal subalgebras."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import TheoremViolation, UnsupportedFieldError
from .exactlin import (
    Subspace,
    check_lattice_budget,
    identity_rows,
    index_vector,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    span_all,
    transpose,
)
from .liealg import (
    LieAlgebra,
    SubalgebraHandle,
    all_ideals,
    centralizer,
    core,
    induced,
    memoized,
    nilpotency_class,
    product_space,
    quotient,
)
from .series import maximal_spaces, nilradical


# ---------------------------------------------------------------------------
# minimal ideals

def minimal_ideals(L: LieAlgebra) -> list[Subspace]:
    if L.field.p is None:
        return _minimal_ideals_rational(L)
    return list(minimal_ideals_over(L, L.zero()))


@memoized
def minimal_ideals_over(L: LieAlgebra, B: Subspace) -> tuple[Subspace, ...]:
    """Ideals ``A ⊋ B`` of ``L`` minimal with this property, i.e. minimal ideals of ``L/B``."""
    check_lattice_budget(L.dim, L.field)
    bm = B.mask
    above = [I for I in all_ideals(L) if I.dim > B.dim and I.mask & bm == bm]
    out = []
    for A in above:
        am = A.mask
        if not any(J.dim < A.dim and J.mask & am == J.mask for J in above):
            out.append(A)
    return tuple(out)


def _minimal_ideals_rational(L: LieAlgebra) -> list[Subspace]:
    """Over Q a minimal ideal is killed by ``N(L)``; answer only when that leaves one candidate."""
    if L.dim == 0:
        return []
    N = nilradical(L)
    C = centralizer(L, N) & N
    if C.dim == 1:
        return [C]
    raise UnsupportedFieldError(
        f"minimal ideals over Q are only decided when they lie in a one-dimensional space (here {C.dim})")


def is_chief_factor(L: LieAlgebra, A: Subspace, B: Subspace) -> bool:
    """``A/B`` is a minimal ideal of ``L/B`` (both ideals, ``B ⊊ A``)."""
    return A in minimal_ideals_over(L, B)


# ---------------------------------------------------------------------------
# chief series

@dataclass(frozen=True)
class ChiefSeries:
    algebra: LieAlgebra
    chain: tuple
    complemented: tuple
    complements: tuple
    c_count: int

    def factors(self):
        return list(zip(self.chain, self.chain[1:]))


def complement_of(L: LieAlgebra, A: Subspace, B: Subspace) -> Optional[Subspace]:
    """A maximal subalgebra ``M`` with ``L = A + M`` and ``A ∩ M = B``, if one exists."""
    am, bm = A.mask, B.mask
    target = L.dim - A.dim + B.dim
    for M in maximal_spaces(L):
        if M.dim == target and M.mask & am == bm:
            return M
    return None


def chief_series(L: LieAlgebra, seed=None) -> ChiefSeries:
    """A chief series built bottom-up from minimal ideals of ``L/A_i``.

    Without a seed the least canonical basis is chosen at each step;
    with one, the choice is random but reproducible.
    """
    check_lattice_budget(L.dim, L.field)
    rng = random.Random(f"chief:{seed}") if seed is not None else None
    chain = [L.zero()]
    while not chain[-1].is_full():
        cands = minimal_ideals_over(L, chain[-1])
        chain.append(rng.choice(cands) if rng else min(cands, key=lambda S: S.basis))
    flags, wits = [], []
    for B, A in zip(chain, chain[1:]):
        M = complement_of(L, A, B)
        flags.append(M is not None)
        wits.append(induced(L, M) if M is not None else None)
    return ChiefSeries(L, tuple(chain), tuple(flags), tuple(wits), sum(flags))


def c_count(L: LieAlgebra) -> int:
    return chief_series(L).c_count


# ---------------------------------------------------------------------------
# inner automorphisms

@dataclass(frozen=True)
class InnerAutomorphismSet:
    algebra: LieAlgebra
    generators: tuple
    source_elements: tuple

    def __len__(self) -> int:
        return len(self.generators)


def exp_ad(L: LieAlgebra, x: Sequence):
    """``exp(ad x)`` as rows, or ``None`` when the series needs division by ``p``."""
    F, n = L.field, L.dim
    ad = L.ad(x)
    total = identity_rows(n)
    power = identity_rows(n)
    fact = 1
    r = 0
    while True:
        r += 1
        power = mat_mul(F, power, ad)
        if not any(any(row) for row in power):
            return total
        if F.p is not None and r >= F.p:
            return None
        fact *= r
        total = mat_add(F, total, mat_scale(F, F.inv(F(fact)), power))
        if r > n:
            return None


def is_automorphism(L: LieAlgebra, g) -> bool:
    F, n = L.field, L.dim
    cols = transpose(g, n)
    for i in range(n):
        for j in range(i + 1, n):
            if mat_vec(F, g, L.table[i][j]) != L.bracket(cols[i], cols[j]):
                return False
    return True


@memoized
def admissible_elements(L: LieAlgebra) -> tuple:
    """Elements lying in a nilpotent ideal of class ``< p`` (F_p)."""
    check_lattice_budget(L.dim, L.field)
    p = L.field.p
    mask = 0
    for I in all_ideals(L):
        c = nilpotency_class(L, I)
        if c is not None and c < p:
            mask |= I.mask
    out = []
    idx = 0
    while mask:
        if mask & 1:
            out.append(index_vector(idx, L.dim, p))
        mask >>= 1
        idx += 1
    return tuple(out)


@memoized
def inner_automorphisms(L: LieAlgebra) -> InnerAutomorphismSet:
    if L.field.p is None:
        # ad x is nilpotent exactly on the nilradical here; a basis suffices to name generators
        elems = nilradical(L).basis
    else:
        elems = admissible_elements(L)
    gens, srcs, seen = [], [], set()
    for x in elems:
        if not any(x):
            continue
        g = exp_ad(L, x)
        if g is None:
            if L.field.p is not None:
                raise TheoremViolation(f"exp(ad x) undefined for admissible x = {x}")
            continue
        if g in seen or g == identity_rows(L.dim):
            continue
        if not is_automorphism(L, g):
            raise TheoremViolation(f"exp(ad x) is not an automorphism for x = {x}")
        seen.add(g)
        gens.append(g)
        srcs.append(x)
    return InnerAutomorphismSet(L, tuple(gens), tuple(srcs))


# ---------------------------------------------------------------------------
# conjugacy classes of maximal subalgebras

@dataclass(frozen=True)
class ConjugacyClasses:
    classes: tuple
    m_count: int


def _image(L: LieAlgebra, g, S: Subspace) -> Subspace:
    return L.span(mat_vec(L.field, g, b) for b in S.basis)


def conjugacy_classes(L: LieAlgebra, targets=None) -> ConjugacyClasses:
    """Orbits of the maximal subalgebras under the inner automorphism generators."""
    if L.field.p is None:
        raise UnsupportedFieldError("conjugacy classes are only computed over F_p")
    if targets is None:
        spaces = list(maximal_spaces(L))
    else:
        spaces = list(getattr(targets, "spaces", targets))
    gens = inner_automorphisms(L).generators
    index = {S.basis: i for i, S in enumerate(spaces)}
    parent = list(range(len(spaces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, S in enumerate(spaces):
        for g in gens:
            T = _image(L, g, S)
            j = index.get(T.basis)
            if j is None:
                raise TheoremViolation("an automorphism moved a maximal subalgebra outside the target set")
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(len(spaces)):
        groups.setdefault(find(i), []).append(spaces[i])
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    return ConjugacyClasses(classes, len(classes))


def m_count(L: LieAlgebra) -> int:
    return _m_count(L)


@memoized
def _m_count(L: LieAlgebra) -> int:
    return conjugacy_classes(L).m_count


@memoized
def layered_conjugacy_classes(L: LieAlgebra) -> ConjugacyClasses:
    """Classes of the relation generated by conjugacy in ``L/B`` over every proper ideal ``B``.

    Maximal subalgebras containing ``N(L)`` are fixed by every ``exp(ad x)`` of ``L``,
    so this coarser relation is kept as a diagnostic beside ``m(L)``.
    """
    if L.field.p is None:
        raise UnsupportedFieldError("conjugacy classes are only computed over F_p")
    spaces = list(maximal_spaces(L))
    index = {S.basis: i for i, S in enumerate(spaces)}
    parent = list(range(len(spaces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for B in all_ideals(L):
        if B.is_full():
            continue
        q = quotient(L, B)
        for cls in conjugacy_classes(q.quotient).classes:
            ids = [index[q.pullback(M).basis] for M in cls]
            for j in ids[1:]:
                a, b = find(ids[0]), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups: dict = {}
    for i in range(len(spaces)):
        groups.setdefault(find(i), []).append(spaces[i])
    classes = tuple(tuple(v) for _, v in sorted(groups.items()))
    return ConjugacyClasses(classes, len(classes))


# ---------------------------------------------------------------------------
# primitivity

@dataclass(frozen=True)
class Primitivity:
    is_primitive: bool
    core_free_maximal: Optional[SubalgebraHandle]
    monolith: Optional[Subspace]
    abelian_socle: Subspace


def primitivity(L: LieAlgebra) -> Primitivity:
    check_lattice_budget(L.dim, L.field)
    witness = None
    for M in maximal_spaces(L):
        if core(L, M).is_zero():
            witness = induced(L, M)
            break
    mins = minimal_ideals(L)
    for A in mins:
        if not product_space(L, A, A).is_zero():
            raise TheoremViolation("a minimal ideal of a solvable algebra is not abelian")
    socle = span_all(L.field, L.dim, mins)
    monolith = mins[0] if len(mins) == 1 else None
    if witness is not None:
        if monolith is None:
            raise TheoremViolation("primitive algebra without a unique minimal ideal")
        if centralizer(L, monolith) != monolith:
            raise TheoremViolation("the monolith of a primitive algebra is not self-centralising")
    return Primitivity(witness is not None, witness, monolith, socle)


def complemented_minimal_ideals(L: LieAlgebra, B: Optional[Subspace] = None) -> list[Subspace]:
    """Minimal ideals ``A/B`` of ``L/B`` that have a complement, as ideals of ``L``."""
    B = L.zero() if B is None else B
    return [A for A in minimal_ideals_over(L, B) if complement_of(L, A, B) is not None]
