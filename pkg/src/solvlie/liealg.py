"""Lie algebras given by structure constants, and their subobjects."""
from __future__ import annotations

import functools
from collections import OrderedDict
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import (
    AmbientMismatchError,
    AntisymmetryViolation,
    FieldMismatchError,
    JacobiViolation,
    NotAnIdealError,
    NotSolvableError,
    PreconditionError,
)
from .exactlin import (
    FieldSpec,
    Matrix,
    Rows,
    Subspace,
    Vector,
    check_lattice_budget,
    enumerate_subspaces,
    identity_rows,
    lin_comb,
    mat_vec,
    solve_kernel,
    transpose,
    unit_vector,
    vector_index,
)

# ---------------------------------------------------------------------------
# memo shared by structurally identical algebras

_MEMO: "OrderedDict[tuple, dict]" = OrderedDict()
MEMO_SIZE = 2048


def _memo_for(key) -> dict:
    d = _MEMO.get(key)
    if d is None:
        d = {}
        _MEMO[key] = d
        if len(_MEMO) > MEMO_SIZE:
            _MEMO.popitem(last=False)
    else:
        _MEMO.move_to_end(key)
    return d


def clear_memo() -> None:
    _MEMO.clear()


def memoized(fn: Callable) -> Callable:
    """Cache ``fn(L, *args)`` per algebra; ``args`` must be hashable."""
    name = fn.__module__ + "." + fn.__qualname__

    @functools.wraps(fn)
    def wrapper(L, *args):
        d = L.memo
        key = (name,) + args
        try:
            return d[key]
        except KeyError:
            pass
        val = fn(L, *args)
        d[key] = val
        return val

    wrapper.uncached = fn
    return wrapper


# ---------------------------------------------------------------------------

class LieAlgebra:
    """A finite-dimensional solvable Lie algebra over Q or F_p.

    ``table[i][j]`` is the coordinate vector of ``[e_i, e_j]``.  Instances
    are validated on construction (alternating, Jacobi, solvable) and are
    immutable.  Equality and hashing ignore labels.
    """

    def __init__(self, field: FieldSpec, table: Sequence[Sequence[Sequence]], labels=None, name=None):
        n = len(table)
        self.field = field
        self.dim = n
        tab = []
        for i in range(n):
            if len(table[i]) != n:
                raise ValueError("structure constant table is not square")
            row = []
            for j in range(n):
                v = table[i][j]
                if len(v) != n:
                    raise ValueError(f"bracket [e{i}, e{j}] has wrong length")
                row.append(tuple(field(x) for x in v))
            tab.append(tuple(row))
        self.table: tuple = tuple(tab)
        if labels is None:
            labels = tuple(f"e{i + 1}" for i in range(n))
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError("wrong number of basis labels")
        self.labels = labels
        self.name = name
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(self.table[i][j]) if c) for j in range(n))
            for i in range(n)
        )
        self._check_alternating()
        self._check_jacobi()
        self.derived_length = self._check_solvable()

    # -- validation ------------------------------------------------------
    def _check_alternating(self) -> None:
        n, F = self.dim, self.field
        for i in range(n):
            for k, c in enumerate(self.table[i][i]):
                if c:
                    raise AntisymmetryViolation(i, i, k)
            for j in range(i + 1, n):
                neg = tuple(F(-x) for x in self.table[j][i])
                if neg != self.table[i][j]:
                    k = next(k for k in range(n) if neg[k] != self.table[i][j][k])
                    raise AntisymmetryViolation(i, j, k)

    def _check_jacobi(self) -> None:
        n = self.dim
        e = [unit_vector(n, i) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = [0] * n
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        t = self.bracket(self.table[a][b], e[c])
                        for m in range(n):
                            s[m] += t[m]
                    if any(self.field(x) for x in s):
                        raise JacobiViolation(i, j, k)

    def _check_solvable(self) -> int:
        cur = self.full()
        length = 0
        while cur.dim:
            nxt = product_space(self, cur, cur)
            if nxt == cur:
                raise NotSolvableError(cur)
            cur = nxt
            length += 1
        return length

    # -- identity ----------------------------------------------------------
    @functools.cached_property
    def key(self) -> tuple:
        return (self.field, self.table)

    @property
    def memo(self) -> dict:
        return _memo_for(self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieAlgebra) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        nm = f"{self.name}, " if self.name else ""
        return f"LieAlgebra({nm}dim={self.dim}, {self.field.name})"

    def describe(self) -> str:
        """The nonzero products ``[e_i, e_j]`` with ``i < j``."""
        from .exactlin import format_vector

        parts = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.table[i][j]
                if any(v):
                    parts.append(f"[{self.labels[i]},{self.labels[j]}]={format_vector(v, self.labels)}")
        return ", ".join(parts) if parts else "abelian"

    # -- spaces ---------------------------------------------------------------
    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def vector(self, coeffs: Mapping) -> Vector:
        """Vector from ``{label_or_index: coefficient}``."""
        v = [0] * self.dim
        for key, c in coeffs.items():
            i = self.labels.index(key) if isinstance(key, str) else key
            v[i] = self.field(c)
        return tuple(v)

    def spanned(self, *labels: str) -> Subspace:
        """Subspace spanned by named basis vectors (or ``"x+y"`` sums)."""
        vecs = []
        for lab in labels:
            v = [0] * self.dim
            for part in lab.split("+"):
                v[self.labels.index(part.strip())] += 1
            vecs.append(tuple(self.field(x) for x in v))
        return self.span(vecs)

    # -- bracket --------------------------------------------------------------
    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        n = self.dim
        if len(u) != n or len(v) != n:
            raise AmbientMismatchError(f"vectors of length {len(u)}, {len(v)} in a {n}-dimensional algebra")
        acc = [0] * n
        sp = self._sparse
        for i, a in enumerate(u):
            if a:
                row = sp[i]
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in row[j]:
                            acc[k] += ab * c
        p = self.field.p
        if p:
            return tuple(x % p for x in acc)
        return tuple(acc)

    def ad(self, x: Sequence) -> Rows:
        """Matrix (rows) of ``y -> [x, y]``."""
        n = self.dim
        cols = [self.bracket(x, unit_vector(n, j)) for j in range(n)]
        return transpose(cols, n) if n else ()

    @functools.cached_property
    def ad_basis(self) -> tuple:
        return tuple(self.ad(unit_vector(self.dim, i)) for i in range(self.dim))

    @functools.cached_property
    def is_abelian(self) -> bool:
        return not any(any(v) for row in self.table for v in row)

    def constants(self) -> list:
        """Full cube ``c[i][j][k]``."""
        return [[list(v) for v in row] for row in self.table]


def validate(constants, field: FieldSpec, dim: int, labels=None, name=None) -> LieAlgebra:
    """Build a :class:`LieAlgebra` from a full cube ``c[i][j][k]``."""
    if len(constants) != dim:
        raise ValueError(f"expected {dim} rows of structure constants")
    return LieAlgebra(field, constants, labels=labels, name=name)


def from_brackets(field: FieldSpec, dim: int, brackets: Mapping, labels=None, name=None) -> LieAlgebra:
    """Build an algebra from ``{(i, j): vector_or_{k: coeff}}`` with i < j.

    Indices may be integers or labels.  Unlisted products are zero.
    """
    if labels is not None:
        labels = tuple(labels)
    idx = (lambda a: labels.index(a) if isinstance(a, str) else a) if labels else (lambda a: a)
    table = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for (a, b), val in brackets.items():
        i, j = idx(a), idx(b)
        if isinstance(val, Mapping):
            vec = [0] * dim
            for k, c in val.items():
                vec[idx(k)] = field(c)
        else:
            vec = [field(c) for c in val]
        table[i][j] = list(vec)
        if i != j:
            table[j][i] = [field(-c) for c in vec]
    return LieAlgebra(field, table, labels=labels, name=name)


def abelian(field: FieldSpec, dim: int, labels=None) -> LieAlgebra:
    return LieAlgebra(field, [[[0] * dim for _ in range(dim)] for _ in range(dim)], labels=labels)


def bracket(L: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    return L.bracket(u, v)


# ---------------------------------------------------------------------------
# products and closures

def _check_space(L: LieAlgebra, *spaces: Subspace) -> None:
    for s in spaces:
        if s.field != L.field:
            raise FieldMismatchError(f"subspace over {s.field} in algebra over {L.field}")
        if s.ambient_dim != L.dim:
            raise AmbientMismatchError(f"subspace of ambient dimension {s.ambient_dim} in {L.dim}-dim algebra")


def product_space(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """Span of ``[u, v]`` over basis vectors of ``U`` and ``V``."""
    _check_space(L, U, V)
    vecs = []
    for u in U.basis:
        for v in V.basis:
            w = L.bracket(u, v)
            if any(w):
                vecs.append(w)
    return L.span(vecs)


def derived_series_of(L: LieAlgebra, U: Subspace) -> list[Subspace]:
    out = [U]
    while True:
        nxt = product_space(L, out[-1], out[-1])
        if nxt == out[-1]:
            return out
        out.append(nxt)


def lower_central_of(L: LieAlgebra, U: Subspace) -> list[Subspace]:
    """``U = U^1 ⊇ U^2 ⊇ ...`` until it stabilises (last entry repeated once)."""
    out = [U]
    while True:
        nxt = product_space(L, out[-1], U)
        if nxt == out[-1]:
            return out
        out.append(nxt)


def is_nilpotent_space(L: LieAlgebra, U: Subspace) -> bool:
    return lower_central_of(L, U)[-1].is_zero()


def nilpotency_class(L: LieAlgebra, U: Optional[Subspace] = None) -> Optional[int]:
    """``c`` with ``U^{c+1} = 0 != U^c``; 0 for the zero space, None if not nilpotent."""
    U = L.full() if U is None else U
    series = lower_central_of(L, U)
    if not series[-1].is_zero():
        return None
    return len(series) - 1


def acts_nilpotently(L: LieAlgebra, K: Subspace, V: Optional[Subspace] = None) -> bool:
    """Whether ``ad K`` acts nilpotently on the ``ad K``-invariant space ``V``."""
    V = L.full() if V is None else V
    cur = V
    for _ in range(V.dim + 1):
        if cur.is_zero():
            return True
        cur = product_space(L, K, cur)
    return cur.is_zero()


@dataclass(frozen=True)
class SubalgebraHandle:
    """A subalgebra ``space`` of ``parent`` with its induced structure.

    The induced algebra uses the RREF basis of ``space``; coordinates of an
    element are its entries in the pivot columns.
    """

    parent: LieAlgebra
    space: Subspace
    induced: LieAlgebra

    @property
    def dim(self) -> int:
        return self.space.dim

    def embed(self, coords: Sequence) -> Vector:
        return self.space.from_coords(coords)

    def embed_space(self, S: Subspace) -> Subspace:
        return self.parent.span(self.embed(r) for r in S.basis)

    def restrict(self, U: Subspace) -> Subspace:
        """Coordinates of a subspace ``U ⊆ space`` in the induced algebra."""
        return self.induced.span(self.space.coords(r) for r in U.basis)

    def pretty(self) -> str:
        return self.space.pretty(self.parent.labels)


def induced(L: LieAlgebra, U: Subspace) -> SubalgebraHandle:
    _check_space(L, U)
    k = U.dim
    table = [[None] * k for _ in range(k)]
    for a in range(k):
        for b in range(k):
            w = L.bracket(U.basis[a], U.basis[b])
            if any(U.reduce(w)):
                raise PreconditionError(f"{U} is not closed under the bracket")
            table[a][b] = U.coords(w)
    labels = [_label_of(r, L.labels) for r in U.basis]
    return SubalgebraHandle(L, U, LieAlgebra(L.field, table, labels=labels))


def _label_of(v, labels) -> str:
    from .exactlin import format_vector

    return format_vector(v, labels)


def subalgebra_closure(L: LieAlgebra, seed: Subspace) -> SubalgebraHandle:
    _check_space(L, seed)
    cur = seed
    while True:
        nxt = cur + product_space(L, cur, cur)
        if nxt == cur:
            return induced(L, cur)
        cur = nxt


def is_subalgebra(L: LieAlgebra, U: Subspace) -> bool:
    b = U.basis
    for a in range(len(b)):
        for c in range(a + 1, len(b)):
            if not U.contains(L.bracket(b[a], b[c])):
                return False
    return True


def is_ideal(L: LieAlgebra, U: Subspace) -> bool:
    for ad in L.ad_basis:
        for u in U.basis:
            if not U.contains(mat_vec(L.field, ad, u)):
                return False
    return True


def _solve_in(L: LieAlgebra, domain: Subspace, conditions: Callable[[Vector], list]) -> Subspace:
    """Subspace of ``domain`` on which the linear map ``conditions`` vanishes."""
    F = L.field
    if domain.is_zero():
        return domain
    images = [conditions(b) for b in domain.basis]
    m = len(images[0])
    rows = [[images[a][t] for a in range(domain.dim)] for t in range(m)]
    ker = solve_kernel(F, rows, domain.dim)
    return L.span(domain.from_coords(c) for c in ker)


def idealizer(L: LieAlgebra, U: Subspace) -> Subspace:
    """``{x in L : [x, U] ⊆ U}``."""
    _check_space(L, U)

    def cond(x):
        out = []
        for u in U.basis:
            out.extend(U.reduce(L.bracket(x, u)))
        return out

    if U.is_zero():
        return L.full()
    return _solve_in(L, L.full(), cond)


def ideal_closure(L: LieAlgebra, U: Subspace, K: Optional[Subspace] = None) -> Subspace:
    """Smallest subspace containing ``U`` stable under ``ad K`` (default ``K = L``)."""
    K = L.full() if K is None else K
    cur = U
    while True:
        nxt = cur + product_space(L, K, cur)
        if nxt == cur:
            return cur
        cur = nxt


@dataclass(frozen=True)
class IdealTests:
    is_subalgebra: bool
    is_ideal: bool
    idealizer: Subspace
    is_subideal: bool
    subideal_chain: tuple


def ideal_tests(L: LieAlgebra, U: Subspace) -> IdealTests:
    """Subalgebra/ideal/subideal status of ``U``.

    Subideality is decided by the descending series of ideal closures
    ``K_0 = L``, ``K_{i+1}`` = ideal closure of ``U`` in ``K_i``; ``U`` is a
    subideal iff this reaches ``U``.  The witness chain is returned in
    ascending order ``U = K_m ⊲ ... ⊲ K_0 = L``.
    """
    _check_space(L, U)
    sub = is_subalgebra(L, U)
    chain = [L.full()]
    if sub:
        while True:
            nxt = ideal_closure(L, U, chain[-1])
            if nxt == chain[-1]:
                break
            chain.append(nxt)
    is_sub = sub and chain[-1] == U
    return IdealTests(
        is_subalgebra=sub,
        is_ideal=sub and is_ideal(L, U),
        idealizer=idealizer(L, U),
        is_subideal=is_sub,
        subideal_chain=tuple(reversed(chain)) if is_sub else (),
    )


def core(L: LieAlgebra, U: Subspace) -> Subspace:
    """Largest ideal of ``L`` contained in ``U``."""
    _check_space(L, U)
    cur = U
    while True:
        def cond(x, cur=cur):
            out = []
            for ad in L.ad_basis:
                out.extend(cur.reduce(mat_vec(L.field, ad, x)))
            return out

        nxt = _solve_in(L, cur, cond)
        if nxt == cur:
            return cur
        cur = nxt


def centralizer(L: LieAlgebra, U: Subspace, B: Optional[Subspace] = None) -> Subspace:
    """``C_L(U/B) = {x : [x, U] ⊆ B}``."""
    B = L.zero() if B is None else B
    _check_space(L, U, B)
    if not B.issubset(U):
        raise PreconditionError("centralizer needs B ⊆ U")
    if U.is_zero():
        return L.full()

    def cond(x):
        out = []
        for u in U.basis:
            out.extend(B.reduce(L.bracket(x, u)))
        return out

    return _solve_in(L, L.full(), cond)


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, L.full())


# ---------------------------------------------------------------------------
# quotients

@dataclass(frozen=True)
class QuotientMap:
    """``L -> L/I`` with the transversal spanned by the non-pivot basis vectors of ``I``."""

    parent: LieAlgebra
    ideal: Subspace
    quotient: LieAlgebra

    @property
    def transversal(self) -> tuple[int, ...]:
        return self.ideal.nonpivots

    @property
    def section(self) -> Matrix:
        """``dim L x dim Q`` matrix lifting quotient coordinates."""
        n, t = self.parent.dim, self.transversal
        rows = tuple(tuple(1 if i == c else 0 for c in t) for i in range(n))
        return Matrix(self.parent.field, rows, len(t))

    @property
    def projection(self) -> Matrix:
        """``dim Q x dim L`` matrix of the projection."""
        n = self.parent.dim
        cols = [self.project(unit_vector(n, i)) for i in range(n)]
        return Matrix(self.parent.field, transpose(cols, len(self.transversal)), n)

    def project(self, v: Sequence) -> Vector:
        r = self.ideal.reduce(v)
        return tuple(r[c] for c in self.transversal)

    def lift(self, q: Sequence) -> Vector:
        v = [0] * self.parent.dim
        for c, x in zip(self.transversal, q):
            v[c] = x
        return tuple(v)

    def push(self, U: Subspace) -> Subspace:
        return self.quotient.span(self.project(u) for u in U.basis)

    def pullback(self, S: Subspace) -> Subspace:
        return self.ideal + self.parent.span(self.lift(r) for r in S.basis)


def quotient(L: LieAlgebra, I: Subspace) -> QuotientMap:
    _check_space(L, I)
    if not is_ideal(L, I):
        raise NotAnIdealError(f"{I.pretty(L.labels)} is not an ideal")
    t = I.nonpivots
    m = len(t)
    table = [[None] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            w = L.table[t[a]][t[b]]
            r = I.reduce(w)
            table[a][b] = tuple(r[c] for c in t)
    Q = LieAlgebra(L.field, table, labels=[L.labels[c] for c in t])
    return QuotientMap(L, I, Q)


# ---------------------------------------------------------------------------
# derivations

@dataclass(frozen=True)
class Derivation:
    """Linear map ``D`` with ``D e_c`` = column ``c`` of ``matrix``."""

    algebra: LieAlgebra
    matrix: Rows

    def apply(self, v: Sequence) -> Vector:
        return mat_vec(self.algebra.field, self.matrix, v)

    def image(self, U: Subspace) -> Subspace:
        return self.algebra.span(self.apply(u) for u in U.basis)

    def is_derivation(self) -> bool:
        return is_derivation(self.algebra, self.matrix)


def is_derivation(L: LieAlgebra, D: Rows) -> bool:
    F, n = L.field, L.dim
    e = [unit_vector(n, i) for i in range(n)]
    De = [mat_vec(F, D, e[i]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = mat_vec(F, D, L.table[i][j])
            rhs = lin_comb(F, (1, 1), (L.bracket(De[i], e[j]), L.bracket(e[i], De[j])), n)
            if lhs != rhs:
                return False
    return True


@dataclass(frozen=True)
class DerivationSpace:
    algebra: LieAlgebra
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def characteristic(self, I: Subspace) -> bool:
        return self.witness_not_characteristic(I) is None

    def witness_not_characteristic(self, I: Subspace) -> Optional[Derivation]:
        for D in self.basis:
            if not D.image(I).issubset(I):
                return D
        return None

    def induced(self, q: QuotientMap, D: Derivation) -> Derivation:
        """The derivation ``x + I -> D(x) + I`` of ``L/I``."""
        if not self.characteristic(q.ideal):
            raise PreconditionError("the ideal is not characteristic")
        m = q.quotient.dim
        cols = [q.project(D.apply(q.lift(unit_vector(m, a)))) for a in range(m)]
        return Derivation(q.quotient, transpose(cols, m) if m else ())

    def combination(self, coeffs: Sequence) -> Derivation:
        n = self.algebra.dim
        F = self.algebra.field
        flat = lin_comb(F, coeffs, [sum(D.matrix, ()) for D in self.basis], n * n)
        return Derivation(self.algebra, tuple(flat[r * n:(r + 1) * n] for r in range(n)))


def derivations(L: LieAlgebra) -> DerivationSpace:
    return _derivations(L)


@memoized
def _derivations(L: LieAlgebra) -> DerivationSpace:
    F, n = L.field, L.dim
    c = L.table
    nv = n * n
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            for m in range(n):
                row = [0] * nv
                for k in range(n):
                    if c[i][j][k]:
                        row[m * n + k] += c[i][j][k]
                    if c[k][j][m]:
                        row[k * n + i] -= c[k][j][m]
                    if c[i][k][m]:
                        row[k * n + j] -= c[i][k][m]
                if any(row):
                    rows.append([F(x) for x in row])
    ker = solve_kernel(F, rows, nv)
    basis = tuple(Derivation(L, tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n))) for v in ker)
    return DerivationSpace(L, basis)


def inner_derivation(L: LieAlgebra, x: Sequence) -> Derivation:
    return Derivation(L, L.ad(x))


# ---------------------------------------------------------------------------
# lattices over F_p

@memoized
def all_subalgebras(L: LieAlgebra) -> tuple[Subspace, ...]:
    """Every subalgebra of ``L`` (F_p), in enumeration order."""
    check_lattice_budget(L.dim, L.field)
    return tuple(U for U in enumerate_subspaces(L.dim, L.field) if is_subalgebra(L, U))


@memoized
def all_ideals(L: LieAlgebra) -> tuple[Subspace, ...]:
    check_lattice_budget(L.dim, L.field)
    if L.is_abelian:
        return tuple(enumerate_subspaces(L.dim, L.field))
    p = L.field.p
    out = []
    for U in enumerate_subspaces(L.dim, L.field):
        m = U.mask
        ok = True
        for ad in L.ad_basis:
            for u in U.basis:
                if not (m >> vector_index(mat_vec(L.field, ad, u), p)) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(U)
    return tuple(out)


def subalgebras_within(L: LieAlgebra, U: Subspace) -> list[Subspace]:
    """Subalgebras of ``L`` contained in ``U``."""
    m = U.mask
    return [S for S in all_subalgebras(L) if S.mask & m == S.mask]


def element_indices(U: Subspace) -> list[int]:
    m = U.mask
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return out


def basis_identity(n: int) -> Rows:
    return identity_rows(n)
