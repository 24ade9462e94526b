"""Building new algebras: semidirect products, direct sums, random solvable algebras."""
from __future__ import annotations

import random
from math import comb
from typing import Optional, Sequence

from .errors import BudgetExceededError, NotARepresentationError, RetryLimitExceeded, SolvLieError, UnsupportedFieldError
from .exactlin import (
    BUDGET,
    FieldSpec,
    Rows,
    commutator,
    identity_rows,
    lin_comb,
    mat_add,
    mat_mul,
    mat_scale,
    mat_vec,
    solve_kernel,
    transpose,
    unit_vector,
    zero_rows,
)
from .liealg import LieAlgebra, abelian, all_ideals, all_subalgebras, product_space


def _as_rows(F: FieldSpec, m) -> Rows:
    rows = getattr(m, "rows", m)
    return tuple(tuple(F(x) for x in r) for r in rows)


def check_representation(S: LieAlgebra, rep: Sequence) -> None:
    """Raise :class:`NotARepresentationError` unless ``rep`` respects brackets."""
    F = S.field
    n = S.dim
    for a in range(n):
        for b in range(a + 1, n):
            lhs = lin_comb_matrices(F, S.table[a][b], rep)
            rhs = commutator(F, rep[a], rep[b])
            if lhs != rhs:
                raise NotARepresentationError(a, b)


def lin_comb_matrices(F: FieldSpec, coeffs: Sequence, mats: Sequence[Rows]) -> Rows:
    if not mats:
        return ()
    k = len(mats[0])
    flat = lin_comb(F, coeffs, [sum(m, ()) for m in mats], k * k)
    return tuple(flat[r * k:(r + 1) * k] for r in range(k))


def semidirect(S: LieAlgebra, rep: Sequence, V_dim: int, labels=None, name=None) -> LieAlgebra:
    """``S ⋉ V`` with ``V`` an abelian ideal and ``[s, v] = rep(s) v``.

    The basis is that of ``S`` followed by the standard basis of ``V``.
    """
    F = S.field
    if len(rep) != S.dim:
        raise ValueError("need one matrix per basis element of S")
    rep = [_as_rows(F, m) for m in rep]
    for m in rep:
        if len(m) != V_dim or any(len(r) != V_dim for r in m):
            raise ValueError(f"representation matrices must be {V_dim}x{V_dim}")
    check_representation(S, rep)
    s, n = S.dim, S.dim + V_dim
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(s):
        for j in range(s):
            table[i][j][:s] = list(S.table[i][j])
        for c in range(V_dim):
            col = [rep[i][r][c] for r in range(V_dim)]
            table[i][s + c][s:] = col
            table[s + c][i][s:] = [F(-x) for x in col]
    if labels is None:
        labels = tuple(S.labels) + tuple(f"v{c + 1}" for c in range(V_dim))
        if len(set(labels)) < n:
            labels = None
    return LieAlgebra(F, table, labels=labels, name=name)


def split_extension(L: LieAlgebra, D, label: str = "d", name=None) -> LieAlgebra:
    """``F d ∔ L`` with ``[d, x] = D(x)``; ``d`` is placed last.

    ``D`` acts on column vectors (column ``c`` is ``D e_c``).
    """
    F = L.field
    D = _as_rows(F, getattr(D, "matrix", D))
    n = L.dim + 1
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(L.dim):
        for j in range(L.dim):
            table[i][j][:L.dim] = list(L.table[i][j])
    for c in range(L.dim):
        col = [D[r][c] for r in range(L.dim)]
        table[n - 1][c][:L.dim] = col
        table[c][n - 1][:L.dim] = [F(-x) for x in col]
    return LieAlgebra(F, table, labels=tuple(L.labels) + (label,), name=name)


def direct_sum(A: LieAlgebra, B: LieAlgebra) -> LieAlgebra:
    if A.field != B.field:
        raise SolvLieError("direct sum of algebras over different fields")
    n = A.dim + B.dim
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(A.dim):
        for j in range(A.dim):
            table[i][j][:A.dim] = list(A.table[i][j])
    for i in range(B.dim):
        for j in range(B.dim):
            table[A.dim + i][A.dim + j][A.dim:] = list(B.table[i][j])
    labels = tuple(A.labels) + tuple(B.labels)
    return LieAlgebra(A.field, table, labels=labels if len(set(labels)) == n else None)


def change_basis(L: LieAlgebra, g: Sequence[Sequence]) -> LieAlgebra:
    """The same algebra written in the basis given by the columns of ``g``."""
    F, n = L.field, L.dim
    g = _as_rows(F, g)
    cols = transpose(g, n)
    ginv = _inverse(F, g)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = mat_vec(F, ginv, L.bracket(cols[i], cols[j]))
    return LieAlgebra(F, table)


def _inverse(F: FieldSpec, g: Rows) -> Rows:
    n = len(g)
    aug = [tuple(g[r]) + unit_vector(n, r) for r in range(n)]
    from .exactlin import _rref

    basis, pivots = _rref(F, aug, 2 * n)
    if tuple(pivots[:n]) != tuple(range(n)) or len(basis) != n:
        raise ValueError("matrix is singular")
    return tuple(row[n:] for row in basis)


# ---------------------------------------------------------------------------
# random generation

def _rand_matrix(rng: random.Random, p: int, k: int) -> Rows:
    return tuple(tuple(rng.randrange(p) for _ in range(k)) for _ in range(k))


def _rand_invertible(rng: random.Random, F: FieldSpec, k: int) -> Rows:
    from .exactlin import rank

    while True:
        m = _rand_matrix(rng, F.p, k)
        if rank(F, m, k) == k:
            return m


def _abelianization_functionals(S: LieAlgebra) -> list:
    """Basis of linear functionals on ``S`` vanishing on ``S^2``."""
    D = product_space(S, S.full(), S.full())
    return [tuple(f) for f in solve_kernel(S.field, D.basis, S.dim)] if D.basis else [
        unit_vector(S.dim, i) for i in range(S.dim)
    ]


def _poly(F: FieldSpec, coeffs: Sequence, A: Rows) -> Rows:
    k = len(A)
    out = zero_rows(k, k)
    power = identity_rows(k)
    for c in coeffs:
        if c:
            out = mat_add(F, out, mat_scale(F, c, power))
        power = mat_mul(F, power, A)
    return out


def _module_abelian(rng, S: LieAlgebra, k: int) -> list:
    """Module through ``S/S^2``: commuting matrices, polynomials in one matrix."""
    F, p = S.field, S.field.p
    funcs = _abelianization_functionals(S)
    A = _rand_matrix(rng, p, k)
    if rng.random() < 0.5:
        # strictly/upper triangular matrices give indecomposable, non-split pieces
        A = tuple(tuple(A[r][c] if c >= r else 0 for c in range(k)) for r in range(k))
    images = [_poly(F, [rng.randrange(p) for _ in range(k)], A) for _ in funcs]
    if all(not any(any(r) for r in m) for m in images) and rng.random() < 0.8:
        images[0] = _poly(F, [rng.randrange(1, p)] + [rng.randrange(p) for _ in range(k - 1)], A)
    rep = []
    for i in range(S.dim):
        coeffs = [f[i] for f in funcs]
        rep.append(lin_comb_matrices(F, coeffs, images) if images else zero_rows(k, k))
    return rep


def _module_ideal(rng, S: LieAlgebra, k: int) -> Optional[list]:
    """An ideal of ``S`` of dimension ``k`` viewed as an ``S``-module."""
    ideals = [I for I in all_ideals(S) if I.dim == k]
    if not ideals:
        return None
    I = rng.choice(ideals)
    rep = []
    for i in range(S.dim):
        e = unit_vector(S.dim, i)
        cols = [I.coords(S.bracket(e, b)) for b in I.basis]
        rep.append(transpose(cols, k))
    return rep


def _module_shift(rng, S: LieAlgebra) -> Optional[list]:
    """A ``p``-dimensional module induced from a character of a codimension-one subalgebra.

    With ``S = H + F y`` the vectors ``v_i = y^i w`` span the module, ``y``
    shifts them, ``y^p`` acts by a random scalar and ``H`` acts on ``w``
    through a character.  The result is kept only if it really is a
    representation.
    """
    F, p = S.field, S.field.p
    n = S.dim
    hyper = [H for H in all_subalgebras(S) if H.dim == n - 1]
    if not hyper:
        return None
    H = rng.choice(hyper)
    c0 = H.nonpivots[0]
    y = unit_vector(n, c0)

    def split(v):
        a = H.reduce(v)[c0]
        return tuple(F(x - a * t) for x, t in zip(v, y)), a

    # character of H: vanishes on [H, H]
    HH = product_space(S, H, H)
    lam_space = [tuple(v) for v in solve_kernel(F, list(HH.basis), n)]
    lam = lin_comb(F, [rng.randrange(p) for _ in lam_space], lam_space, n)
    c = rng.randrange(p)
    ady = S.ad(y)

    def v_index(k):
        # y^k w in the basis v_0..v_{p-1}; y^p w = c w
        return (k, 1) if k < p else (k - p, c)

    def act_h(h):
        m = [[0] * p for _ in range(p)]
        powers = [h]
        for _ in range(p):
            powers.append(tuple(F(-x) for x in mat_vec(F, ady, powers[-1])))
        for i in range(p):
            for j in range(i + 1):
                hj, aj = split(powers[j])
                b = F(comb(i, j))
                if not b:
                    continue
                lv = F(sum(u * t for u, t in zip(lam, hj)))
                for k, coef in ((i - j, lv), (i - j + 1, aj)):
                    if coef:
                        row, scale = v_index(k)
                        m[row][i] = F(m[row][i] + b * coef * scale)
        return tuple(tuple(r) for r in m)

    Y = [[0] * p for _ in range(p)]
    for i in range(p - 1):
        Y[i + 1][i] = 1
    Y[0][p - 1] = c
    Y = tuple(tuple(r) for r in Y)
    rep = []
    for i in range(n):
        h, a = split(unit_vector(n, i))
        rep.append(mat_add(F, act_h(h), mat_scale(F, a, Y)))
    try:
        check_representation(S, rep)
    except NotARepresentationError:
        return None
    return rep


def _split_dims(rng, total: int, parts: int) -> list:
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_solvable(field: FieldSpec, target_dim: int, stages: int = 2, seed=0,
                    conjugate: bool = True, max_tries: int = 200) -> LieAlgebra:
    """A random solvable algebra of dimension ``target_dim`` over F_p.

    Starts from an abelian (or Heisenberg) algebra and performs ``stages``
    semidirect extensions by modules drawn from three families: modules
    pulled back from the abelianization, ideals of the adjoint module, and
    shift modules induced from a codimension-one ideal.  The result is put
    in a random basis unless ``conjugate`` is false.  Deterministic in
    ``seed``.
    """
    if field.p is None:
        raise UnsupportedFieldError("random generation is only implemented over F_p")
    if target_dim < 1:
        raise ValueError("target_dim must be positive")
    if not BUDGET.admits(target_dim, field.p):
        raise BudgetExceededError(f"dimension {target_dim} over {field.name} exceeds the budget",
                                  bound=BUDGET.max_dim.get(field.p))
    rng = random.Random(f"random_solvable:{field.name}:{target_dim}:{stages}:{seed}")
    stages = max(0, min(stages, target_dim - 1))
    if stages == 0:
        return abelian(field, target_dim)
    p = field.p
    for _ in range(max_tries):
        dims = _split_dims(rng, target_dim, stages + 1)
        if rng.random() < 0.5:
            # favour module dimensions equal to p, where shift modules live
            for _ in range(4):
                alt = _split_dims(rng, target_dim, stages + 1)
                if alt[1:].count(p) > dims[1:].count(p):
                    dims = alt
            # shift modules raise the nilpotent length most on top of a nonabelian algebra
            dims = dims[:1] + sorted(dims[1:], key=lambda k: k == p)
        if dims[0] == 3 and rng.random() < 0.3:
            S = LieAlgebra(field, _heisenberg_table(field))
        else:
            S = abelian(field, dims[0])
        ok = True
        for k in dims[1:]:
            choices = ["abelian", "ideal"] if not S.is_abelian else ["abelian"] * 3 + ["ideal"]
            if k == p:
                choices += ["shift"] * 3
            rep = None
            for _attempt in range(6):
                kind = rng.choice(choices)
                if kind == "abelian":
                    rep = _module_abelian(rng, S, k)
                elif kind == "ideal":
                    rep = _module_ideal(rng, S, k)
                else:
                    rep = _module_shift(rng, S)
                if rep is not None:
                    break
            if rep is None:
                ok = False
                break
            try:
                S = semidirect(S, rep, k)
            except SolvLieError:
                ok = False
                break
        if not ok:
            continue
        if conjugate:
            S = change_basis(S, _rand_invertible(rng, field, S.dim))
        return S
    raise RetryLimitExceeded(f"no solvable algebra generated after {max_tries} attempts")


def _heisenberg_table(F: FieldSpec) -> list:
    t = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    t[0][1][2] = 1
    t[1][0][2] = F(-1)
    return t
