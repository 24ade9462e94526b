"""Exact linear algebra over Q and prime fields F_p.

Vectors are plain tuples of field elements: ``Fraction``/``int`` over Q,
residues ``0..p-1`` over F_p.  Subspaces are stored by their reduced row
echelon basis, so two subspaces are equal exactly when their bases are.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .errors import (
    AmbientMismatchError,
    BudgetExceededError,
    FieldMismatchError,
    NotPrimeError,
    ParseError,
    UnsupportedFieldError,
)

Vector = tuple
Rows = tuple

# element bitmasks are used only for ambient spaces with at most this many vectors
MASK_LIMIT = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Either the rationals (``p is None``) or the prime field F_p."""

    p: Optional[int] = None

    def __post_init__(self):
        if self.p is not None and (isinstance(self.p, bool) or not isinstance(self.p, int) or not is_prime(self.p)):
            raise NotPrimeError(f"field modulus {self.p!r} is not prime")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``, ``F3``, ``F_3``, ``GF(3)`` or a bare prime."""
        t = text.strip().replace("_", "").replace(" ", "")
        if t.upper() in ("Q", "QQ"):
            return cls.rationals()
        for prefix in ("GF(", "F(", "FP(", "GF", "FP", "F"):
            if t.upper().startswith(prefix):
                t = t[len(prefix):].rstrip(")")
                break
        try:
            p = int(t)
        except ValueError:
            raise ParseError(f"cannot parse field {text!r}", field="field") from None
        return cls.prime(p)

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime-field"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __str__(self) -> str:
        return self.name

    def __call__(self, x):
        """Coerce an int, Fraction or ``"a/b"`` string into this field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            raise FieldMismatchError(f"{x!r} is not a rational number")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise FieldMismatchError(f"{x} has denominator divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        raise FieldMismatchError(f"{x!r} cannot be coerced into {self.name}")

    def check(self, x) -> None:
        """Raise unless ``x`` is already a canonical element of this field."""
        if isinstance(x, bool):
            raise FieldMismatchError(f"{x!r} is not a field element")
        if self.p is None:
            if not isinstance(x, (int, Fraction)):
                raise FieldMismatchError(f"{x!r} is not an element of Q")
        elif not isinstance(x, int) or not 0 <= x < self.p:
            raise FieldMismatchError(f"{x!r} is not an element of {self.name}")

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return Fraction(1) / x
        return pow(x, -1, self.p)

    def elements(self) -> range:
        if self.p is None:
            raise UnsupportedFieldError("Q is infinite")
        return range(self.p)

    def to_str(self, x) -> str:
        return str(x)


QQ = FieldSpec.rationals()


# ---------------------------------------------------------------------------
# vector / matrix helpers (raw tuples)

def zero_vector(n: int) -> Vector:
    return (0,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [0] * n
    v[i] = 1
    return tuple(v)


def vec_add(F: FieldSpec, u: Sequence, v: Sequence) -> Vector:
    p = F.p
    if p:
        return tuple((a + b) % p for a, b in zip(u, v))
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(F: FieldSpec, u: Sequence, v: Sequence) -> Vector:
    p = F.p
    if p:
        return tuple((a - b) % p for a, b in zip(u, v))
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(F: FieldSpec, c, v: Sequence) -> Vector:
    p = F.p
    if p:
        return tuple(c * a % p for a in v)
    return tuple(c * a for a in v)


def lin_comb(F: FieldSpec, coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    acc[k] += c * a
    if F.p:
        return tuple(a % F.p for a in acc)
    return tuple(acc)


def mat_vec(F: FieldSpec, m: Sequence[Sequence], v: Sequence) -> Vector:
    """``m @ v`` with ``m`` given as rows."""
    p = F.p
    out = []
    for row in m:
        s = 0
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s % p if p else s)
    return tuple(out)


def mat_mul(F: FieldSpec, a: Sequence[Sequence], b: Sequence[Sequence]) -> Rows:
    p = F.p
    cols = list(zip(*b)) if b else []
    out = []
    for row in a:
        r = []
        for col in cols:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            r.append(s % p if p else s)
        out.append(tuple(r))
    return tuple(out)


def mat_add(F: FieldSpec, a, b) -> Rows:
    return tuple(vec_add(F, r, s) for r, s in zip(a, b))


def mat_sub(F: FieldSpec, a, b) -> Rows:
    return tuple(vec_sub(F, r, s) for r, s in zip(a, b))


def mat_scale(F: FieldSpec, c, a) -> Rows:
    return tuple(vec_scale(F, c, r) for r in a)


def identity_rows(n: int) -> Rows:
    return tuple(unit_vector(n, i) for i in range(n))


def zero_rows(r: int, c: int) -> Rows:
    return tuple((0,) * c for _ in range(r))


def transpose(a: Sequence[Sequence], ncols: Optional[int] = None) -> Rows:
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def commutator(F: FieldSpec, a, b) -> Rows:
    return mat_sub(F, mat_mul(F, a, b), mat_mul(F, b, a))


def is_zero_rows(a) -> bool:
    return all(not x for row in a for x in row)


@dataclass(frozen=True)
class Matrix:
    """A rectangular matrix whose entries all belong to ``field``.

    Construction is strict: entries must already be canonical elements of
    the field.  Use :meth:`coerce` to reduce arbitrary integers/fractions.
    """

    field: FieldSpec
    rows: Rows
    ncols: int = -1

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        ncols = self.ncols
        if ncols < 0:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("matrix rows have unequal length")
            for x in r:
                self.field.check(x)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "ncols", ncols)

    @classmethod
    def coerce(cls, field: FieldSpec, rows, ncols: int = -1) -> "Matrix":
        return cls(field, tuple(tuple(field(x) for x in r) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, idx):
        r, c = idx
        return self.rows[r][c]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if other.field != self.field:
            raise FieldMismatchError("matrices over different fields")
        return Matrix(self.field, mat_mul(self.field, self.rows, other.rows), other.ncols)

    def apply(self, v: Sequence) -> Vector:
        return mat_vec(self.field, self.rows, v)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, transpose(self.rows, self.ncols), self.nrows)


# ---------------------------------------------------------------------------
# elimination

def _rref(F: FieldSpec, rows: Iterable[Sequence], ncols: int) -> tuple[Rows, tuple[int, ...]]:
    p = F.p
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        a = row[c]
        if a != 1:
            inv = F.inv(a)
            if p:
                row = [x * inv % p for x in row]
            else:
                row = [x * inv for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    if p:
                        m[i] = [(x - f * y) % p for x, y in zip(other, row)]
                    else:
                        m[i] = [x - f * y for x, y in zip(other, row)]
        pivots.append(c)
        r += 1
    basis = tuple(tuple(_canon(F, x) for x in m[i]) for i in range(r))
    return basis, tuple(pivots)


def _canon(F: FieldSpec, x):
    if F.p is None and isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def _reduce(F: FieldSpec, basis: Rows, pivots: Sequence[int], v: Sequence) -> list:
    """Residual of ``v`` modulo an RREF basis (zero at every pivot column)."""
    p = F.p
    v = list(v)
    for row, c in zip(basis, pivots):
        f = v[c]
        if f:
            if p:
                v = [(x - f * y) % p for x, y in zip(v, row)]
            else:
                v = [x - f * y for x, y in zip(v, row)]
    return v


def _kernel(F: FieldSpec, rref_rows: Rows, pivots: Sequence[int], ncols: int) -> Rows:
    """Null space basis of ``x -> m x`` read off an RREF."""
    p = F.p
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for row, c in zip(rref_rows, pivots):
            a = row[fcol]
            if a:
                v[c] = (-a) % p if p else -a
        vecs.append(tuple(v))
    return tuple(vecs)


def rref_kernel(m: Matrix) -> tuple[Matrix, "Subspace", int]:
    """Return ``(rref(m), kernel(m), rank(m))``; kernel is the right null space."""
    F = m.field
    basis, pivots = _rref(F, m.rows, m.ncols)
    kernel = Subspace.span(F, m.ncols, _kernel(F, basis, pivots, m.ncols))
    rref = Matrix(F, basis + zero_rows(m.nrows - len(basis), m.ncols), m.ncols)
    return rref, kernel, len(basis)


def solve_kernel(F: FieldSpec, rows: Sequence[Sequence], ncols: int) -> Rows:
    """Basis of ``{x : r . x = 0 for every r in rows}``."""
    basis, pivots = _rref(F, rows, ncols)
    return _kernel(F, basis, pivots, ncols)


def rank(F: FieldSpec, rows: Sequence[Sequence], ncols: int) -> int:
    return len(_rref(F, rows, ncols)[0])


# ---------------------------------------------------------------------------
# subspaces

def vector_index(v: Sequence[int], p: int) -> int:
    idx = 0
    mul = 1
    for a in v:
        idx += a * mul
        mul *= p
    return idx


def index_vector(idx: int, n: int, p: int) -> Vector:
    out = []
    for _ in range(n):
        idx, r = divmod(idx, p)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``field^ambient_dim`` held in canonical RREF form."""

    field: FieldSpec
    ambient_dim: int
    basis: Rows = ()

    def __post_init__(self):
        # Cheap canonicality check; every constructor path goes through _rref.
        piv = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise AmbientMismatchError("basis row has wrong length")
            c = next((i for i, x in enumerate(row) if x), None)
            if c is None or c <= piv or row[c] != 1:
                raise ValueError("basis is not in reduced row echelon form")
            piv = c

    # construction -----------------------------------------------------
    @classmethod
    def span(cls, field: FieldSpec, n: int, vectors: Iterable[Sequence] = ()) -> "Subspace":
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise AmbientMismatchError(f"vector of length {len(v)} in ambient dimension {n}")
        basis, _ = _rref(field, vectors, n)
        return cls(field, n, basis)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, identity_rows(n))

    # basic data -------------------------------------------------------
    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(r) if x) for r in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    @cached_property
    def nonpivots(self) -> tuple[int, ...]:
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def as_matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    # membership -------------------------------------------------------
    def reduce(self, v: Sequence) -> Vector:
        return tuple(_reduce(self.field, self.basis, self.pivots, v))

    def contains(self, v: Sequence) -> bool:
        if self._masked and len(v) == self.ambient_dim:
            return (self.mask >> vector_index(v, self.field.p)) & 1 == 1
        return not any(_reduce(self.field, self.basis, self.pivots, v))

    __contains__ = contains

    def coords(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` (assumed inside) in the RREF basis."""
        return tuple(v[c] for c in self.pivots)

    def from_coords(self, coeffs: Sequence) -> Vector:
        return lin_comb(self.field, coeffs, self.basis, self.ambient_dim)

    def _check(self, other: "Subspace") -> None:
        if other.field != self.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if other.ambient_dim != self.ambient_dim:
            raise AmbientMismatchError(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        if self._masked:
            m = other.mask
            return self.mask & m == self.mask
        return all(other.contains(r) for r in self.basis)

    __le__ = issubset

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self.issubset(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    # finite-field extras ----------------------------------------------
    def elements(self) -> Iterator[Vector]:
        F = self.field
        if F.p is None:
            raise UnsupportedFieldError("cannot list the elements of a subspace over Q")
        for coeffs in itertools.product(range(F.p), repeat=self.dim):
            yield lin_comb(F, coeffs, self.basis, self.ambient_dim)

    @cached_property
    def mask(self) -> int:
        """Bit ``vector_index(v)`` is set for every element ``v`` (F_p only)."""
        p = self.field.p
        if p is None:
            raise UnsupportedFieldError("element masks exist only over F_p")
        elems = [(0,) * self.ambient_dim]
        for row in self.basis:
            elems = [tuple((a + c * b) % p for a, b in zip(e, row)) for e in elems for c in range(p)]
        m = 0
        for v in elems:
            m |= 1 << vector_index(v, p)
        return m

    @property
    def _masked(self) -> bool:
        p = self.field.p
        return p is not None and p ** self.ambient_dim <= MASK_LIMIT

    def __repr__(self) -> str:
        return f"Subspace({self.field.name}^{self.ambient_dim}, {[list(r) for r in self.basis]})"

    def pretty(self, labels: Optional[Sequence[str]] = None) -> str:
        if not self.basis:
            return "0"
        if labels is None:
            labels = [f"e{i + 1}" for i in range(self.ambient_dim)]
        return "<" + ", ".join(format_vector(r, labels) for r in self.basis) + ">"


def format_vector(v: Sequence, labels: Sequence[str]) -> str:
    terms = []
    for c, name in zip(v, labels):
        if not c:
            continue
        if c == 1:
            terms.append(name)
        else:
            terms.append(f"{c}{name}" if isinstance(c, int) else f"({c}){name}")
    return "+".join(terms) if terms else "0"


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check(b)
    if not b.basis:
        return a
    if not a.basis:
        return b
    return Subspace.span(a.field, a.ambient_dim, a.basis + b.basis)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce ``[a | a]`` stacked on ``[b | 0]``."""
    a._check(b)
    if not a.basis or not b.basis:
        return Subspace.zero(a.field, a.ambient_dim)
    n = a.ambient_dim
    rows = [r + r for r in a.basis] + [r + (0,) * n for r in b.basis]
    basis, pivots = _rref(a.field, rows, 2 * n)
    out = [row[n:] for row, c in zip(basis, pivots) if c >= n]
    return Subspace.span(a.field, n, out)


def span_all(field: FieldSpec, n: int, spaces: Iterable[Subspace]) -> Subspace:
    rows = []
    for s in spaces:
        rows.extend(s.basis)
    return Subspace.span(field, n, rows)


def intersect_all(field: FieldSpec, n: int, spaces: Iterable[Subspace]) -> Subspace:
    out = Subspace.full(field, n)
    for s in spaces:
        out = subspace_intersect(out, s)
    return out


def image(F: FieldSpec, m: Sequence[Sequence], s: Subspace, out_dim: Optional[int] = None) -> Subspace:
    """Image of a subspace under the matrix ``m`` (rows, acting on columns)."""
    n = len(m) if out_dim is None else out_dim
    return Subspace.span(F, n, [mat_vec(F, m, v) for v in s.basis])


# ---------------------------------------------------------------------------
# enumeration over F_p

@dataclass
class EnumerationBudget:
    """Runtime guard for exhaustive enumeration.

    ``max_subspaces`` caps a single call of :func:`enumerate_subspaces`;
    ``max_dim`` caps the dimension of algebras handed to lattice-based
    algorithms (maximal subalgebras, ideals, ...), per prime.
    """

    max_subspaces: int = 10 ** 6
    max_dim: dict = dc_field(default_factory=lambda: {2: 6, 3: 5, 5: 4})
    # primes absent from max_dim are admitted when their lattice is this small
    fallback_lattice: int = 3000

    def admits(self, n: int, p: int) -> bool:
        if p in self.max_dim:
            return n <= self.max_dim[p]
        return count_subspaces(n, p) <= self.fallback_lattice


BUDGET = EnumerationBudget()


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, p: int, dim_filter: Optional[int] = None) -> int:
    if dim_filter is not None:
        return gaussian_binomial(n, dim_filter, p)
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def check_lattice_budget(n: int, field: FieldSpec, budget: Optional[EnumerationBudget] = None) -> None:
    if field.p is None:
        raise UnsupportedFieldError("exhaustive subspace methods need a prime field")
    budget = budget or BUDGET
    if not budget.admits(n, field.p):
        bound = budget.max_dim.get(field.p)
        raise BudgetExceededError(
            f"dimension {n} over {field.name} exceeds the enumeration budget "
            f"(max dim {bound if bound is not None else 'by lattice size'})",
            bound=bound,
        )


@lru_cache(maxsize=64)
def _all_subspaces(n: int, p: int, k: int) -> tuple[Subspace, ...]:
    F = FieldSpec(p)
    out = []
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(piv):
                rows[r][pc] = 1
            for (r, c), x in zip(free, vals):
                rows[r][c] = x
            out.append(Subspace(F, n, tuple(tuple(r) for r in rows)))
    out.sort(key=lambda s: s.basis)
    return tuple(out)


@lru_cache(maxsize=32)
def _all_subspaces_sorted(n: int, p: int) -> tuple[Subspace, ...]:
    out = []
    for k in range(n + 1):
        out.extend(_all_subspaces(n, p, k))
    out.sort(key=lambda s: s.basis)
    return tuple(out)


def enumerate_subspaces(
    ambient_dim: int,
    field: FieldSpec,
    dim_filter: Optional[int] = None,
    budget: Optional[EnumerationBudget] = None,
) -> Iterator[Subspace]:
    """Yield every subspace of ``F_p^ambient_dim`` once, sorted by basis matrix."""
    if field.p is None:
        raise UnsupportedFieldError("subspace enumeration is only defined over F_p")
    budget = budget or BUDGET
    total = count_subspaces(ambient_dim, field.p, dim_filter)
    if total > budget.max_subspaces:
        raise BudgetExceededError(
            f"{total} subspaces exceed the enumeration budget of {budget.max_subspaces}",
            bound=budget.max_subspaces,
        )
    if dim_filter is not None:
        if 0 <= dim_filter <= ambient_dim:
            yield from _all_subspaces(ambient_dim, field.p, dim_filter)
        return
    yield from _all_subspaces_sorted(ambient_dim, field.p)


def subspaces_within(space: Subspace, dim_filter: Optional[int] = None) -> Iterator[Subspace]:
    """Every subspace of ``space`` (F_p), obtained through its RREF coordinates."""
    F = space.field
    for s in enumerate_subspaces(space.dim, F, dim_filter):
        yield Subspace.span(F, space.ambient_dim, [space.from_coords(r) for r in s.basis])
