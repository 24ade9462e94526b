from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from solvlie.errors import BudgetExceededError, FieldMismatchError, NotPrimeError
from solvlie.exactlin import (
    QQ,
    FieldSpec,
    Matrix,
    Subspace,
    check_lattice_budget,
    count_subspaces,
    enumerate_subspaces,
    gaussian_binomial,
    index_vector,
    rank,
    rref_kernel,
    solve_kernel,
    subspace_intersect,
    subspace_sum,
    vector_index,
)

F2, F3, F5 = FieldSpec(2), FieldSpec(3), FieldSpec(5)


def test_field_parse_and_names():
    assert FieldSpec.parse("Q") == QQ
    assert FieldSpec.parse("F_3") == F3
    assert FieldSpec.parse("GF(5)") == F5
    assert FieldSpec.parse("2").name == "F2"
    with pytest.raises(NotPrimeError):
        FieldSpec.parse("F4")
    with pytest.raises(NotPrimeError):
        FieldSpec(1)


def test_field_coercion():
    assert F3("2/5") == 1  # 5 = 2 mod 3 and 2 * 2 = 1
    assert QQ("3/6") == Fraction(1, 2)
    assert QQ(Fraction(4, 2)) == 2
    with pytest.raises(FieldMismatchError):
        F3(Fraction(1, 3))
    with pytest.raises(FieldMismatchError):
        F3.check(3)


rational = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@given(st.lists(st.lists(rational, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rref_matches_sympy_over_q(rows):
    m = Matrix.coerce(QQ, rows, 4)
    R, kernel, r = rref_kernel(m)
    S = sympy.Matrix(rows)
    ref, _ = S.rref()
    assert r == S.rank()
    expect = [tuple(Fraction(int(x.p), int(x.q)) for x in ref.row(i)) for i in range(r)]
    assert [tuple(row) for row in R.rows[:r]] == expect
    assert not any(any(row) for row in R.rows[r:])
    assert kernel.dim == 4 - r
    for v in kernel.basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)


@given(st.sampled_from([2, 3, 5]), st.data())
def test_rank_matches_sympy_mod_p(p, data):
    F = FieldSpec(p)
    rows = data.draw(st.lists(st.lists(st.integers(0, p - 1), min_size=3, max_size=3), min_size=1, max_size=4))
    M = sympy.Matrix(rows)
    # rank over GF(p) from sympy's domain matrix
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix.from_Matrix(M).convert_to(GF(p))
    assert rank(F, rows, 3) == dm.rank()
    for v in solve_kernel(F, rows, 3):
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in rows)


def test_gaussian_binomials_frozen():
    # number of k-dim subspaces of F_q^n
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(3, 1, 3) == 13
    assert gaussian_binomial(5, 2, 2) == 155
    assert count_subspaces(4, 2) == 1 + 15 + 35 + 15 + 1
    assert count_subspaces(3, 5) == 1 + 31 + 31 + 1


@pytest.mark.parametrize("n,p", [(2, 2), (3, 2), (3, 3), (2, 5), (4, 2)])
def test_enumeration_counts_match_bruteforce(n, p):
    F = FieldSpec(p)
    vecs = list(product(range(p), repeat=n))
    brute = set()
    # every subspace is spanned by at most n vectors
    for k in range(n + 1):
        for gens in product(vecs, repeat=k):
            brute.add(Subspace.span(F, n, gens).basis)
    found = list(enumerate_subspaces(n, F))
    assert len(found) == len(brute) == count_subspaces(n, p)
    assert {S.basis for S in found} == brute


@given(st.sampled_from([2, 3]), st.data())
def test_dimension_formula(p, data):
    F = FieldSpec(p)
    vec = st.lists(st.integers(0, p - 1), min_size=4, max_size=4)
    a = Subspace.span(F, 4, data.draw(st.lists(vec, max_size=3)))
    b = Subspace.span(F, 4, data.draw(st.lists(vec, max_size=3)))
    s, i = subspace_sum(a, b), subspace_intersect(a, b)
    assert s.dim + i.dim == a.dim + b.dim
    assert a.issubset(s) and i.issubset(a) and i.issubset(b)
    # element masks are consistent with the lattice operations
    assert i.mask == a.mask & b.mask
    assert a.mask | b.mask == a.mask | b.mask & s.mask


@given(st.sampled_from([2, 3, 5]), st.integers(1, 4), st.data())
def test_vector_index_roundtrip(p, n, data):
    idx = data.draw(st.integers(0, p ** n - 1))
    assert vector_index(index_vector(idx, n, p), p) == idx


def test_subspace_canonical_form():
    a = Subspace.span(QQ, 3, [(2, 4, 0), (0, 0, 3)])
    b = Subspace.span(QQ, 3, [(1, 2, 1), (1, 2, -1)])
    assert a == b
    assert a.basis == ((1, 2, 0), (0, 0, 1))
    assert a.pretty(["x", "y", "z"]) == "<x+2y, z>"
    assert a.contains((3, 6, 5)) and not a.contains((0, 1, 0))


def test_budget_guard():
    check_lattice_budget(6, F2)
    with pytest.raises(BudgetExceededError):
        check_lattice_budget(7, F2)
    with pytest.raises(BudgetExceededError):
        check_lattice_budget(5, F5)
