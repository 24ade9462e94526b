import pytest
from hypothesis import given

from conftest import F2, F3, small_algebras
from solvlie.catalog import catalog
from solvlie.chief import chief_series, layered_conjugacy_classes
from solvlie.classify import (
    NOT_MINIMAL_NAN,
    TYPE_II,
    a_algebra_conditions,
    check_A_minimal_structure,
    check_extreme_decomposition,
    classify,
    classify_naN,
    decompose,
    decomposition_conditions,
    extreme_by_definition,
    extreme_crosscheck,
    is_A_algebra,
    is_minimal_non_N,
    is_minimal_non_nan,
    module_irreducible,
    quotient_condition,
    structure_flags,
)
from solvlie.constructions import random_solvable
from solvlie.errors import PreconditionError
from solvlie.exactlin import enumerate_subspaces
from solvlie.liealg import abelian, all_subalgebras, is_nilpotent_space, product_space
from solvlie.series import nilpotent_length, nilpotent_length_of

# name: (extreme, minimal non-N, A-algebra, supersolvable, solvability index, naN type, B, U)
FROZEN = {
    "EXP2": (False, False, False, True, 2, NOT_MINIMAL_NAN,
             ["<x1, x2, x4>", "<x3>"], ["<x1, x2, x3, x4>", "<x3>", "0"]),
    "X5": (False, False, False, False, 3, TYPE_II,
           ["<x1, x2>", "<x3, x4, d>"], ["<x1, x2, x3, x4, d>", "<x3, x4, d>", "0"]),
    "EXT3": (True, False, True, True, 2, NOT_MINIMAL_NAN, ["<y, z>", "<x>"], ["<x, y, z>", "<x>", "0"]),
    "T2": (True, True, True, True, 2, NOT_MINIMAL_NAN, ["<y>", "<x>"], ["<x, y>", "<x>", "0"]),
    "H3": (False, False, False, True, 2, NOT_MINIMAL_NAN, ["<x, y, z>"], ["<x, y, z>", "0"]),
    "UT2": (False, False, True, True, 2, NOT_MINIMAL_NAN,
            ["<e11+e22, e12>", "<e22>"], ["<e11, e12, e22>", "<e22>", "0"]),
    "SUP(2,1)": (True, False, True, True, 2, NOT_MINIMAL_NAN, ["<y, z>", "<x>"], ["<x, y, z>", "<x>", "0"]),
    "SUP(5,2)": (False, False, True, True, 2, NOT_MINIMAL_NAN, ["<y, z>", "<x>"], ["<x, y, z>", "<x>", "0"]),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_classification(name):
    L = catalog(name)
    ext, mnn, a_alg, sup, idx, nan, B, U = FROZEN[name]
    rep = classify(L)
    assert rep.extreme is ext
    assert rep.minimal_non_N is mnn
    assert is_A_algebra(L)[0] is a_alg
    flags = structure_flags(L)
    assert flags.supersolvable is sup and flags.solvability_index == idx
    assert classify_naN(L) == nan
    dec = decompose(L)
    assert [h.pretty() for h in dec.B] == B
    assert [h.pretty() for h in dec.U] == U


def test_ext3_witness():
    L = catalog("EXT3")
    rep = classify(L).as_dict(L.labels)
    assert rep["witnesses"]["minimal_non_N"] == "<x, z>"
    assert nilpotent_length_of(L, L.spanned("x", "z")) == 2 == nilpotent_length(L)


def test_small_edge_cases():
    one = abelian(F2, 1)
    assert is_minimal_non_N(one)[0]
    assert extreme_by_definition(one)
    assert not extreme_by_definition(abelian(F3, 2))


def test_t2_a_structure():
    L = catalog("T2")
    ok, parts = check_A_minimal_structure(L)
    assert ok
    assert a_algebra_conditions(L, list(parts.parts), parts.x) == []
    with pytest.raises(PreconditionError):
        check_A_minimal_structure(catalog("H3"))


def test_module_irreducibility():
    L = catalog("SUP(3,1)")
    x = L.spanned("x")
    # <z> is an ad x-stable line inside <y,z>
    assert not module_irreducible(L, L.zero(), L.spanned("y", "z"), acting=x)
    assert module_irreducible(L, L.spanned("z"), L.spanned("y", "z"))
    X = catalog("X5")
    assert module_irreducible(X, X.zero(), X.spanned("x1", "x2"))
    with pytest.raises(PreconditionError):
        module_irreducible(L, L.zero(), L.spanned("x"))


def _irreducible_oracle(L, B, A):
    top = A + B
    for W in enumerate_subspaces(L.dim, L.field):
        if B.issubset(W) and W.issubset(top) and W not in (B, top):
            if product_space(L, L.full(), W).issubset(W):
                return False
    return top != B


@given(small_algebras(max_dim=4))
def test_irreducibility_matches_oracle(L):
    cs = chief_series(L)
    for B, A in cs.factors():
        assert module_irreducible(L, B, A)
        assert _irreducible_oracle(L, B, A)
    N = cs.chain[-1]
    for B in cs.chain[:-1]:
        assert module_irreducible(L, B, N) == _irreducible_oracle(L, B, N)


@given(small_algebras(max_dim=4))
def test_minimal_non_N_matches_lattice_oracle(L):
    n = nilpotent_length(L)
    proper = [S for S in all_subalgebras(L) if not S.is_full()]
    oracle = L.dim > 0 and all(nilpotent_length_of(L, S) <= n - 1 for S in proper)
    assert is_minimal_non_N(L)[0] == oracle


@given(small_algebras(max_dim=4))
def test_A_algebra_matches_oracle(L):
    oracle = all(product_space(L, S, S).is_zero() for S in all_subalgebras(L) if is_nilpotent_space(L, S))
    assert is_A_algebra(L)[0] == oracle


@given(small_algebras(max_dim=4))
def test_extreme_characterisations_without_literal_m(L):
    cross = extreme_crosscheck(L)
    n = nilpotent_length(L)
    assert cross.definition == (n == chief_series(L).c_count) == quotient_condition(L)[0]
    assert cross.definition == (n == layered_conjugacy_classes(L).m_count)


@given(small_algebras(max_dim=4))
def test_decomposition_conditions_hold(L):
    dec = decompose(L)
    assert decomposition_conditions(L, dec) == []
    assert dec.n == nilpotent_length(L)
    assert dec.U[0].space.is_full() and dec.U[-1].space.is_zero()
    assert check_extreme_decomposition(L) == extreme_by_definition(L)


@given(small_algebras(max_dim=4))
def test_naN_classification_never_contradicts(L):
    kind = classify_naN(L)
    assert (kind != NOT_MINIMAL_NAN) == is_minimal_non_nan(L)


def test_crosscheck_records_literal_m_disagreement():
    L = random_solvable(F3, 5, stages=2, seed=1)
    cross = extreme_crosscheck(L)
    assert cross.as_dict() == {"n": 3, "m": 5, "c": 3, "one_complemented_minimal": True,
                               "m_layered": 3, "agree": False}
    assert cross.definition


# An F_2 A-algebra that is minimal non-N but admits no A_n ∔ ... ∔ A_1 ∔ Fx structure:
# its Frattini ideal is nonzero, so N_1 strictly contains the last derived term.
CHAR2_A_ALGEBRA = {
    "field": {"Fp": 2}, "dim": 5, "labels": ["e1", "e2", "e3", "e4", "e5"],
    "brackets": [
        {"i": 0, "j": 1, "coeffs": {"2": "1", "4": "1"}},
        {"i": 0, "j": 2, "coeffs": {"2": "1", "4": "1"}},
        {"i": 0, "j": 4, "coeffs": {"2": "1", "4": "1"}},
        {"i": 1, "j": 3, "coeffs": {"0": "1", "2": "1"}},
        {"i": 1, "j": 4, "coeffs": {"0": "1"}},
        {"i": 2, "j": 3, "coeffs": {"0": "1", "1": "1"}},
        {"i": 2, "j": 4, "coeffs": {"0": "1"}},
        {"i": 3, "j": 4, "coeffs": {"0": "1", "1": "1", "2": "1", "4": "1"}},
    ],
}


def test_char2_a_algebra_without_structure():
    from solvlie.classify import a_algebra_parts
    from solvlie.liealg import derived_series_of
    from solvlie.serialize import from_doc
    from solvlie.series import frattini, upper_nilpotent_series
    L = from_doc(CHAR2_A_ALGEBRA)
    pr = lambda S: S.pretty(L.labels)
    assert is_A_algebra(L)[0] and is_minimal_non_N(L)[0]
    assert L.derived_length == 3 == nilpotent_length(L)
    assert pr(frattini(L)) == "<e2+e3>"
    assert pr(upper_nilpotent_series(L)[1]) == "<e1, e2+e5, e3+e5>"
    assert pr(derived_series_of(L, L.full())[2]) == "<e1, e3+e5>"
    assert a_algebra_parts(L) is None
