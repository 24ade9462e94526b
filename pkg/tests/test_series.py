import pytest
from hypothesis import given

from conftest import small_algebras
from solvlie.catalog import catalog
from solvlie.errors import UnsupportedFieldError
from solvlie.liealg import is_ideal, is_nilpotent_space, is_subalgebra, quotient
from solvlie.series import (
    compatibility_index,
    frattini,
    frattini_oracle,
    frattini_series,
    lower_series,
    maximal_spaces,
    maximal_spaces_bruteforce,
    nilpotent_length,
    nilradical,
    nilradical_oracle,
    series_report,
    upper_nilpotent_series,
)

# name: (#maximals, N, phi, upper nilpotent series, frattini series, compatibility indices)
FROZEN = {
    "EXP2": (5, "<x1, x2, x4>", "<x1>", ["0", "<x1, x2, x4>", "<x1, x2, x3, x4>"],
             ["<x1>", "<x1, x2, x4>"], [0, 0, 0, 0, 1]),
    "X5": (7, "<x1, x2>", "0", ["0", "<x1, x2>", "<x1, x2, x3, x4, d>"],
           ["0", "<x1, x2, x3>"], [0, 0, 0, 0, 1, 1, 1]),
    "EXT3": (4, "<y, z>", "<z>", ["0", "<y, z>", "<x, y, z>"], ["<z>", "<y, z>"], [0, 0, 0, 1]),
    "T2": (3, "<y>", "0", ["0", "<y>", "<x, y>"], ["0", "<y>"], [0, 0, 1]),
    "H3": (4, "<x, y, z>", "<z>", ["0", "<x, y, z>"], ["<z>"], [0, 0, 0, 0]),
    "UT2": (7, "<e11+e22, e12>", "0", ["0", "<e11+e22, e12>", "<e11, e12, e22>"],
            ["0", "<e11+e22, e12>"], [0, 0, 0, 0, 0, 0, 1]),
    "SUP(2,1)": (3, "<y, z>", "<z>", ["0", "<y, z>", "<x, y, z>"], ["<z>", "<y, z>"], [0, 0, 1]),
    "SUP(5,2)": (11, "<y, z>", "0", ["0", "<y, z>", "<x, y, z>"], ["0", "<y, z>"], [0] * 10 + [1]),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_series(name):
    L = catalog(name)
    pr = lambda S: S.pretty(L.labels)
    n_max, N, phi, ups, fs, ci = FROZEN[name]
    ms = maximal_spaces(L)
    assert len(ms) == n_max
    assert {M.basis for M in ms} == {M.basis for M in maximal_spaces_bruteforce(L)}
    assert pr(nilradical(L)) == N == pr(nilradical_oracle(L))
    assert pr(frattini(L)) == phi == pr(frattini_oracle(L))
    assert [pr(S) for S in upper_nilpotent_series(L)] == ups
    assert [pr(S) for S in frattini_series(L)] == fs
    assert sorted(compatibility_index(L, M) for M in ms) == ci


def test_ex1_over_q():
    L = catalog("EX1")
    pr = lambda S: S.pretty(L.labels)
    assert [pr(S) for S in upper_nilpotent_series(L)] == ["0", "<x2, x3, x4>", "<x1, x2, x3, x4>"]
    low = lower_series(L)
    assert [pr(S) for S in low.lower_nilpotent] == ["<x1, x2, x3, x4>", "<x3, x4>", "0"]
    assert nilpotent_length(L) == 2
    with pytest.raises(UnsupportedFieldError):
        maximal_spaces(L)


def test_series_report_serializes():
    L = catalog("EXT3")
    d = series_report(L).as_dict(L.labels)
    assert d["upper_nilpotent"] == ["0", "<y, z>", "<x, y, z>"]


@given(small_algebras(max_dim=4))
def test_nilradical_matches_oracle(L):
    N = nilradical(L)
    assert N == nilradical_oracle(L)
    assert is_ideal(L, N) and is_nilpotent_space(L, N)


@given(small_algebras(max_dim=4))
def test_frattini_matches_oracle(L):
    phi = frattini(L)
    assert phi == frattini_oracle(L)
    assert is_ideal(L, phi)
    assert phi.issubset(nilradical(L))
    assert all(phi.issubset(M) for M in maximal_spaces(L))


@given(small_algebras(max_dim=4))
def test_maximals_are_maximal(L):
    ms = maximal_spaces(L)
    assert {M.basis for M in ms} == {M.basis for M in maximal_spaces_bruteforce(L)}
    for M in ms:
        assert is_subalgebra(L, M) and not M.is_full()


@given(small_algebras(max_dim=4))
def test_upper_nilpotent_series_is_strict_chain(L):
    N = upper_nilpotent_series(L)
    assert N[0].is_zero() and N[-1].is_full()
    assert len(N) - 1 == nilpotent_length(L)
    for a, b in zip(N, N[1:]):
        assert a.issubset(b) and a != b
        assert is_ideal(L, b)
        # N_{i+1}/N_i is the nilradical of L/N_i
        q = quotient(L, a)
        assert q.pullback(nilradical(q.quotient)) == b
