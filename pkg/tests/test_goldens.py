import pytest

from solvlie.errors import UnknownNameError
from solvlie.goldens import goldens


def _failed(g):
    return sorted(c.label for c in g.checks if not c.ok)


@pytest.mark.parametrize("name", ["EX1", "EXP2", "EXT3", "SUP(2,1)", "SUP(3,1)", "SUP(5,1)"])
def test_reproduced_examples(name):
    (g,) = goldens([name])
    assert g.ok, _failed(g)
    assert g.citation


def test_x5_mismatch_is_only_the_maximality_claim():
    (g,) = goldens(["X5"])
    assert _failed(g) == ["M = <d,x1,x2> maximal"]


@pytest.mark.parametrize("p,a", [(3, 2), (5, 2), (5, 3), (5, 4)])
def test_sup_with_alpha_not_one_splits(p, a):
    (g,) = goldens([f"SUP({p},{a})"])
    assert _failed(g) == ["L/phi(L) two-dimensional nonabelian", "dim phi(L)", "extreme"]
    assert next(c for c in g.checks if c.label == "dim phi(L)").actual == 0


def test_unknown_example():
    with pytest.raises(UnknownNameError):
        goldens(["NOPE"])


def test_sup_family_expansion():
    names = [g.name for g in goldens(["SUP"])]
    assert len(names) == 1 + 2 + 4
