import json
import random

import pytest

from solvlie.errors import UnknownNameError
from solvlie.exactlin import FieldSpec
from solvlie.harness import (
    OBSERVATION,
    SERIES_SUITES,
    SPECIMEN_PREDICATES,
    SUITES,
    THEOREM,
    SuiteConfig,
    draw_algebra,
    find_specimens,
    get_suite,
    run_suite,
)
from solvlie.serialize import fingerprint

F2, F3 = FieldSpec(2), FieldSpec(3)


def test_registry():
    assert len(SUITES) == 27
    assert SUITES["char2-phifree"].kind == OBSERVATION
    assert SUITES["thm-3.3"].kind == THEOREM
    assert "lemma-2.4" in SERIES_SUITES
    with pytest.raises(UnknownNameError):
        get_suite("lemma-9.9")


def test_draws_are_reproducible():
    cfg = SuiteConfig(suite="lemma-1.1")
    a = draw_algebra(random.Random("x"), (F2, F3), cfg)
    b = draw_algebra(random.Random("x"), (F2, F3), cfg)
    assert fingerprint(a) == fingerprint(b)
    assert 2 <= a.dim <= 5


def test_report_is_deterministic_without_timing():
    cfg = SuiteConfig(suite="lemma-2.3", trials=15, seed=3)
    a = run_suite(cfg).to_json(elapsed=False)
    b = run_suite(cfg).to_json(elapsed=False)
    assert a == b
    doc = json.loads(a)
    assert doc["totals"]["trials"] == 15 and "elapsed" not in doc


def test_catalog_mode():
    rep = run_suite(SuiteConfig(suite="thm-3.3", catalog=("EXT3", "T2", "H3", "SUP(3,1)")))
    assert rep.ok
    assert [t.source for t in rep.trials] == ["catalog:EXT3", "catalog:T2", "catalog:H3", "catalog:SUP(3,1)"]


def test_odd_only_suite_skips_char_two():
    rep = run_suite(SuiteConfig(suite="lemma-2.5", trials=10, seed=1))
    assert {t.field for t in rep.trials} <= {"F3", "F5"}


@pytest.mark.parametrize("name", ["lemma-1.1", "lemma-2.2", "lemma-2.4", "prop-2.11", "thm-2.17", "thm-3.5"])
def test_suites_pass_small(name):
    rep = run_suite(SuiteConfig(suite=name, trials=20, seed=11))
    assert rep.ok, [t.claims for t in rep.failures]
    assert rep.non_vacuous > 0


def test_minimal_non_N_search_finds_t2(tmp_path):
    cfg = SuiteConfig(suite="search", max_specimens=3, cache_dir=str(tmp_path))
    res = find_specimens("minimal-non-N", cfg)
    assert not res.starved and not res.from_cache
    assert "T2" in [L.name for L in res.specimens]
    cached = find_specimens("minimal-non-N", cfg)
    assert cached.from_cache
    assert [fingerprint(L) for L in cached.specimens] == [fingerprint(L) for L in res.specimens]


def test_every_predicate_is_known():
    assert set(SPECIMEN_PREDICATES) >= {"minimal-non-N", "A-minimal-non-N", "strongly-nilregular-minimal-non-N"}
    with pytest.raises(UnknownNameError):
        find_specimens("nope", SuiteConfig(suite="search"))


def test_catalog_mode_skips_rational_algebras():
    rep = run_suite(SuiteConfig(suite="thm-3.3", catalog=("EX1", "EXT3")))
    assert [t.source for t in rep.trials] == ["catalog:EXT3"]
