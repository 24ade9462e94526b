"""Acceptance criteria, each run at its stated tolerance and time limit.

Every criterion prints one ``PASS``/``FAIL`` line; the lines are repeated in
the pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
to get only the summary.
"""
import random
import time

import pytest

from solvlie.catalog import NAMES, catalog
from solvlie.chief import chief_series
from solvlie.classify import check_extreme_decomposition, decompose, decomposition_conditions, extreme_by_definition
from solvlie.constructions import random_solvable
from solvlie.exactlin import FieldSpec
from solvlie.goldens import ext3_golden, ex1_golden, exp2_golden, sup_golden, x5_golden
from solvlie.harness import SECTION4_SUITES, SERIES_SUITES, SuiteConfig, run_suite
from solvlie.series import (
    frattini,
    frattini_oracle,
    maximal_spaces,
    maximal_spaces_bruteforce,
    nilradical,
    nilradical_oracle,
)

RESULTS: dict = {}

F2, F3 = FieldSpec(2), FieldSpec(3)
CATALOG = [n for n in NAMES if not n.startswith("SUP")] + [
    f"SUP({p},{a})" for p in (2, 3, 5) for a in range(1, p)]


def _report(num: int, title: str, ok: bool, elapsed: float, limit: float, detail: str) -> bool:
    passed = ok and elapsed < limit
    line = f"{'PASS' if passed else 'FAIL'} criterion {num}: {title} [{detail}; {elapsed:.1f}s of {limit:.0f}s]"
    RESULTS[num] = line
    print(line)
    return passed


def _golden_detail(gs) -> str:
    bad = [f"{g.name}: {c.label} = {c.actual!r}" for g in gs for c in g.checks if not c.ok]
    return "all checks match" if not bad else "mismatch " + "; ".join(bad)


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_criterion_1_ex1():
    g, dt = _timed(ex1_golden)
    assert _report(1, "EX1 upper and lower nilpotent series", g.ok, dt, 1, _golden_detail([g]))


def test_criterion_2_exp2():
    g, dt = _timed(exp2_golden)
    assert _report(2, "EXP2 nilradical not characteristic", g.ok, dt, 5, _golden_detail([g]))


def test_criterion_3_x5():
    g, dt = _timed(x5_golden)
    assert _report(3, "X5 maximal subalgebras of compatibility index one", g.ok, dt, 10, _golden_detail([g]))


def test_criterion_4_sup_and_ext3():
    def run():
        return [sup_golden(p, a) for p in (2, 3, 5) for a in range(1, p)] + [ext3_golden()]
    gs, dt = _timed(run)
    assert _report(4, "SUP family and EXT3 extreme", all(g.ok for g in gs), dt, 10, _golden_detail(gs))


def test_criterion_5_extreme_equivalence():
    def run():
        cat = run_suite(SuiteConfig(suite="thm-3.3", catalog=tuple(CATALOG)))
        rnd = run_suite(SuiteConfig(suite="thm-3.3", trials=200, dims=(2, 5), fields=(F2, F3), seed=0))
        return cat, rnd
    (cat, rnd), dt = _timed(run)
    bad = cat.failures + rnd.failures
    detail = (f"{len(cat.trials)} catalog + {len(rnd.trials)} random algebras, "
              f"{len(bad)} disagreements")
    if bad:
        # which of the four conditions broke ranks
        broken = sorted({c["claim"] for t in bad for c in t.claims if not c["ok"]})
        detail += f" ({', '.join(broken)})"
    assert _report(5, "four extreme conditions agree", not bad and len(rnd.trials) >= 200, dt, 300, detail)


def test_criterion_6_series_suites():
    def run():
        return [run_suite(SuiteConfig(suite=s, trials=200, seed=0)) for s in SERIES_SUITES]
    reps, dt = _timed(run)
    parts = [f"{r.suite} {len(r.failures)}F/{r.non_vacuous}nv" for r in reps]
    ok = all(r.ok and len(r.trials) >= 200 and r.non_vacuous >= 50 for r in reps)
    assert _report(6, "series suites", ok, dt, 600, ", ".join(parts))


def test_criterion_7_decomposition():
    def run():
        rng = random.Random("criterion-7")
        algs = [catalog(n) for n in CATALOG if catalog(n).field.p is not None]
        while len(algs) < 120:
            p = rng.choice((2, 3))
            algs.append(random_solvable(FieldSpec(p), rng.randint(2, 5), stages=rng.randint(1, 3),
                                        seed=rng.randrange(10 ** 9)))
        problems = []
        extreme = 0
        for L in algs:
            dec = decompose(L)
            if decomposition_conditions(L, dec):
                problems.append(L)
                continue
            e = extreme_by_definition(L)
            extreme += e
            if check_extreme_decomposition(L) != e or (e and dec.B[-1].dim != 1):
                problems.append(L)
        return algs, problems, extreme
    (algs, problems, extreme), dt = _timed(run)
    detail = f"{len(algs)} algebras, {extreme} extreme, {len(problems)} problems"
    assert _report(7, "decomposition conditions", not problems and len(algs) >= 100, dt, 300, detail)


def test_criterion_8_oracles():
    def run():
        rng = random.Random("criterion-8")
        mism = {"nilradical": 0, "frattini": 0, "maximals": 0, "c(L)": 0}
        count = 0
        while count < 120:
            p = rng.choice((2, 3))
            L = random_solvable(FieldSpec(p), rng.randint(2, 5), stages=rng.randint(1, 3),
                                seed=rng.randrange(10 ** 9))
            count += 1
            mism["nilradical"] += nilradical(L) != nilradical_oracle(L)
            mism["frattini"] += frattini(L) != frattini_oracle(L)
            mism["maximals"] += {M.basis for M in maximal_spaces(L)} != {
                M.basis for M in maximal_spaces_bruteforce(L)}
            cs = {chief_series(L, seed=s).c_count for s in range(12)}
            mism["c(L)"] += len(cs) != 1
        return count, mism
    (count, mism), dt = _timed(run)
    detail = f"{count} algebras, mismatches " + ", ".join(f"{k}={v}" for k, v in mism.items())
    assert _report(8, "oracle equivalences", not any(mism.values()), dt, 300, detail)


def test_criterion_9_section_four():
    def run():
        return [run_suite(SuiteConfig(suite=s, seed=0)) for s in SECTION4_SUITES]
    reps, dt = _timed(run)
    parts, ok = [], True
    for r in reps:
        kind = "specimens" if r.search is not None else "trials"
        tag = "STARVED" if r.starved else f"{len(r.trials)} {kind}"
        parts.append(f"{r.suite} {tag} {len(r.failures)}F")
        ok &= r.ok and not r.starved
    mnn = next(r for r in reps if r.suite == "lemma-4.1")
    t2 = any(t.source.startswith("specimen") and t.fingerprint == _t2_fingerprint() for t in mnn.trials)
    parts.append("T2 found" if t2 else "T2 missing")
    assert _report(9, "minimal non-N suites", ok and t2, dt, 900, ", ".join(parts))


def _t2_fingerprint() -> str:
    from solvlie.serialize import fingerprint
    return fingerprint(catalog("T2"))


def test_criterion_10_no_large_scale_results():
    assert _report(10, "no large-scale experiments to reproduce", True, 0.0, 1, "nothing to run")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
