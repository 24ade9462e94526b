"""Command-line interface.

Exit status: 0 on success, 1 on usage or input errors, 2 when a suite,
example or internal consistency check fails.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import serialize
from .catalog import catalog
from .chief import chief_series, conjugacy_classes, layered_conjugacy_classes
from .classify import classify, decompose
from .errors import ParseError, SolvLieError, TheoremViolation
from .exactlin import BUDGET, FieldSpec
from .goldens import goldens
from .harness import CACHE_ENV, SPECIMEN_PREDICATES, SUITES, SuiteConfig, find_specimens, run_suite, summary_line
from .liealg import LieAlgebra, core
from .series import compatibility_index, maximal_spaces, nilpotent_length_of, series_report

VERBS = ("validate", "analyze", "series", "maximals", "chief", "classify", "decompose",
         "examples", "verify", "search")

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


def parse_algebra_file(path: str) -> LieAlgebra:
    return serialize.load(path)


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except (SolvLieError, ValueError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _dims(text: str) -> tuple:
    lo, _, hi = text.partition("-")
    try:
        return (int(lo), int(hi or lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad dimension range {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="solvlie", description="Exact analysis of solvable Lie algebras.")
    ap.add_argument("verb", choices=VERBS)
    ap.add_argument("names", nargs="*", help="algebra file (or example names for 'examples')")
    ap.add_argument("--catalog", help="use a named catalog algebra instead of a file")
    ap.add_argument("--field", type=_field, help="field for a catalog algebra, e.g. F3 or Q")
    ap.add_argument("--format", choices=("text", "structured"), default="text")
    ap.add_argument("--json", dest="format", action="store_const", const="structured",
                    help="shorthand for --format structured")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--suite", action="append", help="suite name (repeatable, or 'all')")
    ap.add_argument("--dims", type=_dims, default=(2, 5), help="dimension range, e.g. 2-5")
    ap.add_argument("--fields", type=_field, nargs="+", default=None, help="fields for random algebras")
    ap.add_argument("--specimens", type=int, default=40, help="specimens per search")
    ap.add_argument("--budget", type=int, default=None, help="cap on subspaces per enumeration")
    ap.add_argument("--predicate", choices=sorted(SPECIMEN_PREDICATES))
    ap.add_argument("--cache-dir", help="specimen cache directory")
    ap.add_argument("--output", help="write the structured report to this file as well")
    return ap


# ---------------------------------------------------------------------------
# rendering

def _render(obj, indent: int = 0) -> list:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_render(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "none"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _document(args, results, witnesses=None) -> dict:
    config = {
        "input": args.catalog or (args.names[0] if args.names else None),
        "field": args.field.name if args.field else None,
        "seed": args.seed,
    }
    if args.verb in ("verify", "search"):
        config.update(trials=args.trials, dims=list(args.dims), specimens=args.specimens)
    return {"command": args.verb, "config": config, "results": results, "witnesses": witnesses or {}}


# ---------------------------------------------------------------------------
# verbs

def _load(args) -> LieAlgebra:
    if args.catalog:
        return catalog(args.catalog, args.field)
    if not args.names:
        raise UsageError("give an algebra file or --catalog NAME")
    return parse_algebra_file(args.names[0])


def _header(L: LieAlgebra) -> dict:
    return {"name": L.name, "field": L.field.name, "dim": L.dim, "labels": list(L.labels),
            "fingerprint": serialize.fingerprint(L)}


def _maximals(L: LieAlgebra) -> list:
    pr = lambda S: S.pretty(L.labels)
    out = []
    for M in maximal_spaces(L):
        C = core(L, M)
        out.append({"subalgebra": pr(M), "dim": M.dim, "core": pr(C),
                    "compatibility_index": compatibility_index(L, M),
                    "nilpotent_length": nilpotent_length_of(L, M)})
    return out


def _chief(L: LieAlgebra) -> dict:
    pr = lambda S: S.pretty(L.labels)
    cs = chief_series(L)
    res = {
        "chain": [pr(S) for S in cs.chain],
        "complemented": list(cs.complemented),
        "complements": [h.pretty() if h is not None else None for h in cs.complements],
        "c": cs.c_count,
    }
    if L.field.p is not None:
        cc = conjugacy_classes(L)
        res["m"] = cc.m_count
        res["conjugacy_classes"] = [[pr(M) for M in cls] for cls in cc.classes]
        res["m_layered"] = layered_conjugacy_classes(L).m_count
    return res


def _decompose(L: LieAlgebra) -> dict:
    dec = decompose(L)
    return {"B": [h.pretty() for h in dec.B], "U": [h.pretty() for h in dec.U],
            "dim_B_n": dec.B[-1].dim if dec.B else 0}


def _single(args, L: LieAlgebra) -> tuple:
    head = _header(L)
    verb = args.verb
    if verb == "validate":
        return {**head, "valid": True, "derived_length": L.derived_length}, {}, EXIT_OK
    if verb == "series":
        return {**head, "series": series_report(L).as_dict(L.labels)}, {}, EXIT_OK
    if verb == "maximals":
        return {**head, "maximals": _maximals(L)}, {}, EXIT_OK
    if verb == "chief":
        return {**head, "chief": _chief(L)}, {}, EXIT_OK
    if verb == "decompose":
        return {**head, "decomposition": _decompose(L)}, {}, EXIT_OK
    if verb == "classify":
        rep = classify(L).as_dict(L.labels)
        return {**head, "classification": {k: v for k, v in rep.items() if k != "witnesses"}}, \
            rep["witnesses"], EXIT_OK
    if verb == "analyze":
        res = {**head, "series": series_report(L).as_dict(L.labels)}
        wit = {}
        if L.field.p is not None:
            res["maximals"] = _maximals(L)
            res["chief"] = _chief(L)
            res["decomposition"] = _decompose(L)
            rep = classify(L).as_dict(L.labels)
            wit = rep.pop("witnesses")
            res["classification"] = rep
        return res, wit, EXIT_OK
    raise UsageError(f"unhandled verb {verb}")


def _examples(args) -> tuple:
    gs = goldens(args.names or None)
    results = [g.as_dict() for g in gs]
    bad = {g.name: [c.label for c in g.checks if not c.ok] for g in gs if not g.ok}
    return results, bad, EXIT_OK if not bad else EXIT_FAIL


def _suite_names(args) -> list:
    names = args.suite or []
    if not names:
        raise UsageError("verify needs --suite NAME (or --suite all)")
    if "all" in names:
        return list(SUITES)
    return names


def _config(args, suite: str) -> SuiteConfig:
    fields = tuple(args.fields) if args.fields else (FieldSpec(2), FieldSpec(3))
    catalog_names = tuple(args.names) if args.names else ()
    cache = args.cache_dir
    if cache is None and not os.environ.get(CACHE_ENV) and args.output:
        # default: next to the report
        cache = os.path.join(os.path.dirname(os.path.abspath(args.output)), "specimen-cache")
    return SuiteConfig(suite=suite, trials=args.trials, dims=args.dims, fields=fields, seed=args.seed,
                       catalog=catalog_names, max_specimens=args.specimens, cache_dir=cache)


def _verify(args) -> tuple:
    results, witnesses = [], {}
    status = EXIT_OK
    for name in _suite_names(args):
        rep = run_suite(_config(args, name))
        if args.format == "text":
            print(summary_line(rep), file=sys.stderr)
        doc = rep.as_dict(elapsed=False)
        failures = [t for t in doc["trials"] if not t["passed"]]
        doc["trials"] = [{k: v for k, v in t.items() if k != "witness"} for t in doc["trials"]]
        results.append(doc)
        if failures:
            witnesses[name] = [{"index": t["index"], "algebra": t.get("witness"),
                                "claims": [c for c in t["claims"] if not c["ok"]]} for t in failures]
        if not rep.ok:
            status = EXIT_FAIL
    return results, witnesses, status


def _search(args) -> tuple:
    if not args.predicate:
        raise UsageError("search needs --predicate")
    cfg = _config(args, "search")
    res = find_specimens(args.predicate, cfg, args.specimens)
    out = res.as_dict()
    out["specimens"] = [serialize.to_doc(L) for L in res.specimens]
    return out, {}, EXIT_OK


def execute(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.budget is not None:
        BUDGET.max_subspaces = args.budget
    try:
        if args.verb == "examples":
            results, wit, status = _examples(args)
        elif args.verb == "verify":
            results, wit, status = _verify(args)
        elif args.verb == "search":
            results, wit, status = _search(args)
        else:
            results, wit, status = _single(args, _load(args))
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremViolation as e:
        print(f"theorem violation: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (SolvLieError, OSError, KeyError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    doc = _document(args, results, wit)
    text = json.dumps(doc, indent=1, ensure_ascii=False, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "structured":
        out.write(text)
    else:
        out.write("\n".join(_render_text(args, doc)) + "\n")
    return status


def _render_text(args, doc) -> list:
    if args.verb == "examples":
        lines = []
        for g in doc["results"]:
            lines.append(f"{g['name']}  [{g['citation']}]  {'PASS' if g['ok'] else 'FAIL'}")
            for c in g["checks"]:
                mark = "ok  " if c["ok"] else "FAIL"
                extra = "" if c["ok"] else f"  (expected {_scalar(c['expected'])})"
                lines.append(f"  {mark} {c['label']} = {_scalar(c['actual'])}{extra}")
        return lines
    if args.verb == "verify":
        lines = []
        for r in doc["results"]:
            t = r["totals"]
            lines.append(f"{r['suite']}: {'ok' if r['ok'] else 'FAILED'} "
                         f"({t['passed']}/{t['trials']} passed, {t['non_vacuous']} non-vacuous)")
        if doc["witnesses"]:
            lines.append("witnesses:")
            lines.extend(_render(doc["witnesses"], 1))
        return lines
    lines = _render(doc["results"])
    if doc["witnesses"]:
        lines.append("witnesses:")
        lines.extend(_render(doc["witnesses"], 1))
    return lines


def main() -> None:
    sys.exit(execute())


if __name__ == "__main__":
    main()
