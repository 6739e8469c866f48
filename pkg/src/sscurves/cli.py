"""Command line interface: aut, batch, galois, mass, solve.

Exit codes: 0 all checks pass, 1 bad input, 2 mismatch with the shipped
reference values (or between engines), 3 resource limits hit.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional

from . import catalog as cat
from .autgrp import automorphism_group
from .errors import (DegreeCapExceeded, EngineDisagreement, ParseError, PartitionMismatch,
                     ResourceBudgetExceeded, SSCurvesError)
from .ff import GF11, format_element, prime_field
from .galois import galois_report
from .grpid import identify
from .massfm import curve_mass_sum, mass_table
from .report import BatchReport, render_figures, render_mass_text, render_report

log = logging.getLogger("sscurves")

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_RESOURCE = 0, 1, 2, 3


def compute_curve(rec: cat.CurveRecord, field="prime", engine="groebner", time_budget=None):
    """Aut group of one record, named; field is 'prime' or 'closure'."""
    def trace(eng, pat, st):
        log.info("%s %s %s: %s", rec.id, eng, pat.id,
                 ", ".join(f"{k}={v}" for k, v in sorted(st.items())))
    q_prime = 11 if field == "prime" else 0
    G = automorphism_group(rec.Q, rec.P, 11, q_prime, engine=engine, curve_id=rec.id,
                           time_budget=time_budget, on_pattern=trace)
    identify(G)
    log.info("%s: order %d, %s", rec.id, G.order, G.group_name)
    return G


def expected_for(rec_id, field):
    table = cat.EXPECTED_CLOSURE if field == "closure" else cat.EXPECTED_RATIONAL
    return table.get(rec_id)


def galois_block(G, form_orders):
    return galois_report(G, expected=form_orders).to_dict()


def run_batch(records, engine="groebner", include_closure=True, time_budget=None,
              epsilon=None, with_mass=True):
    """Compute everything for a list of records, in catalog order."""
    order = {"N1": 0, "N2": 1, "Dege": 2}
    rational = sorted((r for r in records if not r.is_closure),
                      key=lambda r: (order[r.kind], int(r.id.split(":")[1])))
    closure = [r for r in records if r.is_closure] if include_closure else []
    report = BatchReport(epsilon=epsilon if epsilon is not None else 2)
    results = {}
    for rec in rational:
        results[rec.id] = compute_curve(rec, "prime", engine, time_budget)
        report.curves.append(results[rec.id].to_dict())
    for rec in closure:
        results[rec.id] = compute_curve(rec, "closure", "groebner", time_budget)
        report.curves.append(results[rec.id].to_dict())
    orders = {k: G.order for k, G in results.items()}
    if all(m in orders for ms in cat.PARTITION.values() for m in ms):
        report.partition = cat.verify_form_partition(orders, strict=False)
    for rec in closure:
        k = rec.closure_class
        forms = [orders[m] for m in cat.PARTITION.get(k, []) if m in orders]
        expected = forms if len(forms) == len(cat.PARTITION.get(k, [])) else None
        report.galois.append(galois_block(results[rec.id], expected))
    if with_mass:
        alc = [orders[r.id] for r in closure]
        report.mass = mass_table(alc if len(alc) == 9 else None)
    report.partial = len(rational) < 30 or (include_closure and len(closure) < 9)
    return report, results


def check_report(report: BatchReport):
    """Compare against shipped reference tables; fills report.checks."""
    checks = {}
    for c in report.curves:
        field = "closure" if c["mode"] == "closure" else "prime"
        exp = expected_for(c["curve"], field)
        if exp is not None:
            checks[f"aut {c['curve']}"] = (c["order"], c["group_name"]) == exp
    if report.partition is not None:
        checks["reciprocal sums"] = all(v == 1 for v in report.partition.values())
    for g in report.galois:
        if g["match"] is not None:
            checks[f"galois {g['curve']}"] = bool(g["match"] and g["orbit_stabilizer"])
    if report.mass is not None:
        checks["mass"] = _mass_ok(report.mass)
    report.checks = checks
    return all(checks.values())


def _mass_ok(rows):
    want = {2: "1/3317760", 3: "1/46080", 5: "539/103680", 7: "173/1024", 11: "1395421/82944"}
    ok = all(r["M4_indecomposable"] == want[r["p"]] for r in rows if r["p"] in want)
    for r in rows:
        if r["p"] == 11:
            ok = ok and r["M4"] == "8485039/497664"
            if r.get("curve_mass_source") == "computed":
                ok = ok and r["curve_mass"] == ">= 5/8"
    return ok


def _emit(args, report: BatchReport):
    text = render_report(report, args.out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        if not args.no_figures:
            prefix = os.path.splitext(args.output)[0]
            for path in render_figures(report, prefix):
                log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _records(args):
    return cat.load_catalog(args.curve_file, epsilon=args.epsilon) if args.curve_file \
        else cat.load_catalog(epsilon=args.epsilon)


def cmd_aut(args):
    recs = _records(args)
    try:
        rec = cat.get_record(args.curve, recs)
    except KeyError as exc:
        raise ParseError(str(exc.args[0]), field="curve") from None
    field = args.field or ("closure" if rec.is_closure else "prime")
    engine = args.engine if field == "prime" else "groebner"
    G = compute_curve(rec, field, engine, args.time_budget)
    report = BatchReport(curves=[G.to_dict()],
                         epsilon=rec.Q.epsilon if rec.kind == "N2" else None, partial=True)
    ok = True
    if args.check:
        ok = check_report(report)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_batch(args):
    recs = _records(args)
    if args.only:
        keep = set(args.only.split(","))
        recs = [r for r in recs if r.id in keep or r.kind in keep
                or (r.is_closure and "alc" in keep)]
    report, _ = run_batch(recs, args.engine, include_closure=not args.no_closure,
                          time_budget=args.time_budget, epsilon=args.epsilon)
    ok = True
    if args.check:
        ok = check_report(report)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_galois(args):
    recs = cat.closure_records(cat.load_catalog())
    if args.classes:
        want = {int(k) for k in args.classes.split(",")}
        recs = [r for r in recs if r.closure_class in want]
    report = BatchReport(partial=True)
    for rec in recs:
        G = compute_curve(rec, "closure", "groebner", args.time_budget)
        report.curves.append(G.to_dict())
        expected = [cat.EXPECTED_RATIONAL[m][0] for m in cat.PARTITION[rec.closure_class]]
        report.galois.append(galois_block(G, expected))
    ok = True
    if args.check:
        ok = check_report(report)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_mass(args):
    alc = [cat.EXPECTED_CLOSURE[f"alc:{i}"][0] for i in range(1, 10)]
    rows = mass_table(alc)
    ok = _mass_ok(rows) and curve_mass_sum(alc) == curve_mass_sum([12, 4, 24, 36, 72, 12, 3, 12, 3])
    if args.out == "json":
        import json
        sys.stdout.write(json.dumps({"mass": rows}, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_mass_text(rows))
    return EXIT_OK if (ok or not args.check) else EXIT_MISMATCH


def cmd_solve(args):
    from .groebner import solve_zero_dimensional
    from .mpoly import parse_poly
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    texts = list(args.poly or [])
    if args.file:
        with open(args.file) as fh:
            texts.extend(line.strip() for line in fh if line.strip() and not line.startswith("#"))
    if not texts:
        raise ParseError("no polynomials given", field="poly")
    F = prime_field(args.p)
    polys = []
    for i, t in enumerate(texts, 1):
        try:
            polys.append(parse_poly(t, gens=names, field=F))
        except ValueError as exc:
            raise ParseError(str(exc), line=i, field="poly") from None
    sol = solve_zero_dimensional(polys, F, rational_only=(args.field == "prime"),
                                 time_budget=args.time_budget)
    L = sol.field
    pts = [[format_element(L, v) for v in p] for p in sol.raw_points]
    if args.out == "json":
        import json
        doc = {"vars": list(names), "field": L.to_dict(), "points": pts}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"field F_{L.q}, {len(pts)} points\n")
        for p in pts:
            sys.stdout.write("(" + ", ".join(p) + ")\n")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="sscurves",
                                 description="Automorphism groups of superspecial genus-4 curves over F_11.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, engine=True):
        p.add_argument("--out", choices=["json", "text"], default="text")
        p.add_argument("--output", metavar="PATH", help="write the report here (figures go alongside)")
        p.add_argument("--no-figures", action="store_true", help="skip the PNG bar charts")
        p.add_argument("--trace", action="store_true", help="log per-pattern solver statistics")
        p.add_argument("--check", action="store_true", help="compare with the shipped reference values")
        p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS",
                       help="per-pattern Groebner time budget")
        if engine:
            p.add_argument("--engine", choices=["groebner", "brute", "both"], default="groebner")

    p = sub.add_parser("aut", help="automorphism group of one curve")
    p.add_argument("curve", help="curve id, e.g. N1:3, Dege:12, alc:5")
    p.add_argument("--field", choices=["prime", "closure"], default=None)
    p.add_argument("--curve-file", default=None, help="JSON curve file instead of the catalog")
    p.add_argument("--epsilon", type=int, default=None, help="non-square for Q^(N2) (default 2)")
    common(p)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("batch", help="the whole catalog with consistency checks")
    p.add_argument("--only", default=None, help="comma list of ids or kinds (N1,N2,Dege,alc)")
    p.add_argument("--no-closure", action="store_true", help="skip the closure classes")
    p.add_argument("--curve-file", default=None)
    p.add_argument("--epsilon", type=int, default=None)
    p.add_argument("--field", choices=["prime", "closure"], default=None,
                   help="accepted for symmetry; batch runs F_11 curves over F_11 and closure classes over the closure")
    common(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("galois", help="sigma-conjugacy classes of the closure groups")
    p.add_argument("--classes", default=None, help="comma list of class numbers 1..9")
    common(p, engine=False)
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("mass", help="mass formula values")
    p.add_argument("--out", choices=["json", "text"], default="text")
    p.add_argument("--check", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_mass)

    p = sub.add_parser("solve", help="solve a zero-dimensional system")
    p.add_argument("--vars", required=True, help="comma separated variable names")
    p.add_argument("--poly", action="append", help="a polynomial (repeatable)")
    p.add_argument("--file", default=None, help="file with one polynomial per line")
    p.add_argument("--p", type=int, default=11, help="prime field characteristic")
    p.add_argument("--field", choices=["prime", "closure"], default="prime")
    p.add_argument("--out", choices=["json", "text"], default="text")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--time-budget", type=float, default=None)
    p.set_defaults(func=cmd_solve)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.trace else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EngineDisagreement, PartitionMismatch) as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ResourceBudgetExceeded, DegreeCapExceeded, MemoryError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except SSCurvesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
