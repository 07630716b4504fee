"""Command line entry point: ``matroid-euler <subcommand> ...``.

Exit codes: 0 success, 1 an identity failed to verify, 2 usage error,
3 enumeration cap or size limit exceeded.  Data goes to stdout (or
``--output``); warnings and progress go to stderr.
"""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from .euler import (
    chi_closed_report,
    chi_enumerated,
    chi_p_partial,
    chi_via_counts,
    run_suite,
    SUITES,
)
from .exact import format_rat
from .gf import PrimeField
from .grassmann import (
    CountTable,
    EnumerationCapExceeded,
    count_table,
    grdc_bruteforce_count,
    grdc_count_recursive,
    is_prime_power,
)
from .matroid import (
    Matroid,
    SizeLimitExceeded,
    enumerate_binary_classes,
    enumerate_p_classes,
    stratum_count,
)

log = logging.getLogger("matroid_euler")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _parse_sizes(values):
    """``--n 3 4 5``, ``--n 3..7`` or ``--n 3-7``."""
    out = []
    for v in values:
        for sep in ("..", "-"):
            if sep in v:
                lo, hi = v.split(sep, 1)
                out.extend(range(int(lo), int(hi) + 1))
                break
        else:
            out.append(int(v))
    return out


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _warn_q(q):
    if not is_prime_power(q):
        log.warning("q=%d is not a prime power; computing the arithmetic anyway", q)


def _need_prime(p):
    try:
        PrimeField(p)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_chi(args):
    _warn_q(args.q)
    methods = ["enum", "counts", "closed"] if args.all_methods else [args.method]
    reports = []
    for m in methods:
        if m == "enum":
            if args.q != 2:
                raise UsageError("the enumerated route exists only for q = 2")
            reports.append(chi_enumerated(args.r))
        elif m == "counts":
            reports.append(chi_via_counts(args.q, args.r))
        else:
            reports.append(chi_closed_report(args.q, args.r))
    totals = {rep.total for rep in reports}
    status = EXIT_OK if len(totals) == 1 else EXIT_FAIL
    if args.format == "json":
        text = json.dumps([rep.to_json() for rep in reports], indent=2) + "\n"
    elif args.format == "csv":
        rows = [(rep.q, rep.r, rep.method, format_rat(rep.total)) for rep in reports]
        text = _csv_text(["q", "r", "method", "total"], rows)
    else:
        text = "".join(f"{rep.method}: {format_rat(rep.total)}\n" for rep in reports)
    if status != EXIT_OK:
        log.error("methods disagree: %s", ", ".join(
            f"{rep.method}={format_rat(rep.total)}" for rep in reports))
    return status, text


def _classes(r, n, p):
    if p == 2:
        return enumerate_binary_classes(r, n)
    return enumerate_p_classes(p, r, n)


def cmd_enumerate(args):
    _need_prime(args.p)
    rows = []
    records = []
    for n in _parse_sizes(args.n):
        classes = _classes(args.r, n, args.p)
        log.info("r=%d n=%d: %d classes", args.r, n, len(classes))
        for idx, c in enumerate(classes):
            rows.append((args.r, n, idx, c.aut_order, c.labeled_count, c.num_bases))
            records.append({
                "r": args.r, "n": n, "class_index": idx,
                "aut_order": str(c.aut_order), "labeled_count": str(c.labeled_count),
                "num_bases": c.num_bases, "representative": c.representative.to_json(),
            })
    if args.format == "json":
        text = json.dumps(records, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(["r", "n", "class_index", "aut_order", "labeled_count", "num_bases"], rows)
    else:
        lines = [f"r={r} n={n} class {i}: |Aut|={a} labeled={lc} bases={nb}"
                 for r, n, i, a, lc, nb in rows]
        text = "\n".join(lines) + "\n"
    return EXIT_OK, text


def cmd_count_grdc(args):
    _warn_q(args.q)
    if args.method in ("brute", "both"):
        _need_prime(args.q)
    sizes = _parse_sizes(args.n) if args.n else None
    results = {}
    for method in (["brute", "recursive"] if args.method == "both" else [args.method]):
        if sizes is None:
            table = count_table(args.q, args.r, method=method, cap=args.cap, jobs=args.jobs)
        else:
            table = CountTable(args.q, args.r, method=method)
            for n in sizes:
                if method == "brute":
                    table.entries[n] = grdc_bruteforce_count(args.r, n, args.q, cap=args.cap,
                                                             jobs=args.jobs)
                else:
                    table.entries[n] = grdc_count_recursive(args.r, n, args.q)
        results[method] = table
    tables = list(results.values())
    status = EXIT_OK
    if len(tables) == 2 and tables[0].entries != tables[1].entries:
        status = EXIT_FAIL
        log.error("brute %s != recursive %s", tables[0].entries, tables[1].entries)
    if args.format == "json":
        text = json.dumps([json.loads(t.to_json()) for t in tables], indent=2) + "\n"
    elif args.format == "csv" and len(tables) == 2:
        brute, rec = tables
        text = _csv_text(["q", "r", "n", "brute", "recursive"],
                         [(args.q, args.r, n, brute.entries[n], rec.entries[n])
                          for n in sorted(rec.entries)])
    elif args.format == "csv":
        text = tables[-1].to_csv()
    else:
        lines = []
        for method, t in results.items():
            for n in sorted(t.entries):
                lines.append(f"{method} q={t.q} r={t.r} n={n}: {t.entries[n]}")
        text = "\n".join(lines) + "\n"
    return status, text


def cmd_stratum(args):
    _need_prime(args.p)
    with open(args.matroid, encoding="utf-8") as fh:
        Q = Matroid.from_json(json.load(fh))
    count = stratum_count(Q, args.p, cap=args.cap)
    if args.format == "json":
        text = json.dumps({"p": args.p, "matroid": Q.to_json(), "count": str(count)}) + "\n"
    elif args.format == "csv":
        text = _csv_text(["p", "n", "r", "count"], [(args.p, Q.n, Q.r, count)])
    else:
        text = f"{count}\n"
    return EXIT_OK, text


def cmd_table(args):
    _need_prime(args.p)
    if args.p == 2:
        report = chi_enumerated(args.r)
    else:
        report = chi_p_partial(args.p, args.r, args.n_max or (args.p ** args.r - 1) // (args.p - 1))
    rows = []
    running = Fraction(0)
    for t in report.terms:
        running += t.term
        rows.append((t.n, len(t.aut_orders), t.aut_orders, t.term, running))
    if args.format == "json":
        text = json.dumps([{"n": n, "classes": k, "aut_orders": auts,
                            "term": format_rat(term), "running_total": format_rat(tot)}
                           for n, k, auts, term, tot in rows], indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(["n", "classes", "aut_orders", "term", "running_total"],
                         [(n, k, ";".join(map(str, auts)), format_rat(term), format_rat(tot))
                          for n, k, auts, term, tot in rows])
    else:
        lines = [f"{'n':>3} {'classes':>7}  {'aut orders':<28} {'term':>12} {'total':>12}"]
        for n, k, auts, term, tot in rows:
            lines.append(f"{n:>3} {k:>7}  {', '.join(map(str, auts)):<28} "
                         f"{format_rat(term, True):>12} {format_rat(tot, True):>12}")
        total_classes = sum(k for _, k, _, _, _ in rows)
        lines.append(f"{total_classes} classes, total {format_rat(report.total, True)}")
        text = "\n".join(lines) + "\n"
    return EXIT_OK, text


def cmd_verify(args):
    params = {"q": args.q, "r": args.r, "p": args.p, "cap": args.cap, "jobs": args.jobs}
    if args.n:
        sizes = _parse_sizes(args.n)
        if len(sizes) != 1:
            raise UsageError("verify takes a single --n")
        params["n"] = sizes[0]
    try:
        verdicts = run_suite(args.suite, **params)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from exc
    failed = [v for v in verdicts if not v.ok]
    if args.format == "json":
        text = json.dumps([v.to_json() for v in verdicts], indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(["name", "params", "ok", "lhs", "rhs"],
                         [(v.name, json.dumps(v.params, sort_keys=True), v.ok,
                           json.dumps(v.to_json()["lhs"]), json.dumps(v.to_json()["rhs"]))
                          for v in verdicts])
    else:
        lines = [v.line() for v in verdicts]
        lines.append(f"{len(verdicts) - len(failed)}/{len(verdicts)} passed")
        text = "\n".join(lines) + "\n"
    for v in failed:
        log.error("%s failed\n  lhs: %s\n  rhs: %s", v.name, v.to_json()["lhs"], v.to_json()["rhs"])
    return (EXIT_FAIL if failed else EXIT_OK), text


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--output", "-o", help="write data here instead of stdout")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default 10^8 or $MATROID_EULER_CAP)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for brute force")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="matroid-euler",
                                     description="Virtual Euler characteristics of binary matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="virtual Euler characteristic")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--method", choices=["enum", "counts", "closed"], default="closed")
    p.add_argument("--all-methods", action="store_true")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("enumerate", parents=[common], help="isomorphism classes of simple matroids")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", nargs="+", required=True, help="sizes: 4, '3 4 5' or 3..7")
    p.add_argument("--p", type=int, default=2)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count-grdc", parents=[common], help="distinct-column Grassmannian counts")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", nargs="+", help="sizes (default: every n up to q^r - 1)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--method", choices=["brute", "recursive", "both"], default="recursive")
    p.set_defaults(func=cmd_count_grdc)

    p = sub.add_parser("stratum", parents=[common], help="points of Gr(r,n;F_p) realizing a matroid")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--matroid", required=True, help='JSON file {"n", "r", "bases"}')
    p.set_defaults(func=cmd_stratum)

    p = sub.add_parser("table", parents=[common], help="per-n class table with running total")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n-max", type=int, default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="check identities exactly")
    p.add_argument("--suite", choices=["all"] + list(SUITES), default="all")
    p.add_argument("--q", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--n", nargs="+")
    p.set_defaults(func=cmd_verify)
    return parser


def _setup_logging(verbose):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _setup_logging(args.verbose)
    if args.cap is not None and args.cap < 1:
        log.error("--cap must be at least 1")
        return EXIT_USAGE
    try:
        status, text = args.func(args)
    except UsageError as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except (EnumerationCapExceeded, SizeLimitExceeded) as exc:
        log.error("%s", exc)
        return EXIT_CAP
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
