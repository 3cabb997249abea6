"""Command-line entry point: ``altsum {dist,moments,erfc-fit,omega,verify}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input
error, 3 internal invariant violated.  Big integers are written as decimal
strings and floats with 17 significant digits, so outputs are reproducible.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import asymptotics, circle, omega, specfun
from .moments import expectation, ks_distance, moment_exact_series
from .series import bivariate_distribution, partition_numbers_pentagonal, partition_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_MAX_ORDER = 500


class InvariantError(RuntimeError):
    pass


def fmt(x: float) -> str:
    return format(x, ".17g")


def _int_list(text: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_rows(path: str | None, header: list[str], rows) -> None:
    fh, close = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    finally:
        if close:
            fh.close()


# --- dist -----------------------------------------------------------------------


def dist_rows(n: int) -> list[list[str]]:
    """Rows ``n,a,count`` plus the trailing ``n,sum,p(n)`` row, checked against
    the pentagonal recurrence."""
    table = bivariate_distribution(n)
    row = table.row(n)
    rows = [[str(n), str(a), str(c)] for a, c in sorted(row.items())]
    total = sum(row.values())
    p_n = partition_numbers_pentagonal(n)[n]
    if total != p_n:
        raise InvariantError(f"row sum {total} differs from p({n}) = {p_n}")
    rows.append([str(n), "sum", str(total)])
    return rows


def gnuplot_script(csv_path: str, n: int) -> str:
    return (
        "set datafile separator ','\n"
        f"set title 'a(lambda) over the partitions of {n}'\n"
        "set xlabel 'a'\n"
        "set ylabel 'count'\n"
        "set logscale y\n"
        f"plot '{csv_path}' every ::1 using 2:3 with impulses notitle\n"
    )


def cmd_dist(args) -> int:
    rows = dist_rows(args.n)
    _write_rows(args.out, ["n", "a", "count"], rows)
    if args.plot_script:
        csv_name = args.out if args.out not in (None, "-") else "dist.csv"
        Path(args.plot_script).write_text(gnuplot_script(csv_name, args.n))
    return EXIT_OK


# --- moments --------------------------------------------------------------------

MOMENT_FIELDS = ["n", "m", "A_m", "p_n", "E_m_exact", "E_m_float", "asym", "ratio"]


def moment_records(n: int, m_list: list[int]) -> list[dict]:
    p_n = partition_series(n)[n]
    if p_n != partition_numbers_pentagonal(n)[n]:
        raise InvariantError(f"p({n}) disagrees between the two recurrences")
    out = []
    for m in m_list:
        A_m = moment_exact_series(m, n)[n]
        out.append(expectation(m, n, A_m=A_m, p_n=p_n).as_record())
    return out


def cmd_moments(args) -> int:
    records = moment_records(args.n, args.m_list)
    if args.format == "json":
        fh, close = _open_out(args.out)
        try:
            json.dump(records, fh, indent=2)
            fh.write("\n")
        finally:
            if close:
                fh.close()
    else:
        _write_rows(args.out, MOMENT_FIELDS, [[str(r[k]) for k in MOMENT_FIELDS] for r in records])
    return EXIT_OK


# --- erfc-fit -------------------------------------------------------------------


def cmd_erfc_fit(args) -> int:
    table = bivariate_distribution(max(args.n_list))
    rows = []
    for n in args.n_list:
        if table.row_sum(n) != partition_numbers_pentagonal(n)[n]:
            raise InvariantError(f"row sum for n={n} differs from p(n)")
        rows.append([str(n), fmt(ks_distance(n, table))])
    _write_rows(args.out, ["n", "ks"], rows)
    return EXIT_OK


# --- omega ----------------------------------------------------------------------


def _substitution_for(spec: str, form: omega.ProductForm) -> dict:
    names = set(omega.identity_map(form))
    n_vars = sum(1 for v in names if v.startswith("x") and len(v) > 1)
    if spec == "alternating":
        return omega.alternating_map(n_vars)
    if spec == "largest":
        return omega.alternating_map(n_vars, largest=True)
    return omega.parse_substitution(spec)


def expansion_rows(expanded) -> tuple[list[str], list[list[str]]]:
    from .series import BivariateTable, TruncatedSeries

    if isinstance(expanded, TruncatedSeries):
        return ["n", "count"], [[str(n), str(c)] for n, c in enumerate(expanded) if c]
    if isinstance(expanded, BivariateTable):
        rows = []
        for n in range(expanded.order + 1):
            rows.extend([str(n), str(a), str(c)] for a, c in sorted(expanded.row(n).items()))
        return ["n", "a", "count"], rows
    qi = expanded.variables.index(expanded.trunc)
    keys = sorted(expanded.terms, key=lambda e: (e[qi], e))
    return list(expanded.variables) + ["count"], [
        [str(v) for v in e] + [str(expanded.terms[e])] for e in keys if expanded.terms[e]
    ]


def cmd_omega(args) -> int:
    text = sys.stdin.read() if args.stdin else Path(args.file).read_text()
    text = " ".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    crude = omega.parse_crude(text)
    order = [v.strip() for v in args.eliminate.split(",")] if args.eliminate else None
    product = omega.eliminate_all(crude, order)
    if args.substitute:
        product = omega.substitute(product, _substitution_for(args.substitute, product))
    print(omega.format_form(product))
    if args.expand is not None:
        header, rows = expansion_rows(omega.expand_to_series(product, args.expand))
        _write_rows(args.out, header, rows)
    return EXIT_OK


# --- verify ---------------------------------------------------------------------


def _check(name: str, value: float, tolerance: float, passed: bool, **extra) -> dict:
    rec = {"name": name, "value": value, "tolerance": tolerance, "passed": bool(passed)}
    rec.update(extra)
    return rec


def suite_em(args) -> list[dict]:
    checks = []
    for N in (1, 4):
        for w in (0.1, 0.05):
            r = asymptotics.em_holomorphic_check(0.5, w, N)
            lo, hi = N / 1.5, 1.5 * N
            checks.append(_check(f"em order a=1/2 N={N} w={w}->{w / 2}", r.order, 1.5,
                                 lo <= r.order <= hi, expected_order=N))
    return checks


DILOG_POINTS = [(0.25, 2), (0.3, 3), (-0.5, 2), (complex(0.1, 0.2), 5)]


def suite_dilog(args) -> list[dict]:
    tol = 1e-9
    return [
        _check(f"distribution x={x} n={n}", r, tol, r < tol)
        for x, n in DILOG_POINTS
        for r in [specfun.dilog_distribution_check(x, n)]
    ]


def suite_saddle(args) -> list[dict]:
    tol = 3 * args.n ** -0.25
    r = circle.saddle_check(args.m, args.n, args.delta)
    return [_check(f"saddle m={args.m} n={args.n}", r.rel_error, tol, r.rel_error <= tol)]


def suite_minor(args) -> list[dict]:
    r = circle.minor_arc_probe(args.n, args.samples, args.delta)
    return [_check(f"minor arc epsilon n={args.n}", r.epsilon, 0.0, r.epsilon > 0,
                   samples=r.samples, argmax_y=r.argmax_y)]


def suite_circle(args) -> list[dict]:
    ns = sorted(args.n_list)
    if max(ns) > 2000:
        raise ValueError("circle suite supports n <= 2000")
    exact = moment_exact_series(args.m, ns[-1]) if args.m else partition_series(ns[-1])
    tol = math.log(1.5)
    diffs = []
    checks = []
    for n in ns:
        rep = circle.circle_reconstruct(args.m, n, args.delta, exact=exact[n], minor_samples=args.samples)
        diffs.append(abs(rep.difference))
        checks.append(_check(f"|log A_{args.m}(n) - major arc| n={n}", diffs[-1], tol,
                             diffs[-1] < tol if n == ns[-1] else True, epsilon=rep.epsilon))
    mono = all(b <= a for a, b in zip(diffs, diffs[1:]))
    checks.append(_check("non-increasing over n", float(mono), 1.0, mono))
    return checks


SUITES = {"em": suite_em, "dilog": suite_dilog, "saddle": suite_saddle,
          "minor": suite_minor, "circle": suite_circle}


def cmd_verify(args) -> int:
    checks = SUITES[args.suite](args)
    ok = all(c["passed"] for c in checks)
    report = {"suite": args.suite, "passed": ok, "checks": checks}
    fh, close = _open_out(args.out)
    try:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    finally:
        if close:
            fh.close()
    return EXIT_OK if ok else EXIT_FAIL


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="altsum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dist", help="exact distribution of a(lambda) over partitions of n")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--out", default="-")
    d.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    d.add_argument("--plot-script", help="write a gnuplot script that plots the CSV")
    d.set_defaults(func=cmd_dist)

    m = sub.add_parser("moments", help="exact moments and the leading-order prediction")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--m-list", type=_int_list, required=True)
    m.add_argument("--format", choices=("json", "csv"), default="json")
    m.add_argument("--out", default="-")
    m.add_argument("--max-order", type=int, default=2000)
    m.set_defaults(func=cmd_moments)

    e = sub.add_parser("erfc-fit", help="KS distance to the Erfc(e^-x) limit law")
    e.add_argument("--n-list", type=_int_list, required=True)
    e.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
    e.add_argument("--out", default="-")
    e.set_defaults(func=cmd_erfc_fit)

    o = sub.add_parser("omega", help="Omega elimination on a crude form")
    src = o.add_mutually_exclusive_group(required=True)
    src.add_argument("--file")
    src.add_argument("--stdin", action="store_true")
    o.add_argument("--eliminate", help="comma-separated order, e.g. l1,l2,l3")
    o.add_argument("--substitute", help="'alternating', 'largest' or e.g. 'x1=z*q,x2=q*z^-1'")
    o.add_argument("--expand", type=int, help="expand to this q-order and write coefficients")
    o.add_argument("--out", default="-")
    o.set_defaults(func=cmd_omega)

    v = sub.add_parser("verify", help="numeric verification suites")
    v.add_argument("--suite", choices=sorted(SUITES), required=True)
    v.add_argument("--n", type=int, default=10000)
    v.add_argument("--n-list", type=_int_list, default=[500, 1000, 2000])
    v.add_argument("--m", type=int, default=1)
    v.add_argument("--delta", type=float, default=circle.DEFAULT_DELTA)
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_verify)
    return p


def _validate(p: argparse.ArgumentParser, args) -> None:
    if args.command in ("dist", "erfc-fit", "moments"):
        ns = [args.n] if args.command != "erfc-fit" else args.n_list
        if any(n < 0 for n in ns):
            p.error("n must be non-negative")
        if max(ns) > args.max_order:
            p.error(f"n={max(ns)} exceeds --max-order {args.max_order}")
    if args.command == "erfc-fit" and min(args.n_list) < 1:
        p.error("erfc-fit needs n >= 1")
    if args.command == "moments":
        if args.n < 1:
            p.error("moments needs n >= 1")
        if min(args.m_list) < 1:
            p.error("each m must be at least 1")
    if args.command == "omega" and args.expand is not None and args.expand < 0:
        p.error("--expand must be non-negative")
    if args.command == "verify":
        if args.suite in ("saddle", "minor") and args.n < 100:
            p.error("--n must be at least 100 for this suite")
        if args.suite == "saddle" and args.m < 0:
            p.error("--m must be non-negative")
        if args.suite == "circle" and (min(args.n_list) < 100 or max(args.n_list) > 2000 or args.m < 0):
            p.error("circle suite needs 100 <= n <= 2000 and m >= 0")
        if args.samples < 1 or not args.delta > 0:
            p.error("--samples must be positive and --delta > 0")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"altsum: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (omega.OmegaSyntaxError, omega.EliminationError, KeyError, ValueError, OSError) as exc:
        print(f"altsum: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
