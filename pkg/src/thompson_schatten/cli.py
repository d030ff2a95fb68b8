"""Command-line front end.

Exit codes: 0 success, 2 usage/parse/config error, 3 matrix not positive
definite, 4 dimension mismatch, 5 solver iteration cap reached, 6 solver saw
no contraction. Results go to stdout and diagnostics to stderr.
"""
import argparse
import csv
import math
import os
import sys

from .bounds import CSV_COLUMNS, DEFAULT_ORDERS, audit_pair
from .errors import (
    ConfigError,
    ContractionNotObserved,
    DimensionMismatch,
    InvalidOrder,
    MaxIterationsExceeded,
    NotPositiveDefinite,
    ParseError,
)
from .harness import format_summary, parse_config, run_sweep
from .linalg import check_same_shape, cholesky, is_psd
from .metrics import format_order, schatten_norm, schatten_order, thompson_distance
from .solver import SolverProblem, solve_fixed_point
from .textio import format_matrix, read_matrix

EXIT_USAGE = 2
EXIT_NOT_PD = 3
EXIT_DIMENSION = 4
EXIT_MAX_ITER = 5
EXIT_NO_CONTRACTION = 6


class CommandError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def fmt(x):
    """Screen format: 12 digits after the point, exact zero as ``0``."""
    if x is None:
        return "-"
    if x == 0:
        return "0"
    if math.isinf(x) or math.isnan(x):
        return str(x)
    return f"{x:.12f}"


def parse_orders(text):
    try:
        orders = [schatten_order(tok) for tok in text.split(",") if tok.strip()]
    except InvalidOrder as exc:
        raise CommandError(str(exc), EXIT_USAGE) from None
    if not orders:
        raise CommandError("empty list of Schatten orders", EXIT_USAGE)
    return orders


def _load(path, symmetric=True):
    try:
        return read_matrix(path, symmetric=symmetric)
    except ParseError as exc:
        raise CommandError(f"{path}: {exc}", EXIT_USAGE) from None


def _load_pd(path):
    a = _load(path)
    try:
        cholesky(a)
    except NotPositiveDefinite:
        _, margin = is_psd(a)
        raise CommandError(
            f"{path}: matrix is not positive definite (smallest eigenvalue {margin:.12g})",
            EXIT_NOT_PD,
        ) from None
    return a


def _load_pd_pair(path_x, path_y):
    x = _load_pd(path_x)
    y = _load_pd(path_y)
    try:
        check_same_shape(x, y)
    except DimensionMismatch as exc:
        raise CommandError(str(exc), EXIT_DIMENSION) from None
    return x, y


def _write_csv(path, reports):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for rep in reports:
            writer.writerow(rep.csv_row(seed="", family="cli"))


def _pass(ok):
    return "PASS" if ok else "FLAG"


def _print_report(rep, out):
    print(f"p = {format_order(rep.p)}", file=out)
    rows = [
        ("d", rep.d), ("alpha", rep.scale.alpha), ("beta", rep.scale.beta),
        ("actual", rep.actual), ("t1", rep.t1), ("t2", rep.t2), ("t3", rep.t3),
        ("frob", rep.frob), ("corrected", rep.corrected_env_norm),
        ("ratio_t3", rep.ratio_t3), ("ratio_frob", rep.ratio_frob),
    ]
    for name, value in rows:
        if value is not None:
            print(f"  {name:<12}{fmt(value)}", file=out)
    flags = [
        ("t1", rep.flags["t1"]), ("t2", all(rep.per_index_flags["t2"])),
        ("t3", rep.flags["t3"]),
    ]
    if "frob" in rep.flags:
        flags.append(("frob", rep.flags["frob"]))
    flags.append(("corrected", all(rep.per_index_flags["corrected"])))
    print("  flags       " + "  ".join(f"{k} {_pass(v)}" for k, v in flags), file=out)


def cmd_dist(args, out):
    x, y = _load_pd_pair(args.x, args.y)
    print(fmt(thompson_distance(x, y)), file=out)


def cmd_norm(args, out):
    a = _load(args.x)
    p = parse_orders(args.p)
    for order in p:
        value = fmt(schatten_norm(a, order))
        print(value if len(p) == 1 else f"{format_order(order)} {value}", file=out)


def cmd_bound(args, out):
    x, y = _load_pd_pair(args.x, args.y)
    reports = audit_pair(x, y, parse_orders(args.p))
    for rep in reports:
        _print_report(rep, out)
    if args.csv:
        _write_csv(args.csv, reports)


def cmd_audit(args, out):
    x, y = _load_pd_pair(args.x, args.y)
    reports = audit_pair(x, y, DEFAULT_ORDERS)
    first = reports[0]
    env = first.envelopes
    names = ("lemma1", "lemma2", "t2", "corrected")
    print(f"{'i':>3}  {'delta_i':>18}" + "".join(f"  {n:>24}" for n in names), file=out)
    for i, delta in enumerate(first.delta_spectrum):
        cells = "".join(
            f"  {fmt(env[n][i]):>19} {_pass(first.per_index_flags[n][i])}" for n in names
        )
        print(f"{i + 1:>3}  {fmt(delta):>18}{cells}", file=out)
    for rep in reports:
        _print_report(rep, out)
    if args.csv:
        _write_csv(args.csv, reports)


def cmd_sweep(args, out):
    try:
        with open(args.config) as fh:
            config = parse_config(fh.read())
    except ConfigError as exc:
        raise CommandError(f"{args.config}: {exc}", EXIT_USAGE) from None
    result = run_sweep(config)
    if config.output:
        print(format_summary(result.summary), file=out)
    else:
        out.write(result.csv_text())
        print(format_summary(result.summary), file=sys.stderr)


def cmd_solve(args, out):
    if not args.tol_d > 0:
        raise CommandError("--tol-d must be positive", EXIT_USAGE)
    q = _load_pd(args.q)
    a = _load(args.a, symmetric=False)
    try:
        problem = SolverProblem(q, a)
    except DimensionMismatch as exc:
        raise CommandError(str(exc), EXIT_DIMENSION) from None
    orders = parse_orders(args.p)
    try:
        x, cert = solve_fixed_point(problem, args.tol_d, args.max_iter, orders)
    except MaxIterationsExceeded as exc:
        _emit_solution(args, exc.solution, out)
        raise CommandError(str(exc), EXIT_MAX_ITER) from None
    except ContractionNotObserved as exc:
        _emit_solution(args, exc.solution, out)
        raise CommandError(str(exc), EXIT_NO_CONTRACTION) from None
    _emit_solution(args, x, out)
    print(f"iterations  {cert.iterations}", file=out)
    print(f"rho_hat     {fmt(cert.rho_hat)}", file=out)
    print(f"d_gap       {fmt(cert.d_gap)}  [{cert.label}]", file=out)
    for p, bound in cert.bounds:
        print(f"bound p={format_order(p):<5}{fmt(bound)}", file=out)
    print(f"bound p=2 (refined) {fmt(cert.frobenius_refined)}", file=out)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["p", "bound"])
            for p, bound in cert.bounds:
                writer.writerow([format_order(p), f"{bound:.17g}"])


def _emit_solution(args, x, out):
    if x is None:
        return
    text = format_matrix(x)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="thompson-schatten",
        description="Thompson metric, Schatten norms and norm-vs-metric bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", help="Thompson distance between two PD matrices")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_dist, paths=("x", "y"))

    p = sub.add_parser("norm", help="Schatten p-norm of a symmetric matrix")
    p.add_argument("x")
    p.add_argument("--p", required=True)
    p.set_defaults(func=cmd_norm, paths=("x",))

    p = sub.add_parser("bound", help="every bound on ||X - Y||_p for the given orders")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--p", required=True)
    p.add_argument("--csv")
    p.set_defaults(func=cmd_bound, paths=("x", "y"))

    p = sub.add_parser("audit", help="full audit, including per-index envelopes")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_audit, paths=("x", "y"))

    p = sub.add_parser("sweep", help="run a randomized audit sweep from a config file")
    p.add_argument("config")
    p.set_defaults(func=cmd_sweep, paths=("config",))

    p = sub.add_parser("solve", help="solve X = Q + A^T X^-1 A with an error certificate")
    p.add_argument("q")
    p.add_argument("a")
    p.add_argument("--tol-d", type=float, required=True)
    p.add_argument("--p", default="1,2,inf")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--out")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_solve, paths=("q", "a"))
    return parser


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        for name in args.paths:
            path = getattr(args, name)
            if not os.path.isfile(path):
                raise CommandError(f"no such file: {path}", EXIT_USAGE)
        args.func(args, out)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    return 0


if __name__ == "__main__":
    sys.exit(main())
