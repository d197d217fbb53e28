"""Command-line front end.

    nonarch mu      --prime 5 --expr "5 + z^3" --s 1
    nonarch newton  --prime 5 --expr "z^3 + 5"
    nonarch char    --prime 5 --expr "(z-1)/(z-5)" --ladder 0:1:3 --format csv
    nonarch verify-lld --prime 5 --expr "z^2" --map 1,1 --ladder 1:1:3
    nonarch verify-clunie --instance eqs.jsonl --ladder 1:1/2:5
    nonarch verify-mokhonko --seed 7 --trials 50 --family delta
    nonarch gen clunie --seed 3 --trials 5 > eqs.jsonl

Verify commands write one JSON verdict per line followed by a summary line.
Exit status: 0 when every verdict held (window skips alone are fine), 1 when
some verdict failed, 2 for usage and domain errors.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace

from .algebra import AffineMap
from .checkers import (
    check_clunie_m,
    check_clunie_N,
    check_degree_identity,
    check_lld_entire,
    check_lld_mero,
    check_malmquist_consequence,
    check_mokhonko,
)
from .dsl import parse_ratfunc
from .errors import ExprSyntaxError, NonArchError
from .generators import gen_clunie, gen_degree, gen_mokhonko
from .instances import ClunieInstance, DegreeInstance, MokhonkoInstance, dumps, load_instances
from .nevanlinna import characteristic_table, parse_ladder
from .ratfunc import mu_hat_rat
from .scalar import Prime, fmt_log, fmt_q, parse_q
from .series import newton_polygon, zero_log_radii
from .suites import SuiteResult, run_suite, suite_config

PRIME_ENV = "NONARCH_PRIME"
DEFAULT_LADDER = "0:1/2:5"


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _prime(args) -> Prime:
    raw = args.prime if args.prime is not None else os.environ.get(PRIME_ENV)
    if raw is None:
        raise UsageError(f"no prime given (use --prime or set {PRIME_ENV})")
    try:
        return Prime(int(raw))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _expr(args, p):
    if not args.expr:
        raise UsageError("--expr is required")
    return parse_ratfunc(args.expr, p)


def _ladder(args):
    return parse_ladder(args.ladder or DEFAULT_LADDER)


# -- computation commands ----------------------------------------------------

def cmd_mu(args, out) -> int:
    p = _prime(args)
    f = _expr(args, p)
    if args.s is not None:
        radii = [parse_q(args.s)]
    else:
        radii = _ladder(args)
    for s in radii:
        mu = mu_hat_rat(f, s)
        if args.format == "pretty":
            out.write(f"mu(s={fmt_q(s)}) = {fmt_log(mu)}\n")
        else:
            out.write(_dump({"s": fmt_q(s), "mu": fmt_log(mu)}) + "\n")
    return 0


def cmd_newton(args, out) -> int:
    p = _prime(args)
    f = _expr(args, p)
    if not f.is_polynomial():
        raise UsageError("newton needs a polynomial expression")
    poly = newton_polygon(f.num)
    zeros = zero_log_radii(f.num)
    if args.format == "pretty":
        out.write("vertices: " + " ".join(f"({n},{fmt_q(v)})" for n, v in poly.vertices) + "\n")
        if zeros.origin_multiplicity:
            out.write(f"origin: {zeros.origin_multiplicity}\n")
        for s, m in zeros.radii:
            out.write(f"zeros: {m} x {fmt_q(s)}\n")
        return 0
    out.write(_dump({
        "vertices": [[n, fmt_q(v)] for n, v in poly.vertices],
        "origin": zeros.origin_multiplicity,
        "zeros": [{"s": fmt_q(s), "count": m} for s, m in zeros.radii],
    }) + "\n")
    return 0


def cmd_char(args, out) -> int:
    p = _prime(args)
    f = _expr(args, p)
    rows = characteristic_table(f, _ladder(args))
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["s", "m", "N", "T"])
        for r in rows:
            w.writerow([fmt_q(r.s), fmt_q(r.m), fmt_q(r.N), fmt_q(r.T)])
    elif args.format == "pretty":
        out.write(f"{'s':>8} {'m':>8} {'N':>8} {'T':>8}\n")
        for r in rows:
            out.write(f"{fmt_q(r.s):>8} {fmt_q(r.m):>8} {fmt_q(r.N):>8} {fmt_q(r.T):>8}\n")
    else:
        for r in rows:
            out.write(_dump(r.to_json()) + "\n")
    return 0


# -- verification ------------------------------------------------------------

def _emit(result: SuiteResult, out) -> int:
    for line in result.lines:
        out.write(line + "\n")
    for adv in result.advisories:
        out.write(_dump({"advisory": adv}) + "\n")
    out.write(_dump({"summary": result.summary()}) + "\n")
    return 0 if result.ok else 1


def _collect(reports) -> SuiteResult:
    res = SuiteResult()
    for rep in reports:
        res.lines.extend(_dump(v.to_json()) for v in rep.verdicts)
        res.checked += len(rep.verdicts)
        res.held += sum(v.holds for v in rep.verdicts)
        res.window_skipped += rep.window_skipped
        res.measured.update({k: "inf" if v is None else fmt_q(v) for k, v in rep.measured.items()})
        res.advisories.extend(rep.advisories)
    return res


def _generated(args, names) -> SuiteResult:
    res = SuiteResult()
    for name in names:
        kw = {"seed": args.seed, "trials": args.trials}
        if args.prime is not None or os.environ.get(PRIME_ENV):
            kw["primes"] = (_prime(args),)
        if args.ladder:
            kw["ladder"] = tuple(parse_ladder(args.ladder))
        if getattr(args, "family", None) and name not in ("degree", "lld-entire"):
            kw["family"] = args.family
        part = run_suite(name, suite_config(name, **kw), jobs=args.jobs)
        res.lines.extend(part.lines)
        res.checked += part.checked
        res.held += part.held
        res.window_skipped += part.window_skipped
        res.measured.update(part.measured)
        res.advisories.extend(part.advisories)
    return res


def _instances(args, cls):
    with open(args.instance, encoding="utf-8") as fh:
        items = load_instances(fh.read())
    named = []
    for k, it in enumerate(items):
        if not isinstance(it, cls):
            raise UsageError(f"{args.instance}: expected {cls.__name__}, got {type(it).__name__}")
        named.append(it if it.id else replace(it, id=f"#{k}"))
    return named


def _parse_map(text: str) -> AffineMap:
    try:
        a, b = text.split(",")
        return AffineMap(parse_q(a.strip()), parse_q(b.strip()))
    except ValueError:
        raise UsageError(f"--map expects 'a,b', got {text!r}") from None


def cmd_verify_lld(args, out) -> int:
    skip = not args.strict_window
    if not args.expr:
        return _emit(_generated(args, ["lld-entire", "lld-mero"]), out)
    p = _prime(args)
    f = _expr(args, p)
    L = _parse_map(args.map or "1,1")
    ladder = _ladder(args)
    if f.is_polynomial():
        rep = check_lld_entire(f.num, L, args.order, ladder, instance="expr", skip_out_of_window=skip)
    else:
        rep = check_lld_mero(f, L, args.order, ladder, instance="expr", skip_out_of_window=skip)
    return _emit(_collect([rep]), out)


def cmd_verify_clunie(args, out) -> int:
    skip = not args.strict_window
    if not args.instance:
        names = {"m": ["clunie-m"], "N": ["clunie-n-strict", "clunie-n-measured"],
                 "malmquist": ["malmquist"]}[args.check]
        return _emit(_generated(args, names), out)
    ladder = _ladder(args)
    reports = []
    for inst in _instances(args, ClunieInstance):
        if args.check == "m":
            reports.append(check_clunie_m(inst, ladder, skip_out_of_window=skip,
                                          degree_reading=args.degree_reading))
        elif args.check == "N":
            K = parse_q(args.K) if args.K is not None else None
            reports.append(check_clunie_N(inst, ladder, K, skip_out_of_window=skip))
        else:
            reports.append(check_malmquist_consequence(inst, ladder, skip_out_of_window=skip))
    return _emit(_collect(reports), out)


def cmd_verify_mokhonko(args, out) -> int:
    skip = not args.strict_window
    if not args.instance:
        return _emit(_generated(args, ["mokhonko", "mokhonko-corrupt"]), out)
    ladder = _ladder(args)
    reps = [check_mokhonko(i, ladder, skip_out_of_window=skip) for i in _instances(args, MokhonkoInstance)]
    return _emit(_collect(reps), out)


def cmd_verify_degree(args, out) -> int:
    if not args.instance:
        return _emit(_generated(args, ["degree"]), out)
    reps = [check_degree_identity(i) for i in _instances(args, DegreeInstance)]
    return _emit(_collect(reps), out)


_GEN = {"clunie": ("clunie-m", gen_clunie), "mokhonko": ("mokhonko", gen_mokhonko),
        "degree": ("degree", gen_degree)}


def cmd_gen(args, out) -> int:
    suite, gen = _GEN[args.kind]
    kw = {"seed": args.seed, "trials": args.trials, "family": args.family}
    if args.prime is not None or os.environ.get(PRIME_ENV):
        kw["primes"] = (_prime(args),)
    if args.kind == "clunie" and args.x0:
        kw["phi_mode"] = "x0"
    cfg = suite_config(suite, **kw)
    for i in range(cfg.trials):
        out.write(dumps(gen(cfg, i)) + "\n")
    return 0


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", help=f"the prime p (default: ${PRIME_ENV})")
    common.add_argument("--expr", help="expression text in z")
    common.add_argument("--instance", help="instance JSON file (document, list or JSON lines)")
    common.add_argument("--ladder", help=f"start:step:count (default {DEFAULT_LADDER})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--jobs", type=int, default=1, help="worker processes for generated suites")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--strict-window", action="store_true",
                        help="treat radii outside the validity window as an error instead of skipping them")

    ap = argparse.ArgumentParser(prog="nonarch", description="Exact non-Archimedean value distribution tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mu", parents=[common], help="maximum term at a log-radius")
    p.add_argument("--s", help="a single log-radius (otherwise the ladder is used)")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("newton", parents=[common], help="Newton polygon and zero log-radii")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("char", parents=[common], help="characteristic table m, N, T")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("verify-lld", parents=[common], help="shift lemmas for a single map")
    p.add_argument("--map", help="affine map a,b meaning z -> a*z + b (default 1,1)")
    p.add_argument("--order", type=int, default=1, help="difference order m")
    p.add_argument("--family", choices=("shift", "delta"))
    p.set_defaults(func=cmd_verify_lld)

    p = sub.add_parser("verify-clunie", parents=[common], help="Clunie-type bounds")
    p.add_argument("--check", choices=("m", "N", "malmquist"), default="m")
    p.add_argument("--K", help="coefficient-pole constant for the valence bound")
    p.add_argument("--degree-reading", choices=("total", "x0"), default="total")
    p.add_argument("--family", choices=("shift", "delta"))
    p.set_defaults(func=cmd_verify_clunie)

    p = sub.add_parser("verify-mokhonko", parents=[common], help="proximity bound for non-solution targets")
    p.add_argument("--family", choices=("derivative", "shift", "delta"))
    p.set_defaults(func=cmd_verify_mokhonko)

    p = sub.add_parser("verify-degree", parents=[common], help="characteristic slope under rational maps")
    p.set_defaults(func=cmd_verify_degree)

    p = sub.add_parser("gen", parents=[common], help="write generated instances as JSON lines")
    p.add_argument("kind", choices=sorted(_GEN))
    p.add_argument("--family", choices=("derivative", "shift", "delta"), default="shift")
    p.add_argument("--x0", action="store_true", help="Clunie right-hand side polynomial in f only")
    p.set_defaults(func=cmd_gen)
    return ap


def run_command(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ExprSyntaxError as exc:
        err.write(f"syntax error: {exc}\n")
    except (UsageError, NonArchError, ValueError, ZeroDivisionError, OSError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
    return 2


def main() -> None:
    sys.exit(run_command())
