"""Command-line front end.

Data goes to standard output (or ``--output``); run metadata and errors go to
standard error.  Exit codes: 0 success, 1 usage error, 2 computation error,
3 table mismatch.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import time
from dataclasses import dataclass

from . import census, density, lseries, order
from .characters import indicator_equivalence, ramanujan_sums_check
from .curve import reduce
from .errors import EllCensusError
from .numtheory import iter_primes, primes_in_range
from .registry import REGISTRY_ENV, get_curve, load_registry, load_tables
from .tables import reproduce_table, table_ids

EXIT_OK, EXIT_USAGE, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    command: str
    registry: str | None
    curve: str | None = None
    x: int | None = None
    t: int = 1
    mode: str = census.PRIME
    prime_limit: int | None = None
    output: str | None = None
    workers: int = 1


def _emit(text: str, output: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _curve(cfg: RunConfig):
    if cfg.curve is None:
        raise UsageError("--curve is required")
    return get_curve(cfg.curve, cfg.registry)


def _positive_int(text: str) -> int:
    try:
        value = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def cmd_census(args, cfg: RunConfig) -> int:
    report = census.run_census(
        _curve(cfg), cfg.x, t=cfg.t, mode=cfg.mode, delta=args.delta, structure=args.structure, workers=cfg.workers
    )
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.format == "json":
        _emit(report.to_json(), cfg.output)
    else:
        _emit(report.to_csv(counted_only=args.counted_only), cfg.output)
    print(
        f"{report.label}: x={report.x} t={report.t} mode={report.mode} counted={len(report.counted)} "
        f"pi={report.pi_count} excluded_bad_primes={list(report.excluded_bad_primes)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_order(args, cfg: RunConfig) -> int:
    E = reduce(_curve(cfg), args.p)
    method = {"auto": order.group_order, "exhaustive": order.order_exhaustive, "bsgs": order.order_bsgs}[args.method]
    n = method(E)
    lines = [f"p={args.p}", f"n={n}", f"a_p={args.p + 1 - n}"]
    if args.structure:
        s = order.group_structure(E, n)
        lines.append(f"structure=Z/{s.n1} x Z/{s.n2} cyclic={str(s.cyclic).lower()} exact={str(s.exact).lower()}")
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def _bracket_lines(name: str, b: density.BracketedConstant) -> list[str]:
    return [
        f"{name}",
        f"prime_limit={b.prime_limit}",
        f"lower={b.lower!r}",
        f"upper={b.upper!r}",
        f"value={b.value!r}",
        f"width={b.width:.3e}",
    ]


def cmd_density(args, cfg: RunConfig) -> int:
    if args.which == "koblitz":
        b = density.koblitz_constant(cfg.prime_limit or 10**6)
        lines = _bracket_lines("koblitz", b)
        lines.append(f"reference={density.P0_REFERENCE!r} contained={str(density.P0_REFERENCE in b).lower()}")
    elif args.which == "serre":
        if args.D is None:
            raise UsageError("density serre needs --D")
        b = density.delta_serre(args.D, cfg.prime_limit or 10**6)
        lines = _bracket_lines(f"serre D={args.D}", b)
        lines.append(f"correction={density.serre_correction(args.D)}")
    else:
        b = density.delta_quartic_twist(cfg.prime_limit or 10**7)
        lines = _bracket_lines("quartic-twist", b)
        lines.append(f"reference={density.QUARTIC_TWIST_REFERENCE!r}")
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def cmd_divisor(args, cfg: RunConfig) -> int:
    curve = _curve(cfg)
    est = density.elliptic_divisor_empirical(curve, args.bound)
    table = None
    if curve.cm_discriminant is not None:
        table = density.elliptic_divisor_cm_table(curve.cm_discriminant, curve.a, curve.b)
    lines = [
        f"curve={curve.label}",
        f"empirical_d_E={est.d_E}",
        f"stabilized_at={est.stabilized_at}",
        f"primes_used={est.primes_used}",
        f"cm_table_d_E={'-' if table is None else table}",
        f"registry_d_E={'-' if curve.d_E is None else curve.d_E}",
    ]
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def _printed_brun(label: str, t: int) -> float | None:
    for entry in load_tables():
        if entry["curve"] == label and entry["t"] == t:
            return entry.get("brun_printed")
    return None


def cmd_brun(args, cfg: RunConfig) -> int:
    curve = _curve(cfg)
    report = census.run_census(curve, cfg.x, t=cfg.t, mode=cfg.mode, workers=cfg.workers)
    printed = _printed_brun(curve.label, cfg.t)
    lines = [
        f"curve={curve.label} x={cfg.x} t={cfg.t} mode={report.mode}",
        f"counted={len(report.counted)}",
        f"brun_partial={census.brun_partial_sum(report)!r}",
        f"printed_value={'-' if printed is None else repr(printed)}",
    ]
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def cmd_measure(args, cfg: RunConfig) -> int:
    curve = _curve(cfg)
    total = census.measure_sum(curve, cfg.x)
    report = census.run_census(curve, cfg.x, workers=cfg.workers)
    lines = [f"curve={curve.label} x={cfg.x}", f"measure_sum={total!r}", f"pi_count={report.pi_count}"]
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK


def cmd_series(args, cfg: RunConfig) -> int:
    curve = _curve(cfg)
    table = lseries.an_table(curve, max(args.terms, args.limit or 0))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(table.to_csv())
    text = lseries.q_expansion_text(table, args.terms)
    _emit(text + (" + ..." if text not in ("", "0") else ""), cfg.output)
    if table.bad_primes:
        print(f"coefficients at bad primes {list(table.bad_primes)} set to 0", file=sys.stderr)
    return EXIT_OK


def _check_ramanujan() -> tuple[bool, str]:
    worst = 0.0
    for n in iter_primes(2, 101):
        for k in range(1, n):
            for r in range(1, n):
                a, b = ramanujan_sums_check(n, k, r)
                worst = max(worst, abs(a + 1), abs(b + 1))
    return worst < 1e-9, f"max |sum + 1| = {worst:.2e} over primes n <= 101"


def _check_brun_titchmarsh() -> tuple[bool, str]:
    parts, ok = [], True
    for k in range(3, 8):
        good, w = census.brun_titchmarsh_check(10**k)
        ok &= good
        parts.append(f"10^{k}: {w.primes_in_window} <= {w.bound:.1f}")
    return ok, "; ".join(parts)


def _check_short_interval() -> tuple[bool, str]:
    s = census.short_interval_survey(10**5, 2 * 10**5)
    return s.exception_fraction <= 0.10, f"{s.exceptions} exceptions among {s.primes} primes in [1e5, 2e5]"


def _check_upper_bound(registry) -> tuple[bool, str]:
    parts, ok = [], True
    for label, curve in registry.items():
        report = census.run_census(curve, 10**5)
        good = census.upper_bound_check(report)
        ok &= good
        parts.append(f"{label}: {report.pi_count} <= {12 * 1e5 / math.log(1e5) ** 2:.1f}")
    return ok, "; ".join(parts)


def _check_indicators(registry) -> tuple[bool, str]:
    groups = cyclic = 0
    failures = []
    for label, curve in registry.items():
        for p in primes_in_range(5, 200).tolist():
            if not curve.is_good_prime(p):
                continue
            rep = indicator_equivalence(reduce(curve, p))
            groups += 1
            cyclic += rep.cyclic
            if not rep.ok:
                failures.append(f"{label}@{p}")
    detail = f"{cyclic} cyclic of {groups} groups; failures: {', '.join(failures) or 'none'}"
    return not failures, detail


def cmd_check(args, cfg: RunConfig) -> int:
    registry = load_registry(cfg.registry)
    checks = {
        "ramanujan": _check_ramanujan,
        "brun-titchmarsh": _check_brun_titchmarsh,
        "short-interval": _check_short_interval,
        "upper-bound": lambda: _check_upper_bound(registry),
        "indicators": lambda: _check_indicators(registry),
    }
    names = list(checks) if args.which == "all" else [args.which]
    lines, ok = [], True
    for name in names:
        good, detail = checks[name]()
        ok &= good
        lines.append(f"{name}: {'PASS' if good else 'FAIL'} ({detail})")
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK if ok else EXIT_ERROR


def cmd_tables(args, cfg: RunConfig) -> int:
    ids = table_ids() if args.which == "all" else [int(args.which)]
    lines, ok = [], True
    for i in ids:
        diff = reproduce_table(i)
        ok &= diff.ok(strict=args.strict)
        lines.extend(diff.lines())
        lines.append(f"  verdict: {'match' if diff.ok(strict=args.strict) else 'MISMATCH'}")
    _emit("\n".join(lines), cfg.output)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellcensus", description="Prime-order census of elliptic curves over F_p.")
    parser.add_argument("--registry", help=f"curve registry JSON (default: ${REGISTRY_ENV} or the packaged one)")
    parser.add_argument("--output", "-o", help="write data output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def curve_args(p, x=True):
        p.add_argument("--curve", required=True, help="registry label, e.g. 1728.n4")
        if x:
            p.add_argument("--x", type=_positive_int, required=True, help="sweep bound")

    def census_args(p):
        p.add_argument("--t", type=_positive_int, default=1, help="divisor t (default 1)")
        p.add_argument("--mode", choices=["prime", "prime-power"], default="prime")
        p.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)

    p = sub.add_parser("census", help="per-prime records for p <= x")
    curve_args(p)
    census_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--counted-only", action="store_true")
    p.add_argument("--structure", action="store_true", help="also decide cyclicity of each group")
    p.add_argument("--delta", type=float, help="density constant for predicted counts")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("order", help="#E(F_p) at one prime")
    curve_args(p, x=False)
    p.add_argument("--p", type=_positive_int, required=True)
    p.add_argument("--method", choices=["auto", "exhaustive", "bsgs"], default="auto")
    p.add_argument("--structure", action="store_true")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("density", help="Euler-product density constants")
    p.add_argument("which", choices=["koblitz", "serre", "quartic-twist"])
    p.add_argument("--D", type=int, help="field discriminant for serre")
    p.add_argument("--prime-limit", type=_positive_int)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("divisor", help="elliptic divisor d_E")
    curve_args(p, x=False)
    p.add_argument("--bound", type=_positive_int, default=10**4)
    p.set_defaults(func=cmd_divisor)

    p = sub.add_parser("brun", help="partial elliptic Brun sum")
    curve_args(p)
    census_args(p)
    p.set_defaults(func=cmd_brun)

    p = sub.add_parser("measure", help="Lambda-weighted primitive-point measure")
    curve_args(p)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("series", help="L-series coefficients and q-expansion")
    curve_args(p, x=False)
    p.add_argument("--terms", type=_positive_int, default=20)
    p.add_argument("--limit", type=_positive_int, help="table size for --csv (default: --terms)")
    p.add_argument("--csv", help="write n,a_n to this file")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("check", help="analytic sanity checks and the indicator suite")
    p.add_argument(
        "which",
        nargs="?",
        default="all",
        choices=["all", "ramanujan", "brun-titchmarsh", "short-interval", "upper-bound", "indicators"],
    )
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tables", help="recompute the embedded tables and diff them")
    p.add_argument("--which", default="all", choices=["all", *map(str, range(1, 6))])
    p.add_argument("--strict", action="store_true", help="also fail on disputed rows and unprinted counted primes")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(
        command=args.command,
        registry=args.registry,
        curve=getattr(args, "curve", None),
        x=getattr(args, "x", None),
        t=getattr(args, "t", 1),
        mode=getattr(args, "mode", census.PRIME).replace("-", "_"),
        prime_limit=getattr(args, "prime_limit", None),
        output=args.output,
        workers=getattr(args, "workers", 1),
    )
    start = time.perf_counter()
    try:
        code = args.func(args, cfg)
    except UsageError as exc:
        print(f"ellcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EllCensusError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"[{cfg.command} finished in {time.perf_counter() - start:.2f}s]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
