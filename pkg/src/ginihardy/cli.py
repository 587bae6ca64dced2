"""Command-line interface: ``ginihardy {bound,sweep,verify,mean}``.

Exit codes: 0 ok, 1 a computed ratio exceeds its bound, 2 domain error,
64 usage error, 74 I/O error. Tolerances and the seed can also be set via
``HARDY_TOL_X``, ``HARDY_TOL_F``, ``HARDY_QUAD_TOL`` and ``HARDY_SEED``;
flags win over the environment.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bounds import QUAD_TOL, bounds_report
from .empirical import SequenceSpec, hardy_ratio
from .errors import DomainError, HardyError, InvalidSpec
from .means import GiniParams, concavized_generator, gini_mean, quasideviation_mean, special_mean_m12
from .numerics import DEFAULT_TOL, Tolerance

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64
EXIT_IO = 74

VIOLATION_SLACK = 1e-6

log = logging.getLogger("ginihardy")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    tol: Tolerance = field(default_factory=lambda: DEFAULT_TOL)
    quad_tol: float = QUAD_TOL
    seed: int = 0
    verbosity: int = 0

    @classmethod
    def from_sources(cls, args: argparse.Namespace, environ=None) -> "RunConfig":
        env = os.environ if environ is None else environ

        def pick(flag, var, conv, default):
            value = getattr(args, flag, None)
            if value is not None:
                return value
            if var in env:
                try:
                    return conv(env[var])
                except ValueError:
                    raise UsageError(f"bad value for {var}: {env[var]!r}") from None
            return default

        try:
            tol = Tolerance(
                abs_x=pick("tol_x", "HARDY_TOL_X", float, DEFAULT_TOL.abs_x),
                abs_f=pick("tol_f", "HARDY_TOL_F", float, DEFAULT_TOL.abs_f),
                max_iter=DEFAULT_TOL.max_iter,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        quad_tol = pick("quad_tol", "HARDY_QUAD_TOL", float, QUAD_TOL)
        if not quad_tol > 0:
            raise UsageError("quadrature tolerance must be positive")
        return cls(
            tol=tol,
            quad_tol=quad_tol,
            seed=pick("seed", "HARDY_SEED", int, 0),
            verbosity=getattr(args, "verbose", 0) or 0,
        )


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cmd_bound(args, config: RunConfig, out) -> int:
    params = GiniParams(args.p, args.q)
    report = bounds_report(params, config.tol, config.quad_tol)
    if args.json:
        print(json.dumps(report.to_record()), file=out)
        return EXIT_OK
    print(f"G[{params.p:g},{params.q:g}]", file=out)
    if not report.is_hardy:
        print("  not a Hardy mean (needs min(p,q) <= 0 and max(p,q) < 1)", file=out)
        return EXIT_OK
    rows = [
        ("lower bound H", report.lower_H),
        ("exact constant", report.exact_constant),
        ("comparison upper", report.trivial_upper),
        ("power-type upper", report.pas_upper),
        ("concavization upper c", report.c_upper),
        ("residual (quadrature)", report.residual_integral),
        ("residual (closed form)", report.residual_algebraic),
    ]
    for label, value in rows:
        if value is not None:
            print(f"  {label:<24} {value:.15g}", file=out)
    return EXIT_OK


def grid_axis(lo: float, hi: float, step: float) -> list:
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


SWEEP_COLUMNS = ("p", "q", "H", "trivial", "pas", "c", "residual_integral",
                 "gap_c_minus_H", "c_reason")


def sweep_row(node, tol: Tolerance = DEFAULT_TOL, quad_tol: float = QUAD_TOL) -> dict:
    p, q = node
    rep = bounds_report(GiniParams(p, q), tol, quad_tol)
    gap = None
    if rep.c_upper is not None and rep.lower_H is not None:
        gap = rep.c_upper - rep.lower_H
    return {
        "p": p,
        "q": q,
        "H": rep.lower_H,
        "trivial": rep.trivial_upper,
        "pas": rep.pas_upper,
        "c": rep.c_upper,
        "residual_integral": rep.residual_integral,
        "gap_c_minus_H": gap,
        "c_reason": rep.reasons.get("c_upper"),
    }


def _sweep_job(args):
    return sweep_row(*args)


def run_sweep(nodes, tol: Tolerance, quad_tol: float, workers: int = 1) -> list:
    jobs = [(node, tol, quad_tol) for node in nodes]
    if workers <= 1 or len(jobs) < 2:
        return [_sweep_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def render_sweep(rows, fmt: str) -> str:
    buf = io.StringIO()
    if fmt == "csv":
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SWEEP_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in SWEEP_COLUMNS])
    else:
        for row in rows:
            buf.write(json.dumps(row) + "\n")
    return buf.getvalue()


def cmd_sweep(args, config: RunConfig, out) -> int:
    if not args.step > 0:
        raise UsageError("--step must be positive")
    if args.p_min > args.p_max or args.q_min > args.q_max:
        raise UsageError("grid bounds must satisfy min <= max")
    for v in (args.p_min, args.p_max, args.q_min, args.q_max):
        if not math.isfinite(v):
            raise DomainError("grid bounds must be finite")
    nodes = [(p, q) for p in grid_axis(args.p_min, args.p_max, args.step)
             for q in grid_axis(args.q_min, args.q_max, args.step)]
    log.info("sweeping %d nodes with %d worker(s)", len(nodes), args.workers)
    rows = run_sweep(nodes, config.tol, config.quad_tol, args.workers)
    text = render_sweep(rows, args.format)
    if args.output == "-":
        out.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_verify(args, config: RunConfig, out) -> int:
    params = GiniParams(args.p, args.q)
    if not params.is_hardy:
        raise DomainError(f"G[{args.p:g},{args.q:g}] is not a Hardy mean")
    if args.n < 1:
        raise UsageError("-n must be at least 1")
    spec = SequenceSpec.parse(args.seq, args.n)
    if spec.kind == "random_lognormal" and ":" not in args.seq:
        spec = SequenceSpec("random_lognormal", spec.n, spec.param, seed=config.seed)

    report = bounds_report(params, config.tol, config.quad_tol)
    if params.is_concave_region:
        bound, label = report.exact_constant, "exact"
    else:
        bound, label = report.c_upper, "c"

    checks = []
    gini = hardy_ratio(params, spec)
    ratio = gini.ratio
    if args.fault_inject:
        ratio = bound + 1.0
    checks.append((gini.mean_id, ratio, bound, label))
    if params.is_negative_quadrant:
        conc = hardy_ratio(concavized_generator(params), spec)
        checks.append((conc.mean_id, conc.ratio, report.c_upper, "c"))

    failed = False
    records = []
    for mean_id, r, b, lab in checks:
        ok = r <= b + VIOLATION_SLACK
        failed |= not ok
        records.append({"mean": mean_id, "n": spec.n, "sequence": spec.describe(),
                        "ratio": r, "bound": b, "bound_kind": lab, "ok": ok})
    if args.json:
        print(json.dumps({"checks": records, "report": report.to_record()}), file=out)
    else:
        for rec in records:
            status = "ok" if rec["ok"] else "VIOLATION"
            print(f"{rec['mean']:<16} n={rec['n']:<8} ratio={rec['ratio']:.12g}  "
                  f"{rec['bound_kind']}={rec['bound']:.12g}  {status}", file=out)
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_mean(args, config: RunConfig, out) -> int:
    values = args.values
    if not all(v > 0 and math.isfinite(v) for v in values):
        raise UsageError("values must be positive and finite")
    params = GiniParams(args.p, args.q)
    if args.closed_form:
        if params.ordered != (-1.0, -2.0):
            raise DomainError("--closed-form is only available for (p, q) = (-1, -2)")
        value, _ = special_mean_m12(values)
    elif args.concavized:
        tol = Tolerance(abs_x=min(config.tol.abs_x, 1e-14), abs_f=min(config.tol.abs_f, 1e-14),
                        max_iter=config.tol.max_iter)
        value = quasideviation_mean(concavized_generator(params), values, tol)
    else:
        value = gini_mean(params, values)
    print(f"{value:.15g}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-x", type=float, default=None)
    common.add_argument("--tol-f", type=float, default=None)
    common.add_argument("--quad-tol", type=float, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="ginihardy", description="Hardy constants of Gini means.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    b = sub.add_parser("bound", parents=[common], help="all Hardy-constant estimates for (p, q)")
    b.add_argument("-p", type=float, required=True)
    b.add_argument("-q", type=float, required=True)
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sweep", parents=[common], help="bounds over a (p, q) grid")
    s.add_argument("--p-min", type=float, required=True)
    s.add_argument("--p-max", type=float, required=True)
    s.add_argument("--q-min", type=float, required=True)
    s.add_argument("--q-max", type=float, required=True)
    s.add_argument("--step", type=float, required=True)
    s.add_argument("-o", "--output", default="-")
    s.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", parents=[common], help="empirical Hardy ratios against bounds")
    v.add_argument("-p", type=float, required=True)
    v.add_argument("-q", type=float, required=True)
    v.add_argument("-n", type=int, default=1000)
    v.add_argument("--seq", default="harmonic",
                   help="harmonic | geometric:R | constant:C | lognormal[:SEED[:SIGMA]] | explicit:V1,V2,..")
    v.add_argument("--json", action="store_true")
    v.add_argument("--fault-inject", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("mean", parents=[common], help="evaluate a single mean")
    m.add_argument("-p", type=float, required=True)
    m.add_argument("-q", type=float, required=True)
    how = m.add_mutually_exclusive_group()
    how.add_argument("--concavized", action="store_true")
    how.add_argument("--closed-form", action="store_true")
    m.add_argument("values", type=float, nargs="+")
    m.set_defaults(func=cmd_mean)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        config = RunConfig.from_sources(args)
        logging.basicConfig(level=logging.WARNING - 10 * min(config.verbosity, 2))
        return args.func(args, config, out)
    except (UsageError, InvalidSpec) as exc:
        print(f"ginihardy: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"ginihardy: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ginihardy: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except HardyError as exc:
        print(f"ginihardy: numerical failure: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
