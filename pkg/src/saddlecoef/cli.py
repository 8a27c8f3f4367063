"""Command-line front end: every command writes one CSV table.

Output starts with a ``# config:`` comment listing every effective
parameter, then a header row, then data rows.  Exit status is 0 on success,
1 on usage errors and 2 on numerical domain errors (bracket, truncation or
quadrature failure), the latter reported on stderr as one line
``error: reason=<token> message=<text>``.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .asymptotics import ESTIMATE_CSV_COLUMNS, EstimateMethod, closed_form_q, estimate
from .charfn import CHARFN_CSV_COLUMNS, DEFAULT_QUAD_TOL, StandardizedCharFn
from .diagnostics import CLT_CSV_COLUMNS, STANDARD_R_GRID, clt_report
from .errors import DomainError
from .moments import DEFAULT_TOL, RadialParam
from .saddle import SADDLE_CSV_COLUMNS, DEFAULT_SOLVER_TOL, solve_saddle, tau_n
from .series import FactorFamily, FamilyKind, expand_product

EXACT_CSV_COLUMNS = ("n", "coefficient")
COMPARE_CSV_COLUMNS = ("n", "exact", "estimate_closed", "ratio")

SCHEMAS = {
    "exact": EXACT_CSV_COLUMNS,
    "estimate": ESTIMATE_CSV_COLUMNS,
    "compare": COMPARE_CSV_COLUMNS,
    "saddle": SADDLE_CSV_COLUMNS,
    "charfn": CHARFN_CSV_COLUMNS,
    "diagnose": CLT_CSV_COLUMNS,
}

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _g(x: float) -> str:
    return format(x, ".17g")


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _int_at_least(lo: int):
    def parse(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}: {text!r}")
        return v
    return parse


def _r_grid(text: str) -> tuple[float, ...]:
    vals = tuple(_positive_float(p) for p in text.split(",") if p.strip())
    if not vals:
        raise argparse.ArgumentTypeError("empty r grid")
    return vals


def parse_family(spec: str) -> FactorFamily:
    if spec == "distinct":
        return FactorFamily.distinct()
    if spec == "geometric":
        return FactorFamily.geometric()
    if spec.startswith("custom:"):
        return FactorFamily.from_json(spec[len("custom:"):])
    raise UsageError(f"unknown family {spec!r} (distinct, geometric or custom:<path.json>)")


@dataclass
class RunConfig:
    command: str
    family: str = "distinct"
    tol: float = DEFAULT_TOL
    quad_tol: float = DEFAULT_QUAD_TOL
    out: str | None = None
    workers: int = 1
    params: dict = field(default_factory=dict)

    def config_line(self) -> str:
        # shortest round-trip repr keeps the comment readable
        items = {"command": self.command, "family": self.family, "tol": repr(self.tol)}
        if self.command in ("charfn", "diagnose"):
            items["quad_tol"] = repr(self.quad_tol)
        for key, val in self.params.items():
            if isinstance(val, tuple):
                val = ",".join(repr(float(v)) for v in val)
            elif isinstance(val, float):
                val = repr(val)
            items[key] = val
        return "# config: " + " ".join(f"{k}={v}" for k, v in items.items())


def _schema_epilog() -> str:
    return "CSV columns:\n" + "\n".join(
        f"  {cmd}: {','.join(cols)}" for cmd, cols in SCHEMAS.items()
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--family", default="distinct",
                        help="distinct | geometric | custom:<path.json> (default distinct)")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                        help="relative truncation tolerance of the moment series")
    common.add_argument("--quad-tol", type=_positive_float, default=DEFAULT_QUAD_TOL,
                        help="absolute quadrature tolerance")
    common.add_argument("--out", help="write the CSV here instead of stdout")
    common.add_argument("--workers", type=_int_at_least(1), default=1,
                        help="threads for independent rows; output order is fixed")

    parser = _Parser(prog="saddlecoef", description=__doc__,
                     epilog=_schema_epilog(),
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_text):
        return sub.add_parser(
            name, parents=[common], help=help_text,
            epilog=f"CSV columns: {','.join(SCHEMAS[name])}",
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )

    p = add("exact", "exact coefficients a_0..a_N of the product")
    p.add_argument("--n-max", type=_int_at_least(0), required=True)

    p = add("estimate", "asymptotic estimate of a_n")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--method", choices=[m.value for m in EstimateMethod], default="general")

    p = add("compare", "exact q(n) against the closed-form law along a geometric n grid")
    p.add_argument("--n-max", type=_int_at_least(1), required=True)
    p.add_argument("--geometric-stride", type=_int_at_least(2), required=True)
    p.add_argument("--start", type=_int_at_least(1), default=100)

    p = add("saddle", "saddle point for degree n")
    p.add_argument("--n", type=_int_at_least(1), required=True)
    p.add_argument("--exact", action="store_true",
                   help="solve m(t)=n numerically (default: closed form tau_n)")
    p.add_argument("--solver-tol", type=_positive_float, default=DEFAULT_SOLVER_TOL)

    p = add("charfn", "standardized characteristic function on a theta grid")
    p.add_argument("--r", type=_positive_float, required=True)
    p.add_argument("--theta-max", type=_positive_float, required=True)
    p.add_argument("--points", type=_int_at_least(2), default=101)

    p = add("diagnose", "hypothesis diagnostics")
    p.add_argument("kind", choices=["clt"])
    p.add_argument("--r-grid", type=_r_grid, default=STANDARD_R_GRID)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    skip = {"command", "family", "tol", "quad_tol", "out", "workers"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(args.command, args.family, args.tol, args.quad_tol, args.out,
                     args.workers, params)


def _ordered_map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _fmt_exact(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return str(v)


def _rows(cfg: RunConfig, family: FactorFamily) -> Iterable[list[str]]:
    p = cfg.params
    if cfg.command == "exact":
        table = expand_product(family, p["n_max"])
        return [[str(n), _fmt_exact(a)] for n, a in enumerate(table.coeffs)]

    if cfg.command == "estimate":
        if p["method"] != "general" and family.kind is not FamilyKind.DISTINCT:
            raise UsageError(f"--method {p['method']} requires --family distinct")
        return [estimate(family, p["n"], p["method"], cfg.tol).csv_row()]

    if cfg.command == "compare":
        if family.kind is not FamilyKind.DISTINCT:
            raise UsageError("compare is defined for --family distinct only")
        ns = []
        n = p["start"]
        while n <= p["n_max"]:
            ns.append(n)
            n *= p["geometric_stride"]
        exact = expand_product(family, max(ns)).coeffs if ns else ()

        def row(n):
            est = closed_form_q(n)
            ratio = math.exp(math.log(exact[n]) - est.log_estimate)
            shown = "" if est.log_estimate > math.log(1e300) else _g(est.estimate)
            return [str(n), str(exact[n]), shown, _g(ratio)]

        return _ordered_map(row, ns, cfg.workers)

    if cfg.command == "saddle":
        if p["exact"]:
            sol = solve_saddle(family, p["n"], p["solver_tol"], cfg.tol)
        else:
            if family.kind is not FamilyKind.DISTINCT:
                raise UsageError("the closed-form saddle needs --family distinct; use --exact")
            sol = tau_n(p["n"])
        return [sol.csv_row()]

    if cfg.command == "charfn":
        cf = StandardizedCharFn(family, RadialParam.from_r(p["r"]), cfg.tol)
        thetas = np.linspace(0.0, p["theta_max"], p["points"])
        values = cf(thetas)
        values[0] = 1.0
        gauss = np.exp(-0.5 * thetas**2)
        return [
            [_g(th), _g(v.real), _g(v.imag), _g(abs(v)), _g(g), _g(abs(v - g))]
            for th, v, g in zip(thetas, values, gauss)
        ]

    if cfg.command == "diagnose":
        def row(r):
            return clt_report(family, RadialParam.from_r(r), cfg.tol, cfg.quad_tol).csv_row()
        return _ordered_map(row, p["r_grid"], cfg.workers)

    raise UsageError(f"unknown command {cfg.command!r}")


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one command; returns the exit status."""
    stdout = stdout if stdout is not None else sys.stdout
    try:
        family = parse_family(cfg.family)
        rows = _rows(cfg, family)
    except UsageError as exc:
        print(f"saddlecoef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        message = str(exc).replace("\n", " ")
        print(f"error: reason={exc.reason} message={message}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ValueError, OSError) as exc:
        print(f"saddlecoef: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    buf = io.StringIO()
    buf.write(cfg.config_line() + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCHEMAS[cfg.command])
    w.writerows(rows)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
