"""Command line front end: evaluate, cross-check and sweep Caputo derivatives.

Every command writes CSV (header row, comma separated, LF endings, floats with
17 significant digits) to ``--output`` or stdout. Each row carries its own
convergence diagnostics; a failing point is written as ``nan`` with
``converged=false`` and never aborts the run.

Exit codes: 0 success, 1 ``compare`` difference above ``--tol``, 2 invalid
arguments, 3 ``--strict`` and at least one unconverged or NaN row.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Sequence

import numpy as np

from . import jets
from .composition import TruncationPlan, caputo_tanh, chain_rule, product_rule
from .core import DEFAULT_SERIES_TOL, QuadratureConfig, caputo_quadrature, caputo_series, check_order
from .eit import closed_form_spec
from .errors import DomainError
from .jets import FunctionModel
from .specfun import SeriesResult

EXIT_OK, EXIT_TOL, EXIT_USAGE, EXIT_STRICT = 0, 1, 2, 3

METHODS = ("quadrature", "series", "product-rule", "chain-rule", "closed-form")
FIG1_ALPHAS = (0.0, 0.25, 0.5, 0.75, 1.0)

# name -> outer function at unit scale; the scale beta enters as the inner map beta*x
_OUTER: dict[str, Callable[[], FunctionModel]] = {
    "x": jets.identity,
    "x^2": lambda: jets.power(2),
    "exp": jets.exp,
    "sinh": jets.sinh,
    "cosh": jets.cosh,
    "tanh": jets.tanh,
    "sech": jets.sech,
    "sin": jets.sin,
    "cos": jets.cos,
}
CATALOG = tuple(sorted(_OUTER)) + ("const",)


def catalog_function(name: str, beta: float = 1.0) -> FunctionModel:
    """Catalog entry ``name`` at argument ``beta * x``; ``const`` is the constant ``beta``."""
    if name == "const":
        return jets.constant(beta)
    if name not in _OUTER:
        raise ValueError(f"unknown function {name!r}; choose from {', '.join(CATALOG)}")
    return jets.scaled(_OUTER[name](), beta)


@dataclass(frozen=True)
class RunSpec:
    command: str
    function: str = "tanh"
    beta: float = 1.0
    methods: tuple[str, ...] = ("quadrature",)
    alphas: tuple[float, ...] = (0.5,)
    x_start: float = 0.1
    x_stop: float = 1.5
    x_count: int = 15
    terms: int = 10
    inner_terms: int | None = None
    series_tol: float = DEFAULT_SERIES_TOL
    tol: float = 1e-6
    sweep_terms: tuple[int, ...] = (5, 10, 15, 20)
    jobs: int = 1

    def __post_init__(self):
        if not self.alphas:
            raise DomainError("alpha list is empty")
        for a in self.alphas:
            check_order(a)
        if self.command != "fig1" and not self.x_start > 0:
            raise DomainError("x grid must start above 0")
        if self.x_count < 1 or (self.x_count > 1 and self.x_stop < self.x_start):
            raise DomainError("x grid needs count >= 1 and stop >= start")
        self.plan_for(min((self.terms, *self.sweep_terms)))
        if self.function not in CATALOG:
            raise DomainError(f"unknown function {self.function!r}")
        for m in self.methods:
            if m not in METHODS:
                raise DomainError(f"unknown method {m!r}")
            if m == "closed-form" and self.function in ("tanh", "sech"):
                raise DomainError(f"no single closed form for {self.function}; use product-rule")
        if self.command == "compare" and len(self.methods) < 2:
            raise DomainError("compare needs at least two methods")

    @property
    def plan(self) -> TruncationPlan:
        return self.plan_for(self.terms)

    def plan_for(self, L: int) -> TruncationPlan:
        return TruncationPlan(L, self.inner_terms, self.series_tol)

    def grid(self) -> np.ndarray:
        if self.command == "fig1":
            # x_i = stop * i / count, i = 1..count: the origin is excluded
            return self.x_stop * np.arange(1, self.x_count + 1) / self.x_count
        if self.x_count == 1:
            return np.array([self.x_start])
        return np.linspace(self.x_start, self.x_stop, self.x_count)


def evaluate(name: str, beta: float, method: str, alpha: float, x: float, plan: TruncationPlan) -> SeriesResult:
    """One point of one route; raises on invalid input."""
    if method == "quadrature":
        cfg = QuadratureConfig()
        value = caputo_quadrature(catalog_function(name, beta), alpha, x, cfg)
        return SeriesResult(value, cfg.nodes * cfg.subdivisions, 0.0, math.isfinite(value))
    if method == "series":
        return caputo_series(catalog_function(name, beta), alpha, x, plan.outer_terms, plan.tol)
    if method == "product-rule":
        if name == "tanh":
            return caputo_tanh(beta, alpha, x, L=plan.outer_terms)
        # no natural factorisation: product with the unit function
        return product_rule(catalog_function(name, beta), jets.constant(1.0), alpha, x, plan)
    if method == "chain-rule":
        if name == "const":
            return chain_rule(jets.constant(beta), jets.identity(), alpha, x, plan)
        return chain_rule(_OUTER[name](), jets.identity() * beta, alpha, x, plan)
    if method == "closed-form":
        spec = closed_form_spec(name, beta, alpha)
        if spec.coeff == 0.0:
            return SeriesResult(0.0, 1, 0.0, True)
        series = spec.pfq(spec.zeta * x**spec.m)
        return SeriesResult(spec.coeff * x**spec.kappa * series.value, series.terms_used, series.last_term, True)
    raise ValueError(f"unknown method {method!r}")


def safe_evaluate(*args) -> SeriesResult:
    try:
        res = evaluate(*args)
    except (ArithmeticError, ValueError) as exc:
        print(f"warning: {args[2]} at alpha={args[3]!r}, x={args[4]!r}: {exc}", file=sys.stderr)
        return SeriesResult(math.nan, 0, math.nan, False)
    if not math.isfinite(res.value):
        return SeriesResult(res.value, res.terms_used, res.last_term, False)
    return res


def _run_points(tasks: Sequence[tuple], jobs: int) -> list[SeriesResult]:
    # results come back in task order whatever the completion order
    if jobs <= 1:
        return [safe_evaluate(*t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda t: safe_evaluate(*t), tasks))


def fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    return "%.17g" % v


@dataclass
class Table:
    header: list[str]
    rows: list[list] = field(default_factory=list)
    all_converged: bool = True
    exceeded: bool = False

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.header)
        for row in self.rows:
            w.writerow([fmt(v) for v in row])
        return buf.getvalue()

    def pretty(self) -> str:
        cells = [self.header] + [[fmt(v) if not isinstance(v, float) else f"{v:.10g}" for v in r] for r in self.rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(self.header))]
        return "\n".join("  ".join(c.rjust(wd) for c, wd in zip(r, widths)) for r in cells) + "\n"


def cmd_eval(spec: RunSpec) -> Table:
    method = spec.methods[0]
    points = list(product(spec.grid(), spec.alphas))
    tasks = [(spec.function, spec.beta, method, a, float(x), spec.plan) for x, a in points]
    table = Table(["x", "alpha", "value", "terms_used", "last_term", "converged"])
    for (x, a), res in zip(points, _run_points(tasks, spec.jobs)):
        table.rows.append([float(x), a, res.value, res.terms_used, res.last_term, res.converged])
        table.all_converged &= res.converged
    return table


def cmd_compare(spec: RunSpec) -> Table:
    points = list(product(spec.grid(), spec.alphas))
    tasks = [(spec.function, spec.beta, m, a, float(x), spec.plan) for x, a in points for m in spec.methods]
    results = _run_points(tasks, spec.jobs)
    k = len(spec.methods)
    table = Table(["x", "alpha", *spec.methods, "max_pairwise_diff", "converged"])
    for i, (x, a) in enumerate(points):
        block = results[i * k : (i + 1) * k]
        values = [r.value for r in block]
        diff = max(abs(u - v) for u, v in combinations(values, 2))
        ok = all(r.converged for r in block)
        table.rows.append([float(x), a, *values, diff, ok])
        table.all_converged &= ok
        # a NaN difference counts as exceeding the tolerance
        table.exceeded |= not diff <= spec.tol
    return table


def cmd_fig1(spec: RunSpec) -> Table:
    """``D^alpha tanh(beta x)`` by the product rule for every alpha on the figure grid."""
    xs = spec.grid()
    tasks = [("tanh", spec.beta, "product-rule", a, float(x), spec.plan) for x in xs for a in spec.alphas]
    results = _run_points(tasks, spec.jobs)
    k = len(spec.alphas)
    table = Table(["x", *(f"alpha_{a:g}" for a in spec.alphas), "max_last_term", "converged"])
    for i, x in enumerate(xs):
        block = results[i * k : (i + 1) * k]
        ok = all(r.converged and math.isfinite(r.value) for r in block)
        table.rows.append([float(x), *(r.value for r in block), max(r.last_term for r in block), ok])
        # a truncated series is expected here; only failed points count
        table.all_converged &= all(math.isfinite(r.value) for r in block)
    return table


def cmd_sweep(spec: RunSpec) -> Table:
    """Truncation sweep: each method at every ``--sweep-terms`` value against quadrature."""
    points = list(product(spec.grid(), spec.alphas))
    ref = _run_points([(spec.function, spec.beta, "quadrature", a, float(x), spec.plan) for x, a in points], spec.jobs)
    tasks, keys = [], []
    for (x, a), method, L in product(points, spec.methods, spec.sweep_terms):
        tasks.append((spec.function, spec.beta, method, a, float(x), spec.plan_for(L)))
        keys.append((float(x), a, method, L))
    table = Table(["x", "alpha", "method", "terms", "value", "abs_error", "last_term", "converged"])
    per_point = len(spec.methods) * len(spec.sweep_terms)
    for i, (key, res) in enumerate(zip(keys, _run_points(tasks, spec.jobs))):
        oracle = ref[i // per_point].value
        table.rows.append([key[0], key[1], key[2], key[3], res.value, abs(res.value - oracle), res.last_term, res.converged])
        table.all_converged &= math.isfinite(res.value)
    return table


COMMANDS = {"eval": cmd_eval, "compare": cmd_compare, "fig1": cmd_fig1, "sweep": cmd_sweep}


def gnuplot_script(csv_path: str, table: Table) -> str:
    ncols = len(table.header) - 2
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead left top",
        "set xlabel 'x'",
        "set ylabel 'D^{/Symbol a} tanh(x)'",
        "set grid",
        f"plot for [i=2:{ncols}] '{csv_path}' using 1:i with lines lw 2",
    ]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="caputo", description="Caputo fractional derivatives of catalog functions.")
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--function", default="tanh", choices=CATALOG)
    common.add_argument("--beta", type=float, default=1.0, help="scale: f(beta x); value of const")
    common.add_argument("--alpha", type=float, action="append", help="fractional order, repeatable")
    common.add_argument("--x-start", type=float, default=0.1)
    common.add_argument("--x-stop", type=float, default=None, help="default 1.5 (fig1: 4)")
    common.add_argument("--x-count", type=int, default=None, help="default 15 (fig1: 200)")
    common.add_argument("--terms", "-L", type=int, default=10, help="outer truncation L (series terms for 'series')")
    common.add_argument("--inner-terms", "-K", type=int, default=None, help="inner truncation K, default 2L")
    common.add_argument("--series-tol", type=float, default=DEFAULT_SERIES_TOL, help="early-stop tolerance of the series")
    common.add_argument("--tol", type=float, default=1e-6, help="compare: allowed absolute difference")
    common.add_argument("--strict", action="store_true", help="exit 3 if any row is unconverged or NaN")
    common.add_argument("--jobs", type=int, default=1, help="worker threads")
    common.add_argument("--output", "-o", help="CSV path, default stdout")
    common.add_argument("--table", action="store_true", help="aligned text table instead of CSV on stdout")

    p = sub.add_parser("eval", parents=[common], help="one route on an (x, alpha) grid")
    p.add_argument("--method", default="quadrature", choices=METHODS)
    p = sub.add_parser("compare", parents=[common], help="several routes side by side")
    p.add_argument("--methods", nargs="+", default=["quadrature", "product-rule"], choices=METHODS)
    p = sub.add_parser("fig1", parents=[common], help="D^alpha tanh(x) for the figure grid")
    p.add_argument("--plot-script", help="write a gnuplot script for the CSV")
    p = sub.add_parser("sweep", parents=[common], help="accuracy against quadrature as L grows")
    p.add_argument("--methods", nargs="+", default=["product-rule"], choices=METHODS)
    p.add_argument("--sweep-terms", type=int, nargs="+", default=[5, 10, 15, 20])
    return ap


def spec_from_args(args: argparse.Namespace) -> RunSpec:
    if args.command == "eval":
        methods = (args.method,)
    elif args.command == "fig1":
        methods = ("product-rule",)
    else:
        methods = tuple(args.methods)
    fig1 = args.command == "fig1"
    default_alphas = FIG1_ALPHAS if fig1 else (0.5,)
    x_stop = args.x_stop if args.x_stop is not None else (4.0 if fig1 else 1.5)
    x_count = args.x_count if args.x_count is not None else (200 if fig1 else 15)
    return RunSpec(
        command=args.command,
        function="tanh" if args.command == "fig1" else args.function,
        beta=args.beta,
        methods=methods,
        alphas=tuple(args.alpha) if args.alpha else default_alphas,
        x_start=args.x_start,
        x_stop=x_stop,
        x_count=x_count,
        terms=args.terms,
        inner_terms=args.inner_terms,
        series_tol=args.series_tol,
        tol=args.tol,
        sweep_terms=tuple(getattr(args, "sweep_terms", (5, 10, 15, 20))),
        jobs=args.jobs,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
    except (DomainError, ValueError) as exc:
        parser.error(str(exc))
    if args.command == "fig1" and args.plot_script and not args.output:
        parser.error("--plot-script needs --output for the data file")

    table = COMMANDS[spec.command](spec)
    text = table.pretty() if args.table and not args.output else table.csv_text()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "fig1" and args.plot_script:
        with open(args.plot_script, "w", newline="") as fh:
            fh.write(gnuplot_script(args.output, table))

    if args.strict and not table.all_converged:
        print("error: unconverged or NaN rows present", file=sys.stderr)
        return EXIT_STRICT
    if table.exceeded:
        print(f"error: methods differ by more than --tol={spec.tol:g}", file=sys.stderr)
        return EXIT_TOL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
