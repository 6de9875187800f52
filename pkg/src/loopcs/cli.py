"""Command-line front end: compute, sweep and verify.

Exit codes: 0 success, 1 configuration error, 2 expression parse error,
3 numerical non-convergence, 4 invariant-suite failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from .chern_simons import CSConfig, CSReport, cs_class, sweep
from .expressions import ParseError, parse_expression
from .geometry import BergerMetric, builtin_family
from .quadrature import QuadratureConvergenceError, QuadratureSpec
from .verify import run_all

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_PARSE = 2
EXIT_NUMERICAL = 3
EXIT_VERIFY = 4

_CONFIG_KEYS = ("family", "a", "lambda", "mu", "nu", "s", "samples", "tol",
                "int_tol", "density_out", "report_out", "seed")


class ConfigError(ValueError):
    pass


def parse_metric_exprs(lam_src: str, mu_src: str, nu_src: str, a: int = 1) -> BergerMetric:
    """Build a metric from three expression strings (grammar of
    loopcs.expressions); positivity is pre-checked on a dense sample."""
    return BergerMetric(parse_expression(lam_src), parse_expression(mu_src),
                        parse_expression(nu_src), a=a)


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--s", type=float, default=None, help="Sobolev exponent (> 1/2, default 1)")
    p.add_argument("--samples", type=int, default=None,
                   help="quadrature sample count N (default 4096)")
    p.add_argument("--tol", type=float, default=None,
                   help="quadrature absolute tolerance (default 1e-8)")
    p.add_argument("--int-tol", dest="int_tol", type=float, default=None,
                   help="integrality tolerance for the verdict (default 1e-3)")
    p.add_argument("--density-out", dest="density_out", default=None,
                   help="write density samples as CSV (header alpha,f)")
    p.add_argument("--report-out", dest="report_out", default=None,
                   help="write the JSON report here")
    p.add_argument("--config", default=None,
                   help="JSON file supplying defaults for any flag")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopcs",
        description="Wodzicki-Chern-Simons class of loop-space Levi-Civita "
                    "connections over S^3 x S^1 (Berger-type metric families)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="one metric, one report")
    p_compute.add_argument("--family", choices=("paper", "custom"), default=None,
                           help="'paper' = the built-in oscillating family "
                                "(needs --a); 'custom' = give --lambda/--mu/--nu")
    p_compute.add_argument("--a", type=int, default=None, help="family parameter")
    p_compute.add_argument("--lambda", dest="lam", default=None, metavar="EXPR")
    p_compute.add_argument("--mu", default=None, metavar="EXPR")
    p_compute.add_argument("--nu", default=None, metavar="EXPR")
    _add_common(p_compute)

    p_sweep = sub.add_parser("sweep", help="built-in family across several a")
    p_sweep.add_argument("--a", default=None,
                         help="comma-separated nonzero integers, e.g. 2,4,8")
    _add_common(p_sweep)

    p_verify = sub.add_parser("verify", help="run the full invariant suite")
    p_verify.add_argument("--seed", type=int, default=None, help="suite seed")
    return parser


def _merge_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file: {exc}")
        unknown = set(data) - set(_CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        merged.update(data)
    flag_names = {"lam": "lambda"}
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        merged[flag_names.get(key, key)] = value
    return merged


def _csconfig(opts: dict) -> CSConfig:
    quad = QuadratureSpec(n=int(opts.get("samples", 4096)),
                          tol=float(opts.get("tol", 1e-8)))
    return CSConfig(s=float(opts.get("s", 1.0)), quadrature=quad,
                    integrality_tol=float(opts.get("int_tol", 1e-3)))


def _metric_from_opts(opts: dict) -> tuple[BergerMetric, int | None]:
    exprs = [opts.get(k) for k in ("lambda", "mu", "nu")]
    family = opts.get("family")
    if family is None:
        family = "custom" if any(exprs) else "paper"
    if family == "paper":
        if any(exprs):
            raise ConfigError("--lambda/--mu/--nu conflict with --family paper; "
                              "exactly one metric source is allowed")
        if opts.get("a") is None:
            raise ConfigError("--family paper needs --a")
        a = int(opts["a"])
        if a == 0:
            raise ConfigError("family parameter a must be nonzero")
        return builtin_family(a), a
    if not all(exprs):
        raise ConfigError("custom metrics need all of --lambda, --mu, --nu")
    a = int(opts.get("a", 1))
    return parse_metric_exprs(*exprs, a=a), (a if opts.get("a") is not None else None)


def _report_json(report: CSReport, a: int | None) -> dict:
    return {
        "integral": report.integral,
        "class_value": report.class_value,
        "mod_z": report.mod_z,
        "nontrivial": report.nontrivial,
        "verdict": report.verdict,
        "s": report.s,
        "a": a,
        "max_imag": report.max_imag,
        "quadrature_n": report.quadrature_n,
    }


def _write_report(path: str, payload) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_density_csv(path: str, report: CSReport) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)  # csv defaults to CRLF row endings (RFC 4180)
        writer.writerow(["alpha", "f"])
        for alpha, f in zip(report.alphas, report.densities):
            writer.writerow([f"{alpha:.17g}", f"{f:.17g}"])


def _check_out_paths(opts: dict) -> None:
    density, rep = opts.get("density_out"), opts.get("report_out")
    if density and rep and Path(density) == Path(rep):
        raise ConfigError("density and report output paths must be distinct")


def _summary_line(report: CSReport, a: int | None) -> str:
    label = f"a={a}" if a is not None else "custom"
    return (f"{label}: integral {report.integral:.6f}, class {report.class_value:.6f}, "
            f"mod Z {report.mod_z:.6f}, {report.verdict}")


def _run_compute(opts: dict) -> int:
    _check_out_paths(opts)
    metric, a = _metric_from_opts(opts)
    report = cs_class(metric, _csconfig(opts))
    if opts.get("report_out"):
        _write_report(opts["report_out"], _report_json(report, a))
    if opts.get("density_out"):
        _write_density_csv(opts["density_out"], report)
    print(_summary_line(report, a))
    return EXIT_OK


def _suffixed(path: str, a: int) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}_a{a}{p.suffix}"))


def _run_sweep(opts: dict) -> int:
    _check_out_paths(opts)
    if opts.get("a") is None:
        raise ConfigError("sweep needs --a with a comma-separated list")
    try:
        a_values = [int(tok) for tok in str(opts["a"]).split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse --a list {opts['a']!r}")
    if not a_values or any(a == 0 for a in a_values):
        raise ConfigError("--a needs nonzero integers")
    reports = sweep(a_values, _csconfig(opts))
    print(f"{'a':>4}  {'integral':>14}  {'class':>12}  {'mod Z':>10}  verdict")
    for a, report in zip(a_values, reports):
        print(f"{a:>4}  {report.integral:>14.6f}  {report.class_value:>12.6f}  "
              f"{report.mod_z:>10.6f}  {report.verdict}")
        if opts.get("report_out"):
            _write_report(_suffixed(opts["report_out"], a), _report_json(report, a))
        if opts.get("density_out"):
            _write_density_csv(_suffixed(opts["density_out"], a), report)
    return EXIT_OK


def _run_verify(opts: dict) -> int:
    seed = int(opts.get("seed", 20240))
    results = run_all(seed=seed)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        opts = _merge_config(args)
        if args.command == "compute":
            return _run_compute(opts)
        if args.command == "sweep":
            return _run_sweep(opts)
        return _run_verify(opts)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QuadratureConvergenceError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
