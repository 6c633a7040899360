#!/usr/bin/env python3
"""
zeta-hopf - verify, expand and evaluate identities of the multiple-zeta index algebra

Subcommands:
  verify   run verification suites, one JSON line per check
  expand   print an exact symbolic object (series, anti-hook, products, regularization)
  eval     evaluate an index or anti-hook numerically as a polynomial in T
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.table import Table
from rich.text import Text

from formal_series import TruncatedSeries, build_F_I, gamma1_I
from index_algebra import (
    IndexCombination,
    harmonic_product,
    poly_lift_xy,
    poly_lift_xy_star,
    star_expand,
    symbol,
)
from index_core import (
    ConfigError,
    InvalidIndexError,
    ToleranceNotReachedError,
    UnknownNameError,
    index_to_text,
    parse_index,
)
from schur_antihook import AntiHook, expand_antihook
from verify_executor import EXIT_CONFIG, EXIT_FAILED, EXIT_OK, run_verification
from verify_models import STATUS_COLORS, STATUS_ICONS, CheckResult, RunConfig, SuiteName
from verify_storage import ReportSink, load_config, load_samples
from zeta_numeric import DEFAULT_MZV_TOLERANCE, eval_Z_bounded, format_number, regularize

EXPAND_TARGETS = ("gamma1", "gamma1-inverse", "F", "antihook", "harmonic", "star", "lift-xy", "regularize")
DEFAULT_ORDER = 6

console = Console(soft_wrap=True, highlight=False)


def _emit(payload: dict, text: str, fmt: str):
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, ensure_ascii=False) + "\n")
    else:
        console.print(Text(text))


def _require(value, flag: str, target: str):
    if value is None:
        raise ConfigError(f"{target} needs {flag}")
    return value


def _parse_pair(text: str, flag: str) -> tuple[Fraction, Fraction]:
    try:
        values = tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{flag}: not a pair of rationals: {text!r}") from None
    if len(values) != 2:
        raise ConfigError(f"{flag}: expected two values, got {len(values)}")
    return values


# ---- verify ----

def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then command-line flags."""
    config = load_config(Path(args.config) if args.config else None)
    if args.suite:
        config.suites = SuiteName.parse(args.suite)
    if args.max_weight is not None:
        config.max_weight = args.max_weight
    if args.tol is not None:
        config.tolerance = args.tol
    if args.jobs is not None:
        config.jobs = args.jobs
    if args.samples:
        xy_points, ab_points = load_samples(Path(args.samples))
        config.sample_points = xy_points or config.sample_points
        config.ab_points = ab_points or config.ab_points
    if args.cache:
        config.cache_path = args.cache
    if args.output:
        config.output_path = args.output
    if args.format:
        config.format = args.format
    return config.validate()


def _results_table(results: list[CheckResult]) -> Table:
    table = Table(show_header=True, header_style="bold", box=None)
    table.add_column("", width=2)
    table.add_column("Suite")
    table.add_column("Check")
    table.add_column("Status")
    table.add_column("Time", justify="right")
    for result in results:
        color = STATUS_COLORS[result.status]
        table.add_row(STATUS_ICONS[result.status], result.suite, result.check,
                      Text(result.status.value, style=color), result.duration_str)
    return table


def cmd_verify(args: argparse.Namespace) -> int:
    config = build_config(args)
    results: list[CheckResult] = []
    stream = sys.stdout if config.format == "json" else None
    with ReportSink(stream=stream, output_path=config.output_path) as sink:
        code = run_verification(config, sink, on_result=results.append)
    if config.format == "text":
        console.print(_results_table(results))
        passed = sum(1 for r in results if r.holds)
        style = "green" if code == EXIT_OK else "red"
        console.print(Text(f"{passed}/{len(results)} checks passed", style=style))
    return code


# ---- expand ----

def _series_payload(target: str, series: TruncatedSeries) -> tuple[dict, str]:
    rows = [(n, c) for n, c in enumerate(series.coeffs) if not c.is_zero()]
    payload = {
        "target": target,
        "order": series.order,
        "coefficients": [{"W": n, "value": c.to_json()} for n, c in rows],
    }
    text = "\n".join(f"W^{n}: {c}" for n, c in rows) or "0"
    return payload, text


def _combination_payload(target: str, u: IndexCombination, **extra) -> tuple[dict, str]:
    return {"target": target, **extra, "value": u.to_json()}, str(u)


def expand_target(args: argparse.Namespace) -> tuple[dict, str]:
    """Compute the requested object; returns its JSON payload and text rendering."""
    target = args.target
    order = args.order if args.order is not None else DEFAULT_ORDER
    if order < 0:
        raise ConfigError(f"order must be non-negative, got {order}")

    if target == "gamma1":
        return _series_payload(target, gamma1_I(order))
    if target == "gamma1-inverse":
        return _series_payload(target, gamma1_I(order).inverse())
    if target == "F":
        return _series_payload(target, build_F_I(order))
    if target == "antihook":
        h = AntiHook(parse_index(args.k or ""), parse_index(args.l or ""),
                     _require(args.a, "--a", target))
        expansion = expand_antihook(h)
        payload = {**h.to_dict(), "expansion": expansion.to_json()}
        return payload, f"{h} = {expansion}"
    if target == "harmonic":
        text = _require(args.indices, "--indices", target)
        parts = text.split(";")
        if len(parts) != 2:
            raise InvalidIndexError(f"--indices expects 'k;l', got {text!r}")
        k, l = (parse_index(part) for part in parts)
        return _combination_payload(target, harmonic_product(symbol(k), symbol(l)),
                                    k=list(k), l=list(l))
    if target == "star":
        k = parse_index(_require(args.index, "--index", target))
        return _combination_payload(target, star_expand(k), index=list(k))
    if target == "lift-xy":
        k = parse_index(_require(args.index, "--index", target))
        lifted = poly_lift_xy_star(k) if args.star else poly_lift_xy(k)
        return _combination_payload(target, lifted, index=list(k), star=args.star)
    if target == "regularize":
        k = parse_index(_require(args.index, "--index", target))
        value = regularize(k)
        return {"target": target, "index": list(k), "value": value.to_json()}, str(value)
    raise UnknownNameError(f"unknown expand target: {target} (choose from {', '.join(EXPAND_TARGETS)})")


def cmd_expand(args: argparse.Namespace) -> int:
    payload, text = expand_target(args)
    _emit(payload, text, args.format)
    return EXIT_OK


# ---- eval ----

def eval_request(args: argparse.Namespace) -> tuple[dict, str]:
    """Evaluate an index (optionally starred or x,y-lifted) or an anti-hook."""
    if args.tol <= 0:
        raise ConfigError("--tol must be positive")
    spec: Optional[dict] = None
    if args.a is not None:
        h = AntiHook(parse_index(args.k or ""), parse_index(args.l or ""), args.a)
        label, u = str(h), expand_antihook(h)
    else:
        k = parse_index(_require(args.index, "--index or --a", "eval"))
        text = index_to_text(k) or "∅"
        if args.xy:
            x, y = _parse_pair(args.xy, "--xy")
            spec = {"x": x, "y": y}
            u = poly_lift_xy_star(k) if args.star else poly_lift_xy(k)
            label = f"ζ{'^★' if args.star else ''}_{{{x},{y}}}({text})"
        else:
            u = star_expand(k) if args.star else symbol(k)
            label = f"ζ{'^★' if args.star else ''}({text})"
    value, error = eval_Z_bounded(u, spec, args.tol)
    payload = {
        "expression": label,
        "value": value.to_json(),
        "t_degree": value.t_degree(),
        "tol": args.tol,
        "error_bound": format_number(error),
    }
    return payload, f"{label} = {value}  (error ≤ {format_number(error)})"


def cmd_eval(args: argparse.Namespace) -> int:
    payload, text = eval_request(args)
    _emit(payload, text, args.format)
    return EXIT_OK


# ---- argument parsing ----

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zeta-hopf", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", action="append",
                        help="suite name or 'all' (repeatable); one of: "
                             + ", ".join(s.value for s in SuiteName))
    verify.add_argument("--max-weight", type=int, dest="max_weight")
    verify.add_argument("--tol", type=float)
    verify.add_argument("--jobs", type=int)
    verify.add_argument("--samples", help="file of x,y or x,y,A,B rational tuples")
    verify.add_argument("--cache", help="MZV cache file (JSON lines)")
    verify.add_argument("--output", help="also write the report to this file")
    verify.add_argument("--format", choices=("json", "text"))
    verify.add_argument("--config", help="config file (default: .zeta_config.json)")
    verify.set_defaults(handler=cmd_verify)

    expand = sub.add_parser("expand", help="print an exact symbolic expansion")
    expand.add_argument("target", choices=EXPAND_TARGETS)
    expand.add_argument("--order", type=int, help=f"truncation order in W (default {DEFAULT_ORDER})")
    expand.add_argument("--index", help="index such as '2,1'")
    expand.add_argument("--indices", help="two indices 'k;l' for the harmonic product")
    expand.add_argument("--k", help="anti-hook column")
    expand.add_argument("--l", help="anti-hook row")
    expand.add_argument("--a", type=int, help="anti-hook corner")
    expand.add_argument("--star", action="store_true")
    expand.add_argument("--format", choices=("json", "text"), default="text")
    expand.set_defaults(handler=cmd_expand)

    evaluate = sub.add_parser("eval", help="evaluate numerically as a polynomial in T")
    evaluate.add_argument("--index", help="index such as '1,2'")
    evaluate.add_argument("--k", help="anti-hook column")
    evaluate.add_argument("--l", help="anti-hook row")
    evaluate.add_argument("--a", type=int, help="anti-hook corner")
    evaluate.add_argument("--star", action="store_true")
    evaluate.add_argument("--xy", help="evaluate the x,y-lifted value at 'x,y'")
    evaluate.add_argument("--tol", type=float, default=DEFAULT_MZV_TOLERANCE)
    evaluate.add_argument("--format", choices=("json", "text"), default="text")
    evaluate.set_defaults(handler=cmd_eval)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.handler(args)
    except (ConfigError, InvalidIndexError, UnknownNameError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_CONFIG
    except ToleranceNotReachedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_FAILED
    if argv is None:
        sys.exit(code)
    return code


if __name__ == "__main__":
    main()
