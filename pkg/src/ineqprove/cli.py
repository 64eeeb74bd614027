"""Command-line front end.

Subcommands:

* ``prove``   -- run the full proof pipeline from a config file and/or flags,
                 write the report JSON, and exit 0 (proven), 1 (disproven),
                 2 (inconclusive) or 3 (usage/configuration error);
* ``minimax`` -- run the Remez engine on one function and emit the result;
* ``kurepa``  -- evaluate the Kurepa function or one of its derivatives;
* ``limits``  -- compute endpoint limits by the Taylor and/or numeric route.

Config files are flat ``key = value`` text, one key per line, ``#`` comments
allowed; every numeric value is a decimal string so no precision is lost in
transit.  Reports are rendered deterministically: the same config produces
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

import mpmath

from .certify import ProofSettings, prove_inequality, report_to_json
from .errors import IneqproveError
from .expr import parse
from .precision import Precision, decimal_str, to_mpf, working
from .quadrature import kurepa, kurepa_derivative
from .quotient import endpoint_limits_numeric, endpoint_limits_taylor
from .remez import minimax

EXIT_PROVEN = 0
EXIT_DISPROVEN = 1
EXIT_INCONCLUSIVE = 2
EXIT_ERROR = 3

_CONFIG_KEYS = (
    "function", "interval", "n", "m", "degree", "precision", "tol",
    "grid_multiplier", "residual_grid_size", "margin",
    "equioscillation_rel_tol", "max_iterations", "limit_method",
    "alpha_override", "beta_override", "out",
)


def read_config(path: str) -> dict:
    config = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise IneqproveError(
                    f"{path}:{lineno}: expected 'key = value', got {line!r}"
                )
            key, _, value = line.partition("=")
            key = key.strip()
            value = value.strip()
            if key not in _CONFIG_KEYS:
                raise IneqproveError(f"{path}:{lineno}: unknown key {key!r}")
            config[key] = value
    return config


def _split_interval(text: str):
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 2 or not all(parts):
        raise IneqproveError(f"interval must be 'a,b', got {text!r}")
    return parts[0], parts[1]


def _merged(config: dict, args, keys):
    merged = dict(config)
    for key in keys:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def cmd_prove(args) -> int:
    config = read_config(args.config) if args.config else {}
    merged = _merged(config, args, (
        "function", "interval", "n", "m", "degree", "precision", "tol",
        "grid_multiplier", "residual_grid_size", "margin",
        "equioscillation_rel_tol", "max_iterations", "limit_method",
        "alpha_override", "beta_override", "out",
    ))
    for required in ("function", "interval", "n", "m"):
        if required not in merged:
            raise IneqproveError(f"missing required setting {required!r}")
    a, b = _split_interval(merged["interval"])
    degree = int(merged.get("degree", 1))
    settings = ProofSettings(
        precision=Precision(int(merged.get("precision", 50))),
        tol=merged.get("tol", "1e-12"),
        grid_multiplier=int(merged.get("grid_multiplier", 64)),
        residual_grid_size=(int(merged["residual_grid_size"])
                            if "residual_grid_size" in merged else None),
        margin_factor=merged.get("margin", "1.000001"),
        equioscillation_rel_tol=merged.get("equioscillation_rel_tol", "1e-6"),
        max_iterations=int(merged.get("max_iterations", 50)),
        limit_method=merged.get("limit_method", "auto"),
        alpha_override=merged.get("alpha_override"),
        beta_override=merged.get("beta_override"),
    )
    report = prove_inequality(merged["function"], a, b, merged["n"], merged["m"],
                              degree, settings)
    payload = report_to_json(report, settings.precision)
    out = merged.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(payload)
            fh.write("\n")
    else:
        print(payload)
    return {
        "proven": EXIT_PROVEN,
        "disproven": EXIT_DISPROVEN,
        "inconclusive": EXIT_INCONCLUSIVE,
    }[report.verdict]


def cmd_minimax(args) -> int:
    p = Precision(args.precision)
    f = parse(args.function)
    a, b = _split_interval(args.interval)

    def g(x):
        return f.evaluate(x, p)

    result = minimax(g, a, b, args.degree, tol=args.tol, p=p,
                     grid_multiplier=args.grid_multiplier)
    with working(p):
        mono = result.polynomial.to_monomial()
    doc = {
        "degree": args.degree,
        "segment": [decimal_str(result.polynomial.segment[0], p),
                    decimal_str(result.polynomial.segment[1], p)],
        "delta_hat": decimal_str(result.delta_hat, p),
        "lower_bound": decimal_str(result.lower_bound, p),
        "upper_bound": decimal_str(result.upper_bound, p),
        "iterations": result.iterations,
        "nodes": [decimal_str(t, p) for t in result.nodes],
        "chebyshev_coefficients": [decimal_str(c, p) for c in result.polynomial.coefficients],
        "monomial_coefficients": [decimal_str(c, p) for c in mono],
        "levelled_error_history": [decimal_str(h, p) for h in result.levelled_error_history],
    }
    payload = json.dumps(doc, indent=2, ensure_ascii=True)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
            fh.write("\n")
    else:
        print(payload)
    return EXIT_PROVEN


def cmd_kurepa(args) -> int:
    p = Precision(args.precision)
    with working(p):
        x = to_mpf(args.x)
    extras = dict(node_factor=args.node_factor, tail_factor=args.tail_factor,
                  max_evaluations=args.max_evaluations)
    if args.order == 0:
        result = kurepa(x, p, **extras)
    else:
        result = kurepa_derivative(x, args.order, p, **extras)
    print(f"value {decimal_str(result.value, p)}")
    print(f"error_bound {mpmath.nstr(result.error_bound, 5)}")
    print(f"nodes_used {result.nodes_used}")
    print(f"tail_cutoff {mpmath.nstr(result.tail_cutoff, 8)}")
    return EXIT_PROVEN


def cmd_limits(args) -> int:
    p = Precision(args.precision)
    f = parse(args.function)
    a, b = _split_interval(args.interval)
    shown = False
    if args.method in ("taylor", "both"):
        alpha, beta = endpoint_limits_taylor(f, a, b, args.n, args.m, p)
        print(f"taylor alpha {decimal_str(alpha, p)}")
        print(f"taylor beta {decimal_str(beta, p)}")
        shown = True
    if args.method in ("numeric", "both"):
        alpha, beta = endpoint_limits_numeric(f, a, b, args.n, args.m, p)
        print(f"numeric alpha {decimal_str(alpha, p)}")
        print(f"numeric beta {decimal_str(beta, p)}")
        shown = True
    return EXIT_PROVEN if shown else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ineqprove",
        description="Prove univariate inequalities f(x) >= 0 on a segment "
                    "via minimax polynomial certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    prove = sub.add_parser("prove", help="run the full proof pipeline")
    prove.add_argument("--config", help="flat key = value config file")
    prove.add_argument("--function")
    prove.add_argument("--interval", metavar="A,B")
    prove.add_argument("--n")
    prove.add_argument("--m")
    prove.add_argument("--degree", type=int)
    prove.add_argument("--precision", type=int)
    prove.add_argument("--tol")
    prove.add_argument("--grid-multiplier", dest="grid_multiplier", type=int)
    prove.add_argument("--residual-grid-size", dest="residual_grid_size", type=int)
    prove.add_argument("--margin")
    prove.add_argument("--max-iterations", dest="max_iterations", type=int)
    prove.add_argument("--limit-method", dest="limit_method",
                       choices=("auto", "taylor", "numeric", "user"))
    prove.add_argument("--alpha-override", dest="alpha_override")
    prove.add_argument("--beta-override", dest="beta_override")
    prove.add_argument("--out")
    prove.set_defaults(func=cmd_prove)

    mmx = sub.add_parser("minimax", help="minimax approximation of one function")
    mmx.add_argument("--function", required=True)
    mmx.add_argument("--interval", metavar="A,B", required=True)
    mmx.add_argument("--degree", type=int, required=True)
    mmx.add_argument("--tol", default="1e-12")
    mmx.add_argument("--precision", type=int, default=50)
    mmx.add_argument("--grid-multiplier", dest="grid_multiplier", type=int, default=64)
    mmx.add_argument("--out")
    mmx.set_defaults(func=cmd_minimax)

    kur = sub.add_parser("kurepa", help="evaluate the Kurepa integral family")
    kur.add_argument("--x", required=True)
    kur.add_argument("--order", type=int, default=0, choices=(0, 1, 2, 3))
    kur.add_argument("--precision", type=int, default=50)
    kur.add_argument("--node-factor", dest="node_factor", type=int, default=1)
    kur.add_argument("--tail-factor", dest="tail_factor", default="1")
    kur.add_argument("--max-evaluations", dest="max_evaluations", type=int,
                     default=500000)
    kur.set_defaults(func=cmd_kurepa)

    lim = sub.add_parser("limits", help="endpoint limits of the quotient")
    lim.add_argument("--function", required=True)
    lim.add_argument("--interval", metavar="A,B", required=True)
    lim.add_argument("--n", required=True)
    lim.add_argument("--m", required=True)
    lim.add_argument("--method", choices=("taylor", "numeric", "both"), default="both")
    lim.add_argument("--precision", type=int, default=50)
    lim.set_defaults(func=cmd_limits)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the exit contract reserves 2 for
        # inconclusive verdicts, so remap
        return EXIT_ERROR if exc.code else EXIT_PROVEN
    try:
        return args.func(args)
    except IneqproveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # total exit-code contract: never propagate
        print(f"unexpected error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
