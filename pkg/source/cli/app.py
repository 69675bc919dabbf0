"""Command-line front end: every computation as JSON (or CSV) on stdout.

Example:
    $ graphshift gamma --family lattice --dim 2 --nmax 3
    $ graphshift spectrum --family kite --n 2
    $ graphshift kernel classify --m 2 --M 4 --p 2
"""

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Any, Callable

from shift import (
    SCHEMA_REFERENCE, BallIndicator, BranchingBounds, CombH, Exponent, GraphFamily, KiteP, PointMass,
    TreeWeight, alternating_kernel, classify_kernel, euclidean_ratio, family_polynomial,
    full_spectrum, gamma_sequence, get_json_schema, get_settings, inductive_kernel, kernel_residual,
    infinite_comb_spectrum, level_power_sums, make_homogeneous, make_infinite_comb, make_tail_graph,
    make_tree, norm_bounds, parse_tree_spec, power_iteration_norm, rayleigh_ratio, roots_in_open_interval,
    stretched_partial_sums, tree_bounds, truncate, validate_record, witness_function,
)
from shift.errors import (
    EXIT_INTERNAL, EXIT_OK, ErrorCode, ErrorInfo, Severity, ShiftError, UsageError, collect_errors,
    diagnostic_line, has_fatal,
)
from shift.families import CombWithTail, FlySwatter, Kite

logger = logging.getLogger(__name__)

HOMOGENEOUS = ("lattice", "triangular", "hexagonal", "ladder", "ray")
TAILED = {"kite": Kite, "fly-swatter": FlySwatter, "comb": CombWithTail}
FAMILIES = HOMOGENEOUS + tuple(TAILED) + ("infinite-comb", "tree")

# Keys of the parsed namespace that are not echoed as parameters.
_INTERNAL_KEYS = {"handler", "output", "log_level", "csv", "command", "kernel_command"}


class Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of printing usage and exiting."""

    def error(self, message: str):
        raise UsageError.create(ErrorCode.CLI_USAGE, message)


def _exponent(text: str) -> str:
    try:
        Exponent.parse(text)
    except ShiftError as e:
        raise argparse.ArgumentTypeError(e.info.message) from None
    return text


# ─────────────────────────────────────────────────────────────────────────────
# Family selection
# ─────────────────────────────────────────────────────────────────────────────

def _tree_spec(args: argparse.Namespace):
    if getattr(args, "tree_file", None):
        return parse_tree_spec(Path(args.tree_file).read_text())
    if getattr(args, "tree", None):
        return parse_tree_spec(args.tree)
    raise UsageError.create(ErrorCode.CLI_USAGE, "Tree families need --tree or --tree-file")


def _family(args: argparse.Namespace) -> GraphFamily:
    name = args.family
    if name == "lattice":
        if args.dim is None:
            raise UsageError.create(ErrorCode.CLI_USAGE, "--family lattice needs --dim")
        return make_homogeneous("lattice", d=args.dim)
    if name in HOMOGENEOUS:
        return make_homogeneous(name)
    if name in TAILED:
        if args.n is None:
            raise UsageError.create(ErrorCode.CLI_USAGE, f"--family {name} needs --n")
        return make_tail_graph(TAILED[name](args.n))
    if name == "infinite-comb":
        return make_infinite_comb()
    if name == "tree":
        return make_tree(_tree_spec(args))
    raise UsageError.create(ErrorCode.CLI_UNKNOWN_FAMILY, f"Unknown family {name!r}")


def _add_family_args(p: argparse.ArgumentParser, choices=FAMILIES) -> None:
    p.add_argument("--family", required=True, choices=choices)
    p.add_argument("--dim", type=int, help="Lattice dimension")
    p.add_argument("--n", type=int, help="Size of the finite part (kite, fly-swatter, comb)")
    p.add_argument("--tree", help="Tree spec JSON document")
    p.add_argument("--tree-file", help="Path to a tree spec JSON document")


# ─────────────────────────────────────────────────────────────────────────────
# Commands. Each returns (payload, csv text or None).
# ─────────────────────────────────────────────────────────────────────────────

def cmd_gamma(args) -> tuple[Any, str | None]:
    seq = gamma_sequence(_family(args), args.nmax)
    return validate_record("gamma", seq.to_record()), seq.to_csv()


def cmd_ratio(args):
    family = _family(args)
    seq = gamma_sequence(family, args.index + 1)
    record = {"family": family.label, "n": args.index, "ratio": euclidean_ratio(seq, args.index)}
    return validate_record("ratio", record), None


def cmd_norm(args):
    family, p = _family(args), Exponent.parse(args.p)
    record = norm_bounds(family, p, args.budget).to_record()
    if args.estimate_radius is not None:
        if p.p != 2:
            raise UsageError.create(ErrorCode.CLI_USAGE, f"--estimate-radius needs --p 2, got {p}")
        record["finite_section_estimate"] = power_iteration_norm(truncate(family, args.estimate_radius))
    return validate_record("norm", record), None


def _witness_kind(args):
    match args.kind:
        case "ball":
            return BallIndicator(args.radius), {"kind": "ball", "n": args.radius}
        case "tree-weight":
            if args.k is None:
                raise UsageError.create(ErrorCode.CLI_USAGE, "tree-weight witness needs --k")
            p = Exponent.parse(args.p).p
            return TreeWeight(args.k, p, args.N, args.radius), {"kind": "tree-weight", "k": args.k, "N": args.N, "n": args.radius}
        case "point-mass":
            return PointMass(), {"kind": "point-mass"}


def cmd_witness(args):
    family = _family(args)
    kind, meta = _witness_kind(args)
    p = Exponent.parse(args.p)
    f = witness_function(family, kind)
    record = {
        "family": family.label,
        "witness": meta,
        "p": p.to_json(),
        "support_radius": f.support_radius,
        "truncation_radius": f.trunc.radius,
        "vertices": len(f.trunc),
        "ratio": rayleigh_ratio(f, p),
    }
    return validate_record("witness", record), None


def _kernel_function(args):
    if args.tree or args.tree_file:
        tree = make_tree(_tree_spec(args))
        return tree, inductive_kernel(tree, args.depth, exact=not args.floating)
    if args.m is None or args.M is None:
        raise UsageError.create(ErrorCode.CLI_USAGE, "Kernel commands need --m and --M, or a tree spec")
    f = alternating_kernel(args.m, args.M, args.depth, exact=not args.floating)
    return f.trunc.family, f


def cmd_kernel_build(args):
    tree, f = _kernel_function(args)
    residual = kernel_residual(f)
    record = {
        "family": tree.label,
        "depth": args.depth,
        "exact": residual.exact,
        "values": f.to_record(),
        "max_interior_residual": str(residual.max_residual),
        "vanishes": residual.vanishes,
    }
    return validate_record("kernel-values", record), None


def cmd_kernel_classify(args):
    verdict = classify_kernel(BranchingBounds(args.m, args.M, args.N), Exponent.parse(args.p))
    return validate_record("kernel-class", verdict.to_record()), None


def cmd_kernel_sums(args):
    _, f = _kernel_function(args)
    sums = level_power_sums(f, Exponent.parse(args.p))
    return validate_record("level-sums", sums.to_record()), sums.to_csv()


def cmd_kernel_stretched(args):
    try:
        t = args.t if args.t in ("squares", "selfpow") else tuple(int(x) for x in args.t.split(","))
    except ValueError:
        raise UsageError.create(ErrorCode.CLI_USAGE, f"--t must be squares, selfpow or integers, got {args.t!r}") from None
    sums = stretched_partial_sums(args.M, t, Exponent.parse(args.p), args.J)
    record = {"M": args.M, "t": args.t, "p": Exponent.parse(args.p).to_json(), "partial_sums": sums}
    return validate_record("stretched-sums", record), None


def cmd_roots(args):
    poly = family_polynomial(KiteP(args.n) if args.poly == "kite" else CombH(args.n))
    roots = roots_in_open_interval(poly, args.a, args.b, tol=args.tol, exclude_zero=args.exclude_zero)
    record = {
        "polynomial": poly.to_record(),
        "interval": [args.a, args.b],
        "roots": [{"root": r, "residual": abs(poly.eval(r))} for r in roots],
    }
    return validate_record("roots", record), None


def cmd_spectrum(args):
    spectrum = full_spectrum(TAILED[args.family](args.n), args.depth)
    return validate_record("spectrum", spectrum.to_record()), None


def cmd_infinite_comb(args):
    result = infinite_comb_spectrum(args.lam)
    return validate_record("spectrum" if args.lam is None else "membership", result.to_record()), None


def cmd_tree_info(args):
    tree = make_tree(_tree_spec(args))
    record = {
        "family": tree.label,
        "params": tree.params,
        "degree_bound": tree.degree_bound,
        "beta": [tree.beta(j) for j in range(args.levels)],
        "gamma": tree.level_counts(args.levels),
        "bounds": asdict(tree_bounds(tree)),
    }
    return validate_record("tree-info", record), None


def cmd_schema(args):
    return get_json_schema(args.name), None


# ─────────────────────────────────────────────────────────────────────────────
# Parser
# ─────────────────────────────────────────────────────────────────────────────

def build_parser() -> Parser:
    parser = Parser(prog="graphshift", description="Spectral computations for the shift on infinite graphs")
    parser.add_argument("--csv", action="store_true", help="Emit CSV (gamma, kernel sums)")
    parser.add_argument("--log-level", default=None, help="Logging level for standard error")
    parser.add_argument("--output", help="Write to this path instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=Parser)

    p = sub.add_parser("gamma", help="Coordination sequence")
    _add_family_args(p)
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(handler=cmd_gamma)

    p = sub.add_parser("ratio", help="Euclidean ratio (gamma(n)+gamma(n+1)) / sum gamma(j<=n)")
    _add_family_args(p)
    p.add_argument("--index", type=int, required=True)
    p.set_defaults(handler=cmd_ratio)

    p = sub.add_parser("norm", help="Certified bracket for the operator norm")
    _add_family_args(p)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--budget", type=int, default=50, help="Largest witness support radius")
    p.add_argument("--estimate-radius", type=int,
                   help="Add an uncertified power-iteration estimate on this truncation (p = 2)")
    p.set_defaults(handler=cmd_norm)

    p = sub.add_parser("witness", help="Rayleigh ratio of a witness function")
    _add_family_args(p)
    p.add_argument("--kind", choices=("ball", "tree-weight", "point-mass"), default="ball")
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--N", type=int, default=0)
    p.set_defaults(handler=cmd_witness)

    kernel = sub.add_parser("kernel", help="Kernel elements on trees")
    ksub = kernel.add_subparsers(dest="kernel_command", required=True, parser_class=Parser)
    for name, handler in (("build", cmd_kernel_build), ("sums", cmd_kernel_sums)):
        p = ksub.add_parser(name)
        p.add_argument("--m", type=int)
        p.add_argument("--M", type=int)
        p.add_argument("--tree")
        p.add_argument("--tree-file")
        p.add_argument("--depth", type=int, default=4)
        p.add_argument("--float", dest="floating", action="store_true",
                       help="floating values instead of exact rationals")
        if name == "sums":
            p.add_argument("--p", type=_exponent, required=True)
        p.set_defaults(handler=handler)
    p = ksub.add_parser("classify")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--N", type=int, default=0)
    p.add_argument("--p", type=_exponent, required=True)
    p.set_defaults(handler=cmd_kernel_classify)
    p = ksub.add_parser("stretched")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--t", default="squares", help="squares | selfpow | comma-separated prefix")
    p.add_argument("--p", type=_exponent, required=True)
    p.add_argument("--J", type=int, required=True)
    p.set_defaults(handler=cmd_kernel_stretched)

    p = sub.add_parser("roots", help="Roots of a polynomial family in an open interval")
    p.add_argument("--poly", choices=("kite", "comb"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=-1.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--exclude-zero", action="store_true")
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("spectrum", help="Spectrum of a finite graph with a tail")
    p.add_argument("--family", choices=tuple(TAILED), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--depth", type=int, default=60)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("infinite-comb", help="Spectrum of the infinite comb, or membership of --lambda")
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.set_defaults(handler=cmd_infinite_comb)

    p = sub.add_parser("tree-info", help="Level structure of a tree spec")
    p.add_argument("--tree")
    p.add_argument("--tree-file")
    p.add_argument("--levels", type=int, default=8)
    p.set_defaults(handler=cmd_tree_info)

    p = sub.add_parser(
        "schema", help="JSON schema of a payload or of tree specs",
        epilog=SCHEMA_REFERENCE, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--name", required=True)
    p.set_defaults(handler=cmd_schema)
    return parser


# ─────────────────────────────────────────────────────────────────────────────
# Entry point
# ─────────────────────────────────────────────────────────────────────────────

def _emit(text: str, output: str | None, stdout) -> None:
    if output:
        Path(output).write_text(text)
    else:
        stdout.write(text)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(
            stream=stderr,
            level=(args.log_level or get_settings().log_level).upper(),
            format="%(levelname)s %(name)s: %(message)s",
        )
        command = args.command + (f" {args.kernel_command}" if args.command == "kernel" else "")
        handler: Callable = args.handler
        start = time.perf_counter()
        payload, csv = handler(args)
        elapsed = (time.perf_counter() - start) * 1000.0
        if args.csv:
            if csv is None:
                raise UsageError.create(ErrorCode.CLI_USAGE, f"--csv is not available for {command}")
            _emit(csv, args.output, stdout)
            return EXIT_OK
        params = {k: v for k, v in vars(args).items() if k not in _INTERNAL_KEYS}
        result = validate_record("command", {
            "command": command, "parameters": params, "payload": payload, "elapsed_ms": round(elapsed, 3),
        })
        _emit(json.dumps(result, indent=2) + "\n", args.output, stdout)
        return EXIT_OK
    except ShiftError as e:
        errors, exit_code = collect_errors(e), e.exit_code
    except Exception as e:
        logger.exception("Unhandled exception")
        errors = [ErrorInfo(ErrorCode.CLI_INTERNAL, f"Internal error: {e}", Severity.FATAL)]
        exit_code = EXIT_INTERNAL
    print(diagnostic_line(*errors), file=stderr)
    return EXIT_INTERNAL if has_fatal(errors) else exit_code


def main(argv: list[str] | None = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
