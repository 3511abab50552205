"""Command-line front end.

    caratheodory eval "[0,1/2) | [1/4,3/4)"
    caratheodory dist "[0,1/2)" "[1/4,3/4)"
    caratheodory measure fatcantor --depth 20
    caratheodory verify metric --trials 10000 --seed 42

Without ``--json`` each command prints the bare value as compact JSON; with
it a sorted object that also echoes the run configuration.  Every number is
an exact ``"p/q"`` string.  Exit codes: 0 PASS (or plain success), 1 FAIL,
2 usage, parse or domain error, 3 PARTIAL certification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import dsl
from .completion import dist_completion, measure_completion
from .errors import CertificationIncomplete, MeasureError
from .limit_map import FAIL, PARTIAL, PASS, apply_F, handle_ae_equal
from .set_algebra import INTERVAL_UNIT, distance, element_to_json, format_rational, parse_config, parse_rational
from .sigma_ops import parse_certificate
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3
MAX_DEPTH = 30


@dataclass(frozen=True)
class RunConfig:
    algebra: object = INTERVAL_UNIT
    depth: int = 16
    tolerance: object = parse_rational("1/1024")
    seed: int = 0
    json: bool = False

    def to_json(self):
        return {
            "algebra": str(self.algebra),
            "depth": self.depth,
            "tolerance": format_rational(self.tolerance),
            "seed": self.seed,
        }


def _emit(value, out):
    out.write(json.dumps(value, sort_keys=True, separators=(",", ":")) + "\n")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--algebra", default="interval", help="interval or finite:<w1,w2,...> (default interval)")
    p.add_argument("--depth", type=int, default=16, help="enclosure depth (default 16)")
    p.add_argument("--allow-deep", action="store_true", help=f"allow --depth above {MAX_DEPTH}")
    p.add_argument("--tolerance", default="1/1024", help="a.e.-equality tolerance p/q (default 1/1024)")
    p.add_argument("--seed", type=int, default=None, help="random seed for verify suites (default 0)")
    p.add_argument("--json", action="store_true", help="print a JSON object with the run configuration")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="caratheodory", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an element expression")
    p.add_argument("expr")

    p = sub.add_parser("dist", parents=[common], help="distance between two expressions")
    p.add_argument("expr1")
    p.add_argument("expr2")

    p = sub.add_parser("measure", parents=[common], help="measure enclosure of a point expression")
    p.add_argument("expr")

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--trials", type=int, help="number of random trials")
    p.add_argument("--atoms", type=int, help="atoms in the oracle algebra")
    p.add_argument("--family", help="countable-union family: increasing or dyadic")
    p.add_argument("--certificate", help="increasing, summable:<expr in N> or cap:<int>")
    return parser


def _run_config(args) -> RunConfig:
    if args.depth < 1:
        raise argparse.ArgumentTypeError("--depth must be positive")
    if args.depth > MAX_DEPTH and not args.allow_deep:
        raise argparse.ArgumentTypeError(
            f"--depth {args.depth} exceeds {MAX_DEPTH}; exact denominators grow fast (pass --allow-deep)"
        )
    tolerance = parse_rational(args.tolerance)
    if tolerance <= 0:
        raise argparse.ArgumentTypeError("--tolerance must be positive")
    return RunConfig(parse_config(args.algebra), args.depth, tolerance, args.seed or 0, args.json)


def _enclosure_list(e):
    return [format_rational(e.lo), format_rational(e.hi)]


def cmd_eval(args, rc, out):
    value = element_to_json(dsl.eval_element(dsl.parse(args.expr), rc.algebra))
    _emit({"config": rc.to_json(), "element": value} if rc.json else value, out)
    return EXIT_OK


def cmd_dist(args, rc, out):
    e1, e2 = dsl.parse(args.expr1), dsl.parse(args.expr2)
    if not (dsl.is_family(e1) or dsl.is_family(e2)):
        d = format_rational(distance(dsl.eval_element(e1, rc.algebra), dsl.eval_element(e2, rc.algebra)))
        _emit({"config": rc.to_json(), "distance": d} if rc.json else d, out)
        return EXIT_OK
    x, y = dsl.eval_point(e1, rc.algebra), dsl.eval_point(e2, rc.algebra)
    enc = dist_completion(x, y, rc.depth)
    if rc.json:
        ae = handle_ae_equal(apply_F(x), apply_F(y), rc.tolerance, rc.depth)
        _emit({"config": rc.to_json(), "distance": enc.to_json(), "ae_equal": ae.value.value}, out)
    else:
        _emit(_enclosure_list(enc), out)
    return EXIT_OK


def cmd_measure(args, rc, out):
    x = dsl.eval_point(dsl.parse(args.expr), rc.algebra)
    enc = measure_completion(x, rc.depth)
    _emit({"config": rc.to_json(), "measure": enc.to_json()} if rc.json else _enclosure_list(enc), out)
    return EXIT_OK


def cmd_verify(args, rc, out):
    options = {"trials": args.trials, "seed": args.seed, "depth": rc.depth, "atoms": args.atoms}
    if args.suite in ("metric", "restriction"):
        options["config"] = rc.algebra
    if args.suite == "countable-union":
        options["family"] = args.family
        if args.certificate:
            options["certificate"] = parse_certificate(args.certificate)
    summary = run_suite(args.suite, **options)
    if rc.json:
        _emit({"config": rc.to_json(), **summary}, out)
    else:
        _emit(summary, out)
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, PARTIAL: EXIT_PARTIAL}[summary["verdict"]]


COMMANDS = {"eval": cmd_eval, "dist": cmd_dist, "measure": cmd_measure, "verify": cmd_verify}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rc = _run_config(args)
        return COMMANDS[args.command](args, rc, out)
    except CertificationIncomplete as exc:
        err.write(f"caratheodory: {exc}\n")
        return EXIT_PARTIAL
    except (MeasureError, argparse.ArgumentTypeError) as exc:
        err.write(f"caratheodory: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
