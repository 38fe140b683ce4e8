"""Command-line front end.

    nlcstates build --family nbs --eta 0.3 --M 4 --out s.json
    nlcstates check all --seed 7
    nlcstates stats s.json

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or
configuration error, 3 numerical or truncation failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import checks, states
from .errors import NumericalError
from .fock import FockVector

log = logging.getLogger("nlcstates")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

FAMILY_ALIASES = {
    "coherent": states.Family.COHERENT,
    "excited": states.Family.EXCITED_COHERENT,
    "nbs": states.Family.NEGATIVE_BINOMIAL,
    "binomial": states.Family.BINOMIAL,
    "perelomov": states.Family.PERELOMOV_K,
}


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def _spec_from_args(args) -> states.StateSpec:
    if args.spec is not None:
        text = args.spec if args.spec.lstrip().startswith("{") else Path(args.spec).read_text()
        return states.StateSpec.from_json(text)
    if args.family is None:
        raise states.ParameterError("give --family or --spec")
    family = FAMILY_ALIASES[args.family]
    wanted = {
        states.Family.COHERENT: ("alpha",),
        states.Family.EXCITED_COHERENT: ("alpha", "m"),
        states.Family.NEGATIVE_BINOMIAL: ("eta", "M"),
        states.Family.BINOMIAL: ("eta", "M"),
        states.Family.PERELOMOV_K: ("alpha", "k"),
    }[family]
    params = {}
    for key in wanted:
        value = getattr(args, key)
        if value is None:
            raise states.ParameterError(f"--{key} is required for family {args.family}")
        params[key] = value
    return states.StateSpec(family, params)


def cmd_build(args) -> int:
    spec = _spec_from_args(args)
    vec = states.build_state(spec, args.dim)
    _write(vec.to_json(), args.out)
    log.info("built %s with D=%d, spill=%.3e", spec.family.value, vec.dim, vec.spill)
    return EXIT_OK


def cmd_check(args) -> int:
    cfg = checks.CheckConfig(seed=args.seed, dim=args.dim, n_random=args.n_random)
    if args.eta:
        cfg.etas = tuple(args.eta)
    if args.M:
        cfg.Ms = tuple(args.M)
    if args.m:
        cfg.ms = tuple(args.m)
    if args.k:
        cfg.ks = tuple(args.k)
    if args.family:
        cfg.families = tuple(args.family)
    if args.alpha is not None:
        cfg.witness_alpha = args.alpha
    for eta in cfg.etas:
        if not 0 < eta < 1:
            raise states.ParameterError(f"eta must lie in (0, 1), got {eta}")
    report = checks.run_suite(args.suite, cfg)
    _write(json.dumps(report.to_dict(), indent=2, sort_keys=True), args.out)
    for c in sorted(report.checks, key=lambda c: c.name):
        if not c.passed:
            log.warning("FAILED %s: %.3e > %.1e", c.name, c.value, c.tolerance)
    s = report.summary
    log.info("%d/%d checks passed in %.2f s", s["passed"], s["total"], report.elapsed)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_stats(args) -> int:
    text = sys.stdin.read() if args.state == "-" else Path(args.state).read_text()
    vec = FockVector.from_json(text)
    _write(json.dumps(states.photon_stats(vec).to_dict()), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlcstates", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a state and write it as FockVector JSON")
    b.add_argument("--spec", help="StateSpec JSON file or inline JSON object")
    b.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    b.add_argument("--alpha", type=complex)
    b.add_argument("--m", type=int)
    b.add_argument("--eta", type=float)
    b.add_argument("--M", type=int)
    b.add_argument("--k", type=int)
    b.add_argument("--dim", type=_positive_int, help="truncation dimension (default: adaptive)")
    b.add_argument("--out", help="output path (default: stdout)")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run a verification suite and emit a JSON report")
    c.add_argument("suite", choices=checks.SUITES + ("all",))
    c.add_argument("--seed", type=int, default=7)
    c.add_argument("--dim", type=_positive_int, default=64, help="dimension for the operator-identity checks")
    c.add_argument("--n-random", type=_positive_int, default=20, help="random nonlinear functions per randomized check")
    c.add_argument("--family", action="append", choices=checks.FAMILIES, help="restrict the eigen suite (repeatable)")
    c.add_argument("--eta", type=float, nargs="+")
    c.add_argument("--M", type=_positive_int, nargs="+")
    c.add_argument("--m", type=_positive_int, nargs="+")
    c.add_argument("--k", type=_positive_int, nargs="+")
    c.add_argument("--alpha", type=float, help="eigenvalue used in the binomial obstruction bound")
    c.add_argument("--out", help="report path (default: stdout)")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("stats", help="print photon statistics of a FockVector JSON file")
    s.add_argument("state", help="path, or - for stdin")
    s.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
