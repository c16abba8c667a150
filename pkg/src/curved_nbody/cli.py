"""Command line front end.

Exit codes: 0 success, 1 bad arguments, 2 refusal (the mathematics does
not apply to the input), 3 numerical failure. Errors are reported as a JSON
object on standard error.
"""

import argparse
import json
import sys

import numpy as np

from . import family5, family7, familyn, verify
from .errors import NumericalError, RefusalError
from .geometry import Configuration
from .report import dumps, write_csv


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _floats(text, name):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated numbers, got {text!r}")


def _fixed(text):
    out = {}
    for item in text.split(","):
        key, sep, val = item.partition("=")
        if not sep or key.strip() not in ("x", "y", "z"):
            raise UsageError(f"--fixed: expected entries like x=2, got {item!r}")
        try:
            out[key.strip()] = float(val)
        except ValueError:
            raise UsageError(f"--fixed: bad number in {item!r}")
    return out


def _emit(obj, out):
    out.write(dumps(obj) + "\n")


# -- subcommands -------------------------------------------------------------

def cmd_classify(args, out):
    pos = _floats(args.positions, "--positions")
    if args.family == "five":
        if len(pos) != 2:
            raise UsageError("five needs --positions a,r")
        verdict = family5.region_verdict(*pos)
    elif args.family == "seven":
        if len(pos) != 3:
            raise UsageError("seven needs --positions x,y,z")
        verdict = family7.region_verdict(*pos)
    else:
        verdict = familyn.region_verdict(pos)
    _emit(verdict.to_dict(), out)


def cmd_solve(args, out):
    if args.family == "five":
        if args.a is None or args.r is None:
            raise UsageError("five needs --a and --r")
        if args.method == "paper":
            if args.mu is None:
                raise UsageError("--method paper needs --mu")
            sol = family5.solve_masses_paper(args.a, args.r, args.mu)
        else:
            sol = family5.solve_masses_exact(args.a, args.r)
        record = {"family": "five", "positions": [args.a, args.r],
                  "case": family5.classify5(args.a, args.r).value}
    else:
        if None in (args.x, args.y, args.z):
            raise UsageError("seven needs --x, --y and --z")
        if args.method == "paper":
            raise UsageError("seven supports only --method exact")
        sol = family7.solve_masses_exact7(args.x, args.y, args.z)
        record = {"family": "seven", "positions": [args.x, args.y, args.z],
                  "case": family7.classify7(args.x, args.y, args.z).value}
    record.update(sol.to_dict())
    _emit(record, out)


SEARCH_COLUMNS = ("value", "mu", "M", "m", "residual", "positive", "certified", "case")


def cmd_search(args, out):
    fixed = _fixed(args.fixed)
    case = family7.SevenBodyCase(args.case)
    scan_range = tuple(_floats(args.range, "--range")) if args.range else None
    if scan_range is not None and len(scan_range) != 2:
        raise UsageError("--range needs lo,hi")
    free = {"x", "y", "z"} - set(fixed)
    if len(fixed) != 2 or free != {args.scan}:
        raise UsageError(f"--fixed must give the two coordinates other than --scan {args.scan}")
    result = family7.paper_existence_search(case, fixed, scan_range, args.points)
    if result.plan.free != args.scan:
        raise UsageError(f"case {case.value} scans {result.plan.free}, not {args.scan}")
    rows = []
    for p in result.points:
        s = p.solution
        rows.append({
            "value": p.value,
            "mu": s.mu if s else None, "M": s.M if s else None, "m": s.m if s else None,
            "residual": s.residual_max if s else None,
            "positive": p.positive if s else None,
            "certified": p.certified if s else None,
            "case": p.case or "Inadmissible",
        })
    write_csv(out, SEARCH_COLUMNS, rows)


def cmd_scan(args, out):
    if args.grid < 1:
        raise UsageError("--grid must be positive")
    a = np.linspace(args.a_min, args.a_max, args.grid)
    r = np.linspace(args.r_min, args.r_max, args.grid)
    rows = [row for chunk in verify.ordered_map(lambda av: family5.atlas([av], r), a)
            for row in chunk]
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            write_csv(fh, family5.ATLAS_COLUMNS, rows)
    else:
        write_csv(out, family5.ATLAS_COLUMNS, rows)


def load_config(path):
    """Read ``{"bodies": [{"mass", "re", "im"}, ...], "omega": optional}``."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        bodies = data["bodies"]
        z = [complex(b["re"], b.get("im", 0.0)) for b in bodies]
        m = [float(b["mass"]) for b in bodies]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed configuration file: {exc}")
    omega = data.get("omega")
    return Configuration(z, m), (None if omega is None else float(omega))


def cmd_verify(args, out):
    config, omega = load_config(args.input)
    _emit(verify.verification_report(config, args.periods, args.tol, omega), out)


def cmd_lemma(args, out):
    _emit(verify.lemma_audit(args.name, args.samples, args.seed), out)


def cmd_measure(args, out):
    bounds = _floats(args.bounds, "--bounds")
    if len(bounds) != 2 * verify.FAMILY_DIMS[args.family]:
        raise UsageError("--bounds needs a lo,hi pair per coordinate")
    _emit(verify.measure_estimate(args.family, bounds, args.samples, args.seed), out)


def build_parser():
    p = _Parser(prog="curved-nbody",
                description="Collinear relative equilibria of the curved n-body problem.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify positions and report existence")
    c.add_argument("--family", choices=["five", "seven", "n"], required=True)
    c.add_argument("--positions", required=True, help="comma-separated pair radii")
    c.set_defaults(func=cmd_classify)

    s = sub.add_parser("solve", help="solve the reduced equations for the masses")
    s.add_argument("--family", choices=["five", "seven"], required=True)
    for name in ("a", "r", "mu", "x", "y", "z"):
        s.add_argument(f"--{name}", type=float)
    s.add_argument("--method", choices=["exact", "paper"], default="exact")
    s.set_defaults(func=cmd_solve)

    q = sub.add_parser("search", help="scan a free coordinate for positive masses")
    q.add_argument("--family", choices=["seven"], required=True)
    q.add_argument("--case", required=True,
                   choices=[c.value for c in family7.SevenBodyCase if c.solvable])
    q.add_argument("--fixed", required=True, help="e.g. x=2,z=4")
    q.add_argument("--scan", choices=["x", "y", "z"], required=True)
    q.add_argument("--points", type=int, default=family7.SCAN_POINTS)
    q.add_argument("--range", help="lo,hi overriding the default interval")
    q.set_defaults(func=cmd_search)

    g = sub.add_parser("scan", help="region atlas of the five-body family")
    g.add_argument("--family", choices=["five"], required=True)
    for name in ("a-min", "a-max", "r-min", "r-max"):
        g.add_argument(f"--{name}", type=float, required=True)
    g.add_argument("--grid", type=int, default=50)
    g.add_argument("--out", default="-")
    g.set_defaults(func=cmd_scan)

    v = sub.add_parser("verify", help="check a configuration file")
    v.add_argument("--input", required=True)
    v.add_argument("--periods", type=float, default=1.0)
    v.add_argument("--tol", type=float, default=1e-6)
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("lemma", help="audit a sign lemma on quasi-random samples")
    lm.add_argument("--name", required=True)
    lm.add_argument("--samples", type=int, default=1000)
    lm.add_argument("--seed", type=int, default=0)
    lm.set_defaults(func=cmd_lemma)

    ms = sub.add_parser("measure", help="Monte Carlo share of positive-mass solutions")
    ms.add_argument("--family", choices=["five", "seven"], required=True)
    ms.add_argument("--bounds", required=True, help="lo,hi per coordinate")
    ms.add_argument("--samples", type=int, default=10000)
    ms.add_argument("--seed", type=int, default=0)
    ms.set_defaults(func=cmd_measure)
    return p


def _fail(err, kind, code, message):
    sys.stderr.write(dumps({"error": err, "kind": kind, "message": message,
                            "exit_code": code}) + "\n")
    return code


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        return _fail("UsageError", "usage", 1, str(exc))
    except OSError as exc:
        return _fail(type(exc).__name__, "usage", 1, str(exc))
    except RefusalError as exc:
        return _fail(type(exc).__name__, "refusal", 2, str(exc))
    except NumericalError as exc:
        return _fail(type(exc).__name__, "numerical", 3, str(exc))
    except ValueError as exc:
        return _fail(type(exc).__name__, "usage", 1, str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
