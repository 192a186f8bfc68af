"""``mlopc`` command line: eval, sweep, compare and time.

Exit codes: 0 success, 1 oracle errors above the ``--tol-slack`` bound,
2 usage error, 3 unsupported parameters, 4 no admissible region,
5 oracle non-convergence.
"""

import argparse
import csv
import json
import math
import re
import statistics
import sys
import time

import numpy as np

from .api import evaluate, mixed_error, reference_value, tolerances_for
from .errors import (
    InvalidParameterError,
    NoAdmissibleRegionError,
    OracleNonConvergenceError,
    UnsupportedParametersError,
)

CSV_HEADER = ["re_z", "im_z", "re_E", "im_E", "err_mixed", "n_nodes", "region_index", "mu", "h", "time_ns"]

EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_NO_REGION = 4
EXIT_ORACLE = 5

_ARG_PI = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


def parse_complex(text):
    """Parse ``a+bi``, ``a-bi``, ``bi`` or ``a``; ``j`` is accepted as well."""
    s = text.strip().replace(" ", "").lower().replace("i", "j")
    if s.endswith("j") and (len(s) == 1 or s[-2] in "+-"):
        s = s[:-1] + "1j"
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def parse_angle(text):
    """Radians from ``pi``, ``-pi/2``, ``3pi/4`` or a plain decimal."""
    m = _ARG_PI.match(text.lower())
    if m:
        sign = -1.0 if m.group(1) == "-" else 1.0
        num = float(m.group(2)) if m.group(2) else 1.0
        den = float(m.group(3)) if m.group(3) else 1.0
        if den == 0.0:
            raise UsageError(f"zero denominator in angle {text!r}")
        return sign * num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"cannot parse angle {text!r}") from None


def polar(r, theta):
    """``r*exp(i theta)`` with multiples of pi/2 landing exactly on the axes."""
    q = theta / (math.pi / 2.0)
    k = round(q)
    if abs(q - k) <= 1e-15 * max(1.0, abs(q)):
        return [complex(r, 0.0), complex(0.0, r), complex(-r, 0.0), complex(0.0, -r)][k % 4]
    return complex(r * math.cos(theta), r * math.sin(theta))


def format_real(x):
    s = np.format_float_scientific(x, unique=True, trim="-", exp_digits=1)
    return s.replace("e+", "e")


def format_value(v):
    sign = "-" if math.copysign(1.0, v.imag) < 0 else "+"
    return f"{format_real(v.real)} {sign} {format_real(abs(v.imag))} i"


def _fmt(x):
    return repr(float(x))


def _point_args(args):
    if args.z is not None:
        if args.modulus is not None or args.arg is not None:
            raise UsageError("--z cannot be combined with --modulus/--arg")
        return parse_complex(args.z)
    if args.modulus is None or args.arg is None:
        raise UsageError("give either --z or both --modulus and --arg")
    return polar(args.modulus, parse_angle(args.arg))


def _grid(args):
    if not (args.rmin > 0.0 and args.rmax >= args.rmin):
        raise UsageError("need 0 < --rmin <= --rmax")
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    theta = parse_angle(args.arg)
    radii = np.logspace(math.log10(args.rmin), math.log10(args.rmax), args.points)
    return [polar(float(r), theta) for r in radii]


def _timed_eval(args, z, repetitions):
    times = []
    res = None
    for _ in range(repetitions):
        t0 = time.perf_counter_ns()
        res = evaluate(args.alpha, args.beta, args.gamma, z, args.tol, args.force_region)
        times.append(time.perf_counter_ns() - t0)
    return res, int(statistics.median(times))


def _record(args, z, res, t_ns, with_oracle):
    v = res.value
    err = ""
    if with_oracle:
        ref = reference_value(args.alpha, args.beta, args.gamma, z, args.oracle_digits, args.oracle_max_terms)
        err = mixed_error(v, ref)
    plan = res.plan
    return {
        "re_z": z.real,
        "im_z": z.imag,
        "re_E": v.real,
        "im_E": v.imag,
        "err_mixed": err,
        "n_nodes": res.n_integrand_evals if plan is not None else 1,
        "region_index": plan.region_index if plan is not None else 0,
        "mu": plan.mu if plan is not None else 0.0,
        "h": plan.h if plan is not None else 0.0,
        "time_ns": t_ns,
    }


def _write_csv(rows, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([
            _fmt(r["re_z"]), _fmt(r["im_z"]), _fmt(r["re_E"]), _fmt(r["im_E"]),
            "" if r["err_mixed"] == "" else _fmt(r["err_mixed"]),
            r["n_nodes"], r["region_index"], _fmt(r["mu"]), _fmt(r["h"]), r["time_ns"],
        ])


def cmd_eval(args):
    z = _point_args(args)
    res, _ = _timed_eval(args, z, 1)
    v = res.value
    if args.json:
        payload = {"re": v.real, "im": v.imag}
        if res.plan is not None:
            payload.update(
                n_nodes=res.n_integrand_evals, region_index=res.plan.region_index, mu=res.plan.mu, h=res.plan.h
            )
        if args.oracle:
            ref = reference_value(args.alpha, args.beta, args.gamma, z, args.oracle_digits, args.oracle_max_terms)
            payload["err_mixed"] = mixed_error(v, ref)
        print(json.dumps(payload))
    else:
        print(format_value(v))
    return 0


def _run_grid(args, with_oracle, repetitions):
    rows = []
    for z in _grid(args):
        res, t_ns = _timed_eval(args, z, repetitions)
        rows.append(_record(args, z, res, t_ns, with_oracle))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            _write_csv(rows, fh)
    else:
        _write_csv(rows, sys.stdout)
    if not with_oracle:
        return 0
    bound = args.tol_slack * args.tol
    bad = [r for r in rows if not r["err_mixed"] <= bound]
    if bad:
        worst = max(bad, key=lambda r: r["err_mixed"])
        print(
            f"{len(bad)} of {len(rows)} points exceed err_mixed <= {bound:.3g}; worst {worst['err_mixed']:.3e} "
            f"at z={complex(worst['re_z'], worst['im_z'])}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return 0


def cmd_sweep(args):
    return _run_grid(args, args.oracle, 1)


def cmd_compare(args):
    return _run_grid(args, True, 1)


def cmd_time(args):
    if args.repetitions < 1:
        raise UsageError("--repetitions must be >= 1")
    return _run_grid(args, args.oracle, args.repetitions)


def build_parser():
    p = argparse.ArgumentParser(prog="mlopc", description="Mittag-Leffler functions on optimal parabolic contours.")
    sub = p.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha", type=float, required=True)
    common.add_argument("--beta", type=float, default=1.0)
    common.add_argument("--gamma", type=float, default=1.0)
    common.add_argument("--tol", type=float, default=1e-15, help="target accuracy in [1e-15, 1e-1]")
    common.add_argument("--force-region", type=int, default=None, help="debug: evaluate through this region")
    common.add_argument("--oracle-digits", type=int, default=100)
    common.add_argument("--oracle-max-terms", type=int, default=100_000)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--arg", default="0", help="arg(z): pi, pi/2, 3pi/4 or radians")
    grid.add_argument("--rmin", type=float, default=1e-2)
    grid.add_argument("--rmax", type=float, default=1e2)
    grid.add_argument("--points", type=int, default=50)
    grid.add_argument("--out", default=None, help="CSV path; stdout when omitted")
    grid.add_argument("--tol-slack", type=float, default=100.0, help="allowed err_mixed as a multiple of --tol")

    e = sub.add_parser("eval", parents=[common], help="evaluate at one point")
    e.add_argument("--z", default=None, help="complex argument, e.g. 0.9+0.4i")
    e.add_argument("--modulus", type=float, default=None)
    e.add_argument("--arg", default=None)
    e.add_argument("--json", action="store_true")
    e.add_argument("--oracle", action="store_true", help="add err_mixed against the reference value")
    e.set_defaults(func=cmd_eval)

    s = sub.add_parser("sweep", parents=[common, grid], help="radial sweep at fixed arg(z)")
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("compare", parents=[common, grid], help="sweep with err_mixed against the reference")
    c.set_defaults(func=cmd_compare, oracle=True)

    t = sub.add_parser("time", parents=[common, grid], help="sweep reporting median wall time per point")
    t.add_argument("--repetitions", type=int, default=11)
    t.add_argument("--oracle", action="store_true")
    t.set_defaults(func=cmd_time)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tolerances_for(args.tol)
        return args.func(args)
    except (UsageError, InvalidParameterError) as exc:
        print(f"mlopc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedParametersError as exc:
        print(f"mlopc: unsupported parameters: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NoAdmissibleRegionError as exc:
        print(f"mlopc: {exc}", file=sys.stderr)
        return EXIT_NO_REGION
    except OracleNonConvergenceError as exc:
        print(f"mlopc: oracle did not converge: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (ValueError, OverflowError) as exc:
        print(f"mlopc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
