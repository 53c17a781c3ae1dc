"""Command line interface: ``bjortho <subcommand> [options]``.

Results go to stdout as JSON. Exit status is 0 whenever the computation ran,
whatever the verdict; 2 for bad input; 3 for numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import harness
from .errors import InputError, NumericalError
from .io import matrix_to_json, parse_vector, read_matrix
from .linalg import operator_norm, parse_norm_selector
from .operator import bj_operator_oracle, bj_operator_spectral, descent_lambda, norm_attaining_set
from .smoothness import (
    compact_smooth_conditions,
    hyperplane_sup,
    nonsmooth_witness,
    operator_smooth,
    split_is_exact,
)
from .vector import bj_vector

EXIT_INPUT = 2
EXIT_NUMERICAL = 3
DEFAULT_TOL = 1e-9


def _default_tol() -> float:
    raw = os.environ.get("BJORTHO_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise InputError(f"BJORTHO_TOL={raw!r} is not a number") from None
    if not (0.0 <= tol < 1.0):
        raise InputError(f"BJORTHO_TOL={raw!r} must lie in [0, 1)")
    return tol


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"not JSON serialisable: {type(obj).__name__}")


def _p_out(p: float):
    return "inf" if p == math.inf else p


def _matrix(args, attr):
    return read_matrix(getattr(args, attr), args.format)


def cmd_norm(args):
    T = _matrix(args, "matrix")
    p = parse_norm_selector(args.p)
    return {"norm": operator_norm(T, p), "p": _p_out(p)}


def cmd_mt(args):
    return norm_attaining_set(_matrix(args, "matrix"), args.tol).to_dict()


def cmd_bj(args):
    T, A = _matrix(args, "left"), _matrix(args, "right")
    p = parse_norm_selector(args.p)
    if args.oracle or p != 2:
        return bj_operator_oracle(T, A, p, args.tol).to_dict()
    return bj_operator_spectral(T, A, args.tol).to_dict()


def cmd_bj_vector(args):
    x, y = parse_vector(args.x), parse_vector(args.y)
    out = bj_vector(x, y, args.p, args.tol).to_dict()
    out["p"] = _p_out(parse_norm_selector(args.p))
    return out


def cmd_smooth(args):
    T = _matrix(args, "matrix")
    p = parse_norm_selector(args.p)
    if p != 2:
        out = compact_smooth_conditions(T, p, args.tol, seed=args.seed).to_dict()
        out["p"] = _p_out(p)
        return out
    rep = operator_smooth(T, args.tol)
    out = rep.to_dict()
    out["split_exact"] = None if rep.witness_pair is None else split_is_exact(T, rep.witness_pair)
    return out


def cmd_witness(args):
    T = _matrix(args, "matrix")
    A1, A2 = nonsmooth_witness(T, args.tol)
    return {"A1": matrix_to_json(A1), "A2": matrix_to_json(A2),
            "split_exact": split_is_exact(T, (A1, A2))}


def cmd_descent(args):
    T, A = _matrix(args, "left"), _matrix(args, "right")
    cert = descent_lambda(T, A, args.tol, seed=args.seed)
    if cert is None:
        return {"orthogonal": True, "certificate": None}
    return {"orthogonal": False, "certificate": cert.to_dict()}


def cmd_hyperplane_sup(args):
    T = _matrix(args, "matrix")
    x0 = parse_vector(args.x0)
    return {"hyperplane_sup": hyperplane_sup(T, x0, max(args.tol, 1e-8))}


def cmd_example(args):
    # "2.5" is the historical name of the diagonal family
    if args.name not in ("2.5", "diagonal"):
        raise InputError(f"unknown example {args.name!r}; available: 2.5 (alias diagonal)")
    return harness.diagonal_family(args.n, args.tol).to_dict()


def cmd_verify(args):
    try:
        lo, hi = (int(v) for v in args.dims.split(","))
    except ValueError:
        raise InputError(f"--dims expects 'lo,hi', got {args.dims!r}") from None
    report = harness.run_suite(args.suite, args.seed, args.trials, (lo, hi), args.tol,
                               timed=not args.no_runtime)
    return report.to_dict()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="numerical tolerance (default: $BJORTHO_TOL or 1e-9)")
    common.add_argument("--p", default="2", help="norm selector: 1, 2, inf, or a real >= 1")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="matrix file format (default: from the file extension)")
    common.add_argument("--oracle", action="store_true",
                        help="decide orthogonality by direct minimisation over lambda")

    parser = argparse.ArgumentParser(prog="bjortho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    add("norm", cmd_norm, "induced operator norm").add_argument("--matrix", required=True)
    add("mt", cmd_mt, "norm attaining set (top singular subspace)").add_argument(
        "--matrix", required=True)
    sp = add("bj", cmd_bj, "Birkhoff-James orthogonality of two operators")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("bj-vector", cmd_bj_vector, "Birkhoff-James orthogonality of two vectors in l_p")
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    add("smooth", cmd_smooth, "smoothness of an operator").add_argument("--matrix", required=True)
    add("witness", cmd_witness, "non-smoothness witness pair").add_argument(
        "--matrix", required=True)
    sp = add("descent", cmd_descent, "descent scalar certificate")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("hyperplane-sup", cmd_hyperplane_sup, "sup of ||Ty|| over unit y orthogonal to x0")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--x0", required=True)
    sp = add("example", cmd_example, "reproduce a worked example")
    sp.add_argument("--name", default="2.5")
    sp.add_argument("--n", type=int, default=5)
    sp = add("verify", cmd_verify, "run a randomised verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(harness.SUITES))
    sp.add_argument("--dims", default="2,8")
    sp.add_argument("--no-runtime", action="store_true",
                    help="report runtime_seconds as null (byte-reproducible output)")
    sp.add_argument("--out", default=None, help="also write the report to this file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is None:
            args.tol = _default_tol()
        if not (args.tol >= 0.0 and math.isfinite(args.tol)):
            raise InputError(f"--tol must be a non-negative number, got {args.tol}")
        result = args.func(args)
    except InputError as exc:
        print(f"bjortho: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"bjortho: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    text = json.dumps(result, indent=2, default=_jsonable)
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
