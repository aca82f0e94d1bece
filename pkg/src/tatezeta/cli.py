"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Sequence

from .errors import InvalidArgument, NonConvergence, OutOfDomain, Pole, SingularPoint
from .global_zeta import (
    DEFAULT_TOL,
    ZetaEvaluator,
    completed_dirichlet_L,
    completed_lambda,
)
from .local_zeta import arch_zeta, local_zeta_factor
from .places import TRIVIAL, DirichletCharacter, dirichlet_character
from .schwartz import STANDARD, TwistedStepFunction, parse_complex, parse_test_function
from .verify import DEFAULT_COUNTS, SUITES

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGENCE = 0, 1, 2, 3


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except InvalidArgument as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _char_arg(text: str) -> DirichletCharacter:
    try:
        modulus, index = (int(x) for x in text.strip("() ").split(","))
        return dirichlet_character(modulus, index)
    except (ValueError, InvalidArgument) as exc:
        raise argparse.ArgumentTypeError(f"bad character {text!r}: expected modulus,index") from exc


def _fn_arg(text: str):
    try:
        return parse_test_function(text)
    except (InvalidArgument, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _place_arg(text: str) -> int | None:
    if text == "real":
        return None
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad place {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatezeta", description="Zeta integrals over the adeles of Q.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p: argparse.ArgumentParser, out_choices=("human", "json")) -> None:
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="target absolute error")
        p.add_argument("--out", choices=out_choices, default=out_choices[0])

    p = sub.add_parser("local", help="local zeta integral at one place")
    p.add_argument("--p", type=_place_arg, default=None, help="prime or 'real'")
    p.add_argument("--fn", type=_fn_arg, default=STANDARD, help="test function literal, parts joined by |")
    p.add_argument("--s", type=_complex_arg, required=True, help="complex exponent, e.g. 0.5+14.13i")
    p.add_argument("--char", type=_char_arg, default=None, help="character supplying the parity or the value at p")
    common(p)

    p = sub.add_parser("lambda", help="completed Riemann zeta")
    p.add_argument("--s", type=_complex_arg, required=True, help="complex exponent, e.g. 0.5+14.13i")
    common(p)

    p = sub.add_parser("zeta", help="global zeta integral Z(f, chi |.|^s)")
    p.add_argument("--s", type=_complex_arg, required=True, help="complex exponent, e.g. 0.5+14.13i")
    p.add_argument("--fn", type=_fn_arg, default=STANDARD, help="test function literal, parts joined by |")
    p.add_argument("--char", type=_char_arg, default=None, help="Dirichlet character as modulus,index")
    common(p)

    p = sub.add_parser("dirichlet", help="completed Dirichlet L-function")
    p.add_argument("--s", type=_complex_arg, required=True, help="complex exponent, e.g. 0.5+14.13i")
    p.add_argument("--char", type=_char_arg, required=True, help="Dirichlet character as modulus,index")
    common(p)

    p = sub.add_parser("scan", help="evaluate on a vertical grid and emit CSV")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--im-from", type=float, required=True)
    p.add_argument("--im-to", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--fn", type=_fn_arg, default=STANDARD, help="test function literal, parts joined by |")
    p.add_argument("--char", type=_char_arg, default=None, help="Dirichlet character as modulus,index")
    common(p, ("csv", "json"))

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--count", type=int, default=None)
    p.add_argument("--out", choices=("human", "json"), default="human")
    return parser


def _cjson(z: complex) -> dict[str, float]:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _human(z: complex) -> str:
    z = complex(z)
    if z.imag == 0 or abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return f"{z.real:.10f}"
    return f"{z.real:.10f}{z.imag:+.10f}i"


def _emit(args, s: complex, value: complex | Pole, diagnostics: dict | None = None) -> None:
    if args.out == "json":
        payload = {
            "s": _cjson(s),
            "value": None if isinstance(value, Pole) else _cjson(value),
            "pole": {"location": _cjson(value.location), "residue": _cjson(value.residue)} if isinstance(value, Pole) else None,
            "diagnostics": diagnostics or {},
        }
        print(json.dumps(payload, sort_keys=True))
    elif isinstance(value, Pole):
        print(f"pole at s={_human(value.location)} residue={_human(value.residue)}")
    else:
        print(_human(value))


def _evaluator(args):
    if getattr(args, "char", None) is not None:
        return ZetaEvaluator(args.fn, args.char, args.tol)
    if args.fn == STANDARD:
        return lambda s: completed_lambda(s, args.tol)
    return ZetaEvaluator(args.fn, TRIVIAL, args.tol)


def _run_local(args) -> int:
    chi = args.char
    if args.p is None:
        parity = chi.parity if chi is not None else 0
        value = arch_zeta(args.fn.arch, parity, args.s)
        _emit(args, args.s, value)
        return EXIT_OK
    u = chi(args.p) if chi is not None else 1.0
    if u == 0:
        raise InvalidArgument(f"prime {args.p} is ramified for the given character")
    rf = local_zeta_factor(args.fn.local(args.p), u)
    value = rf.at_s(args.p, args.s)
    if args.out == "human":
        print(f"Z_{args.p}(X) = {rf}")
    _emit(args, args.s, value, {"numerator": [_cjson(c) for c in rf.numerator], "denominator": [_cjson(c) for c in rf.denominator]})
    return EXIT_OK


def _run_scan(args) -> int:
    if args.step <= 0:
        raise InvalidArgument("--step must be positive")
    count = int(round((args.im_to - args.im_from) / args.step)) + 1
    if count < 1:
        raise InvalidArgument("empty grid")
    func = _evaluator(args)
    rows = []
    for i in range(count):
        s = complex(args.re, args.im_from + i * args.step)
        v = func(s)
        rows.append((s, v))
    if args.out == "json":
        print(json.dumps([
            {"s": _cjson(s), "value": None if isinstance(v, Pole) else _cjson(v),
             "pole": {"location": _cjson(v.location), "residue": _cjson(v.residue)} if isinstance(v, Pole) else None}
            for s, v in rows
        ], sort_keys=True))
        return EXIT_OK
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["re_s", "im_s", "re_value", "im_value", "abs_value", "pole_flag"])
    for s, v in rows:
        if isinstance(v, Pole):
            writer.writerow([repr(s.real), repr(s.imag), "nan", "nan", "inf", 1])
        else:
            writer.writerow([repr(s.real), repr(s.imag), repr(v.real), repr(v.imag), repr(abs(v)), 0])
    return EXIT_OK


def _run_verify(args) -> int:
    count = args.count if args.count is not None else DEFAULT_COUNTS[args.suite]
    checks = SUITES[args.suite](count)
    if args.out == "json":
        print(json.dumps([{"name": c.name, "passed": c.passed, "detail": c.detail} for c in checks], sort_keys=True))
    else:
        for c in checks:
            print(c.line())
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAIL


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb == "local":
            return _run_local(args)
        if args.verb == "lambda":
            value = completed_lambda(args.s, args.tol)
            diag = {}
            if not isinstance(value, Pole):
                dual = completed_lambda(1 - args.s, args.tol)
                if not isinstance(dual, Pole):
                    diag["fe_defect"] = abs(value - dual)
            _emit(args, args.s, value, diag)
            return EXIT_OK
        if args.verb == "zeta":
            _emit(args, args.s, _evaluator(args)(args.s))
            return EXIT_OK
        if args.verb == "dirichlet":
            _emit(args, args.s, completed_dirichlet_L(args.char, args.s, args.tol))
            return EXIT_OK
        if args.verb == "scan":
            return _run_scan(args)
        return _run_verify(args)
    except NonConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (InvalidArgument, OutOfDomain, SingularPoint) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
