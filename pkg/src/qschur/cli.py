"""Command-line frontend.

stdout carries JSON only and stderr carries human summaries.  Exit codes are
0 when every check passes, 1 on a verification failure or a cross-check
mismatch, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .calibration import CALIBRATED, oracle_xi_product
from .errors import QSSError
from .schur import SchurElement, mul_xi_structured
from .suites import SUITES, Params, default_jobs, run_suite
from .ugl import GenWord, eta, parse_word
from .weyl import SuperMatrix, enumerate_matrices, perm_of_matrix, word_from_matrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load(text: str):
    """Parse ``text`` as JSON, or as the contents of the file it names."""
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from exc


def _emit(obj, args) -> None:
    text = json.dumps(obj, sort_keys=True)
    print(text)
    if getattr(args, "json", None):
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _shape_check(el: SchurElement, args, what: str) -> None:
    for key in ("m", "n", "r"):
        want = getattr(args, key, None)
        if want is not None and getattr(el, key) != want:
            raise UsageError(f"{what} has {key}={getattr(el, key)} but --{key} {want} was given")


def cmd_enumerate(args) -> int:
    mats = enumerate_matrices(args.m, args.n, args.r, args.family)
    if args.count:
        _emit(len(mats), args)
    else:
        _emit([A.to_json() for A in mats], args)
    print(f"{len(mats)} matrices in family {args.family} for ({args.m}|{args.n}), r={args.r}", file=sys.stderr)
    return EXIT_OK


def cmd_word(args) -> int:
    A = SuperMatrix.from_json(_load(args.matrix))
    w = word_from_matrix(A)
    _emit({"matrix": A.to_json(), "word": list(w), "length": len(w), "permutation": list(perm_of_matrix(A))}, args)
    print(f"reduced word of length {len(w)}", file=sys.stderr)
    return EXIT_OK


def cmd_mul(args) -> int:
    left = SchurElement.from_json(_load(args.left))
    right = SchurElement.from_json(_load(args.right))
    _shape_check(left, args, "left factor")
    _shape_check(right, args, "right factor")
    engines = ("structured", "oracle") if args.cross_check else (args.engine,)
    results = {}
    for engine in engines:
        if engine == "structured":
            results[engine] = mul_xi_structured(left, right)
        else:
            results[engine] = oracle_xi_product(left, right, CALIBRATED)
    if args.cross_check:
        agree = results["structured"] == results["oracle"]
        _emit({"agree": agree, "structured": results["structured"].to_json(),
               "oracle": results["oracle"].to_json()}, args)
        print("engines agree" if agree else "engines DISAGREE", file=sys.stderr)
        return EXIT_OK if agree else EXIT_FAIL
    out = results[args.engine]
    _emit(out.to_json(), args)
    print(f"product has {len(out.terms)} terms ({args.engine} engine)", file=sys.stderr)
    return EXIT_OK


def cmd_eta(args) -> int:
    if args.word is not None:
        w = GenWord.word(args.m, args.n, parse_word(args.word))
    elif args.combination is not None:
        w = GenWord.from_json(_load(args.combination), args.m, args.n)
    else:
        raise UsageError("eta needs a word or --combination")
    X = eta(w)
    _emit(X.to_json(), args)
    print(f"image has {len(X.support())} terms", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = Params(args.m, args.n, r_max=args.r_max, norm_max=args.norm_max, seed=args.seed,
                    sample=args.sample)
    report = run_suite(args.suite, params, jobs=args.jobs)
    _emit(report, args)
    failed = len(report["failures"])
    status = "PASS" if not failed else "FAIL"
    print(f"{status} {args.suite} ({args.m}|{args.n}): {report['passed']}/{report['instances']} instances pass",
          file=sys.stderr)
    return EXIT_OK if not failed else EXIT_FAIL


def _nonneg(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {x}")
    return x


def _positive(text: str) -> int:
    x = _nonneg(text)
    if x == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return x


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qschur", description="Quantum super Schur algebra toolkit.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shape(p, r_flag=True, required=True):
        p.add_argument("--m", type=_nonneg, required=required)
        p.add_argument("--n", type=_nonneg, required=required)
        if r_flag:
            p.add_argument("--r", type=_nonneg, required=required)
        p.add_argument("--json", metavar="PATH", help="also write the JSON result to PATH")

    p = sub.add_parser("enumerate", help="list the matrices of a family")
    shape(p)
    p.add_argument("--family", choices=("all", "zero_diag", "upper", "lower"), default="all")
    p.add_argument("--count", action="store_true", help="print only the cardinality")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("word", help="reduced word of the permutation attached to a matrix")
    p.add_argument("matrix", help="matrix JSON or a file containing it")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("mul", help="multiply two Schur algebra elements in the xi basis")
    shape(p, required=False)
    p.add_argument("--left", required=True, help="element JSON or a file containing it")
    p.add_argument("--right", required=True, help="element JSON or a file containing it")
    p.add_argument("--engine", choices=("structured", "oracle"), default="structured")
    p.add_argument("--cross-check", action="store_true", help="run both engines and compare")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("eta", help="evaluate a generator word in the realisation space")
    shape(p, r_flag=False)
    p.add_argument("word", nargs="?", help="whitespace-separated tokens such as 'E1 K2^-1 F1'")
    p.add_argument("--combination", help="word combination JSON or a file containing it")
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("suite", choices=SUITES)
    shape(p, r_flag=False)
    p.add_argument("--r-max", type=_nonneg, default=3)
    p.add_argument("--norm-max", type=_nonneg, default=4)
    p.add_argument("--jobs", type=_positive, default=None, help="worker processes (default: QSS_JOBS or 1)")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled sweeps")
    p.add_argument("--sample", type=_nonneg, default=0, help="sample this many j vectors (0 = all)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "command", None) == "verify" and args.jobs is None:
            args.jobs = default_jobs()
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QSSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
