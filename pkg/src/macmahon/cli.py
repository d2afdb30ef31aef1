"""Command line interface.

Subcommands: verify, count, series, normal-form, charpoly.  Output is
plain text or JSON (--format json); every number prints exactly, as an
integer or a rational p/q, and identical invocations produce identical
bytes.  Exit codes: 0 for success/pass, 1 for a violated identity or a
method disagreement, 2 for usage errors (including malformed matrix
files).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .charpoly import (
    MatrixFormatError,
    SymMatrix,
    char_coeffs,
    matrix_from_json_obj,
    scale_rows_by_t,
)
from .counting import DP, SERIES, TRANSFER, count_admissible, f_series
from .identity import verify_master
from .rewrite import normal_form
from .words import STRICT, WEAK, AlgebraParams

_MATRIX_HELP = "identity | ones | symbolic | random | path to a JSON matrix file"


def _algebra_params(args, parser: argparse.ArgumentParser) -> AlgebraParams:
    try:
        return AlgebraParams(args.m, args.k)
    except ValueError as exc:
        parser.error(str(exc))


def _nonnegative(value: int, name: str, parser: argparse.ArgumentParser) -> int:
    if value < 0:
        parser.error(f"{name} must be nonnegative")
    return value


def _load_matrix(args, parser: argparse.ArgumentParser) -> SymMatrix:
    spec = args.matrix
    if spec == "identity":
        return SymMatrix.identity(args.m)
    if spec == "ones":
        return SymMatrix.ones(args.m)
    if spec == "symbolic":
        return SymMatrix.symbolic(args.m)
    if spec == "random":
        if args.seed is None:
            parser.error("--matrix random requires --seed")
        return SymMatrix.random(args.m, args.seed)
    try:
        with open(spec, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        parser.error(f"cannot read matrix file {spec}: {exc}")
    except json.JSONDecodeError as exc:
        parser.error(f"matrix file {spec} is not valid JSON: {exc}")
    try:
        matrix = matrix_from_json_obj(obj)
    except MatrixFormatError as exc:
        parser.error(f"matrix file {spec}: {exc}")
    if matrix.m != args.m:
        parser.error(f"matrix file {spec} has m={matrix.m}, expected m={args.m}")
    return matrix


def _parse_word(text: str, parser: argparse.ArgumentParser) -> tuple[int, ...]:
    if text.strip() == "":
        return ()
    letters = []
    for piece in text.split(","):
        try:
            letters.append(int(piece.strip()))
        except ValueError:
            parser.error(f"invalid word {text!r}: {piece.strip()!r} is not an integer")
    return tuple(letters)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _cmd_verify(args, parser: argparse.ArgumentParser) -> int:
    params = _algebra_params(args, parser)
    _nonnegative(args.cap, "--cap", parser)
    matrix = _load_matrix(args, parser)
    report = verify_master(matrix, params, args.cap)
    if args.format == "json":
        _emit_json(report.to_json_obj())
    else:
        print(f"verify m={params.m} k={params.k} cap={args.cap} "
              f"matrix={args.matrix} mode={report.mode}")
        for check in report.per_degree:
            status = "ok" if check.ok else "FAIL"
            print(f"  degree {check.degree}: {status} (residual terms: {check.residual_terms})")
        print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def _cmd_count(args, parser: argparse.ArgumentParser) -> int:
    params = _algebra_params(args, parser)
    _nonnegative(args.len, "--len", parser)
    tables = [count_admissible(params, args.len, args.variant, method)
              for method in (DP, TRANSFER, SERIES)]
    agree = tables[0].values == tables[1].values == tables[2].values
    if args.format == "json":
        _emit_json({"tables": [table.to_json_obj() for table in tables], "agree": agree})
    else:
        print(f"count m={params.m} k={params.k} variant={args.variant} len={args.len}")
        width = max(len(str(v)) for table in tables for v in table.values)
        width = max(width, len("transfer"))
        print(f"  {'l':>3} {'dp':>{width}} {'transfer':>{width}} {'series':>{width}}")
        for l in range(args.len + 1):
            row = [table.values[l] for table in tables]
            print(f"  {l:>3} " + " ".join(f"{v:>{width}}" for v in row))
        print("agreement: " + ("yes" if agree else "NO"))
    return 0 if agree else 1


def _cmd_series(args, parser: argparse.ArgumentParser) -> int:
    params = _algebra_params(args, parser)
    _nonnegative(args.cap, "--cap", parser)
    result = f_series(params, args.cap, args.variant)
    if args.format == "json":
        _emit_json(result.to_json_obj())
    else:
        print(f"series m={params.m} k={params.k} variant={args.variant} cap={args.cap}")
        print(f"  denominator: {result.denominator}")
        print(f"  lhs: {result.lhs.poly}")
        print(f"  rhs: {result.rhs.poly}")
        print("equal: " + ("yes" if result.equal else "NO"))
    return 0 if result.equal else 1


def _cmd_normal_form(args, parser: argparse.ArgumentParser) -> int:
    params = _algebra_params(args, parser)
    word = _parse_word(args.word, parser)
    try:
        combination = normal_form(word, params)
    except ValueError as exc:
        parser.error(str(exc))
    if args.format == "json":
        _emit_json({
            "m": params.m,
            "k": params.k,
            "word": list(word),
            "terms": combination.to_json_obj(),
        })
    else:
        print(f"normal-form m={params.m} k={params.k} word={args.word}")
        for term_word, coeff in combination.sorted_items():
            print(f"  {','.join(str(c) for c in term_word)}: {coeff}")
        print(f"terms: {len(combination)}")
    return 0


def _cmd_charpoly(args, parser: argparse.ArgumentParser) -> int:
    if args.m < 1:
        parser.error("--m must be positive")
    args.k = args.m  # unused by the computation; keeps _load_matrix generic
    matrix = _load_matrix(args, parser)
    coeffs = char_coeffs(scale_rows_by_t(matrix))
    if args.format == "json":
        _emit_json({"m": args.m, "coeffs": [c.to_json_terms() for c in coeffs]})
    else:
        print(f"charpoly m={args.m} matrix={args.matrix}")
        for r, coeff in enumerate(coeffs):
            print(f"  c_{r} = {coeff}")
    return 0


def _add_format(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("text", "json"), default="text",
                     help="output format (default: text)")


def _add_matrix(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--matrix", default="identity", help=_MATRIX_HELP)
    sub.add_argument("--seed", type=int, default=None,
                     help="64-bit seed, required for --matrix random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="macmahon",
        description="Exact checks of a master identity for algebras with degree-k relations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="check first factor times second factor = 1")
    verify.add_argument("--m", type=int, required=True, help="number of generators")
    verify.add_argument("--k", type=int, required=True, help="relation degree, 2 <= k <= m")
    verify.add_argument("--cap", type=int, required=True, help="t-degree truncation cap")
    _add_matrix(verify)
    _add_format(verify)
    verify.set_defaults(handler=_cmd_verify)

    count = sub.add_parser("count", help="count admissible words by three methods")
    count.add_argument("--m", type=int, required=True)
    count.add_argument("--k", type=int, required=True)
    count.add_argument("--len", type=int, required=True, help="largest word length")
    count.add_argument("--variant", choices=(STRICT, WEAK), default=STRICT)
    _add_format(count)
    count.set_defaults(handler=_cmd_count)

    series = sub.add_parser("series", help="compare the admissible-word series with its closed form")
    series.add_argument("--m", type=int, required=True)
    series.add_argument("--k", type=int, required=True)
    series.add_argument("--cap", type=int, required=True)
    series.add_argument("--variant", choices=(STRICT, WEAK), default=STRICT)
    _add_format(series)
    series.set_defaults(handler=_cmd_series)

    nform = sub.add_parser("normal-form", help="rewrite a word into the admissible basis")
    nform.add_argument("--m", type=int, required=True)
    nform.add_argument("--k", type=int, required=True)
    nform.add_argument("--word", required=True, help="comma-separated letters, e.g. 3,2,1")
    _add_format(nform)
    nform.set_defaults(handler=_cmd_normal_form)

    charpoly = sub.add_parser("charpoly", help="characteristic coefficients of the row-scaled matrix")
    charpoly.add_argument("--m", type=int, required=True)
    _add_matrix(charpoly)
    _add_format(charpoly)
    charpoly.set_defaults(handler=_cmd_charpoly)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args, parser)


if __name__ == "__main__":
    sys.exit(main())
