"""Command-line front end.

Exit codes: 0 success (bound tables, a found code, a minimal matrix, a valid
certificate), 1 internal error, 2 invalid input, 3 negative result (search
exhausted, matrix not minimal, certificate rejected).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .bounds import (
    BISECT_TOL,
    CURVE_COLUMNS,
    bound_gap_table,
    check_field_order,
    curve_dump,
    epsilon_proof,
)
from .errors import (
    BlockMismatch,
    DegenerateColumn,
    DimensionTooLarge,
    DomainError,
    MatrixFormatError,
    MinimalCodesError,
    NotPrimePower,
    RankDeficient,
    Unsupported,
    UnsupportedField,
    VerificationFailed,
)
from .gfcodes import (
    ashikhmin_barg_check,
    is_minimal_code,
    is_strong_blocking_set,
    projective_points,
    read_matrix,
    weight_profile,
)
from .search import SearchCertificate, SearchConfig, certificate_matrix_text, search, verify_certificate

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2, 3
OUT_DIR_ENV = "MINCODES_OUT_DIR"
DECIMALS = 6


class InputError(Exception):
    """Bad user input; maps to exit code 2."""


def _fmt(x) -> str:
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        return f"{x:.{DECIMALS}f}"
    return str(x)


def _round(x):
    if isinstance(x, float):
        return round(x, DECIMALS)
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_round(v) for v in x]
    return x


def _render(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_round(records), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if records:
        writer.writerow(records[0].keys())
        for rec in records:
            writer.writerow(_fmt(v) for v in rec.values())
    return buf.getvalue()


def _q_list(text: str) -> list[int]:
    try:
        qs = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not qs:
        raise argparse.ArgumentTypeError("empty q list")
    return qs


def _tolerance(text: str) -> float:
    try:
        tol = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 < tol <= 1e-3:
        raise argparse.ArgumentTypeError("tolerance must lie in (0, 1e-3]")
    return tol


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _emit(args, text: str, default_name: str) -> None:
    """Write to --output, else into the output directory, else stdout."""
    target = args.output
    out_dir = args.out_dir or os.environ.get(OUT_DIR_ENV)
    if target is None and out_dir:
        target = Path(out_dir) / default_name
    if target is None:
        sys.stdout.write(text)
        return
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, newline="\n")
    print(f"wrote {target}", file=sys.stderr)


def _ext(args) -> str:
    return "json" if args.format == "json" else "csv"


def cmd_table(args) -> int:
    for q in args.q_list:
        check_field_order(q)
    rows = bound_gap_table(args.q_list, tol=args.tolerance)
    records = [
        {
            "q": r.q,
            "liminf_ratio": r.liminf_ratio,
            "gap": r.gap,
            "epsilon_proof": r.epsilon_proof,
            "consistent": r.consistent,
        }
        for r in rows
    ]
    _emit(args, _render(records, args.format), f"bounds_table.{_ext(args)}")
    return EXIT_OK


def cmd_epsilon(args) -> int:
    sol = epsilon_proof(args.q, tol=args.tolerance)
    record = {
        "q": sol.q,
        "epsilon": sol.epsilon,
        "C": sol.C,
        "A": sol.A,
        "delta_c": sol.delta_c,
        "entropy_product": sol.entropy_product,
        "liminf_ratio": sol.liminf_ratio,
        "gap": sol.liminf_ratio - sol.q,
    }
    _emit(args, _render([record], args.format), f"epsilon_q{args.q}.{_ext(args)}")
    return EXIT_OK


def cmd_curves(args) -> int:
    if args.grid < 2:
        raise InputError("--grid must be at least 2")
    samples = curve_dump(args.q, args.grid, tol=args.tolerance)
    records = [
        {"delta": s.delta, **{c: s.values[c] for c in CURVE_COLUMNS}, "crossing": s.crossing}
        for s in samples
    ]
    _emit(args, _render(records, args.format), f"curves_q{args.q}.{_ext(args)}")
    return EXIT_OK


def cmd_search(args) -> int:
    config = SearchConfig(threads=args.threads, orbit_p3=not args.no_orbit)
    cert = search(args.N, config)
    _emit(args, cert.to_json(), f"search_N{args.N}.json")
    if args.matrix_out and cert.found:
        Path(args.matrix_out).write_text(certificate_matrix_text(cert), newline="\n")
    summary = f"N={cert.N} outcome={cert.outcome} nodes={cert.nodes} elapsed={cert.elapsed:.{DECIMALS}f}s"
    print(summary, file=sys.stderr)
    return EXIT_OK if cert.found else EXIT_NEGATIVE


def cmd_check(args) -> int:
    code = read_matrix(args.matrix)
    q, k, n = code.q, code.k, code.n
    minimal, witness = is_minimal_code(code)
    d, w_max, _ = weight_profile(code)
    try:
        blocking, hyperplane = is_strong_blocking_set(projective_points(code))
        agreement = blocking == minimal
    except DegenerateColumn:
        blocking, hyperplane, agreement = None, None, None
    record = {
        "q": q,
        "k": k,
        "n": n,
        "minimal": minimal,
        "d_min": d,
        "w_max": w_max,
        "max_weight_ok": (not minimal) or w_max <= n - k + 1,
        "min_distance_ok": (not minimal) or d >= (q - 1) * (k - 1) + 1,
        "ashikhmin_barg": ashikhmin_barg_check(code),
        "strong_blocking": blocking,
        "agreement": agreement,
    }
    if witness is not None:
        record["witness_small"] = "".join(map(str, witness[0].coords))
        record["witness_big"] = "".join(map(str, witness[1].coords))
    if hyperplane is not None:
        record["hyperplane"] = "".join(map(str, hyperplane))
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        text = "".join(f"{key}: {_fmt(v) if v is not None else 'n/a'}\n" for key, v in record.items())
    _emit(args, text, f"check_{Path(args.matrix).stem}.{'json' if args.format == 'json' else 'txt'}")
    if agreement is False:
        raise MinimalCodesError("minimality and strong-blocking verdicts disagree")
    return EXIT_OK if minimal else EXIT_NEGATIVE


def cmd_certify(args) -> int:
    try:
        cert = SearchCertificate.from_json(Path(args.cert).read_text())
    except (ValueError, KeyError) as exc:
        raise InputError(f"malformed certificate: {exc}") from exc
    try:
        verify_certificate(cert, raise_on_failure=True)
    except VerificationFailed as exc:
        print(f"certificate rejected: {exc.check}: {exc.detail}")
        return EXIT_NEGATIVE
    print(f"certificate valid: N={cert.N} outcome={cert.outcome}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mincodes", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", "-o", help="output file (default: stdout)")
    common.add_argument("--out-dir", help=f"output directory; defaults to ${OUT_DIR_ENV} when set")
    common.add_argument("--tolerance", type=_tolerance, default=BISECT_TOL, help="bisection tolerance in (0, 1e-3]")

    sub = parser.add_subparsers(dest="command", required=True)

    bounds = sub.add_parser("bounds", help="asymptotic bounds")
    bsub = bounds.add_subparsers(dest="bounds_command", required=True)
    p = bsub.add_parser("table", parents=[common], help="liminf and epsilon table")
    p.add_argument("--q-list", type=_q_list, required=True)
    p.set_defaults(func=cmd_table)
    p = bsub.add_parser("epsilon", parents=[common], help="epsilon(q) with its auxiliary values")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_epsilon)
    p = bsub.add_parser("curves", parents=[common], help="plot-ready bound curves")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--grid", type=int, default=101)
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("search", parents=[common], help="search for a binary minimal [3N, N+1] code")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--no-orbit", action="store_true", help="disable the third-row type reduction")
    p.add_argument("--matrix-out", help="also write a found generator in matrix text format")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("check", parents=[common], help="check a generator matrix file")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", parents=[common], help="verify a search certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    handler: Callable[[argparse.Namespace], int] = args.func
    try:
        return handler(args)
    except (InputError, NotPrimePower, DomainError, MatrixFormatError, Unsupported, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MinimalCodesError as exc:
        # guard breaches and malformed codes are input problems; anything else is ours
        if isinstance(exc, (DimensionTooLarge, RankDeficient, UnsupportedField, BlockMismatch)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
