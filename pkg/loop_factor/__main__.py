#!/usr/bin/env python3
"""
CLI entry point for loop-factor.

Usage:
    # Generate a random SO(5) loop from three simple factors
    python -m loop_factor random --group so --n 5 --factors 3 --seed 7 -o loop.json

    # Check membership, reality, normalization and twisting
    python -m loop_factor check loop.json

    # Factor it, with the reduction steps, and verify the product
    python -m loop_factor factor loop.json --trace -o result.json
    python -m loop_factor verify loop.json result.json

    # Dressing and permutability of simple elements
    python -m loop_factor dress factor.json loop.json
    python -m loop_factor permute pair.json

    # Octonion and affine g2 queries
    python -m loop_factor octa product --i 1 --j 2
    python -m loop_factor affine curvature --pqr p1=1 p2=1 --lam 2

Exit codes: 0 success, 1 validation failure, 2 algorithm failure, 3 parse error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__, commands
from .documents import Document, dumps, loads, read_document
from .errors import LoopFactorError
from .reporter import get_reporter
from .run_config import FORMATS, load_run_config

PQR_KEYS = ("p1", "p2", "p3", "q1", "q2", "q3", "r1", "r2", "r3")


def _read(path: str) -> Document:
    if path == "-":
        return loads(sys.stdin.read())
    return read_document(path)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-f",
        "--format",
        choices=list(FORMATS),
        default=None,
        help="Output format (default: json, or the configured format)",
    )
    common.add_argument("-o", "--output", metavar="FILE", help="Output file (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true", help="Log reduction steps to stderr")
    common.add_argument("--config", metavar="FILE", help="Run configuration (default: ./.loop-factor.yaml)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="loop-factor",
        description="Exact factorization of rational loops into simple elements.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Groups:
  so      SO(n) loops, n x n
  csp     conformal symplectic CSp(n) loops, 2n x 2n
  g2      G2 loops acting on the imaginary octonions, 7 x 7
  gl      GL(n) (simple elements and dressing only)

Twists:
  so-grassmannian (with --k), so-u, g2-so4, csp-u
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="Membership, reality and twisting report")
    p.add_argument("loop", help="Loop document ('-' for stdin)")

    p = sub.add_parser("factor", parents=[common], help="Factor a loop into simple elements")
    p.add_argument("loop", help="Loop document ('-' for stdin)")
    p.add_argument("--trace", action="store_true", default=None, help="Include the reduction steps")
    p.add_argument("--budget-multiplier", type=int, default=None, metavar="N")

    p = sub.add_parser("verify", parents=[common], help="Check a factorization against its loop")
    p.add_argument("loop")
    p.add_argument("result")

    p = sub.add_parser("dress", parents=[common], help="Dress a loop by a simple element")
    p.add_argument("factor", help="Factor document with one simple element")
    p.add_argument("loop")

    p = sub.add_parser("permute", parents=[common], help="Permute two simple elements")
    p.add_argument("pair", help="Factor document with two simple elements")

    p = sub.add_parser("random", parents=[common], help="Generate a seeded random loop")
    p.add_argument("--group", choices=["so", "csp", "g2", "gl"], required=True)
    p.add_argument("--n", type=int, default=3, help="SO(n), CSp(n) or GL(n); ignored for g2")
    p.add_argument("--factors", type=int, default=None, metavar="K")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--twist", choices=["so-grassmannian", "so-u", "g2-so4", "csp-u"])
    p.add_argument("--k", type=int, default=0, help="Grassmannian index for so-grassmannian")
    p.add_argument("--factors-output", metavar="FILE", help="Also write the factor document")

    p = sub.add_parser("octa", parents=[common], help="Octonion and g2 queries")
    p.add_argument("query", choices=["table", "product", "g2-dimension", "multiplier", "classify"])
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument(
        "--vector",
        action="append",
        default=[],
        metavar="V",
        help="Comma-separated vector in C^7 (repeat for planes)",
    )

    p = sub.add_parser("affine", parents=[common], help="Affine g2 queries")
    p.add_argument("query", choices=["eigenspaces", "curvature"])
    p.add_argument("--pqr", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--lam", default=None, help="Evaluate the curvature at this lambda")

    return parser


def _pqr(items: List[str]) -> dict:
    values = {}
    for item in items:
        key, _, value = item.partition("=")
        if key not in PQR_KEYS or not value:
            raise argparse.ArgumentTypeError(f"expected KEY=VALUE with KEY in {', '.join(PQR_KEYS)}")
        values[key] = value
    return values


def _dispatch(args: argparse.Namespace, config) -> tuple:
    """(document, ok) for the parsed command."""
    if args.command == "check":
        doc = commands.check(_read(args.loop))
        return doc, doc["ok"]
    if args.command == "factor":
        budget = args.budget_multiplier or config.budget_multiplier
        trace = config.trace if args.trace is None else args.trace
        return commands.factor(_read(args.loop), budget, trace), True
    if args.command == "verify":
        doc = commands.verify(_read(args.loop), _read(args.result))
        return doc, doc["verified"]
    if args.command == "dress":
        return commands.dress_loop(_read(args.factor), _read(args.loop)), True
    if args.command == "permute":
        return commands.permute_pair(_read(args.pair)), True
    if args.command == "random":
        loop_doc, factor_doc = commands.random_loop(
            args.group,
            args.n,
            factors=config.factors if args.factors is None else args.factors,
            seed=config.seed if args.seed is None else args.seed,
            twist=args.twist,
            k=args.k,
            entry_range=config.entry_range,
            pole_range=config.pole_range,
        )
        if args.factors_output:
            with open(args.factors_output, "w") as f:
                f.write(dumps(factor_doc))
        return loop_doc, True
    if args.command == "octa":
        vectors = [v.split(",") for v in args.vector]
        if args.query == "table":
            return commands.octonion_table(), True
        if args.query == "product":
            return commands.octonion_product(args.i, args.j), True
        if args.query == "g2-dimension":
            return commands.g2_dimension(), True
        if args.query == "multiplier":
            if len(vectors) != 1:
                raise argparse.ArgumentTypeError("multiplier takes exactly one --vector")
            return commands.octonion_multiplier(vectors[0]), True
        return commands.octonion_classify(vectors), True
    if args.query == "eigenspaces":
        return commands.affine_eigenspaces(), True
    return commands.affine_curvature(_pqr(args.pqr), args.lam), True


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    config = load_run_config(path=args.config) if args.config else load_run_config()
    reporter = get_reporter(args.format or config.format, verbose=args.verbose)

    try:
        doc, ok = _dispatch(args, config)
    except LoopFactorError as e:
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except argparse.ArgumentTypeError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1

    output = sys.stdout
    if args.output:
        try:
            output = open(args.output, "w")
        except (OSError, IOError) as e:
            print(f"Error: Cannot write to file: {args.output} ({e})", file=sys.stderr)
            return 1

    try:
        reporter.report(doc, output)
    except (OSError, IOError) as e:
        print(f"Error: Failed to write output: {e}", file=sys.stderr)
        return 1
    finally:
        if args.output:
            output.close()

    if not ok:
        reason = doc.get("reason") or json.dumps({k: doc.get(k) for k in ("normalized", "real", "twisted", "verified") if k in doc})
        print(f"Error: {reason}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
