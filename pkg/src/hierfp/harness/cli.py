"""hierfp command line.

Examples:
    hierfp solve --problem P1
    hierfp solve --problem P2 --certify --out runs/p2.csv
    hierfp compare --problem P3 --variants main,wang_xu --out runs/p3.csv
    hierfp validate --config experiment.json --json
    hierfp oracle --problem P2
"""

import argparse
import asyncio
import logging
import os
import sys
from typing import Optional

from dotenv import load_dotenv

from hierfp.core.interfaces import HierFPError, UsageError
from hierfp.core.models import VariantTag
from hierfp.harness.commands import (
    cmd_compare,
    cmd_oracle,
    cmd_solve,
    cmd_validate,
    report_error,
    unwrap,
)
from hierfp.harness.config import ExperimentSpec, parse_config
from hierfp.logging_config import setup_logging

TRUTHY = {"1", "true", "yes", "on"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hierfp",
        description="Solve hierarchical fixed-point problems and variational inequalities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--config", help="Path to a JSON experiment config")
    source.add_argument("--problem", help="Registry problem name (e.g., P1)")
    common.add_argument("--out", help="CSV output path")
    common.add_argument("--seed", type=int, help="Top-level random seed")
    common.add_argument("--max-steps", type=int, help="Iteration cap")
    common.add_argument(
        "--certify",
        action="store_true",
        help="Compute vi_residual and dist_oracle columns and a certificate",
    )

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="Run one variant")
    compare = sub.add_parser("compare", parents=[common], help="Run several variants")
    compare.add_argument(
        "--variants",
        help="Comma-separated variant tags (e.g., main,sahu)",
    )
    validate = sub.add_parser(
        "validate", parents=[common], help="Check constants and step-size conditions"
    )
    validate.add_argument("--json", action="store_true", help="Machine-readable output")
    sub.add_parser("oracle", parents=[common], help="Solve the VI with the oracle")
    return parser


def parse_variants(text: str) -> list[VariantTag]:
    tags = []
    for name in (part.strip() for part in text.split(",") if part.strip()):
        try:
            tags.append(VariantTag(name.lower()))
        except ValueError as e:
            raise UsageError(
                f"unknown variant '{name}'; choose from {[t.value for t in VariantTag]}"
            ) from e
    if not tags:
        raise UsageError("--variants needs at least one tag")
    return tags


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    """Config file or registry problem, then command-line overrides."""
    spec = (
        parse_config(args.config)
        if args.config
        else ExperimentSpec(problem=args.problem or "P1")
    )
    update: dict[str, object] = {}
    if args.out is not None:
        update["out"] = args.out
    if args.seed is not None:
        if args.seed < 0:
            raise UsageError(f"--seed must be nonnegative, got {args.seed}")
        update["seed"] = args.seed
    if args.max_steps is not None:
        if args.max_steps < 1:
            raise UsageError(f"--max-steps must be at least 1, got {args.max_steps}")
        update["stopping"] = spec.resolved_stopping().model_copy(
            update={"max_steps": args.max_steps}
        )
    if args.certify:
        update["certify"] = True
    if getattr(args, "variants", None):
        update["variants"] = parse_variants(args.variants)
    return spec.model_copy(update=update) if update else spec


def configure_logging() -> None:
    load_dotenv()
    level_name = os.getenv("HIERFP_LOG_LEVEL", "INFO").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.INFO
    json_format = os.getenv("HIERFP_LOG_JSON", "").strip().lower() in TRUTHY
    setup_logging(level=level, json_format=json_format)


def main(argv: Optional[list[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_args(args)
        if args.command == "solve":
            return cmd_solve(spec)
        if args.command == "compare":
            return asyncio.run(cmd_compare(spec))
        if args.command == "validate":
            return cmd_validate(spec, as_json=args.json)
        return cmd_oracle(spec)
    except HierFPError as e:
        print(f"error: {unwrap(e)}", file=sys.stderr)
        return report_error(e)


if __name__ == "__main__":
    sys.exit(main())
