"""
Coefficients Command
Closed-form reduced-equation coefficients as a JSON report.
"""
import argparse

from commands.base import add_common_arguments, run_command
from services.coefficients import CoefficientService

COMMAND_CONFIG = {
    "help": "Reduced-equation coefficients at a carrier",
}


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("coefficients", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser)
    parser.add_argument("--sweep", action="store_true", help="Also tabulate every admissible carrier")
    return parser


def handle(args: argparse.Namespace) -> int:
    extra = {"admissible.coefficient_sweep": True} if args.sweep else None
    return run_command(CoefficientService, args, extra)
