"""
Derive Command
Runs the expansion engine and reports its coefficients.
"""
import argparse

from commands.base import add_common_arguments, run_command
from services.derivation import DerivationService

COMMAND_CONFIG = {
    "help": "Derive the reduced equation with the expansion engine",
}


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("derive", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser)
    parser.add_argument("--verify", action="store_true", help="Compare with closed forms at sampled points")
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--export-equations", action="store_true")
    parser.add_argument("--reduced-variable", choices=["difference", "sum"], default=None)
    parser.add_argument("--linearized", action="store_true")
    parser.add_argument("--derivation-only", action="store_true", help="Accept non-integer M1")
    return parser


def handle(args: argparse.Namespace) -> int:
    extra = {}
    if args.verify:
        extra["derive.verify"] = True
    if args.samples is not None:
        extra["derive.samples"] = args.samples
    if args.export_equations:
        extra["derive.export_equations"] = True
    if args.reduced_variable is not None:
        extra["derive.reduced_variable"] = args.reduced_variable
    if args.linearized:
        extra["derive.linearized"] = True
    if args.derivation_only:
        extra["carrier.derivation_only"] = True
    return run_command(DerivationService, args, extra)
