"""
Admissible Command
Enumerates admissible carriers and the allowed-region boundaries.
"""
import argparse

from commands.base import add_common_arguments, run_command
from services.admissible import AdmissibleService

COMMAND_CONFIG = {
    "help": "List admissible (cos k, M1, M2) and allowed-region boundaries",
}


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("admissible", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser, carrier=False)
    parser.add_argument("--M2-max", type=int, default=None)
    parser.add_argument("--cosk-denominator-max", type=int, default=None)
    parser.add_argument("--sin-sign", type=int, default=None, choices=[-1, 1])
    return parser


def handle(args: argparse.Namespace) -> int:
    extra = {}
    if args.M2_max is not None:
        extra["admissible.M2_max"] = args.M2_max
    if args.cosk_denominator_max is not None:
        extra["admissible.cosk_denominator_max"] = args.cosk_denominator_max
    if args.sin_sign is not None:
        extra["carrier.sin_sign"] = args.sin_sign
    return run_command(AdmissibleService, args, extra)
