"""
Dispersion Command
Writes omega, group velocity and |Omega| over a k-grid.
"""
import argparse

from commands.base import add_common_arguments, run_command
from services.dispersion import DispersionService

COMMAND_CONFIG = {
    "help": "Tabulate the dispersion relation over a k-grid",
}


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("dispersion", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser, carrier=False)
    parser.add_argument("--k-min", type=float, default=None)
    parser.add_argument("--k-max", type=float, default=None)
    parser.add_argument("--points", type=int, default=None)
    return parser


def handle(args: argparse.Namespace) -> int:
    extra = {
        f"sweep.{key}": value
        for key, value in (("k_min", args.k_min), ("k_max", args.k_max), ("points", args.points))
        if value is not None
    }
    return run_command(DispersionService, args, extra)
