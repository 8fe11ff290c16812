"""
Validate Command
Far-field convergence table over a list of epsilon.
"""
import argparse

from commands.base import add_common_arguments, run_command
from commands.simulate import add_packet_arguments, packet_overrides
from services.simulation import ValidationService

COMMAND_CONFIG = {
    "help": "Measure far-field convergence over several epsilon",
}


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("validate", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser)
    add_packet_arguments(parser)
    return parser


def handle(args: argparse.Namespace) -> int:
    return run_command(ValidationService, args, packet_overrides(args))
