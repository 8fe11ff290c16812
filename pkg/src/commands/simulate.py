"""
Simulate Command
One full-lattice packet run with its demodulated and reduced envelopes.
"""
import argparse

from commands.base import add_common_arguments, run_command
from services.simulation import SimulationService

COMMAND_CONFIG = {
    "help": "Run a packet on the full lattice and compare envelopes",
}


def add_packet_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", action="append", default=None, metavar="1/N", help="Epsilon, repeatable")
    parser.add_argument("--slow-time", type=int, default=None)
    parser.add_argument("--amplitude", type=float, default=None)
    parser.add_argument("--width", type=float, default=None)
    parser.add_argument("--method", choices=["average", "spectral"], default=None)
    parser.add_argument("--reference", choices=["semicontinuous", "map"], default=None,
                        help="Reduced evolution compared against")


def packet_overrides(args: argparse.Namespace) -> dict:
    extra = {}
    if args.eps:
        extra["simulation.eps_list"] = args.eps
    for flag, key in (("slow_time", "slow_time"), ("amplitude", "amplitude"),
                      ("width", "width"), ("method", "method"), ("reference", "reference")):
        value = getattr(args, flag)
        if value is not None:
            extra[f"simulation.{key}"] = value
    return extra


def register(subparsers: argparse._SubParsersAction) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("simulate", help=COMMAND_CONFIG["help"])
    add_common_arguments(parser)
    add_packet_arguments(parser)
    parser.add_argument("--dump-grid", action="store_true", help="Write the lattice window as a binary dump")
    return parser


def handle(args: argparse.Namespace) -> int:
    extra = packet_overrides(args)
    if args.dump_grid:
        extra["simulation.dump_grid"] = True
    return run_command(SimulationService, args, extra)
